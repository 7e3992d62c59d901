#ifndef HLAYERS_IDENTITIES_HPP
#define HLAYERS_IDENTITIES_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlayers/boundary_ops.hpp"
#include "hlayers/types.hpp"

namespace hlayers {

// Machine-readable result of one identity check.
struct CheckReport {
  std::string name;
  std::string geometry;
  Complex lambda{0, 0};
  int N = 0;
  int mesh_M = 0, mesh_K = 0;
  double residual_max = 0;
  double residual_l2 = 0;
  double tolerance = 0;
  bool pass = false;
  double runtime_ms = 0;
  nlohmann::json details;
};

nlohmann::json report_to_json(const CheckReport& r);

// Sphere-integral limit of the fundamental solution: for decreasing eps the
// flux functional of a test function psi around x must converge to -psi(x).
CheckReport check_delta_limit(Complex lambda, const Vec2& x,
                              const ScalarField& psi, const VectorField& gpsi,
                              const std::vector<double>& eps_seq, double tol);

// Interior/exterior third Green identity for a manufactured u.
struct ManufacturedFunction {
  std::string label;
  ScalarField value;
  VectorField grad;
  ScalarField source;  // (Delta + lambda) u; null when identically zero
};
ManufacturedFunction manufactured_quadratic(Complex lambda);
ManufacturedFunction manufactured_plane_wave(Complex lambda);

CheckReport check_third_green(Complex lambda,
                              std::shared_ptr<const BoundaryCurve> curve,
                              const ManufacturedFunction& u, int N, int mesh_M,
                              int mesh_K, double tol);

// Representation of the harmonic extension by volume + double layer minus
// the single layer of S^t[mu].
CheckReport check_representation(std::shared_ptr<const BoundaryCurve> curve,
                                 Complex lambda, const GridDensity& mu,
                                 const HarmonicOps& ops, int mesh_M,
                                 int mesh_K, double tol);

// Jump formulas of the single layer with a pair density: trace match plus
// the two weak-form normal-derivative identities over a test basis.
CheckReport check_slp_jumps(Complex lambda,
                            std::shared_ptr<const BoundaryCurve> curve,
                            const NegSchauderDensity& tau,
                            const HarmonicOps& ops, int mesh_M, int mesh_K,
                            int basis_size, double tol_trace, double tol_weak);

// Pointwise double-layer jump w^{+-} = -+... extrapolated from both sides.
CheckReport check_dlp_jump(Complex lambda,
                           std::shared_ptr<const BoundaryCurve> curve,
                           const GridDensity& mu, double tol);

// Continuity of the normal derivative of the double layer across the curve.
CheckReport check_dlp_normal_continuity(
    Complex lambda, std::shared_ptr<const BoundaryCurve> curve,
    const GridDensity& mu, double tol);

// Quasi-symmetrization: V0 Wt_l - W0 V_l = (1/2)(V0 - V_l) - l Vol on the
// boundary; the lambda = 0 case degenerates to the commutator identity.
CheckReport check_quasi_symmetrization(
    std::shared_ptr<const BoundaryCurve> curve, Complex lambda,
    const GridDensity& eta, const HarmonicOps& ops, int mesh_M, int mesh_K,
    int n_targets, double tol);

// Singular values of the weighted Wt matrix plus the smoothing composition
// J o Wt; reports decay diagnostics and the eigenvalue clustering of
// -1/2 I + Wt.
struct SpectrumResult {
  RVec singular_values;          // weighted Wt, descending
  RVec composed_singular_values; // J Wt
  double sigma40_ratio = 0;
  double decay_fit_exponent = 0; // slope of ln sigma_m vs m
  int outside_cluster = 0;       // eigenvalues of -I/2 + Wt off -1/2 by >1e-3
  CheckReport report;
};
SpectrumResult spectrum_Wt(Complex lambda,
                           std::shared_ptr<const BoundaryCurve> curve, int N,
                           double tol);

// Normal-offset extrapolation of a potential's boundary values/fluxes.
// Offsets are multiples of the local node spacing.
struct TraceExtrapolator {
  std::vector<double> offsets{0.08, 0.12, 0.16, 0.20, 0.24};
  // side +1: exterior, -1: interior
  Complex value(const LayerPotential& lp, const BoundaryGrid& g, int node,
                int side) const;
  Complex normal_flux(const LayerPotential& lp, const BoundaryGrid& g,
                      int node, int side) const;
};

}  // namespace hlayers

#endif
