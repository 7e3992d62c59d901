#ifndef HLAYERS_BOUNDARY_OPS_HPP
#define HLAYERS_BOUNDARY_OPS_HPP

#include <memory>

#include <Eigen/LU>

#include "hlayers/density.hpp"
#include "hlayers/fundamental_solution.hpp"
#include "hlayers/grid.hpp"
#include "hlayers/potentials.hpp"
#include "hlayers/types.hpp"

namespace hlayers {

// Dense Nystrom matrix acting on node values. Pairings against node vectors
// insert the quadrature weights: <a,b> = sum_i w_i a_i b_i (bilinear, no
// conjugation), and the weighted transpose D^{-1} A^T D is the discrete
// counterpart of every operator transpose.
struct BoundaryOperator {
  GridPtr grid;
  CMat A;

  CVec apply(const CVec& v) const { return A * v; }
  CMat weighted_transpose() const;
};

// <a,b> = sum w_i a_i b_i on the grid of the operands.
Complex weighted_dot(const BoundaryGrid& g, const CVec& a, const CVec& b);

BoundaryOperator assemble_V(const FundamentalSolution& fs, const GridPtr& g);
BoundaryOperator assemble_W(const FundamentalSolution& fs, const GridPtr& g);
BoundaryOperator assemble_Wt(const FundamentalSolution& fs, const GridPtr& g);

// Harmonic (lambda = 0) context: single-layer representation of the interior
// Dirichlet problem through the rank-one augmented system
//   V0 psi + c = v,  <psi, 1> = 0,
// which stays invertible at logarithmic capacity one. The Green operator and
// the Steklov-Poincare map are both read off this representation, so their
// discrete compatibility is structural.
class HarmonicOps {
 public:
  explicit HarmonicOps(GridPtr grid);

  const BoundaryGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const CMat& V0() const { return V0_; }
  const CMat& W0() const { return W0_; }
  const CMat& Wt0() const { return Wt0_; }
  const CMat& dtn() const { return dtn_; }

  CVec apply_dtn(const CVec& v) const { return dtn_ * v; }
  // grid action of the transpose map S^t (weighted-transpose convention)
  CVec apply_dtn_transpose(const CVec& v) const;

  struct Extension {
    CVec psi;
    Complex c;
  };
  Extension extend(const CVec& boundary_values) const;

  // Interior harmonic extension of v as an evaluable function; value and
  // gradient use the distance-adaptive layer evaluation.
  InteriorFunction green(const GridDensity& v, EvalOptions opts = {}) const;

  double rcond() const { return rcond_; }

 private:
  GridPtr grid_;
  CMat V0_, W0_, Wt0_, dtn_;
  Eigen::PartialPivLU<CMat> bordered_;
  double rcond_ = 0;
};

BoundaryOperator steklov_poincare(const HarmonicOps& ops);

InteriorFunction green_dirichlet(const HarmonicOps& ops, const GridDensity& v,
                                 EvalOptions opts = {});

// Node values of mu0 + S^t[mu1].
GridDensity materialize_pair(const HarmonicOps& ops,
                             const NegSchauderDensity& tau);

// <tau, v> = int mu0 v + int mu1 S[v]
Complex pair_tau(const NegSchauderDensity& tau, const GridDensity& v,
                 const HarmonicOps& ops);

// J[tau] = V0[tau - mean(tau)] + mean(tau)
GridDensity j_regularizer(const HarmonicOps& ops,
                          const NegSchauderDensity& tau);

// <d_nu u, v> = int u S[v] dsigma + <E#[Delta u], G[v]>; u must carry its
// boundary trace and its Laplacian as a field (use an empty field for zero).
Complex dist_normal_derivative(const InteriorFunction& u, const GridDensity& v,
                               const HarmonicOps& ops);

// Single layer with a pair density. Mode `direct` applies the grid action of
// S^t to mu1 and evaluates one single layer; mode `representation` uses the
// Green-operator form  v[S^t mu1] = -G[mu1] + lambda Vol(G[mu1]) + w[mu1]
// (the -G term only on the interior side).
enum class PairMode { direct, representation };
CVec slp_eval_pair(const FundamentalSolution& fs, const NegSchauderDensity& tau,
                   const RMat& pts, const HarmonicOps& ops, PairMode mode,
                   int radial_M = 48, int angular_K = 128,
                   const EvalOptions& opts = {});

}  // namespace hlayers

#endif
