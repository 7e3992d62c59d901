#ifndef HLAYERS_POTENTIALS_HPP
#define HLAYERS_POTENTIALS_HPP

#include <map>
#include <memory>
#include <mutex>

#include "hlayers/area_mesh.hpp"
#include "hlayers/density.hpp"
#include "hlayers/fundamental_solution.hpp"
#include "hlayers/grid.hpp"
#include "hlayers/types.hpp"

namespace hlayers {

// Distance policy for off-boundary evaluation. With d the distance from the
// target to the curve and h the largest physical node spacing:
//   d >= far_mult h      plain N-point trapezoid sum,
//   d >= mid_mult h      trapezoid on the globally refined (x mid_factor) grid,
//   d <  mid_mult h      refined only inside a smooth window around the
//                        nearest boundary point, complemented by the coarse
//                        rule outside; the refinement factor grows with 1/d
//                        up to max_factor.
// Points closer than the max_factor rule can handle raise ProximityError.
struct EvalOptions {
  double far_mult = 5.0;
  double mid_mult = 0.5;
  int mid_factor = 8;
  int max_factor = 512;
  double h_min_mult = 3.0;  // refusal collar when upsampling is off
  bool allow_upsampled = true;
};

enum class Layer { single, double_layer };

class LayerPotential {
 public:
  LayerPotential(const FundamentalSolution& fs, GridDensity density,
                 Layer kind, EvalOptions opts = {});

  Complex value(const Vec2& p) const;
  CVec2 gradient(const Vec2& p) const;
  CVec values(const RMat& pts) const;

  struct Proximity {
    double t_star;   // parameter of the nearest curve point
    double dist;     // |p - x(t_star)|
    bool exterior;   // nu(t_star) . (p - x(t_star)) > 0
  };
  Proximity locate(const Vec2& p) const;

  const FundamentalSolution& fs() const { return fs_; }
  const BoundaryGrid& grid() const { return *grid_; }

 private:
  struct Level {
    int factor = 1;
    RMat pts, nus;
    RVec speed;
    CVec wtau;  // quadrature weight times density
  };

  const Level& level(int factor) const;
  Complex accumulate_full(const Level& lv, const Vec2& p, bool grad,
                          int comp) const;
  Complex accumulate_near(const Vec2& p, const Proximity& px, bool grad,
                          int comp) const;
  Complex eval(const Vec2& p, bool grad, int comp) const;

  FundamentalSolution fs_;
  GridPtr grid_;
  CVec tau_;
  Layer kind_;
  EvalOptions opts_;
  mutable std::map<int, Level> levels_;
  mutable std::mutex mu_;
};

// Spec-level wrappers, density given at the grid nodes.
CVec slp_eval(const FundamentalSolution& fs, const GridDensity& tau,
              const RMat& pts, const EvalOptions& opts = {});
CVec dlp_eval(const FundamentalSolution& fs, const GridDensity& mu,
              const RMat& pts, const EvalOptions& opts = {});

// Side-tagged evaluable potential field.
class PotentialField {
 public:
  enum class Side { interior, exterior, free };

  PotentialField(const FundamentalSolution& fs, GridDensity density,
                 Layer kind, Side side, EvalOptions opts = {});

  Complex value(const Vec2& p) const;
  CVec2 gradient(const Vec2& p) const;
  Side side() const { return side_; }
  const LayerPotential& impl() const { return impl_; }

  InteriorFunction as_interior_function() const;

 private:
  LayerPotential impl_;
  Side side_;
};

// ---- volume potentials ----

// Fixed-mesh quadrature of int_Omega S(x-y) f(y) dy at points outside the
// closure of Omega.
CVec volume_eval(const FundamentalSolution& fs, const AreaMesh& mesh,
                 const CVec& f, const RMat& pts);

// Target-centered singular polar quadrature for an interior target.
Complex volume_eval_at(const FundamentalSolution& fs,
                       const BoundaryCurve& curve, const ScalarField& f,
                       const Vec2& x, int radial_M, int angular_K);

// Same with the target on the curve (parameter t0); needs a convex curve.
Complex volume_eval_at_boundary(const FundamentalSolution& fs,
                                const BoundaryCurve& curve,
                                const ScalarField& f, double t0, int radial_M,
                                int angular_K);

// int_Omega (f1 dS/dy1 + f2 dS/dy2)(x-y) dy with the target-centered mesh;
// the gradient acts in y. Either field may be null (treated as zero).
Complex volume_grad_eval_at(const FundamentalSolution& fs,
                            const BoundaryCurve& curve, const ScalarField& f1,
                            const ScalarField& f2, const Vec2& x, int radial_M,
                            int angular_K);

// Distributional volume potential P[E_sharp f](x) via the pairing with
// S(x - .); x strictly outside for the fixed-mesh route, inside via the
// recentered route (requires functor-backed f).
Complex volume_eval_field(const FundamentalSolution& fs,
                          const NegExponentField& f, const Vec2& x,
                          int radial_M, int angular_K);

// Polynomial extrapolation to offset 0 from samples at the given offsets.
Complex extrapolate_to_zero(const RVec& offsets, const CVec& samples);

}  // namespace hlayers

#endif
