#ifndef HLAYERS_GRID_HPP
#define HLAYERS_GRID_HPP

#include <memory>

#include "hlayers/curve.hpp"
#include "hlayers/types.hpp"

namespace hlayers {

// N-node uniform-parameter quadrature grid on a curve: nodes t_i = 2 pi i/N,
// trapezoid weights w_i = (2 pi / N) |x'(t_i)|. N must be even (the
// logarithmic singular rule requires it).
struct BoundaryGrid {
  std::shared_ptr<const BoundaryCurve> curve;
  int N = 0;
  RVec t;
  RMat points;   // 2 x N
  RMat normals;  // 2 x N
  RVec speed;
  RVec weight;
  RVec kappa;
  double perimeter = 0;
  double h_phys = 0;  // max physical node spacing, 2 pi max|x'| / N

  Vec2 pt(int i) const { return points.col(i); }
  Vec2 nu(int i) const { return normals.col(i); }
};

using GridPtr = std::shared_ptr<const BoundaryGrid>;

GridPtr make_grid(std::shared_ptr<const BoundaryCurve> curve, int N);

// Trigonometric interpolation of periodic samples onto the factor-F refined
// uniform grid (FFT zero padding).
CVec resample_periodic(const CVec& values, int factor);

// Parameter of the curve point closest to p, by fine scan plus Newton.
double nearest_parameter(const BoundaryCurve& curve, const Vec2& p);

}  // namespace hlayers

#endif
