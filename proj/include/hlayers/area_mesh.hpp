#ifndef HLAYERS_AREA_MESH_HPP
#define HLAYERS_AREA_MESH_HPP

#include <memory>

#include "hlayers/curve.hpp"
#include "hlayers/quadrature.hpp"
#include "hlayers/types.hpp"

namespace hlayers {

// Ray distances from a fixed origin to the curve. Construction doubles as
// the star-shapedness check: the chord angle must be strictly monotone in
// the parameter.
class RayTable {
 public:
  // origin strictly inside the curve; rays cover the full circle
  RayTable(const BoundaryCurve& curve, const Vec2& origin);
  // origin on the curve at parameter t0; rays cover the inward half circle
  // (requires a convex curve)
  RayTable(const BoundaryCurve& curve, double t0);

  bool full_circle() const { return full_; }
  // angular window (absolute angles); for a full circle hi = lo + 2 pi
  double angle_lo() const { return ang_lo_; }
  double angle_hi() const { return ang_hi_; }

  double distance(double phi) const;

 private:
  const BoundaryCurve& curve_;
  Vec2 origin_;
  bool full_ = true;
  double ang_lo_ = 0, ang_hi_ = 0;
  RVec tgrid_, angle_;  // sampled, unwrapped, strictly increasing
};

// Polar tensor-product quadrature over the interior of a star-shaped curve:
// y(u, phi) = c + u R(phi) e(phi), Gauss-Legendre in u, trapezoid in phi,
// Jacobian u R(phi)^2.
struct AreaMesh {
  std::shared_ptr<const BoundaryCurve> curve;
  Vec2 center;
  int radial_M = 0, angular_K = 0;
  RVec u, wu;        // radial rule on [0,1]
  RVec phi, Rphi;    // angular nodes and ray distances
  RMat points;       // 2 x (M*K), node (i,j) at column i + M*j
  RVec weight;

  int size() const { return radial_M * angular_K; }
  double area() const { return weight.sum(); }
  Vec2 pt(int idx) const { return points.col(idx); }
};

AreaMesh make_area_mesh(std::shared_ptr<const BoundaryCurve> curve,
                        int radial_M, int angular_K, const Vec2& center);

}  // namespace hlayers

#endif
