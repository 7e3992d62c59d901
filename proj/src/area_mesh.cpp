#include "hlayers/area_mesh.hpp"

#include <cmath>

namespace hlayers {

namespace {
double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}
}  // namespace

RayTable::RayTable(const BoundaryCurve& curve, const Vec2& origin)
    : curve_(curve), origin_(origin), full_(true) {
  const int n = 4096;
  tgrid_.resize(n + 1);
  angle_.resize(n + 1);
  double prev = 0;
  for (int i = 0; i <= n; ++i) {
    double t = 2.0 * pi * i / n;
    Vec2 r = curve.point(t) - origin;
    double a = std::atan2(r.y(), r.x());
    if (i == 0) {
      prev = a;
    } else {
      while (a < prev) a += 2.0 * pi;
      if (a == prev)
        throw GeometryError("RayTable: curve not star-shaped about the point");
      if (a - prev > pi)
        throw GeometryError("RayTable: chord angle not monotone "
                            "(point outside or curve not star-shaped)");
    }
    tgrid_(i) = t;
    angle_(i) = a;
    prev = a;
  }
  if (std::abs(angle_(n) - angle_(0) - 2.0 * pi) > 1e-9)
    throw GeometryError("RayTable: winding number is not one "
                        "(point not inside the curve)");
  ang_lo_ = angle_(0);
  ang_hi_ = angle_(0) + 2.0 * pi;
}

RayTable::RayTable(const BoundaryCurve& curve, double t0)
    : curve_(curve), origin_(curve.point(t0)), full_(false) {
  if (!curve.convex())
    throw GeometryError("RayTable: boundary origin requires a convex curve");
  const int n = 4096;
  const double eps = 1e-7;
  tgrid_.resize(n + 1);
  angle_.resize(n + 1);
  Vec2 tang = curve.d1(t0).normalized();
  ang_lo_ = std::atan2(tang.y(), tang.x());
  ang_hi_ = ang_lo_ + pi;
  double prev = ang_lo_;
  for (int i = 0; i <= n; ++i) {
    // graded toward the endpoints where the chord angle varies fastest
    double s = double(i) / n;
    double frac = eps + (1 - 2 * eps) * (s - std::sin(2 * pi * s) / (2 * pi));
    double t = t0 + 2.0 * pi * frac;
    Vec2 r = curve.point(t) - origin_;
    double a = std::atan2(r.y(), r.x());
    while (a < prev - 1e-12) a += 2.0 * pi;
    if (i > 0 && a - prev > pi)
      throw GeometryError("RayTable: chord angle not monotone");
    tgrid_(i) = t;
    angle_(i) = a;
    prev = a;
  }
}

double RayTable::distance(double phi) const {
  // normalize into the table range
  if (full_) {
    while (phi < angle_(0)) phi += 2.0 * pi;
    while (phi > angle_(angle_.size() - 1)) phi -= 2.0 * pi;
  }
  phi = std::min(std::max(phi, angle_(0)), angle_(angle_.size() - 1));
  // bracket by binary search
  int lo = 0, hi = int(angle_.size()) - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (angle_(mid) <= phi ? lo : hi) = mid;
  }
  double t = tgrid_(lo) + (tgrid_(hi) - tgrid_(lo)) *
                              (phi - angle_(lo)) /
                              std::max(angle_(hi) - angle_(lo), 1e-300);
  // Newton on angle(x(t) - o) = phi
  for (int it = 0; it < 50; ++it) {
    Vec2 r = curve_.point(t) - origin_;
    double a = std::atan2(r.y(), r.x());
    double diff = std::remainder(a - phi, 2.0 * pi);
    double da = cross2(r, curve_.d1(t)) / r.squaredNorm();
    if (da <= 0) break;
    double dt = diff / da;
    t -= dt;
    if (std::abs(dt) < 1e-14) break;
  }
  return (curve_.point(t) - origin_).norm();
}

AreaMesh make_area_mesh(std::shared_ptr<const BoundaryCurve> curve,
                        int radial_M, int angular_K, const Vec2& center) {
  if (radial_M < 8 || angular_K < 8)
    throw ConfigError("make_area_mesh: radial and angular sizes must be >= 8");
  AreaMesh m;
  m.curve = curve;
  m.center = center;
  m.radial_M = radial_M;
  m.angular_K = angular_K;

  RayTable rays(*curve, center);  // throws GeometryError if not star-shaped

  GaussRule g = gauss_legendre(radial_M, 0.0, 1.0);
  m.u = g.nodes;
  m.wu = g.weights;
  m.phi.resize(angular_K);
  m.Rphi.resize(angular_K);
  m.points.resize(2, radial_M * angular_K);
  m.weight.resize(radial_M * angular_K);
  for (int j = 0; j < angular_K; ++j) {
    double phi = 2.0 * pi * j / angular_K;
    double R = rays.distance(phi);
    m.phi(j) = phi;
    m.Rphi(j) = R;
    Vec2 e(std::cos(phi), std::sin(phi));
    for (int i = 0; i < radial_M; ++i) {
      int idx = i + radial_M * j;
      m.points.col(idx) = center + m.u(i) * R * e;
      m.weight(idx) = m.wu(i) * m.u(i) * R * R * (2.0 * pi / angular_K);
    }
  }
  return m;
}

}  // namespace hlayers
