#include "hlayers/curve.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace hlayers {

namespace {

double eval_coord(const BoundaryCurve::Coord& c, double t, int deriv) {
  double v = (deriv == 0) ? c.c0 : 0.0;
  for (std::size_t i = 0; i < c.cos_coef.size(); ++i) {
    double m = double(i + 1);
    double a = c.cos_coef[i];
    if (a == 0) continue;
    switch (deriv) {
      case 0: v += a * std::cos(m * t); break;
      case 1: v += -a * m * std::sin(m * t); break;
      default: v += -a * m * m * std::cos(m * t); break;
    }
  }
  for (std::size_t i = 0; i < c.sin_coef.size(); ++i) {
    double m = double(i + 1);
    double b = c.sin_coef[i];
    if (b == 0) continue;
    switch (deriv) {
      case 0: v += b * std::sin(m * t); break;
      case 1: v += b * m * std::cos(m * t); break;
      default: v += -b * m * m * std::sin(m * t); break;
    }
  }
  return v;
}

}  // namespace

BoundaryCurve::BoundaryCurve(std::string kind, Coord x, Coord y)
    : kind_(std::move(kind)), x_(std::move(x)), y_(std::move(y)) {
  // probe resolution for the cached global properties
  const int n = 2048;
  double area2 = 0, cx = 0, cy = 0;
  convex_ = true;
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * pi * i / n;
    Vec2 p = point(t), dp = d1(t);
    bounding_radius_ = std::max(bounding_radius_, p.norm());
    if (dp.norm() <= 0)
      throw GeometryError("curve has a vanishing-speed point");
    if (curvature(t) <= 0) convex_ = false;
    double da = p.x() * dp.y() - p.y() * dp.x();
    area2 += da;
    cx += p.x() * da;
    cy += p.y() * da;
  }
  area2 *= 2.0 * pi / n;
  if (area2 <= 0)
    throw GeometryError("curve must be positively oriented (CCW)");
  centroid_ = Vec2(cx, cy) * (2.0 * pi / n) / (1.5 * area2);
}

Vec2 BoundaryCurve::point(double t) const {
  return Vec2(eval_coord(x_, t, 0), eval_coord(y_, t, 0));
}
Vec2 BoundaryCurve::d1(double t) const {
  return Vec2(eval_coord(x_, t, 1), eval_coord(y_, t, 1));
}
Vec2 BoundaryCurve::d2(double t) const {
  return Vec2(eval_coord(x_, t, 2), eval_coord(y_, t, 2));
}

Vec2 BoundaryCurve::normal(double t) const {
  Vec2 d = d1(t);
  return Vec2(d.y(), -d.x()) / d.norm();
}

double BoundaryCurve::curvature(double t) const {
  Vec2 a = d1(t), b = d2(t);
  double s = a.norm();
  return (a.x() * b.y() - a.y() * b.x()) / (s * s * s);
}

std::shared_ptr<const BoundaryCurve> BoundaryCurve::circle(double radius) {
  if (radius <= 0) throw ConfigError("circle: radius must be positive");
  Coord x, y;
  x.cos_coef = {radius};
  y.sin_coef = {radius};
  return std::make_shared<BoundaryCurve>("circle", x, y);
}

std::shared_ptr<const BoundaryCurve> BoundaryCurve::ellipse(double a,
                                                            double b) {
  if (a <= 0 || b <= 0) throw ConfigError("ellipse: semi-axes must be positive");
  Coord x, y;
  x.cos_coef = {a};
  y.sin_coef = {b};
  return std::make_shared<BoundaryCurve>("ellipse", x, y);
}

std::shared_ptr<const BoundaryCurve> BoundaryCurve::kite() {
  Coord x, y;
  x.c0 = -0.65;
  x.cos_coef = {1.0, 0.65};
  y.sin_coef = {1.5};
  return std::make_shared<BoundaryCurve>("kite", x, y);
}

std::shared_ptr<const BoundaryCurve> BoundaryCurve::fourier(Coord x, Coord y) {
  return std::make_shared<BoundaryCurve>("fourier", std::move(x),
                                         std::move(y));
}

std::shared_ptr<const BoundaryCurve> BoundaryCurve::from_json(
    const nlohmann::json& spec) {
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "circle") return circle(spec.at("radius").get<double>());
  if (kind == "ellipse")
    return ellipse(spec.at("a").get<double>(), spec.at("b").get<double>());
  if (kind == "kite") return kite();
  if (kind == "fourier") {
    auto coord = [](const nlohmann::json& j) {
      Coord c;
      c.c0 = j.value("const", 0.0);
      c.cos_coef = j.value("cos", std::vector<double>{});
      c.sin_coef = j.value("sin", std::vector<double>{});
      return c;
    };
    return fourier(coord(spec.at("x")), coord(spec.at("y")));
  }
  throw ConfigError("unknown curve kind: " + kind);
}

std::string BoundaryCurve::describe() const {
  if (kind_ == "circle") return "circle(R=" + std::to_string(x_.cos_coef[0]) + ")";
  if (kind_ == "ellipse")
    return "ellipse(" + std::to_string(x_.cos_coef[0]) + "," +
           std::to_string(y_.sin_coef[0]) + ")";
  return kind_;
}

}  // namespace hlayers
