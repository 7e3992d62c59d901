#ifndef HLAYERS_CURVE_HPP
#define HLAYERS_CURVE_HPP

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hlayers/types.hpp"

namespace hlayers {

// Smooth closed curve x : [0,2pi) -> R^2, stored as a trigonometric
// polynomial per coordinate. All built-ins (circle, ellipse, kite) are of
// this form, so a single representation gives exact derivatives everywhere.
class BoundaryCurve {
 public:
  struct Coord {
    double c0 = 0;
    std::vector<double> cos_coef;  // cos(m t), m = 1..
    std::vector<double> sin_coef;
  };

  BoundaryCurve(std::string kind, Coord x, Coord y);

  static std::shared_ptr<const BoundaryCurve> circle(double radius);
  static std::shared_ptr<const BoundaryCurve> ellipse(double a, double b);
  static std::shared_ptr<const BoundaryCurve> kite();
  static std::shared_ptr<const BoundaryCurve> fourier(Coord x, Coord y);
  static std::shared_ptr<const BoundaryCurve> from_json(
      const nlohmann::json& spec);

  Vec2 point(double t) const;
  Vec2 d1(double t) const;
  Vec2 d2(double t) const;

  double speed(double t) const { return d1(t).norm(); }
  Vec2 normal(double t) const;      // outward unit normal (CCW orientation)
  double curvature(double t) const; // signed, > 0 for convex CCW curves

  const std::string& kind() const { return kind_; }
  std::string describe() const;

  double bounding_radius() const { return bounding_radius_; }
  bool convex() const { return convex_; }
  Vec2 centroid() const { return centroid_; }

 private:
  std::string kind_;
  Coord x_, y_;
  double bounding_radius_ = 0;
  bool convex_ = false;
  Vec2 centroid_ = Vec2::Zero();
};

}  // namespace hlayers

#endif
