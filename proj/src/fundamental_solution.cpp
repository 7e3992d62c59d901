#include "hlayers/fundamental_solution.hpp"

#include <cmath>

#include "hlayers/bessel.hpp"

namespace hlayers {

double unit_sphere_measure(int n) {
  return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

FundamentalSolution::FundamentalSolution(Complex lambda, int dim)
    : lambda_(lambda), dim_(dim) {
  if (dim < 2) throw std::domain_error("FundamentalSolution: dim must be >= 2");
  k_ = std::sqrt(lambda);
  if (k_.imag() < 0 || (k_.imag() == 0 && k_.real() < 0)) k_ = -k_;
  if (!is_laplace() && dim != 2)
    throw std::domain_error(
        "FundamentalSolution: Helmholtz evaluation is n=2 only");
}

Complex FundamentalSolution::S_of_r(double r) const {
  if (r <= 0) throw SingularityError("eval_S at the singular point");
  if (is_laplace()) return std::log(r) / (2.0 * pi);
  return Complex(0, -0.25) * bessel::H1(0, k_ * r);
}

Complex FundamentalSolution::dS_of_r(double r) const {
  if (r <= 0) throw SingularityError("dS at the singular point");
  if (is_laplace()) return 1.0 / (2.0 * pi * r);
  return Complex(0, 0.25) * k_ * bessel::H1(1, k_ * r);
}

Complex FundamentalSolution::d2S_of_r(double r) const {
  if (r <= 0) throw SingularityError("d2S at the singular point");
  if (is_laplace()) return -1.0 / (2.0 * pi * r * r);
  Complex z = k_ * r;
  return Complex(0, 0.25) * k_ * k_ *
         (bessel::H1(0, z) - bessel::H1(1, z) / z);
}

Complex FundamentalSolution::eval_S(const Vec2& xi) const {
  return S_of_r(xi.norm());
}

CVec2 FundamentalSolution::grad_S(const Vec2& xi) const {
  double r = xi.norm();
  Complex f = dS_of_r(r) / r;
  return CVec2(f * xi.x(), f * xi.y());
}

Complex FundamentalSolution::eval_S(const RVec& xi) const {
  if (xi.size() != dim_)
    throw ShapeError("eval_S: point dimension mismatch");
  double r = xi.norm();
  if (r <= 0) throw SingularityError("eval_S at the singular point");
  if (dim_ == 2) return S_of_r(r);
  double sn = unit_sphere_measure(dim_);
  return std::pow(r, 2.0 - dim_) / ((2.0 - dim_) * sn);
}

CVec FundamentalSolution::grad_S(const RVec& xi) const {
  if (xi.size() != dim_)
    throw ShapeError("grad_S: point dimension mismatch");
  double r = xi.norm();
  if (r <= 0) throw SingularityError("grad_S at the singular point");
  CVec g(dim_);
  if (dim_ == 2) {
    Complex f = dS_of_r(r) / r;
    g(0) = f * xi(0);
    g(1) = f * xi(1);
    return g;
  }
  double sn = unit_sphere_measure(dim_);
  double f = std::pow(r, -double(dim_)) / sn;
  for (int j = 0; j < dim_; ++j) g(j) = f * xi(j);
  return g;
}

Complex FundamentalSolution::kernel_dlp(const Vec2& x, const Vec2& y,
                                        const Vec2& nu_y) const {
  Vec2 d = x - y;
  double r = d.norm();
  if (r <= 0) throw SingularityError("kernel_dlp at x = y");
  return -dS_of_r(r) * d.dot(nu_y) / r;
}

CVec2 FundamentalSolution::kernel_dlp_grad(const Vec2& x, const Vec2& y,
                                           const Vec2& nu_y) const {
  Vec2 d = x - y;
  double r = d.norm();
  if (r <= 0) throw SingularityError("kernel_dlp_grad at x = y");
  Complex s1 = dS_of_r(r), s2 = d2S_of_r(r);
  Vec2 rh = d / r;
  double rn = rh.dot(nu_y);
  // Hess = s2 rh rh^T + (s1/r)(I - rh rh^T), applied to nu_y, negated
  CVec2 g;
  for (int i = 0; i < 2; ++i)
    g(i) = -(s2 * rh(i) * rn + (s1 / r) * (nu_y(i) - rh(i) * rn));
  return g;
}

}  // namespace hlayers
