#ifndef HLAYERS_FUNDAMENTAL_SOLUTION_HPP
#define HLAYERS_FUNDAMENTAL_SOLUTION_HPP

// Fundamental solutions S of Delta + lambda.
//
// lambda = 0, n = 2:   S(xi) = ln|xi| / (2 pi)
// lambda = 0, n > 2:   S(xi) = |xi|^{2-n} / ((2-n) s_n)
// lambda != 0, n = 2:  S(xi) = -(i/4) H0^(1)(k |xi|),  k = sqrt(lambda),
//                      principal branch with Im k >= 0.
//
// The Helmholtz case in n > 2 is outside the supported surface and throws.

#include "hlayers/types.hpp"

namespace hlayers {

class FundamentalSolution {
 public:
  explicit FundamentalSolution(Complex lambda, int dim = 2);

  Complex lambda() const { return lambda_; }
  int dim() const { return dim_; }
  Complex wavenumber() const { return k_; }
  bool is_laplace() const { return lambda_ == Complex(0, 0); }

  // Radial profile and derivatives (n = 2 only).
  Complex S_of_r(double r) const;
  Complex dS_of_r(double r) const;
  Complex d2S_of_r(double r) const;

  Complex eval_S(const RVec& xi) const;
  CVec grad_S(const RVec& xi) const;

  // 2-D fast paths.
  Complex eval_S(const Vec2& xi) const;
  CVec2 grad_S(const Vec2& xi) const;

  // -grad_S(x-y) . nu_y, the double-layer kernel of Delta + lambda.
  Complex kernel_dlp(const Vec2& x, const Vec2& y, const Vec2& nu_y) const;

  // Gradient in x of kernel_dlp, i.e. -Hess_S(x-y) nu_y.
  CVec2 kernel_dlp_grad(const Vec2& x, const Vec2& y, const Vec2& nu_y) const;

 private:
  Complex lambda_;
  int dim_;
  Complex k_;
};

// (n-1)-dimensional measure of the unit sphere in R^n.
double unit_sphere_measure(int n);

}  // namespace hlayers

#endif
