#include "hlayers/quadrature.hpp"

#include <cmath>

namespace hlayers {

GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up iteration, then stop
        p0 = 1; p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        x -= p1 / dp;
        break;
      }
    }
    r.nodes(n - 1 - i) = x;
    r.weights(n - 1 - i) = 2.0 / ((1 - x * x) * dp * dp);
  }
  return r;
}

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule r = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes(i) = mid + half * r.nodes(i);
    r.weights(i) *= half;
  }
  return r;
}

RVec kress_log_weights(int N) {
  if (N < 2 || N % 2 != 0)
    throw ConfigError("kress_log_weights: N must be even and >= 2");
  int n = N / 2;
  RVec R(N);
  for (int d = 0; d < N; ++d) {
    double td = pi * d / n;
    double s = 0;
    for (int m = 1; m < n; ++m) s += std::cos(m * td) / m;
    R(d) = -(2.0 * pi / n) * s - (pi / (n * double(n))) * std::cos(n * td);
  }
  return R;
}

RVec radial_log_weights(const GaussRule& rule01) {
  const int m = int(rule01.nodes.size());
  // barycentric weights of the interpolation nodes
  RVec bw(m);
  for (int i = 0; i < m; ++i) {
    double p = 1;
    for (int k = 0; k < m; ++k)
      if (k != i) p *= (rule01.nodes(i) - rule01.nodes(k));
    bw(i) = 1.0 / p;
  }
  // Dyadic composite Gauss reference rule for the fixed weight u ln u.
  // Each dyadic piece is subdivided further so the degree-(m-1) Lagrange
  // basis polynomials are resolved.
  GaussRule ref = gauss_legendre(16);
  const int pieces = std::max(1, m / 6);
  RVec w = RVec::Zero(m);
  double hi = 1.0;
  for (int level = 0; level < 44; ++level) {
    double lo = hi / 2;
    for (int p = 0; p < pieces; ++p) {
      double a = lo + (hi - lo) * p / pieces;
      double b = lo + (hi - lo) * (p + 1) / pieces;
      for (int q = 0; q < 16; ++q) {
        double x = 0.5 * (a + b) + 0.5 * (b - a) * ref.nodes(q);
        double wq = 0.5 * (b - a) * ref.weights(q) * x * std::log(x);
        // Lagrange basis at x via the barycentric formula
        double denom = 0;
        for (int k = 0; k < m; ++k) denom += bw(k) / (x - rule01.nodes(k));
        for (int i = 0; i < m; ++i)
          w(i) += wq * (bw(i) / (x - rule01.nodes(i))) / denom;
      }
    }
    hi = lo;
  }
  return w;
}

}  // namespace hlayers
