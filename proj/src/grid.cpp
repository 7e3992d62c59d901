#include "hlayers/grid.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace hlayers {

GridPtr make_grid(std::shared_ptr<const BoundaryCurve> curve, int N) {
  if (N < 16 || N % 2 != 0)
    throw ConfigError("make_grid: N must be even and >= 16");
  BoundaryGrid g;
  g.curve = curve;
  g.N = N;
  g.t.resize(N);
  g.points.resize(2, N);
  g.normals.resize(2, N);
  g.speed.resize(N);
  g.weight.resize(N);
  g.kappa.resize(N);
  for (int i = 0; i < N; ++i) {
    double t = 2.0 * pi * i / N;
    g.t(i) = t;
    g.points.col(i) = curve->point(t);
    g.normals.col(i) = curve->normal(t);
    g.speed(i) = curve->speed(t);
    g.weight(i) = (2.0 * pi / N) * g.speed(i);
    g.kappa(i) = curve->curvature(t);
  }
  g.perimeter = g.weight.sum();
  g.h_phys = (2.0 * pi / N) * g.speed.maxCoeff();

  // injectivity at grid resolution
  double min_d2 = std::numeric_limits<double>::max();
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      min_d2 = std::min(min_d2, (g.pt(i) - g.pt(j)).squaredNorm());
  if (!(min_d2 > 0))
    throw GeometryError("make_grid: coincident nodes (curve not injective)");
  return std::make_shared<BoundaryGrid>(std::move(g));
}

CVec resample_periodic(const CVec& values, int factor) {
  const int n = int(values.size());
  if (factor <= 1) return values;
  const int m = n * factor;
  Eigen::FFT<double> fft;
  std::vector<Complex> in(values.data(), values.data() + n), spec;
  fft.fwd(spec, in);
  std::vector<Complex> pad(m, Complex(0, 0));
  int half = n / 2;
  for (int k = 0; k <= half; ++k) pad[k] = spec[k];
  for (int k = half + 1; k < n; ++k) pad[m - n + k] = spec[k];
  if (n % 2 == 0) {
    // split the Nyquist coefficient symmetrically
    pad[half] = 0.5 * spec[half];
    pad[m - half] = 0.5 * spec[half];
  }
  std::vector<Complex> out;
  fft.inv(out, pad);
  CVec res(m);
  for (int j = 0; j < m; ++j) res(j) = out[j] * double(factor);
  return res;
}

double nearest_parameter(const BoundaryCurve& curve, const Vec2& p) {
  const int n = 1024;
  double best_t = 0, best_d = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * pi * i / n;
    double d = (curve.point(t) - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  double t = best_t;
  for (int it = 0; it < 60; ++it) {
    Vec2 r = curve.point(t) - p;
    Vec2 v = curve.d1(t), a = curve.d2(t);
    double f = r.dot(v);                 // d/dt |r|^2 / 2
    double fp = v.dot(v) + r.dot(a);
    if (fp <= 0) break;
    double dt = f / fp;
    t -= dt;
    if (std::abs(dt) < 1e-14) break;
  }
  t = std::fmod(t, 2.0 * pi);
  if (t < 0) t += 2.0 * pi;
  return t;
}

}  // namespace hlayers
