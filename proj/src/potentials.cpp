#include "hlayers/potentials.hpp"

#include <cmath>

#include "hlayers/bessel.hpp"
#include "hlayers/quadrature.hpp"

namespace hlayers {

namespace {

// Smooth cutoff used to blend the refined window into the coarse rule.
// Plateau of half-width `a` and erf transition scale `s`, both in units of
// the coarse parameter spacing.
constexpr double kPlateau = 14.0;
constexpr double kSigma = 3.0;
constexpr double kCut = kPlateau + 6.5 * kSigma;  // support half-width
constexpr double kTailDecay = 26.0;  // require alpha*F*N >= this for the pole

double window_chi(double tau_over_h) {
  return 0.5 * (std::erf((tau_over_h + kPlateau) / kSigma) -
                std::erf((tau_over_h - kPlateau) / kSigma));
}

}  // namespace

LayerPotential::LayerPotential(const FundamentalSolution& fs,
                               GridDensity density, Layer kind,
                               EvalOptions opts)
    : fs_(fs),
      grid_(density.grid),
      tau_(std::move(density.values)),
      kind_(kind),
      opts_(opts) {
  if (!grid_) throw StateError("LayerPotential: density has no grid");
  level(1);
  if (opts_.allow_upsampled) level(opts_.mid_factor);
}

const LayerPotential::Level& LayerPotential::level(int factor) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = levels_.find(factor);
  if (it != levels_.end()) return it->second;

  Level lv;
  lv.factor = factor;
  const int n = grid_->N * factor;
  lv.pts.resize(2, n);
  lv.nus.resize(2, n);
  lv.speed.resize(n);
  lv.wtau.resize(n);
  CVec tau_fine = resample_periodic(tau_, factor);
  const BoundaryCurve& c = *grid_->curve;
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * pi * j / n;
    lv.pts.col(j) = c.point(t);
    lv.nus.col(j) = c.normal(t);
    lv.speed(j) = c.speed(t);
    lv.wtau(j) = (2.0 * pi / n) * lv.speed(j) * tau_fine(j);
  }
  return levels_.emplace(factor, std::move(lv)).first->second;
}

LayerPotential::Proximity LayerPotential::locate(const Vec2& p) const {
  const Level& lv =
      opts_.allow_upsampled ? level(opts_.mid_factor) : level(1);
  int n = int(lv.speed.size());
  int best = 0;
  double bd = std::numeric_limits<double>::max();
  for (int j = 0; j < n; ++j) {
    double d2 = (Vec2(lv.pts.col(j)) - p).squaredNorm();
    if (d2 < bd) {
      bd = d2;
      best = j;
    }
  }
  const BoundaryCurve& c = *grid_->curve;
  double t = 2.0 * pi * best / n;
  for (int it = 0; it < 40; ++it) {
    Vec2 r = c.point(t) - p;
    Vec2 v = c.d1(t), a = c.d2(t);
    double fp = v.dot(v) + r.dot(a);
    if (fp <= 0) break;
    double dt = r.dot(v) / fp;
    t -= dt;
    if (std::abs(dt) < 1e-14) break;
  }
  Proximity px;
  px.t_star = t;
  Vec2 r = p - c.point(t);
  px.dist = r.norm();
  px.exterior = r.dot(c.normal(t)) > 0;
  return px;
}

Complex LayerPotential::accumulate_full(const Level& lv, const Vec2& p,
                                        bool grad, int comp) const {
  const int n = int(lv.wtau.size());
  Complex acc = 0;
  const bool laplace = fs_.is_laplace();
  const Complex k = fs_.wavenumber();
  for (int j = 0; j < n; ++j) {
    Vec2 d = p - Vec2(lv.pts.col(j));
    double r = d.norm();
    Complex ker;
    if (kind_ == Layer::single) {
      if (!grad) {
        ker = laplace ? Complex(std::log(r) / (2 * pi), 0)
                      : Complex(0, -0.25) * bessel::cyl01(k * r).h0();
      } else {
        Complex s1 = laplace ? Complex(1.0 / (2 * pi * r), 0)
                             : Complex(0, 0.25) * k * bessel::cyl01(k * r).h1();
        ker = s1 * d(comp) / r;
      }
    } else {
      Vec2 nu = lv.nus.col(j);
      if (!grad) {
        Complex s1 = laplace ? Complex(1.0 / (2 * pi * r), 0)
                             : Complex(0, 0.25) * k * bessel::cyl01(k * r).h1();
        ker = -s1 * d.dot(nu) / r;
      } else {
        ker = fs_.kernel_dlp_grad(p, lv.pts.col(j), nu)(comp);
      }
    }
    acc += lv.wtau(j) * ker;
  }
  return acc;
}

Complex LayerPotential::accumulate_near(const Vec2& p, const Proximity& px,
                                        bool grad, int comp) const {
  const int N = grid_->N;
  const double sp = grid_->curve->speed(px.t_star);
  const double alpha = px.dist / std::max(sp, 1e-300);
  int factor = opts_.mid_factor;
  while (alpha * factor * N < kTailDecay && factor < opts_.max_factor)
    factor *= 2;
  if (alpha * factor * N < kTailDecay)
    throw ProximityError(
        "evaluation point closer to the boundary than the refined rule "
        "can resolve");

  const Level& coarse = level(1);
  const Level& fine = level(factor);
  const double h = 2.0 * pi / N;

  // coarse complement: full sum minus the windowed part
  Complex acc = accumulate_full(coarse, p, grad, comp);
  auto kernel_at = [&](const Level& lv, int j) -> Complex {
    Vec2 d = p - Vec2(lv.pts.col(j));
    double r = d.norm();
    const bool laplace = fs_.is_laplace();
    const Complex k = fs_.wavenumber();
    if (kind_ == Layer::single) {
      if (!grad)
        return laplace ? Complex(std::log(r) / (2 * pi), 0)
                       : Complex(0, -0.25) * bessel::cyl01(k * r).h0();
      Complex s1 = laplace ? Complex(1.0 / (2 * pi * r), 0)
                           : Complex(0, 0.25) * k * bessel::cyl01(k * r).h1();
      return s1 * d(comp) / r;
    }
    Vec2 nu = lv.nus.col(j);
    if (!grad) {
      Complex s1 = laplace ? Complex(1.0 / (2 * pi * r), 0)
                           : Complex(0, 0.25) * k * bessel::cyl01(k * r).h1();
      return -s1 * d.dot(nu) / r;
    }
    return fs_.kernel_dlp_grad(p, lv.pts.col(j), nu)(comp);
  };

  int half_c = std::min(int(std::ceil(kCut)), N / 2);
  int ic = int(std::llround(px.t_star / h));
  for (int off = -half_c; off <= half_c; ++off) {
    int j = ((ic + off) % N + N) % N;
    double tau = std::remainder(2.0 * pi * j / N - px.t_star, 2.0 * pi) / h;
    double chi = window_chi(tau);
    if (chi < 1e-18) continue;
    acc -= chi * coarse.wtau(j) * kernel_at(coarse, j);
  }
  const int nf = N * factor;
  const double hf = 2.0 * pi / nf;
  int jc = int(std::llround(px.t_star / hf));
  int half_f = std::min(int(std::ceil(kCut * factor)), nf / 2);
  for (int off = -half_f; off <= half_f; ++off) {
    int j = ((jc + off) % nf + nf) % nf;
    double tau = std::remainder(2.0 * pi * j / nf - px.t_star, 2.0 * pi) / h;
    double chi = window_chi(tau);
    if (chi < 1e-18) continue;
    acc += chi * fine.wtau(j) * kernel_at(fine, j);
  }
  return acc;
}

Complex LayerPotential::eval(const Vec2& p, bool grad, int comp) const {
  Proximity px = locate(p);
  double h = grid_->h_phys;
  if (!opts_.allow_upsampled) {
    if (px.dist < opts_.h_min_mult * h)
      throw ProximityError("point within the near-boundary collar and "
                           "upsampled evaluation is disabled");
    return accumulate_full(level(1), p, grad, comp);
  }
  if (px.dist >= opts_.far_mult * h)
    return accumulate_full(level(1), p, grad, comp);
  if (px.dist >= opts_.mid_mult * h)
    return accumulate_full(level(opts_.mid_factor), p, grad, comp);
  return accumulate_near(p, px, grad, comp);
}

Complex LayerPotential::value(const Vec2& p) const { return eval(p, false, 0); }

CVec2 LayerPotential::gradient(const Vec2& p) const {
  return CVec2(eval(p, true, 0), eval(p, true, 1));
}

CVec LayerPotential::values(const RMat& pts) const {
  CVec out(pts.cols());
  for (int i = 0; i < pts.cols(); ++i) out(i) = value(pts.col(i));
  return out;
}

CVec slp_eval(const FundamentalSolution& fs, const GridDensity& tau,
              const RMat& pts, const EvalOptions& opts) {
  return LayerPotential(fs, tau, Layer::single, opts).values(pts);
}

CVec dlp_eval(const FundamentalSolution& fs, const GridDensity& mu,
              const RMat& pts, const EvalOptions& opts) {
  return LayerPotential(fs, mu, Layer::double_layer, opts).values(pts);
}

PotentialField::PotentialField(const FundamentalSolution& fs,
                               GridDensity density, Layer kind, Side side,
                               EvalOptions opts)
    : impl_(fs, std::move(density), kind, opts), side_(side) {}

Complex PotentialField::value(const Vec2& p) const {
  if (side_ != Side::free) {
    auto px = impl_.locate(p);
    if (px.exterior != (side_ == Side::exterior))
      throw ContractError("PotentialField evaluated on the wrong side");
  }
  return impl_.value(p);
}

CVec2 PotentialField::gradient(const Vec2& p) const {
  if (side_ != Side::free) {
    auto px = impl_.locate(p);
    if (px.exterior != (side_ == Side::exterior))
      throw ContractError("PotentialField evaluated on the wrong side");
  }
  return impl_.gradient(p);
}

InteriorFunction PotentialField::as_interior_function() const {
  InteriorFunction f;
  const LayerPotential* lp = &impl_;
  f.value = [lp](const Vec2& p) { return lp->value(p); };
  f.grad = [lp](const Vec2& p) { return lp->gradient(p); };
  return f;
}

// ---------------------------------------------------------------- volume --

CVec volume_eval(const FundamentalSolution& fs, const AreaMesh& mesh,
                 const CVec& f, const RMat& pts) {
  if (f.size() != mesh.size())
    throw ShapeError("volume_eval: sample length does not match mesh");
  CVec out(pts.cols());
  for (int q = 0; q < pts.cols(); ++q) {
    Vec2 p = pts.col(q);
    double tn = nearest_parameter(*mesh.curve, p);
    Vec2 xb = mesh.curve->point(tn);
    if ((p - xb).dot(mesh.curve->normal(tn)) <= 0)
      throw GeometryError(
          "volume_eval: point inside the domain; use the singularity-"
          "centered option");
    Complex acc = 0;
    for (int i = 0; i < mesh.size(); ++i)
      acc += mesh.weight(i) * f(i) * fs.S_of_r((p - mesh.pt(i)).norm());
    out(q) = acc;
  }
  return out;
}

namespace {

// Shared core of the target-centered singular quadrature. The kernel is
// described by two functions of the node: its full value at r = u R(phi) > 0
// and the coefficient C(u, phi) of ln(u), so that (kernel - C ln u) extends
// smoothly to u = 0.
template <typename KernelFull, typename KernelLog>
Complex polar_singular_quadrature(const BoundaryCurve& curve,
                                  const ScalarField& f, const Vec2& x,
                                  int M, int K, const RVec& ang_nodes,
                                  const RVec& ang_weights,
                                  const RayTable& rays, KernelFull kfull,
                                  KernelLog klog) {
  GaussRule radial = gauss_legendre(M, 0.0, 1.0);
  RVec wlog = radial_log_weights(radial);
  Complex total = 0;
  for (int j = 0; j < ang_nodes.size(); ++j) {
    double phi = ang_nodes(j);
    double R = rays.distance(phi);
    if (!(R > 0)) continue;
    Vec2 e(std::cos(phi), std::sin(phi));
    Complex sum = 0;
    for (int i = 0; i < M; ++i) {
      double u = radial.nodes(i);
      Vec2 y = x + u * R * e;
      Complex fv = f(y);
      Complex C = klog(u, R, e);
      Complex smooth = kfull(u, R, e) - C * std::log(u);
      sum += radial.weights(i) * u * smooth * fv + wlog(i) * C * fv;
    }
    total += ang_weights(j) * R * R * sum;
  }
  return total;
}

}  // namespace

Complex volume_eval_at(const FundamentalSolution& fs,
                       const BoundaryCurve& curve, const ScalarField& f,
                       const Vec2& x, int radial_M, int angular_K) {
  RayTable rays(curve, x);
  RVec ang(angular_K), wa(angular_K);
  for (int j = 0; j < angular_K; ++j) {
    ang(j) = 2.0 * pi * j / angular_K;
    wa(j) = 2.0 * pi / angular_K;
  }
  const bool laplace = fs.is_laplace();
  const Complex k = fs.wavenumber();
  auto kfull = [&](double u, double R, const Vec2&) -> Complex {
    return fs.S_of_r(u * R);
  };
  auto klog = [&](double u, double R, const Vec2&) -> Complex {
    if (laplace) return Complex(1.0 / (2 * pi), 0);
    return bessel::J(0, k * u * R) / (2 * pi);
  };
  return polar_singular_quadrature(curve, f, x, radial_M, angular_K, ang, wa,
                                   rays, kfull, klog);
}

Complex volume_eval_at_boundary(const FundamentalSolution& fs,
                                const BoundaryCurve& curve,
                                const ScalarField& f, double t0, int radial_M,
                                int angular_K) {
  RayTable rays(curve, t0);
  GaussRule ang = gauss_legendre(angular_K, rays.angle_lo(), rays.angle_hi());
  const bool laplace = fs.is_laplace();
  const Complex k = fs.wavenumber();
  Vec2 x = curve.point(t0);
  auto kfull = [&](double u, double R, const Vec2&) -> Complex {
    return fs.S_of_r(u * R);
  };
  auto klog = [&](double u, double R, const Vec2&) -> Complex {
    if (laplace) return Complex(1.0 / (2 * pi), 0);
    return bessel::J(0, k * u * R) / (2 * pi);
  };
  return polar_singular_quadrature(curve, f, x, radial_M, angular_K,
                                   ang.nodes, ang.weights, rays, kfull, klog);
}

Complex volume_grad_eval_at(const FundamentalSolution& fs,
                            const BoundaryCurve& curve, const ScalarField& f1,
                            const ScalarField& f2, const Vec2& x, int radial_M,
                            int angular_K) {
  RayTable rays(curve, x);
  RVec ang(angular_K), wa(angular_K);
  for (int j = 0; j < angular_K; ++j) {
    ang(j) = 2.0 * pi * j / angular_K;
    wa(j) = 2.0 * pi / angular_K;
  }
  const bool laplace = fs.is_laplace();
  const Complex k = fs.wavenumber();

  // Direction-weighted field (f1, f2) . e(phi); the e dependence is folded
  // into the "density" so the scalar core applies.
  Vec2 cur_e = Vec2::Zero();
  auto fdir = [&](const Vec2& y) -> Complex {
    Complex v = 0;
    if (f1) v += f1(y) * cur_e.x();
    if (f2) v += f2(y) * cur_e.y();
    return v;
  };
  // dS/dy_j (x - y) with y = x + u R e  equals  S'(uR) e_j; the ln u
  // coefficient of S'(r) is -(k/(2 pi)) J_1(k r) for the Helmholtz kernel
  // and zero for the Laplace one (u S'(uR) = 1/(2 pi R) is already smooth).
  GaussRule radial = gauss_legendre(radial_M, 0.0, 1.0);
  RVec wlog = radial_log_weights(radial);
  Complex total = 0;
  for (int j = 0; j < angular_K; ++j) {
    double phi = ang(j);
    double R = rays.distance(phi);
    if (!(R > 0)) continue;
    cur_e = Vec2(std::cos(phi), std::sin(phi));
    Complex sum = 0;
    for (int i = 0; i < radial_M; ++i) {
      double u = radial.nodes(i);
      Vec2 y = x + u * R * cur_e;
      Complex fv = fdir(y);
      Complex C = laplace ? Complex(0, 0)
                          : -(k / (2 * pi)) * bessel::J(1, k * u * R);
      Complex smooth = fs.dS_of_r(u * R) - C * std::log(u);
      sum += radial.weights(i) * u * smooth * fv + wlog(i) * C * fv;
    }
    total += wa(j) * R * R * sum;
  }
  return total;
}

Complex volume_eval_field(const FundamentalSolution& fs,
                          const NegExponentField& f, const Vec2& x,
                          int radial_M, int angular_K) {
  if (!f.mesh) throw StateError("volume_eval_field: field has no mesh");
  const BoundaryCurve& curve = *f.mesh->curve;
  double tn = nearest_parameter(curve, x);
  bool outside = (x - curve.point(tn)).dot(curve.normal(tn)) > 0;

  if (outside) {
    // P[E#f](x) = pair_sharp(f, S(x - .)) on the fixed mesh
    InteriorFunction v;
    v.value = [&fs, x](const Vec2& y) { return fs.S_of_r((x - y).norm()); };
    v.grad = [&fs, x](const Vec2& y) {
      CVec2 g = fs.grad_S(Vec2(x - y));
      return CVec2(-g(0), -g(1));
    };
    return pair_sharp(f, v);
  }

  if (!f.f0_fn && !f.f1_fn && !f.f2_fn)
    throw StateError(
        "volume_eval_field: interior target needs functor-backed components");
  Complex acc = 0;
  if (f.f0_fn)
    acc += volume_eval_at(fs, curve, f.f0_fn, x, radial_M, angular_K);
  // boundary term of the pairing: int nu . (f1, f2) S(x - y) dsigma
  if ((f.f1_fn || f.f2_fn)) {
    if (!f.trace_grid)
      throw ContractError("volume_eval_field: traces required");
    const BoundaryGrid& g = *f.trace_grid;
    for (int i = 0; i < g.N; ++i) {
      Complex fn = 0;
      if (f.f1_fn) fn += g.nu(i).x() * f.tr1(i);
      if (f.f2_fn) fn += g.nu(i).y() * f.tr2(i);
      acc += g.weight(i) * fn * fs.S_of_r((x - g.pt(i)).norm());
    }
    // minus int (f1, f2) . grad_y S(x - y) dy
    acc -= volume_grad_eval_at(fs, curve, f.f1_fn, f.f2_fn, x, radial_M,
                               angular_K);
  }
  return acc;
}

Complex extrapolate_to_zero(const RVec& offsets, const CVec& samples) {
  // Neville's scheme at 0
  int n = int(offsets.size());
  if (samples.size() != n || n == 0)
    throw ShapeError("extrapolate_to_zero: size mismatch");
  CVec p = samples;
  for (int level = 1; level < n; ++level)
    for (int i = 0; i < n - level; ++i)
      p(i) = (offsets(i + level) * p(i) - offsets(i) * p(i + 1)) /
             (offsets(i + level) - offsets(i));
  return p(0);
}

}  // namespace hlayers
