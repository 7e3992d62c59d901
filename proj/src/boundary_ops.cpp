#include "hlayers/boundary_ops.hpp"

#include <cmath>

#include "hlayers/bessel.hpp"
#include "hlayers/quadrature.hpp"

namespace hlayers {

CMat BoundaryOperator::weighted_transpose() const {
  const RVec& w = grid->weight;
  CMat T = A.transpose();
  for (int i = 0; i < T.rows(); ++i)
    for (int j = 0; j < T.cols(); ++j) T(i, j) *= w(j) / w(i);
  return T;
}

Complex weighted_dot(const BoundaryGrid& g, const CVec& a, const CVec& b) {
  if (a.size() != g.N || b.size() != g.N)
    throw ShapeError("weighted_dot: length mismatch");
  Complex s = 0;
  for (int i = 0; i < g.N; ++i) s += g.weight(i) * a(i) * b(i);
  return s;
}

namespace {

double log4sin2(double ti, double tj) {
  double s = std::sin(0.5 * (ti - tj));
  return std::log(4.0 * s * s);
}

}  // namespace

BoundaryOperator assemble_V(const FundamentalSolution& fs, const GridPtr& g) {
  const BoundaryGrid& gr = *g;
  const int N = gr.N;
  RVec R = kress_log_weights(N);
  CMat A(N, N);
  const bool laplace = fs.is_laplace();
  const Complex k = fs.wavenumber();
  const double wtrap = 2.0 * pi / N;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double Rw = R((i - j + N) % N);
      double sp = gr.speed(j);
      Complex M1, M2;
      if (i == j) {
        if (laplace) {
          M1 = sp / (4 * pi);
          M2 = sp * std::log(sp) / (2 * pi);
        } else {
          M1 = sp / (4 * pi);
          M2 = sp * (Complex(0, -0.25) +
                     (euler_gamma + std::log(0.5 * k * sp)) / (2 * pi));
        }
      } else {
        double r = (gr.pt(i) - gr.pt(j)).norm();
        double l4 = log4sin2(gr.t(i), gr.t(j));
        if (laplace) {
          M1 = sp / (4 * pi);
          M2 = sp / (4 * pi) * (2.0 * std::log(r) - l4);
        } else {
          auto b = bessel::cyl01(k * r);
          M1 = b.j0 * sp / (4 * pi);
          Complex M = Complex(0, -0.25) * b.h0() * sp;
          M2 = M - M1 * l4;
        }
      }
      A(i, j) = Rw * M1 + wtrap * M2;
    }
  }
  return BoundaryOperator{g, std::move(A)};
}

namespace {

// W and Wt share everything except which normal enters the kernel numerator
// and one sign.
BoundaryOperator assemble_dlp_family(const FundamentalSolution& fs,
                                     const GridPtr& g, bool transpose) {
  const BoundaryGrid& gr = *g;
  const int N = gr.N;
  RVec R = kress_log_weights(N);
  CMat A(N, N);
  const bool laplace = fs.is_laplace();
  const Complex k = fs.wavenumber();
  const double wtrap = 2.0 * pi / N;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double sp = gr.speed(j);
      if (i == j) {
        A(i, i) = wtrap * gr.kappa(i) * sp / (4 * pi);
        continue;
      }
      Vec2 d = gr.pt(i) - gr.pt(j);
      double r = d.norm();
      double dn = transpose ? d.dot(gr.nu(i)) : d.dot(gr.nu(j));
      double sgn = transpose ? 1.0 : -1.0;
      if (laplace) {
        A(i, j) = wtrap * sgn * dn * sp / (2 * pi * r * r);
      } else {
        auto b = bessel::cyl01(k * r);
        Complex L = sgn * Complex(0, 0.25) * k * b.h1() * dn * sp / r;
        Complex L1 = -sgn * (k / (4 * pi)) * b.j1 * dn * sp / r;
        Complex L2 = L - L1 * log4sin2(gr.t(i), gr.t(j));
        A(i, j) = R((i - j + N) % N) * L1 + wtrap * L2;
      }
    }
  }
  return BoundaryOperator{g, std::move(A)};
}

}  // namespace

BoundaryOperator assemble_W(const FundamentalSolution& fs, const GridPtr& g) {
  return assemble_dlp_family(fs, g, false);
}

BoundaryOperator assemble_Wt(const FundamentalSolution& fs, const GridPtr& g) {
  return assemble_dlp_family(fs, g, true);
}

HarmonicOps::HarmonicOps(GridPtr grid) : grid_(std::move(grid)) {
  FundamentalSolution fs0(0.0, 2);
  const int N = grid_->N;
  V0_ = assemble_V(fs0, grid_).A;
  W0_ = assemble_W(fs0, grid_).A;
  Wt0_ = assemble_Wt(fs0, grid_).A;

  CMat B = CMat::Zero(N + 1, N + 1);
  B.topLeftCorner(N, N) = V0_;
  for (int i = 0; i < N; ++i) {
    B(i, N) = 1.0;
    B(N, i) = grid_->weight(i);
  }
  bordered_.compute(B);
  rcond_ = bordered_.rcond();
  if (!(rcond_ > 1e-14))
    throw CapacityError(
        "augmented harmonic single-layer system is numerically singular; "
        "rescale the domain");

  CMat rhs = CMat::Zero(N + 1, N);
  rhs.topLeftCorner(N, N).setIdentity();
  CMat sol = bordered_.solve(rhs);
  CMat Psi = sol.topRows(N);
  dtn_ = (-0.5 * CMat::Identity(N, N) + Wt0_) * Psi;
}

CVec HarmonicOps::apply_dtn_transpose(const CVec& v) const {
  const RVec& w = grid_->weight;
  CVec u = dtn_.transpose() * (w.cast<Complex>().asDiagonal() * v);
  for (int i = 0; i < u.size(); ++i) u(i) /= w(i);
  return u;
}

HarmonicOps::Extension HarmonicOps::extend(const CVec& v) const {
  const int N = grid_->N;
  if (v.size() != N) throw ShapeError("HarmonicOps::extend: length mismatch");
  CVec rhs(N + 1);
  rhs.head(N) = v;
  rhs(N) = 0;
  CVec sol = bordered_.solve(rhs);
  return Extension{sol.head(N), sol(N)};
}

InteriorFunction HarmonicOps::green(const GridDensity& v,
                                    EvalOptions opts) const {
  if (v.grid != grid_) throw ShapeError("green: density on a different grid");
  Extension ext = extend(v.values);
  FundamentalSolution fs0(0.0, 2);
  auto lp = std::make_shared<LayerPotential>(
      fs0, GridDensity(grid_, ext.psi), Layer::single, opts);
  Complex c = ext.c;
  InteriorFunction f;
  f.value = [lp, c](const Vec2& p) { return lp->value(p) + c; };
  f.grad = [lp](const Vec2& p) { return lp->gradient(p); };
  f.trace = v;
  return f;
}

BoundaryOperator steklov_poincare(const HarmonicOps& ops) {
  return BoundaryOperator{ops.grid_ptr(), ops.dtn()};
}

InteriorFunction green_dirichlet(const HarmonicOps& ops, const GridDensity& v,
                                 EvalOptions opts) {
  return ops.green(v, opts);
}

GridDensity materialize_pair(const HarmonicOps& ops,
                             const NegSchauderDensity& tau) {
  if (tau.mu0.grid != ops.grid_ptr())
    throw ShapeError("materialize_pair: density on a different grid");
  return GridDensity(ops.grid_ptr(),
                     tau.mu0.values + ops.apply_dtn_transpose(tau.mu1.values));
}

Complex pair_tau(const NegSchauderDensity& tau, const GridDensity& v,
                 const HarmonicOps& ops) {
  if (tau.mu0.grid != v.grid)
    throw ShapeError("pair_tau: operands on different grids");
  if (tau.mu0.grid != ops.grid_ptr())
    throw StateError("pair_tau: operator context built on a different grid");
  const BoundaryGrid& g = ops.grid();
  Complex s = weighted_dot(g, tau.mu0.values, v.values);
  s += weighted_dot(g, tau.mu1.values, ops.apply_dtn(v.values));
  return s;
}

GridDensity j_regularizer(const HarmonicOps& ops,
                          const NegSchauderDensity& tau) {
  const BoundaryGrid& g = ops.grid();
  GridDensity one = GridDensity::constant(ops.grid_ptr(), 1.0);
  Complex mean = pair_tau(tau, one, ops) /
                 weighted_dot(g, one.values, one.values);
  NegSchauderDensity shifted(
      GridDensity(ops.grid_ptr(),
                  (tau.mu0.values.array() - mean).matrix()),
      tau.mu1);
  GridDensity grid_rep = materialize_pair(ops, shifted);
  CVec out = ops.V0() * grid_rep.values;
  out.array() += mean;
  return GridDensity(ops.grid_ptr(), std::move(out));
}

Complex dist_normal_derivative(const InteriorFunction& u, const GridDensity& v,
                               const HarmonicOps& ops) {
  if (!u.trace)
    throw ContractError("dist_normal_derivative: u has no boundary trace");
  if (!u.laplacian)
    throw ContractError(
        "dist_normal_derivative: u has no Laplacian field (supply an empty "
        "field for zero)");
  if (u.trace->grid != ops.grid_ptr() || v.grid != ops.grid_ptr())
    throw ShapeError("dist_normal_derivative: grid mismatch");
  const BoundaryGrid& g = ops.grid();
  Complex term1 = weighted_dot(g, u.trace->values, ops.apply_dtn(v.values));
  InteriorFunction gv = ops.green(v);
  Complex term2 = pair_sharp(*u.laplacian, gv);
  return term1 + term2;
}

CVec slp_eval_pair(const FundamentalSolution& fs, const NegSchauderDensity& tau,
                   const RMat& pts, const HarmonicOps& ops, PairMode mode,
                   int radial_M, int angular_K, const EvalOptions& opts) {
  if (mode == PairMode::direct) {
    return slp_eval(fs, materialize_pair(ops, tau), pts, opts);
  }
  // representation route
  CVec out = slp_eval(fs, tau.mu0, pts, opts);
  InteriorFunction G = ops.green(tau.mu1, opts);
  LayerPotential dl(fs, tau.mu1, Layer::double_layer, opts);
  const BoundaryCurve& curve = *ops.grid().curve;
  const Complex lambda = fs.lambda();
  AreaMesh fixed;
  CVec gv;
  bool have_fixed = false;
  for (int q = 0; q < pts.cols(); ++q) {
    Vec2 p = pts.col(q);
    auto px = dl.locate(p);
    Complex vol = 0;
    if (lambda != Complex(0, 0)) {
      if (!px.exterior) {
        vol = volume_eval_at(fs, curve, G.value, p, radial_M, angular_K);
      } else {
        if (!have_fixed) {
          fixed = make_area_mesh(ops.grid().curve, radial_M, angular_K,
                                 curve.centroid());
          gv.resize(fixed.size());
          for (int i = 0; i < fixed.size(); ++i) gv(i) = G.value(fixed.pt(i));
          have_fixed = true;
        }
        RMat single(2, 1);
        single.col(0) = p;
        vol = volume_eval(fs, fixed, gv, single)(0);
      }
    }
    Complex val = lambda * vol + dl.value(p);
    if (!px.exterior) val -= G.value(p);
    out(q) += val;
  }
  return out;
}

}  // namespace hlayers
