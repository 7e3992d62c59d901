#include "hlayers/density.hpp"

#include <cmath>

namespace hlayers {

GridDensity::GridDensity(GridPtr g, CVec v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw StateError("GridDensity: null grid");
  if (int(values.size()) != grid->N)
    throw ShapeError("GridDensity: length does not match grid");
  for (int i = 0; i < values.size(); ++i)
    if (!std::isfinite(values(i).real()) || !std::isfinite(values(i).imag()))
      throw DataError("GridDensity: non-finite entry");
}

GridDensity GridDensity::constant(GridPtr g, Complex c) {
  return GridDensity(g, CVec::Constant(g->N, c));
}

GridDensity GridDensity::from_function(
    GridPtr g, const std::function<Complex(double)>& f) {
  CVec v(g->N);
  for (int i = 0; i < g->N; ++i) v(i) = f(g->t(i));
  return GridDensity(std::move(g), std::move(v));
}

NegSchauderDensity::NegSchauderDensity(GridDensity m0, GridDensity m1)
    : mu0(std::move(m0)), mu1(std::move(m1)) {
  if (mu0.grid != mu1.grid)
    throw ShapeError("NegSchauderDensity: slots must share one grid");
}

NegExponentField NegExponentField::from_functions(MeshPtr mesh,
                                                  GridPtr trace_grid,
                                                  ScalarField f0,
                                                  ScalarField f1,
                                                  ScalarField f2) {
  NegExponentField f;
  f.mesh = std::move(mesh);
  f.trace_grid = std::move(trace_grid);
  f.f0_fn = std::move(f0);
  f.f1_fn = std::move(f1);
  f.f2_fn = std::move(f2);
  const int n = f.mesh->size();
  auto sample = [&](const ScalarField& fn, CVec& out) {
    if (!fn) return;
    out.resize(n);
    for (int i = 0; i < n; ++i) out(i) = fn(f.mesh->pt(i));
  };
  sample(f.f0_fn, f.f0);
  sample(f.f1_fn, f.f1);
  sample(f.f2_fn, f.f2);
  if (f.trace_grid) {
    auto trace = [&](const ScalarField& fn, CVec& out) {
      if (!fn) return;
      out.resize(f.trace_grid->N);
      for (int i = 0; i < f.trace_grid->N; ++i)
        out(i) = fn(f.trace_grid->pt(i));
    };
    trace(f.f1_fn, f.tr1);
    trace(f.f2_fn, f.tr2);
  }
  return f;
}

Complex pair_sharp(const NegExponentField& f, const InteriorFunction& v) {
  if (!f.mesh) throw StateError("pair_sharp: field has no mesh");
  if (!v.value) throw ContractError("pair_sharp: v has no evaluator");
  const AreaMesh& mesh = *f.mesh;
  Complex acc = 0;

  const bool has1 = f.f1.size() > 0, has2 = f.f2.size() > 0;
  if (f.f0.size() > 0) {
    for (int i = 0; i < mesh.size(); ++i)
      acc += mesh.weight(i) * f.f0(i) * v.value(mesh.pt(i));
  }
  if (has1 || has2) {
    if (!f.trace_grid)
      throw ContractError("pair_sharp: gradient components need traces");
    if (!v.grad)
      throw ContractError("pair_sharp: gradient components need grad v");
    const BoundaryGrid& g = *f.trace_grid;
    if ((has1 && int(f.tr1.size()) != g.N) ||
        (has2 && int(f.tr2.size()) != g.N))
      throw ShapeError("pair_sharp: trace length mismatch");
    for (int i = 0; i < g.N; ++i) {
      Complex fn = 0;
      if (has1) fn += g.nu(i).x() * f.tr1(i);
      if (has2) fn += g.nu(i).y() * f.tr2(i);
      Complex vb;
      if (v.trace) {
        if (v.trace->grid.get() != &g)
          throw ShapeError("pair_sharp: v trace on a different grid");
        vb = v.trace->values(i);
      } else {
        vb = v.value(g.pt(i));
      }
      acc += g.weight(i) * fn * vb;
    }
    for (int i = 0; i < mesh.size(); ++i) {
      CVec2 gv = v.grad(mesh.pt(i));
      Complex s = 0;
      if (has1) s += f.f1(i) * gv(0);
      if (has2) s += f.f2(i) * gv(1);
      acc -= mesh.weight(i) * s;
    }
  }
  return acc;
}

}  // namespace hlayers
