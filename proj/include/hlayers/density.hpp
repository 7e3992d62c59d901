#ifndef HLAYERS_DENSITY_HPP
#define HLAYERS_DENSITY_HPP

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "hlayers/area_mesh.hpp"
#include "hlayers/grid.hpp"
#include "hlayers/types.hpp"

namespace hlayers {

using MeshPtr = std::shared_ptr<const AreaMesh>;
using ScalarField = std::function<Complex(const Vec2&)>;
using VectorField = std::function<CVec2(const Vec2&)>;

// Samples of a continuous boundary density at the grid nodes.
struct GridDensity {
  GridPtr grid;
  CVec values;

  GridDensity() = default;
  GridDensity(GridPtr g, CVec v);
  static GridDensity constant(GridPtr g, Complex c);
  static GridDensity from_function(GridPtr g,
                                   const std::function<Complex(double)>& f);

  int size() const { return int(values.size()); }
};

// An element tau = mu0 + S^t[mu1] of the distributional boundary space,
// carried as its pair of smooth representatives and never materialized
// except through pairings or operators applied to the pair.
struct NegSchauderDensity {
  GridDensity mu0;
  GridDensity mu1;

  NegSchauderDensity() = default;
  NegSchauderDensity(GridDensity m0, GridDensity m1);
};

// f = f0 + d/dx f1 + d/dy f2 with Hoelder components, sampled on an area
// mesh; boundary traces of f1, f2 are supplied explicitly. The optional
// functors allow resampling onto target-centered meshes.
struct NegExponentField {
  MeshPtr mesh;
  CVec f0, f1, f2;  // empty vector means identically zero
  GridPtr trace_grid;
  CVec tr1, tr2;
  ScalarField f0_fn, f1_fn, f2_fn;

  static NegExponentField from_functions(MeshPtr mesh, GridPtr trace_grid,
                                         ScalarField f0, ScalarField f1,
                                         ScalarField f2);
};

// u and grad u evaluable in the interior, with optional boundary trace and
// optional distributional Laplacian.
struct InteriorFunction {
  ScalarField value;
  VectorField grad;
  std::optional<GridDensity> trace;
  std::shared_ptr<const NegExponentField> laplacian;
};

// <E_sharp[f], v> = int f0 v + int_bdry (nu . (f1,f2)) v - int (f1,f2).grad v
Complex pair_sharp(const NegExponentField& f, const InteriorFunction& v);

}  // namespace hlayers

#endif
