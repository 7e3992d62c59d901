#ifndef HLAYERS_QUADRATURE_HPP
#define HLAYERS_QUADRATURE_HPP

#include <utility>

#include "hlayers/types.hpp"

namespace hlayers {

// Gauss-Legendre rule on [-1,1].
struct GaussRule {
  RVec nodes;
  RVec weights;
};
GaussRule gauss_legendre(int n);

// Rule mapped to [a,b].
GaussRule gauss_legendre(int n, double a, double b);

// Quadrature weights R_{|i-j|} for the periodic logarithmic rule
//   int_0^{2pi} ln(4 sin^2((t_i - s)/2)) f(s) ds  ~=  sum_j R[(i-j) mod N] f(t_j)
// on the N-point uniform grid (N even); exact for trigonometric polynomials
// of degree < N/2.
RVec kress_log_weights(int N);

// Weights hat-w_i against the Gauss-Legendre nodes u_i of `rule` (mapped to
// [0,1]) such that  sum_i hat-w_i f(u_i)  ~=  int_0^1 f(u) u ln(u) du
// with spectral accuracy for smooth f.
RVec radial_log_weights(const GaussRule& rule01);

}  // namespace hlayers

#endif
