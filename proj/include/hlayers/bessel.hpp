#ifndef HLAYERS_BESSEL_HPP
#define HLAYERS_BESSEL_HPP

// Cylinder functions J_n, Y_n, H^(1)_n of nonnegative integer order and
// complex argument, accurate to ~1e-14 relative on the documented range
// (order <= 200, |z| < 1e4).
//
// Three evaluation regimes:
//   |z| <= 2          ascending power series (no cancellation),
//   2 < |z|           Miller backward recurrence normalized by
//                     J_0 + 2*sum J_{2k} = 1, with Y_0 and Y_1 from the
//                     Neumann-type logarithmic series over the same J array,
//   real z >= 36      Hankel amplitude/phase asymptotic series for small
//                     orders (fast path; falls back to the recurrence
//                     otherwise).
//
// Branch convention: principal logarithm, cut on the negative real axis.

#include <vector>

#include "hlayers/types.hpp"

namespace hlayers::bessel {

Complex J(int order, Complex z);
Complex Y(int order, Complex z);
Complex H1(int order, Complex z);

Complex Jp(int order, Complex z);
Complex Yp(int order, Complex z);
Complex H1p(int order, Complex z);

// J_0..J_nmax in one backward-recurrence pass.
std::vector<Complex> J_array(int nmax, Complex z);

// Orders 0 and 1 together; this is the kernel-assembly hot path.
struct Bessel01 {
  Complex j0, j1, y0, y1;
  Complex h0() const { return j0 + Complex(0, 1) * y0; }
  Complex h1() const { return j1 + Complex(0, 1) * y1; }
};
Bessel01 cyl01(Complex z);

}  // namespace hlayers::bessel

#endif
