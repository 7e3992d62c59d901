#include "hlayers/bessel.hpp"

#include <cmath>
#include <limits>

namespace hlayers::bessel {

namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxAbsZ = 1e4;

void check_args(int order, Complex z) {
  if (order < 0 || order > kMaxOrder)
    throw std::domain_error("bessel: order out of range [0,200]");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(z) >= kMaxAbsZ)
    throw std::domain_error("bessel: |z| out of documented range");
}

// Ascending series, fine for |z| <= 2 at any order.
Complex j_series(int n, Complex z) {
  Complex zh = 0.5 * z;
  // (z/2)^n / n!
  Complex lead = 1.0;
  for (int m = 1; m <= n; ++m) lead *= zh / double(m);
  Complex q = -zh * zh;
  Complex term = lead, sum = lead;
  for (int m = 1; m < 60; ++m) {
    term *= q / double(m * (n + m));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

double harmonic(int m) {
  double h = 0;
  for (int k = 1; k <= m; ++k) h += 1.0 / k;
  return h;
}

// Y_0, Y_1 by the standard logarithmic series; |z| <= 2.
void y01_series(Complex z, Complex j0, Complex j1, Complex& y0, Complex& y1) {
  Complex lg = std::log(0.5 * z) + euler_gamma;
  Complex q = 0.25 * z * z;

  Complex term = 1.0, sum0 = 0.0;
  for (int m = 1; m < 40; ++m) {
    term *= -q / double(m * m);
    Complex add = -term * harmonic(m);  // (-1)^{m+1} H_m q^m/(m!)^2
    sum0 += add;
    if (std::abs(add) < 1e-18) break;
  }
  y0 = (2.0 / pi) * (lg * j0 + sum0);

  // sum_k (-1)^k (H_k + H_{k+1}) q^k / (k! (k+1)!)
  Complex t1 = 1.0, sum1 = harmonic(1);
  for (int k = 1; k < 40; ++k) {
    t1 *= -q / double(k * (k + 1));
    Complex add = t1 * (harmonic(k) + harmonic(k + 1));
    sum1 += add;
    if (std::abs(add) < 1e-18) break;
  }
  y1 = (2.0 / pi) * lg * j1 - 2.0 / (pi * z) - (z / (2.0 * pi)) * sum1;
}

// Backward (Miller) recurrence; returns J_0..J_nmax.
std::vector<Complex> miller(int nmax, Complex z) {
  double az = std::abs(z);
  int base = std::max(nmax, int(std::ceil(az)));
  int start = base + 30 + int(13.0 * std::cbrt(az + 1.0));

  std::vector<Complex> out(nmax + 1, Complex(0, 0));
  Complex jp1 = 0.0, j = 1e-300;
  Complex even_sum = 0.0;  // sum of J_{2k}, k>=1, unnormalized
  const double big = 1e250;
  for (int m = start; m >= 1; --m) {
    Complex jm1 = (2.0 * m / z) * j - jp1;
    jp1 = j;
    j = jm1;
    int ord = m - 1;  // value just produced is J_{ord}
    if (ord > 0 && ord % 2 == 0) even_sum += j;
    if (ord <= nmax) out[ord] = j;
    if (std::abs(j.real()) > big || std::abs(j.imag()) > big) {
      j /= big;
      jp1 /= big;
      even_sum /= big;
      for (auto& v : out) v /= big;
    }
  }
  Complex norm = j + 2.0 * even_sum;  // = J_0 + 2 sum J_{2k} -> 1
  for (auto& v : out) v /= norm;
  return out;
}

// Y_0 and Y_1 from the Neumann series over a J array (2 < |z|).
//   Y_0 = (2/pi)[(ln(z/2)+gamma) J_0 + 2 sum_k (-1)^{k+1} J_{2k}/k]
//   Y_1 = -Y_0'
void y01_neumann(Complex z, const std::vector<Complex>& js, Complex& y0,
                 Complex& y1) {
  Complex lg = std::log(0.5 * z) + euler_gamma;
  int top = int(js.size()) - 1;
  Complex s = 0.0, sp = 0.0;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    double sgn = (k % 2 == 1) ? 1.0 : -1.0;
    s += sgn * js[2 * k] / double(k);
    sp += sgn * 0.5 * (js[2 * k - 1] - js[2 * k + 1]) / double(k);
  }
  y0 = (2.0 / pi) * (lg * js[0] + 2.0 * s);
  // derivative of the expression above, J_0' = -J_1
  y1 = -(2.0 / pi) * (js[0] / z - lg * js[1] + 2.0 * sp);
}

// Hankel asymptotic expansion, real z only. Returns H^(1)_n(z).
Complex h1_asymptotic(int n, double x) {
  double mu = 4.0 * n * n;
  Complex sum = 1.0, term = 1.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 40; ++k) {
    double num = mu - double(2 * k - 1) * double(2 * k - 1);
    term *= Complex(0, 1) * num / (8.0 * x * double(k));
    double a = std::abs(term);
    if (a >= prev) break;  // asymptotic tail started growing
    sum += term;
    prev = a;
    if (a < 1e-18) break;
  }
  double omega = x - 0.5 * n * pi - 0.25 * pi;
  return std::sqrt(2.0 / (pi * x)) * std::exp(Complex(0, omega)) * sum;
}

bool asymptotic_ok(int n, Complex z) {
  return z.imag() == 0.0 && z.real() >= 36.0 && n <= 8;
}

struct YPair {
  Complex y0, y1;
};

YPair y01_any(Complex z) {
  YPair r;
  if (std::abs(z) <= 2.0) {
    y01_series(z, j_series(0, z), j_series(1, z), r.y0, r.y1);
  } else if (asymptotic_ok(1, z)) {
    r.y0 = h1_asymptotic(0, z.real()).imag();
    r.y1 = h1_asymptotic(1, z.real()).imag();
  } else {
    int deep = std::max(2, int(std::ceil(std::abs(z)))) + 30 +
               int(13.0 * std::cbrt(std::abs(z) + 1.0));
    auto all = miller(deep, z);
    y01_neumann(z, all, r.y0, r.y1);
  }
  return r;
}

}  // namespace

std::vector<Complex> J_array(int nmax, Complex z) {
  check_args(nmax, z);
  if (std::abs(z) <= 2.0) {
    std::vector<Complex> out(nmax + 1);
    for (int n = 0; n <= nmax; ++n) out[n] = j_series(n, z);
    return out;
  }
  return miller(nmax, z);
}

Complex J(int order, Complex z) {
  check_args(order, z);
  if (std::abs(z) <= 2.0) return j_series(order, z);
  if (asymptotic_ok(order, z)) {
    // J = Re H1 for real argument
    return h1_asymptotic(order, z.real()).real();
  }
  return miller(order, z)[order];
}

Complex Y(int order, Complex z) {
  check_args(order, z);
  if (asymptotic_ok(order, z)) return h1_asymptotic(order, z.real()).imag();
  YPair p = y01_any(z);
  if (order == 0) return p.y0;
  if (order == 1) return p.y1;
  // upward recurrence is stable for Y
  Complex ym1 = p.y0, y = p.y1;
  for (int m = 1; m < order; ++m) {
    Complex yp1 = (2.0 * m / z) * y - ym1;
    ym1 = y;
    y = yp1;
  }
  return y;
}

Complex H1(int order, Complex z) {
  if (asymptotic_ok(order, z)) {
    check_args(order, z);
    return h1_asymptotic(order, z.real());
  }
  return J(order, z) + Complex(0, 1) * Y(order, z);
}

Complex Jp(int order, Complex z) {
  if (order == 0) return -J(1, z);
  return 0.5 * (J(order - 1, z) - J(order + 1, z));
}

Complex Yp(int order, Complex z) {
  if (order == 0) return -Y(1, z);
  return 0.5 * (Y(order - 1, z) - Y(order + 1, z));
}

Complex H1p(int order, Complex z) {
  return Jp(order, z) + Complex(0, 1) * Yp(order, z);
}

Bessel01 cyl01(Complex z) {
  check_args(1, z);
  Bessel01 r;
  double az = std::abs(z);
  if (az <= 2.0) {
    r.j0 = j_series(0, z);
    r.j1 = j_series(1, z);
    y01_series(z, r.j0, r.j1, r.y0, r.y1);
    return r;
  }
  if (asymptotic_ok(1, z)) {
    Complex h0 = h1_asymptotic(0, z.real());
    Complex h1 = h1_asymptotic(1, z.real());
    r.j0 = h0.real();
    r.y0 = h0.imag();
    r.j1 = h1.real();
    r.y1 = h1.imag();
    return r;
  }
  int deep = std::max(2, int(std::ceil(az))) + 30 +
             int(13.0 * std::cbrt(az + 1.0));
  auto all = miller(deep, z);
  r.j0 = all[0];
  r.j1 = all[1];
  y01_neumann(z, all, r.y0, r.y1);
  return r;
}

}  // namespace hlayers::bessel
