#pragma once

#include <complex>
#include <string>

namespace essnorm {

/// x^n for n >= 0 by repeated squaring; ipow(0, 0) == 1.
inline std::complex<double> ipow(std::complex<double> x, int n) {
  std::complex<double> r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= x;
    n >>= 1;
    if (n > 0) x *= x;
  }
  return r;
}

/// x^n for any integer n; ipow(0, 0) == 1.
inline double ipow(double x, int n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    n >>= 1;
    if (n > 0) x *= x;
  }
  return r;
}

/// Twelve significant digits, the precision of every printed report value.
std::string format12(double v);

}  // namespace essnorm
