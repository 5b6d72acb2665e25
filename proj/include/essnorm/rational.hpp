#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace essnorm {

/// Complex number with exact rational real and imaginary parts.
struct QComplex {
  mpq_class re;
  mpq_class im;

  QComplex() : re(0), im(0) {}
  QComplex(const mpq_class& r) : re(r), im(0) {}  // NOLINT: implicit by intent
  QComplex(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}
  QComplex(long r) : re(r), im(0) {}  // NOLINT
  QComplex(long r, long i) : re(r), im(i) {}

  /// Exact binary value of a double pair. Callers flag the result inexact.
  static QComplex from_double(std::complex<double> v);

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] mpq_class norm() const { return re * re + im * im; }
  [[nodiscard]] std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o);
  QComplex& operator*=(const mpq_class& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator*(QComplex a, const mpq_class& s) { return a *= s; }
  friend QComplex operator*(const mpq_class& s, QComplex a) { return a *= s; }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

inline QComplex conj(const QComplex& z) { return {z.re, -z.im}; }
QComplex operator/(const QComplex& a, const QComplex& b);

/// Integer power with exponent >= 0.
mpq_class pow(const mpq_class& base, unsigned exponent);
QComplex pow(const QComplex& base, unsigned exponent);

/// Result of parsing a number literal. `exact` is false for decimal or
/// exponent notation, which the symbol layer propagates as an inexact flag.
struct ParsedRational {
  mpq_class value;
  bool exact = true;
};

/// Accepts "p", "p/q", "-p/q", decimals "1.25", and exponent forms "1e-3".
/// Throws std::invalid_argument on anything else.
ParsedRational parse_rational(std::string_view text);

/// "p" or "p/q" in lowest terms.
std::string to_string(const mpq_class& q);

}  // namespace essnorm
