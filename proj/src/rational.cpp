#include "essnorm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace essnorm {

QComplex QComplex::from_double(std::complex<double> v) {
  return {mpq_class(v.real()), mpq_class(v.imag())};
}

QComplex& QComplex::operator*=(const QComplex& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

QComplex operator/(const QComplex& a, const QComplex& b) {
  const mpq_class d = b.norm();
  if (sgn(d) == 0) throw std::domain_error("QComplex division by zero");
  QComplex q = a * conj(b);
  q.re /= d;
  q.im /= d;
  return q;
}

mpq_class pow(const mpq_class& base, unsigned exponent) {
  mpq_class result(1);
  mpq_class b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent != 0) b *= b;
  }
  return result;
}

QComplex pow(const QComplex& base, unsigned exponent) {
  QComplex result(1);
  QComplex b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent != 0) b *= b;
  }
  return result;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  mpz_class z;
  if (z.set_str(std::string(s), 10) != 0) throw std::invalid_argument("bad integer: " + std::string(s));
  return z;
}

}  // namespace

ParsedRational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty number");

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  ParsedRational out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("bad rational: " + std::string(text));
    const mpz_class d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    out.value = mpq_class(parse_integer(num), d);
    out.value.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      auto exp_text = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_neg = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) throw std::invalid_argument("bad exponent: " + std::string(text));
      exponent = std::stol(std::string(exp_text));
      if (exp_neg) exponent = -exponent;
      out.exact = false;
    }
    std::string digits;
    long frac_len = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      const auto ip = mantissa.substr(0, dot);
      const auto fp = mantissa.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
        throw std::invalid_argument("bad decimal: " + std::string(text));
      digits = std::string(ip) + std::string(fp);
      frac_len = static_cast<long>(fp.size());
      out.exact = false;
    } else {
      if (!all_digits(mantissa)) throw std::invalid_argument("bad number: " + std::string(text));
      digits = std::string(mantissa);
    }
    const long shift = exponent - frac_len;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    const mpz_class m = parse_integer(digits);
    out.value = shift >= 0 ? mpq_class(m * scale) : mpq_class(m, scale);
    out.value.canonicalize();
  }
  if (negative) out.value = -out.value;
  return out;
}

std::string to_string(const mpq_class& q) { return q.get_str(10); }

}  // namespace essnorm
