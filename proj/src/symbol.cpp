#include "essnorm/symbol.hpp"

#include "essnorm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace essnorm {

Symbol Symbol::constant(const QComplex& c) { return monomial({0, 0, 0, 0}, c); }

Symbol Symbol::monomial(const Exponent& e, const QComplex& c) {
  if (e.z < 0 || e.zbar < 0 || e.w < 0 || e.wbar < 0) throw std::invalid_argument("negative exponent");
  Symbol s;
  s.add_term(e, c);
  return s;
}

int Symbol::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

bool Symbol::holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.zbar == 0 && t.first.wbar == 0; });
}

bool Symbol::depends_only_on_z() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.w == 0 && t.first.wbar == 0; });
}

void Symbol::add_term(const Exponent& e, const QComplex& coef) {
  QComplex c = coef;
  c.re.canonicalize();
  c.im.canonicalize();
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Symbol Symbol::conjugate() const {
  Symbol out;
  out.inexact_ = inexact_;
  for (const auto& [e, c] : terms_) out.add_term({e.zbar, e.z, e.wbar, e.w}, conj(c));
  return out;
}

Symbol& Symbol::operator+=(const Symbol& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  inexact_ = inexact_ || o.inexact_;
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  inexact_ = inexact_ || o.inexact_;
  return *this;
}

Symbol& Symbol::operator*=(const QComplex& coef) {
  QComplex c = coef;
  c.re.canonicalize();
  c.im.canonicalize();
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  Symbol out;
  out.set_inexact(a.inexact() || b.inexact());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms())
      out.add_term({ea.z + eb.z, ea.zbar + eb.zbar, ea.w + eb.w, ea.wbar + eb.wbar}, ca * cb);
  return out;
}

namespace {

std::string coef_string(const QComplex& c) {
  if (sgn(c.im) == 0) return to_string(c.re);
  if (sgn(c.re) == 0) return to_string(c.im) + "i";
  std::string im = to_string(c.im);
  if (im.front() != '-') im = "+" + im;
  return "(" + to_string(c.re) + im + "i)";
}

void append_power(std::string& out, const char* name, int p) {
  if (p == 0) return;
  if (!out.empty()) out += "*";
  out += name;
  if (p > 1) out += "^" + std::to_string(p);
}

}  // namespace

std::string to_string(const Symbol& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : s.terms()) {
    std::string mono;
    append_power(mono, "z", e.z);
    append_power(mono, "zbar", e.zbar);
    append_power(mono, "w", e.w);
    append_power(mono, "wbar", e.wbar);
    std::string term;
    if (mono.empty()) {
      term = coef_string(c);
    } else if (c == QComplex(1)) {
      term = mono;
    } else if (c == QComplex(-1)) {
      term = "-" + mono;
    } else {
      term = coef_string(c) + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

QComplex eval(const Symbol& s, const QComplex& z, const QComplex& w) {
  QComplex sum;
  const QComplex zb = conj(z);
  const QComplex wb = conj(w);
  for (const auto& [e, c] : s.terms())
    sum += c * pow(z, e.z) * pow(zb, e.zbar) * pow(w, e.w) * pow(wb, e.wbar);
  return sum;
}

std::complex<double> eval(const Symbol& s, std::complex<double> z, std::complex<double> w) {
  std::complex<double> sum{0.0, 0.0};
  const auto zb = std::conj(z);
  const auto wb = std::conj(w);
  for (const auto& [e, c] : s.terms()) {
    sum += c.to_complex() * ipow(z, e.z) * ipow(zb, e.zbar) * ipow(w, e.w) * ipow(wb, e.wbar);
  }
  return sum;
}

namespace {

template <class Fn>
Symbol differentiate(const Symbol& s, Fn&& step) {
  Symbol out;
  out.set_inexact(s.inexact());
  for (const auto& [e, c] : s.terms()) {
    Exponent ne = e;
    const int factor = step(ne);
    if (factor != 0) out.add_term(ne, c * mpq_class(factor));
  }
  return out;
}

}  // namespace

Symbol d_z(const Symbol& s) {
  return differentiate(s, [](Exponent& e) { return e.z--; });
}
Symbol dbar_z(const Symbol& s) {
  return differentiate(s, [](Exponent& e) { return e.zbar--; });
}
Symbol d_w(const Symbol& s) {
  return differentiate(s, [](Exponent& e) { return e.w--; });
}
Symbol dbar_w(const Symbol& s) {
  return differentiate(s, [](Exponent& e) { return e.wbar--; });
}

const char* to_string(SliceFamily f) { return f == SliceFamily::z ? "z" : "w"; }

void validate(const DiskSlice& slice, const ProductDomain& dom) {
  const double radius = slice.family == SliceFamily::z ? dom.r1d() : dom.r2d();
  if (std::abs(slice.scale) == 0.0) throw std::invalid_argument("disk slice scale must be nonzero");
  if (std::abs(slice.center) + std::abs(slice.scale) > radius * (1.0 + 1e-12))
    throw std::invalid_argument("disk slice leaves the boundary face");
  if (!std::isfinite(slice.boundary_angle)) throw std::invalid_argument("non-finite boundary angle");
}

Symbol dbar_varying(const Symbol& s, SliceFamily family) {
  return family == SliceFamily::z ? dbar_z(s) : dbar_w(s);
}

int PlanarPoly::max_power() const {
  int m = 0;
  for (const auto& t : terms) m = std::max({m, t.a, t.b});
  return m;
}

std::complex<double> PlanarPoly::operator()(std::complex<double> zeta) const {
  std::complex<double> sum{0.0, 0.0};
  const auto zb = std::conj(zeta);
  for (const auto& t : terms) sum += t.c * ipow(zeta, t.a) * ipow(zb, t.b);
  return sum;
}

PlanarPoly freeze_boundary(const Symbol& s, SliceFamily family, double theta, const ProductDomain& dom) {
  const double radius = family == SliceFamily::z ? dom.r2d() : dom.r1d();
  const std::complex<double> f = std::polar(radius, theta);
  const std::complex<double> fb = std::conj(f);
  std::map<std::pair<int, int>, std::complex<double>> acc;
  for (const auto& [e, c] : s.terms()) {
    if (family == SliceFamily::z) {
      acc[{e.z, e.zbar}] += c.to_complex() * ipow(f, e.w) * ipow(fb, e.wbar);
    } else {
      acc[{e.w, e.wbar}] += c.to_complex() * ipow(f, e.z) * ipow(fb, e.zbar);
    }
  }
  PlanarPoly out;
  for (const auto& [k, v] : acc)
    if (v != 0.0) out.terms.push_back({k.first, k.second, v});
  return out;
}

std::complex<double> SlicePoly::eval(std::complex<double> xi, double theta) const {
  std::complex<double> sum{0.0, 0.0};
  const auto xb = std::conj(xi);
  for (const auto& [k, c] : terms) sum += c * ipow(xi, k[0]) * ipow(xb, k[1]) * std::polar(1.0, k[2] * theta);
  return sum;
}

PlanarPoly SlicePoly::at_angle(double theta) const {
  std::map<std::pair<int, int>, std::complex<double>> acc;
  for (const auto& [k, c] : terms) acc[{k[0], k[1]}] += c * std::polar(1.0, k[2] * theta);
  PlanarPoly out;
  for (const auto& [k, v] : acc)
    if (v != 0.0) out.terms.push_back({k.first, k.second, v});
  return out;
}

SlicePoly SlicePoly::dbar() const {
  SlicePoly out;
  for (const auto& [k, c] : terms)
    if (k[1] > 0) out.terms[{k[0], k[1] - 1, k[2]}] += c * static_cast<double>(k[1]);
  return out;
}

double SlicePoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Restriction restrict_to_slice(const Symbol& s, const DiskSlice& slice, const ProductDomain& dom) {
  validate(slice, dom);
  const bool zfam = slice.family == SliceFamily::z;
  const double fixed_radius = zfam ? dom.r2d() : dom.r1d();
  const auto a = slice.center;
  const auto c = slice.scale;
  const auto ab = std::conj(a);
  const auto cb = std::conj(c);

  SlicePoly value;
  for (const auto& [e, coef] : s.terms()) {
    const int hol = zfam ? e.z : e.w;
    const int anti = zfam ? e.zbar : e.wbar;
    const int fh = zfam ? e.w : e.z;
    const int fa = zfam ? e.wbar : e.zbar;
    const std::complex<double> base = coef.to_complex() * ipow(fixed_radius, fh + fa);
    for (int k = 0; k <= hol; ++k) {
      const auto hk = binomial(hol, k) * ipow(a, hol - k) * ipow(c, k);
      for (int l = 0; l <= anti; ++l) {
        const auto al = binomial(anti, l) * ipow(ab, anti - l) * ipow(cb, l);
        value.terms[{k, l, fh - fa}] += base * hk * al;
      }
    }
  }
  std::erase_if(value.terms, [](const auto& t) { return t.second == 0.0; });
  Restriction r;
  r.dbar = value.dbar();
  r.value = std::move(value);
  return r;
}

namespace {

HarmonicityWitness residual_for(const Symbol& s, SliceFamily family, const ProductDomain& dom) {
  const bool zfam = family == SliceFamily::z;
  const Symbol lap = zfam ? d_z(dbar_z(s)) : d_w(dbar_w(s));
  const mpq_class r2 = zfam ? dom.r2() * dom.r2() : dom.r1() * dom.r1();
  std::map<std::array<int, 3>, QComplex> acc;
  for (const auto& [e, c] : lap.terms()) {
    const int p = zfam ? e.z : e.w;
    const int q = zfam ? e.zbar : e.wbar;
    const int fh = zfam ? e.w : e.z;
    const int fa = zfam ? e.wbar : e.zbar;
    // fbar = r^2 / f on the boundary circle of the fixed coordinate.
    acc[{p, q, fh - fa}] += c * pow(r2, static_cast<unsigned>(fa));
  }
  HarmonicityWitness w{family, {}};
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) w.residual.push_back({k[0], k[1], k[2], c});
  return w;
}

}  // namespace

HarmonicityReport check_admissible(const Symbol& s, const ProductDomain& dom) {
  HarmonicityReport report;
  for (SliceFamily f : {SliceFamily::z, SliceFamily::w}) {
    auto w = residual_for(s, f, dom);
    if (!w.residual.empty()) report.witnesses.push_back(std::move(w));
  }
  report.admissible = report.witnesses.empty();
  return report;
}

std::string to_string(const HarmonicityWitness& w, const ProductDomain& dom) {
  const bool zfam = w.family == SliceFamily::z;
  const char* v = zfam ? "z" : "w";
  const char* vb = zfam ? "zbar" : "wbar";
  const char* f = zfam ? "w" : "z";
  const char* fb = zfam ? "wbar" : "zbar";
  const mpq_class r2 = zfam ? dom.r2() * dom.r2() : dom.r1() * dom.r1();
  std::ostringstream out;
  bool first = true;
  for (const auto& t : w.residual) {
    QComplex c = t.coef;
    // f^{-k} = fbar^k / r^{2k} on the circle.
    if (t.k < 0) c *= 1 / pow(r2, static_cast<unsigned>(-t.k));
    std::string mono;
    append_power(mono, v, t.p);
    append_power(mono, vb, t.q);
    append_power(mono, t.k >= 0 ? f : fb, std::abs(t.k));
    std::string term;
    if (mono.empty()) {
      term = coef_string(c);
    } else if (c == QComplex(1)) {
      term = mono;
    } else if (c == QComplex(-1)) {
      term = "-" + mono;
    } else {
      term = coef_string(c) + "*" + mono;
    }
    if (first) {
      out << term;
    } else if (term.front() == '-') {
      out << " - " << term.substr(1);
    } else {
      out << " + " << term;
    }
    first = false;
  }
  return out.str();
}

}  // namespace essnorm
