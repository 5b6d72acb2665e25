#include "essnorm/bergman.hpp"

#include "essnorm/numeric.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace essnorm {

std::complex<double> PiMultiple::value() const {
  return coefficient.to_complex() * std::pow(std::numbers::pi, pi_power);
}

mpq_class moment_over_pi(int a, int b, const mpq_class& radius) {
  if (a != b) return 0;
  return mpq_class(pow(radius, static_cast<unsigned>(2 * a + 2)) / (a + 1));
}

PiMultiple moment(int a, int b, const mpq_class& radius) { return {QComplex(moment_over_pi(a, b, radius)), 1}; }

PiMultiple inner_product(const Symbol& f, const Symbol& g, const ProductDomain& dom) {
  QComplex sum;
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      // f * conj(g) contributes z^(ef.z + eg.zbar) zbar^(ef.zbar + eg.z).
      const mpq_class mz = moment_over_pi(ef.z + eg.zbar, ef.zbar + eg.z, dom.r1());
      if (sgn(mz) == 0) continue;
      const mpq_class mw = moment_over_pi(ef.w + eg.wbar, ef.wbar + eg.w, dom.r2());
      if (sgn(mw) == 0) continue;
      sum += cf * conj(cg) * mpq_class(mz * mw);
    }
  }
  return {sum, 2};
}

double basis_constant(int m, double radius) {
  return std::sqrt((m + 1) / (std::numbers::pi * ipow(radius, 2 * m + 2)));
}

mpq_class monomial_norm_sq_over_pi2(const BasisIndex& idx, const ProductDomain& dom) {
  return moment_over_pi(idx.m, idx.m, dom.r1()) * moment_over_pi(idx.n, idx.n, dom.r2());
}

std::complex<double> basis_eval(const BasisIndex& idx, const ProductDomain& dom, std::complex<double> z,
                                std::complex<double> w) {
  return basis_constant(idx.m, dom.r1d()) * basis_constant(idx.n, dom.r2d()) * ipow(z, idx.m) * ipow(w, idx.n);
}

namespace {

std::complex<double> disk_kernel(double r, std::complex<double> z, std::complex<double> q) {
  const auto d = r * r - z * std::conj(q);
  return r * r / (std::numbers::pi * d * d);
}

}  // namespace

std::complex<double> bergman_kernel(const ProductDomain& dom, std::pair<std::complex<double>, std::complex<double>> p,
                                    std::pair<std::complex<double>, std::complex<double>> q) {
  const double r1 = dom.r1d();
  const double r2 = dom.r2d();
  for (const auto& pt : {p, q}) {
    if (!(std::abs(pt.first) < r1) || !(std::abs(pt.second) < r2))
      throw std::invalid_argument("Bergman kernel needs interior points");
  }
  return disk_kernel(r1, p.first, q.first) * disk_kernel(r2, p.second, q.second);
}

double kernel_tail_mass(double x, int degree) {
  return std::pow(x, degree + 1) * ((degree + 2) * (1.0 - x) + x);
}

KernelCoeffs normalized_kernel_coeffs(std::complex<double> p, int degree) {
  if (!(std::abs(p) < 1.0)) throw std::invalid_argument("kernel point must satisfy |p| < 1");
  if (degree < 0) throw std::invalid_argument("kernel degree must be >= 0");
  const double x = std::norm(p);
  KernelCoeffs out;
  out.coeffs.resize(static_cast<std::size_t>(degree) + 1);
  std::complex<double> pb_pow{1.0, 0.0};
  const auto pb = std::conj(p);
  for (int m = 0; m <= degree; ++m) {
    out.coeffs[m] = (1.0 - x) * std::sqrt(m + 1.0) * pb_pow;
    pb_pow *= pb;
  }
  out.tail = kernel_tail_mass(x, degree);
  return out;
}

int kernel_degree_for(double abs_p, double tol) {
  if (!(abs_p < 1.0) || abs_p < 0.0) throw std::invalid_argument("kernel point must satisfy |p| < 1");
  const double x = abs_p * abs_p;
  if (x == 0.0) return 0;
  // The tail is strictly decreasing in degree: bracket, then bisect.
  int lo = 0;
  int hi = 1;
  while (kernel_tail_mass(x, hi) >= tol) {
    lo = hi;
    hi *= 2;
    if (hi > (1 << 28)) throw std::invalid_argument("kernel point too close to the boundary");
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (kernel_tail_mass(x, mid) >= tol) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return kernel_tail_mass(x, lo) < tol ? lo : hi;
}

bool vanishes_on_circle(const Symbol& gamma, const mpq_class& radius) {
  // zbar = r^2 / z on the circle; collect by Laurent power of z.
  const mpq_class r2 = radius * radius;
  std::map<int, QComplex> acc;
  for (const auto& [e, c] : gamma.terms()) acc[e.z - e.zbar] += c * pow(r2, static_cast<unsigned>(e.zbar));
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) return false;
  return true;
}

namespace {

mpq_class one_variable_norm_sq_over_pi(const Symbol& f, const mpq_class& radius) {
  QComplex sum;
  for (const auto& [ef, cf] : f.terms())
    for (const auto& [eg, cg] : f.terms()) {
      const mpq_class m = moment_over_pi(ef.z + eg.zbar, ef.zbar + eg.z, radius);
      if (sgn(m) != 0) sum += cf * conj(cg) * m;
    }
  return sum.re;
}

}  // namespace

std::pair<PiMultiple, PiMultiple> lemma1_check(const Symbol& gamma, const mpq_class& radius) {
  if (!gamma.depends_only_on_z()) throw std::invalid_argument("lemma1_check: gamma must be a function of xi only");
  if (sgn(radius) <= 0) throw std::invalid_argument("lemma1_check: radius must be positive");
  if (!vanishes_on_circle(gamma, radius)) throw std::invalid_argument("lemma1_check: gamma does not vanish on the circle");
  const mpq_class dz = one_variable_norm_sq_over_pi(d_z(gamma), radius);
  const mpq_class dzb = one_variable_norm_sq_over_pi(dbar_z(gamma), radius);
  return {PiMultiple{QComplex(dz), 1}, PiMultiple{QComplex(dzb), 1}};
}

}  // namespace essnorm
