#pragma once

#include "essnorm/domain.hpp"
#include "essnorm/rational.hpp"
#include "essnorm/symbol.hpp"

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace essnorm {

/// Exact value coefficient * pi^pi_power.
struct PiMultiple {
  QComplex coefficient;
  int pi_power = 0;

  [[nodiscard]] std::complex<double> value() const;
  friend bool operator==(const PiMultiple& a, const PiMultiple& b) {
    return a.pi_power == b.pi_power && a.coefficient == b.coefficient;
  }
};

/// Integral of z^a zbar^b over {|z| < radius}: zero unless a == b, else
/// pi * radius^(2a+2) / (a+1).
PiMultiple moment(int a, int b, const mpq_class& radius);

/// The rational factor of moment(a, b, radius) with pi removed.
mpq_class moment_over_pi(int a, int b, const mpq_class& radius);

/// L^2 pairing <f, g> = integral of f * conj(g) over the product domain,
/// as an exact multiple of pi^2.
PiMultiple inner_product(const Symbol& f, const Symbol& g, const ProductDomain& dom);

/// Index (m, n) of the orthonormal element e_mn = c_m c_n z^m w^n.
struct BasisIndex {
  int m = 0;
  int n = 0;
  auto operator<=>(const BasisIndex&) const = default;
  [[nodiscard]] int degree() const { return m + n; }
};

/// c_m = sqrt((m+1) / (pi radius^(2m+2))).
double basis_constant(int m, double radius);

/// ||z^m w^n||^2 / pi^2, exact.
mpq_class monomial_norm_sq_over_pi2(const BasisIndex& idx, const ProductDomain& dom);

/// e_mn as a floating function value at (z, w).
std::complex<double> basis_eval(const BasisIndex& idx, const ProductDomain& dom, std::complex<double> z,
                                std::complex<double> w);

/// Bergman kernel K(p, q) of the product domain, the product of the one-disk
/// kernels r^2 / (pi (r^2 - p_i conj(q_i))^2). Throws unless both points are
/// interior.
std::complex<double> bergman_kernel(const ProductDomain& dom, std::pair<std::complex<double>, std::complex<double>> p,
                                    std::pair<std::complex<double>, std::complex<double>> q);

/// Normalized Bergman kernel of the unit disk at p expanded in the
/// orthonormal basis e_m: (1 - |p|^2) sqrt(m+1) conj(p)^m for m <= degree.
struct KernelCoeffs {
  std::vector<std::complex<double>> coeffs;
  /// 1 - sum |coeff|^2, from the closed form x^(M+1) ((M+2)(1-x) + x), x = |p|^2.
  double tail = 0.0;
};

KernelCoeffs normalized_kernel_coeffs(std::complex<double> p, int degree);

/// Closed-form tail mass of the degree-M truncation at |p|^2 = x.
double kernel_tail_mass(double x, int degree);

/// Smallest degree whose truncation leaves tail mass below tol.
int kernel_degree_for(double abs_p, double tol);

/// ||gamma_xi||^2 and ||gamma_xibar||^2 over {|xi| < radius}, both exact.
/// gamma must depend on z only (z plays xi) and vanish on the circle;
/// throws std::invalid_argument otherwise.
std::pair<PiMultiple, PiMultiple> lemma1_check(const Symbol& gamma, const mpq_class& radius);

/// True when gamma restricted to |xi| = radius vanishes identically.
bool vanishes_on_circle(const Symbol& gamma, const mpq_class& radius);

}  // namespace essnorm
