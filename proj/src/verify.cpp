#include "essnorm/verify.hpp"

#include "essnorm/bergman.hpp"
#include "essnorm/bounds.hpp"
#include "essnorm/hankel.hpp"
#include "essnorm/numeric.hpp"
#include "essnorm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace essnorm {

void VerifyOptions::validate() const {
  if (!(tau0 > 0.0)) throw std::invalid_argument("tau0 must be positive");
  if (!(r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
  if (!(eps1 > 0.0 && eps1 < std::numbers::pi)) throw std::invalid_argument("eps1 must lie in (0, pi)");
  for (int k : j)
    if (k < 1) throw std::invalid_argument("wedge sequence index j must be >= 1");
  if (radial_nodes < 1 || angular_nodes < 1) throw std::invalid_argument("quadrature node counts must be positive");
  if (unitary_degree < 0) throw std::invalid_argument("unitary_degree must be >= 0");
}

bool VerifyReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

namespace {

class Rows {
 public:
  explicit Rows(double rel_tol) : tol_(rel_tol) {}
  void add(std::string name, std::string formula, double closed, double computed) {
    const double err = std::abs(computed - closed);
    rows_.push_back({std::move(name), std::move(formula), closed, computed, err,
                     err <= tol_ * std::max(1.0, std::abs(closed))});
  }
  std::vector<VerifyRow> take() { return std::move(rows_); }

 private:
  double tol_;
  std::vector<VerifyRow> rows_;
};

// 1 - |xi|^2 as a symbol in z.
Symbol bump() { return Symbol::constant(QComplex(1)) - Symbol::z() * Symbol::zbar(); }

// Admissible test symbol mixing both families and a holomorphic part.
Symbol mixed_symbol() {
  Symbol s = Symbol::zbar();
  s += Symbol::zbar() * Symbol::wbar() * QComplex(mpq_class(1, 2));
  s += Symbol::wbar() * Symbol::wbar() * QComplex(0, mpq_class(1, 3));
  s += Symbol::z() * Symbol::w();
  return s;
}

double max_spectral_gap(const Symbol& a, const Symbol& b, const ProductDomain& dom, int degree) {
  const auto window = BasisWindow::graded(degree);
  const auto ea = gram(a, window, dom).eigenvalues();
  const auto eb = gram(b, window, dom).eigenvalues();
  double gap = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) gap = std::max(gap, std::abs(ea[i] - eb[i]));
  return gap;
}

}  // namespace

VerifyReport run_verification(const ProductDomain& dom, const VerifyOptions& opts) {
  opts.validate();
  Rows rows(opts.rel_tol);
  const double t0 = opts.tau0;
  const double t2 = t0 * t0;
  const double lead = 2.0 / (std::numbers::pi * t2) * (1.0 + opts.perturb_chi);

  const auto disk = QuadRule::disk(t0, opts.radial_nodes, opts.angular_nodes);
  const double chi_int =
      quad_integrate([&](std::complex<double> z) { return std::complex<double>(lead * (1.0 - std::norm(z) / t2)); },
                     disk)
          .real();
  const double chi_z_sq =
      quad_integrate([&](std::complex<double> z) { return std::complex<double>(lead * lead * std::norm(z) / (t2 * t2)); },
                     disk)
          .real();
  rows.add("chi_integral", "1", 1.0, chi_int);
  rows.add("chi_z_norm_sq", "2/(pi tau0^4)", 2.0 / (std::numbers::pi * t2 * t2), chi_z_sq);
  const double ratio = chi_int / std::sqrt(chi_z_sq);
  rows.add("chi_ratio", "tau0^2 sqrt(pi/2)", t2 * std::sqrt(std::numbers::pi / 2.0), ratio);
  rows.add("chi_ratio_volume", "V(D)/sqrt(2 pi)", std::numbers::pi * t2 / std::sqrt(2.0 * std::numbers::pi), ratio);

  for (int j : opts.j) {
    const double alpha = 1.0 - std::ldexp(1.0, -2 * j - 1);
    const auto wedge = QuadRule::wedge(opts.r0, opts.eps1, alpha, opts.radial_nodes, opts.angular_nodes);
    const double scale = std::ldexp(1.0, -2 * j);
    const double norm_sq =
        quad_integrate([&](std::complex<double>) { return std::complex<double>(scale); },
                       wedge)
            .real();
    rows.add("wedge_norm[j=" + std::to_string(j) + "]", "sqrt(pi - eps1) r0^(1 - alpha_j)",
             std::sqrt(std::numbers::pi - opts.eps1) * std::pow(opts.r0, 1.0 - alpha), std::sqrt(norm_sq));
  }

  const Symbol b = bump();
  const std::vector<std::pair<std::string, Symbol>> samples = {
      {"(1-|xi|^2)^2", b * b},
      {"xi (1-|xi|^2)^2", Symbol::z() * b * b},
      {"(1-|xi|^2)(2 xibar^2 - i xi + 1)",
       b * (Symbol::zbar() * Symbol::zbar() * QComplex(2) - Symbol::z() * QComplex(0, 1) +
            Symbol::constant(QComplex(1)))},
  };
  const auto unit = QuadRule::disk(1.0, opts.radial_nodes, opts.angular_nodes);
  for (const auto& [label, gamma] : samples) {
    const auto [dz, dzbar] = lemma1_check(gamma, 1);
    rows.add("no_boundary_terms_exact[" + label + "]", "||gamma_xibar||^2", dzbar.value().real(), dz.value().real());
    const Symbol gz = d_z(gamma);
    const double quad =
        quad_integrate([&](std::complex<double> xi) { return std::complex<double>(std::norm(eval(gz, xi, {0.0, 0.0}))); },
                       unit)
            .real();
    rows.add("no_boundary_terms_quadrature[" + label + "]", "||gamma_xibar||^2", dzbar.value().real(), quad);
  }

  const Symbol phi = mixed_symbol();
  if (dom.r1() == dom.r2())
    rows.add("unitary_invariance[swap]", "0", 0.0,
             max_spectral_gap(phi, apply_unitary(phi, Unitary::swap(), dom), dom, opts.unitary_degree));
  rows.add("unitary_invariance[rotate(0.7,-1.3)]", "0", 0.0,
           max_spectral_gap(phi, apply_unitary(phi, Unitary::rotate(0.7, -1.3), dom), dom, opts.unitary_degree));

  const DiskSlice slice{SliceFamily::z, 0.3, {0.0, 0.0}, {std::min(t0, dom.r1d()), 0.0}};
  const auto [vd_lhs, vd_rhs] = vd_identity_check(phi, slice, dom);
  rows.add("vd_identity", "V(D) inf_D |phi_zbar|", vd_lhs, vd_rhs);

  return {rows.take()};
}

}  // namespace essnorm
