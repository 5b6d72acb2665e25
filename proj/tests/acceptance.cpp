// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include "essnorm/bergman.hpp"
#include "essnorm/bounds.hpp"
#include "essnorm/cli.hpp"
#include "essnorm/hankel.hpp"
#include "essnorm/numeric.hpp"
#include "essnorm/quadrature.hpp"
#include "essnorm/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace essnorm;

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

int failures = 0;

void report(int n, bool pass, const std::string& name, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "CRITERION " << n << ' ' << (pass ? "PASS" : "FAIL") << ' ' << name << ": " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g(double v) { return format12(v); }

// Symbols with no z*zbar or w*wbar factor in any term: every boundary slice
// sees a harmonic function, so they are admissible on any product domain.
Symbol random_admissible(std::mt19937& rng) {
  std::uniform_int_distribution<int> pow(0, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> c(-5, 5);
  Symbol s;
  const int terms = 2 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    const int zp = pow(rng), wp = pow(rng);
    const bool zconj = coin(rng), wconj = coin(rng);
    s.add_term({zconj ? 0 : zp, zconj ? zp : 0, wconj ? 0 : wp, wconj ? wp : 0},
               QComplex(mpq_class(c(rng), 1 + pow(rng)), mpq_class(c(rng), 1 + pow(rng))));
  }
  return s;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dom = ProductDomain::unit_bidisk();
  std::vector<BasisIndex> idx;
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n) idx.push_back({m, n});
  const auto window = BasisWindow::from_indices(idx);
  const auto ge = gram(Symbol::zbar(), window, dom, Arithmetic::exact);
  const auto gf = gram(Symbol::zbar(), window, dom, Arithmetic::floating);
  bool exact_ok = ge.exact;
  int mismatches = 0;
  double float_err = 0.0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const mpq_class m = window[i].m;
    if (ge.exact_diagonal(i) != 1 / ((m + 1) * (m + 2))) ++mismatches;
    for (std::size_t j = 0; j < window.size(); ++j) {
      const double expect = i == j ? 1.0 / ((m.get_d() + 1.0) * (m.get_d() + 2.0)) : 0.0;
      float_err = std::max(float_err, std::abs(gf.dense(i, j) - expect));
      if (i != j && ge.monomial.count({i, j})) ++mismatches;
    }
  }
  exact_ok = exact_ok && mismatches == 0;
  const double secs = seconds_since(t0);
  report(1, exact_ok && float_err <= 1e-12 && secs < 10.0, "exact Hankel spectrum of zbar",
         "441 entries, exact mismatches " + std::to_string(mismatches) + ", floating max error " + g(float_err) +
             ", " + g(secs) + " s");
}

void criterion2() {
  const auto dom = ProductDomain::unit_bidisk();
  BracketOptions opts;
  opts.degree = 30;
  const auto zb = ess_norm_bracket(Symbol::zbar(), dom, opts);
  const double t2 = thm2_lower(Symbol::zbar()).value;
  const bool zb_ok = std::abs(zb.lower_est - inv_sqrt2) <= 1e-6 && std::abs(zb.upper_est - inv_sqrt2) <= 1e-6 &&
                     std::abs(t2 - inv_sqrt2) <= 1e-6;

  const Symbol zw = Symbol::zbar() * Symbol::wbar();
  const auto br = ess_norm_bracket(zw, dom, opts);
  const double t2w = thm2_lower(zw).value;
  const double spread = std::max({br.lower_est, br.upper_est, t2w}) - std::min({br.lower_est, br.upper_est, t2w});
  const bool zw_ok = spread <= 5e-3 && std::abs(br.lower_est - inv_sqrt2) <= 5e-3 &&
                     std::abs(br.upper_est - inv_sqrt2) <= 5e-3 && std::abs(t2w - inv_sqrt2) <= 5e-3;
  report(2, zb_ok && zw_ok, "bracket tightness",
         "zbar [" + g(zb.lower_est) + ", " + g(zb.upper_est) + "] thm2 " + g(t2) + "; zbar*wbar [" + g(br.lower_est) +
             ", " + g(br.upper_est) + "] thm2 " + g(t2w) + " spread " + g(spread));
}

void criterion3() {
  const auto dom = ProductDomain::unit_bidisk();
  const std::vector<std::pair<std::string, Symbol>> set = {
      {"zbar", Symbol::zbar()},
      {"wbar", Symbol::wbar()},
      {"zbar*wbar", Symbol::zbar() * Symbol::wbar()},
      {"zbar+wbar", Symbol::zbar() + Symbol::wbar()},
      {"zbar^2", Symbol::zbar() * Symbol::zbar()},
      {"0.5*zbar", Symbol::zbar() * QComplex(mpq_class(1, 2))},
      {"2i*zbar", Symbol::zbar() * QComplex(0, 2)},
  };
  bool all = true;
  std::string failed;
  double zbar_upper = 0.0, zbar_lower1 = 0.0, zbar_lower2 = 0.0;
  for (const auto& [name, phi] : set) {
    const auto bounds = evaluate_bounds(phi, dom);
    const auto bracket = ess_norm_bracket(phi, dom);
    const double t1 = bounds.thm1_lower.value, t2 = bounds.thm2_lower->value, up = bounds.thm1_upper.value;
    const bool ok = t1 <= t2 && t2 <= bracket.lower_est + 1e-6 && bracket.upper_est <= up + 1e-6;
    if (!ok) {
      all = false;
      failed += " " + name;
    }
    if (name == "zbar") {
      zbar_lower1 = t1;
      zbar_lower2 = t2;
      zbar_upper = up;
    }
  }
  const double expect_upper = std::sqrt(std::numbers::e) * 2.0 * std::numbers::sqrt2;
  const bool zbar_ok = std::abs(zbar_lower1 - 0.25) <= 1e-9 && std::abs(zbar_lower2 - inv_sqrt2) <= 1e-6 &&
                       std::abs(zbar_upper - expect_upper) <= 1e-9;
  report(3, all && zbar_ok, "sandwich ordering",
         std::to_string(set.size()) + " symbols" + (failed.empty() ? std::string(" ordered") : " violated:" + failed) +
             "; zbar " + g(zbar_lower1) + " <= " + g(zbar_lower2) + " <= " + g(zbar_upper) + " (sqrt(e)*2*sqrt(2) = " +
             g(expect_upper) + ")");
}

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const VerifyOptions opts;
  const auto rep = run_verification(ProductDomain::unit_bidisk(), opts);
  const double secs = seconds_since(t0);
  std::map<std::string, double> closed = {
      {"chi_integral", 1.0},
      {"chi_z_norm_sq", 2.0 / (pi * std::pow(opts.tau0, 4))},
      {"chi_ratio", opts.tau0 * opts.tau0 * std::sqrt(pi / 2.0)},
  };
  for (int j = 1; j <= 3; ++j) {
    const double alpha = 1.0 - std::pow(2.0, -2 * j - 1);
    closed["wedge_norm[j=" + std::to_string(j) + "]"] = std::sqrt(pi - opts.eps1) * std::pow(opts.r0, 1.0 - alpha);
  }
  double worst = 0.0;
  std::size_t seen = 0;
  for (const auto& row : rep.rows) {
    const auto it = closed.find(row.name);
    if (it == closed.end()) continue;
    ++seen;
    worst = std::max(worst, std::abs(row.computed - it->second) / std::abs(it->second));
  }
  report(4, seen == closed.size() && worst <= 1e-8 && secs < 5.0, "closed-form identities",
         std::to_string(seen) + " identities, worst relative error " + g(worst) + ", suite " + g(secs) + " s");
}

void criterion5() {
  std::mt19937 rng(20240501);
  std::uniform_int_distribution<int> e(0, 3);
  std::uniform_int_distribution<int> c(-7, 7);
  const Symbol bump = Symbol::constant(QComplex(1)) - Symbol::z() * Symbol::zbar();
  int equal = 0;
  for (int t = 0; t < 50; ++t) {
    Symbol q;
    const int terms = 1 + t % 4;
    for (int k = 0; k < terms; ++k) q.add_term({e(rng), e(rng), 0, 0}, QComplex(mpq_class(c(rng), 1 + e(rng)), c(rng)));
    if (q.is_zero()) q = Symbol::constant(QComplex(1));
    const auto [dz, dzb] = lemma1_check(bump * q, 1);
    if (dz == dzb) ++equal;
  }
  // Floating route for (1-|xi|^2)^2: quadrature of both derivative moduli.
  const Symbol gamma = bump * bump;
  const Symbol gz = d_z(gamma), gzb = dbar_z(gamma);
  const auto rule = QuadRule::disk(1.0);
  const double lhs =
      quad_integrate([&](std::complex<double> x) { return std::complex<double>(std::norm(eval(gz, x, {0.0, 0.0}))); }, rule)
          .real();
  const double rhs =
      quad_integrate([&](std::complex<double> x) { return std::complex<double>(std::norm(eval(gzb, x, {0.0, 0.0}))); }, rule)
          .real();
  const bool ok = equal == 50 && std::abs(lhs - pi / 3.0) <= 1e-12 && std::abs(rhs - pi / 3.0) <= 1e-12;
  report(5, ok, "no boundary terms",
         std::to_string(equal) + "/50 random vanishing polynomials exactly equal; (1-|xi|^2)^2 gives " + g(lhs) + " and " +
             g(rhs) + " vs pi/3 = " + g(pi / 3.0));
}

void criterion6() {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> angle(-pi, pi);
  const auto dom = ProductDomain::unit_bidisk();
  const auto window = BasisWindow::graded(12);
  double worst = 0.0;
  int admissible = 0;
  for (int t = 0; t < 20; ++t) {
    const Symbol phi = random_admissible(rng);
    if (check_admissible(phi, dom).admissible) ++admissible;
    const auto ev = gram(phi, window, dom).eigenvalues();
    const double scale = std::max(1.0, ev.front());
    for (const auto& f : {Unitary::swap(), Unitary::rotate(angle(rng), angle(rng))}) {
      const auto ev2 = gram(apply_unitary(phi, f, dom), window, dom).eigenvalues();
      for (std::size_t k = 0; k < ev.size(); ++k) worst = std::max(worst, std::abs(ev[k] - ev2[k]) / scale);
    }
  }
  report(6, admissible == 20 && worst <= 1e-12, "unitary invariance",
         std::to_string(admissible) + "/20 admissible symbols, N = 12 (" + std::to_string(window.size()) +
             " basis vectors), worst eigenvalue gap " + g(worst));
}

int cli_exit(const std::string& symbol_json) {
  const auto path = std::filesystem::temp_directory_path() / "essnorm_acceptance.json";
  std::ofstream(path) << symbol_json;
  std::ostringstream out, err;
  return cli::run({"check-symbol", "--config", path.string()}, out, err);
}

void criterion7() {
  const auto dom = ProductDomain::unit_bidisk();
  const std::vector<std::pair<std::string, Symbol>> accept = {
      {"zbar", Symbol::zbar()},
      {"wbar", Symbol::wbar()},
      {"zbar*wbar", Symbol::zbar() * Symbol::wbar()},
      {"zbar+wbar", Symbol::zbar() + Symbol::wbar()},
      {"z^2*w + 3i*w", Symbol::z() * Symbol::z() * Symbol::w() + Symbol::w() * QComplex(0, 3)},
  };
  const std::vector<std::pair<std::string, Symbol>> reject = {
      {"z*zbar", Symbol::z() * Symbol::zbar()},
      {"w*wbar", Symbol::w() * Symbol::wbar()},
      {"zbar*(1-w*wbar)", Symbol::zbar() * (Symbol::constant(QComplex(1)) - Symbol::w() * Symbol::wbar())},
  };
  bool ok = true;
  for (const auto& [name, s] : accept) ok = ok && check_admissible(s, dom).admissible;
  for (const auto& [name, s] : reject) {
    const auto rep = check_admissible(s, dom);
    bool nonzero = !rep.witnesses.empty();
    for (const auto& w : rep.witnesses) nonzero = nonzero && !w.residual.empty();
    ok = ok && !rep.admissible && nonzero;
  }
  const int e0 = cli_exit(R"({"symbol":{"terms":[{"zbar":1,"re":"1"}]}})");
  const int e1 = cli_exit(R"({"symbol":{"terms":[{"z":1,"zbar":1,"re":"1"}]}})");
  const int e2 = cli_exit(R"({"symbol":{"terms":[{"zbar":1,"re":"1"}])");
  report(7, ok && e0 == 0 && e1 == 1 && e2 == 2, "admissibility gate",
         std::to_string(accept.size()) + " accepted, " + std::to_string(reject.size()) +
             " rejected with witnesses; exit codes " + std::to_string(e0) + "/" + std::to_string(e1) + "/" +
             std::to_string(e2));
}

void criterion8() {
  const auto dom = ProductDomain::unit_bidisk();
  KernelSequenceOptions opts;
  opts.p_schedule = {0.0, 0.5, 0.9, 0.99};
  double zb_err = 0.0;
  for (const auto& pt : kernel_sequence_est(Symbol::zbar(), dom, SliceFamily::w, opts).points)
    zb_err = std::max(zb_err, std::abs(pt.value - inv_sqrt2));

  opts.p_schedule = KernelSequenceOptions{}.p_schedule;
  const auto wb = kernel_sequence_est(Symbol::wbar(), dom, SliceFamily::w, opts);
  bool decreasing = true;
  double closed_err = 0.0;
  for (std::size_t k = 0; k < wb.points.size(); ++k) {
    const auto& pt = wb.points[k];
    if (k > 0 && !(pt.value < wb.points[k - 1].value)) decreasing = false;
    const double x = pt.p * pt.p;
    // (1-x)^2 sum_m x^m/(m+2), summed directly.
    double series = 0.0, xm = 1.0;
    for (int m = 0; m < 4000000 && xm > 1e-20; ++m, xm *= x) series += xm / (m + 2.0);
    closed_err = std::max(closed_err, std::abs(pt.value * pt.value - (1.0 - x) * (1.0 - x) * series));
  }
  const double last = wb.points.back().value;
  report(8, zb_err <= 1e-8 && decreasing && closed_err <= 1e-6 && last < 1e-3, "kernel sequences",
         "zbar max deviation from 1/sqrt(2) " + g(zb_err) + "; wbar decreasing to " + g(last) +
             " at |p| = " + g(wb.points.back().p) + ", max error vs closed form " + g(closed_err));
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria = {criterion1, criterion2, criterion3, criterion4,
                                            criterion5, criterion6, criterion7, criterion8};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), false, "exception", e.what());
    }
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures;
}
