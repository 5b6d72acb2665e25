#include "doctest.h"

#include "essnorm/bounds.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace essnorm;

namespace {

const double sqrt_e = std::sqrt(std::numbers::e);
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
const double tau_unit = 2.0 * std::numbers::sqrt2;

SearchConfig small_grid() {
  SearchConfig c;
  c.grid_theta = 16;
  c.grid_center = 9;
  c.grid_scale = 8;
  c.inner_angular = 32;
  c.inner_radial = 8;
  c.refine_rounds = 2;
  return c;
}

}  // namespace

TEST_CASE("bounds for zbar") {
  const auto dom = ProductDomain::unit_bidisk();
  const auto rep = evaluate_bounds(Symbol::zbar(), dom);
  CHECK(std::abs(rep.thm1_lower.value - 0.25) < 1e-12);
  REQUIRE(rep.thm2_lower);
  CHECK(std::abs(rep.thm2_lower->value - inv_sqrt2) < 1e-12);
  CHECK(std::abs(rep.thm1_upper.value - sqrt_e * tau_unit) < 1e-9);
  REQUIRE(rep.thm2_lower->argmax);
  const auto& s = *rep.thm2_lower->argmax;
  CHECK(s.family == SliceFamily::z);
  CHECK(std::abs(std::abs(s.scale) - 1.0) < 1e-12);
  CHECK(std::abs(s.center) < 1e-12);
}

TEST_CASE("bounds for mixed symbols") {
  const auto dom = ProductDomain::unit_bidisk();
  const auto cfg = small_grid();
  CHECK(std::abs(thm2_lower(Symbol::zbar() * Symbol::wbar(), cfg).value - inv_sqrt2) < 1e-12);
  const auto sum = thm2_lower(Symbol::zbar() + Symbol::wbar(), cfg);
  CHECK(std::abs(sum.value - inv_sqrt2) < 1e-12);
  REQUIRE(sum.argmax);
  CHECK(sum.argmax->family == SliceFamily::z);

  const Symbol scaled = Symbol::zbar() * QComplex(0, 2);
  CHECK(std::abs(thm1_lower(scaled, dom, cfg).value - 0.5) < 1e-12);
  CHECK(std::abs(thm1_upper(scaled, dom, cfg).value - 2.0 * sqrt_e * tau_unit) < 1e-9);
}

TEST_CASE("holomorphic symbols give zero bounds") {
  const auto dom = ProductDomain::unit_bidisk();
  const Symbol h = Symbol::z() * Symbol::w() + Symbol::z() * QComplex(3);
  const auto rep = evaluate_bounds(h, dom, small_grid());
  CHECK(rep.thm1_lower.value == 0.0);
  CHECK(rep.thm1_upper.value == 0.0);
  CHECK(rep.thm2_lower->value == 0.0);
  CHECK_FALSE(rep.thm1_lower.argmax);
}

TEST_CASE("gate and domain checks") {
  const auto dom = ProductDomain::unit_bidisk();
  CHECK_THROWS_AS(thm1_lower(Symbol::z() * Symbol::zbar(), dom, small_grid()), NotAdmissible);
  try {
    thm1_upper(Symbol::w() * Symbol::wbar(), dom, small_grid());
    FAIL("expected NotAdmissible");
  } catch (const NotAdmissible& e) {
    CHECK_FALSE(e.report().admissible);
  }
  const auto rep = evaluate_bounds(Symbol::zbar(), ProductDomain(mpq_class(1, 2), 1), small_grid());
  CHECK_FALSE(rep.thm2_lower);
  SearchConfig bad;
  bad.grid_theta = 0;
  CHECK_THROWS_AS(thm1_lower(Symbol::zbar(), dom, bad), std::invalid_argument);
}

TEST_CASE("empty family configuration") {
  SearchConfig cfg = small_grid();
  cfg.families.clear();
  const auto rep = evaluate_bounds(Symbol::zbar(), ProductDomain::unit_bidisk(), cfg);
  CHECK(rep.thm1_lower.value == 0.0);
  CHECK(rep.thm1_upper.value == 0.0);
  CHECK(rep.thm2_lower->value == 0.0);
  CHECK_FALSE(rep.thm1_upper.argmax);
}

TEST_CASE("homogeneity") {
  const auto dom = ProductDomain::unit_bidisk();
  const auto cfg = small_grid();
  const Symbol phi = Symbol::zbar() * Symbol::zbar() + Symbol::wbar() * QComplex(mpq_class(1, 3));
  const QComplex c(mpq_class(3, 5), mpq_class(-4, 5));  // |c| = 1
  const QComplex k(mpq_class(5, 2));
  const auto a = evaluate_bounds(phi, dom, cfg);
  const auto b = evaluate_bounds(phi * c * k, dom, cfg);
  CHECK(b.thm1_lower.value == doctest::Approx(2.5 * a.thm1_lower.value).epsilon(1e-9));
  CHECK(b.thm1_upper.value == doctest::Approx(2.5 * a.thm1_upper.value).epsilon(1e-9));
  CHECK(b.thm2_lower->value == doctest::Approx(2.5 * a.thm2_lower->value).epsilon(1e-9));
}

TEST_CASE("swap symmetry") {
  const auto cfg = small_grid();
  const Symbol phi = Symbol::zbar() * Symbol::zbar() + Symbol::zbar() * Symbol::w() * QComplex(mpq_class(1, 4));
  const Symbol swapped = apply_unitary(phi, Unitary::swap(), ProductDomain::unit_bidisk());
  CHECK(thm2_lower(phi, cfg).value == doctest::Approx(thm2_lower(swapped, cfg).value).epsilon(1e-9));
}

TEST_CASE("growing the outer grid never lowers the bounds") {
  const auto dom = ProductDomain::unit_bidisk();
  const Symbol phi = Symbol::zbar() * Symbol::zbar() + Symbol::zbar() * Symbol::w() * QComplex(mpq_class(1, 3));
  SearchConfig coarse = small_grid();
  coarse.refine_rounds = 0;
  SearchConfig fine = coarse;
  fine.grid_theta *= 2;
  fine.grid_scale *= 2;
  CHECK(thm1_lower(phi, dom, fine).value >= thm1_lower(phi, dom, coarse).value);
  CHECK(thm1_upper(phi, dom, fine).value >= thm1_upper(phi, dom, coarse).value);
}

TEST_CASE("zbar squared on the bidisk") {
  // sup of 2 |c|^2 (|a| - |c|) under |a| + |c| <= 1 is 2/27 at |c| = 1/3.
  const auto v = thm2_lower(Symbol::zbar() * Symbol::zbar());
  CHECK(std::abs(v.value - 2.0 / 27.0 / std::numbers::sqrt2) < 1e-6);
}

TEST_CASE("disk extremes") {
  SearchConfig cfg;
  PlanarPoly q;
  q.terms = {{1, 0, {1.0, 0.0}}, {0, 0, {-0.3, 0.0}}};
  // Resolution is the last stencil step, radius / inner_radial / 2 / 4^(rounds - 1).
  const double last_step = 1.0 / cfg.inner_radial / 2.0 / std::pow(4.0, cfg.refine_rounds - 1);
  const auto [inf, at] = disk_inf_abs(q, {0.0, 0.0}, 1.0, cfg);
  CHECK(inf <= last_step);
  CHECK(std::abs(at - std::complex<double>(0.3, 0.0)) <= last_step);
  cfg.refine_rounds = 9;
  CHECK(disk_inf_abs(q, {0.0, 0.0}, 1.0, cfg).first < 1e-6);
  PlanarPoly id;
  id.terms = {{1, 0, {1.0, 0.0}}};
  const auto [sup, where] = disk_sup_abs(id, {0.5, 0.0}, 0.25, cfg);
  CHECK(sup == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(where - std::complex<double>(0.75, 0.0)) < 1e-9);
}

TEST_CASE("volume identity") {
  const auto dom = ProductDomain::unit_bidisk();
  const auto [l, r] = vd_identity_check(Symbol::zbar(), {SliceFamily::z, 0.0, {0.0, 0.0}, {0.5, 0.0}}, dom);
  CHECK(l == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
  CHECK(r == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
  const auto [l0, r0] = vd_identity_check(Symbol::z(), {SliceFamily::w, 1.0, {0.1, 0.2}, {0.3, -0.1}}, dom);
  CHECK(l0 == 0.0);
  CHECK(r0 == 0.0);

  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ProductDomain box(mpq_class(3, 2), mpq_class(2, 3));
  const Symbol phi = Symbol::zbar() * Symbol::w() + Symbol::wbar() * Symbol::wbar() * QComplex(0, 2) + Symbol::zbar() +
                     Symbol::z() * Symbol::z();
  SearchConfig cfg = small_grid();
  for (int t = 0; t < 10; ++t) {
    const auto fam = t % 2 ? SliceFamily::w : SliceFamily::z;
    const double radius = fam == SliceFamily::z ? box.r1d() : box.r2d();
    const std::complex<double> center = 0.3 * radius * std::complex<double>(u(rng), u(rng));
    const std::complex<double> scale = 0.3 * radius * std::complex<double>(u(rng), u(rng));
    const auto [lhs, rhs] = vd_identity_check(phi, {fam, 3.0 * u(rng), center, scale}, box, cfg);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, lhs));
  }
}

TEST_CASE("Neumann constants") {
  const auto a = neumann_constants(ProductDomain::unit_bidisk());
  CHECK(a.norm_N == doctest::Approx(8.0 * std::numbers::e).epsilon(1e-15));
  CHECK(a.norm_dbarstarN == doctest::Approx(sqrt_e * tau_unit).epsilon(1e-15));
  const auto b = neumann_constants(ProductDomain(3, 3));
  CHECK(b.norm_N == doctest::Approx(9.0 * a.norm_N).epsilon(1e-14));
  CHECK(b.norm_dbarN == doctest::Approx(3.0 * a.norm_dbarN).epsilon(1e-14));
}

TEST_CASE("sandwich verdicts") {
  BoundReport bounds;
  bounds.thm1_lower.value = 0.25;
  bounds.thm2_lower = BoundValue{0.7, std::nullopt};
  bounds.thm1_upper.value = 4.0;
  EssNormBracket br;
  br.lower_est = 0.7071;
  br.upper_est = 0.7072;
  CHECK(sandwich_check(bounds, br).pass());
  CHECK(sandwich_check(bounds, br).rows.size() == 4);
  br.upper_est = 4.1;
  const auto bad = sandwich_check(bounds, br);
  CHECK_FALSE(bad.pass());
  CHECK_FALSE(bad.rows.back().pass);
}
