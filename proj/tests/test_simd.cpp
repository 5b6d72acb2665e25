#include "doctest.h"

#include "essnorm/simd.hpp"
#include "essnorm/symbol.hpp"

#include <cstring>
#include <random>

using namespace essnorm;
using namespace essnorm::simd;

namespace {

std::vector<double> random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

PlanarPoly random_poly(std::mt19937& rng, int terms, int max_power) {
  std::uniform_int_distribution<int> p(0, max_power);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PlanarPoly q;
  for (int i = 0; i < terms; ++i) q.terms.push_back({p(rng), p(rng), {u(rng), u(rng)}});
  return q;
}

}  // namespace

TEST_CASE("scalar kernel is always available") {
  CHECK(isa_available(Isa::scalar));
  CHECK_NOTHROW(set_isa(Isa::scalar));
  CHECK(active_isa() == Isa::scalar);
}

TEST_CASE("rotation kernels agree bitwise") {
  if (!isa_available(Isa::avx2)) return;
  std::mt19937 rng(1);
  for (std::size_t n = 0; n < 41; ++n) {
    auto xr = random_vec(rng, n), xi = random_vec(rng, n), yr = random_vec(rng, n), yi = random_vec(rng, n);
    auto xr2 = xr, xi2 = xi, yr2 = yr, yi2 = yi;
    const double c = 0.8, s = 0.6;
    const std::complex<double> sigma = std::polar(1.0, 0.37 * static_cast<double>(n));
    kernels::rotate_rows_scalar(xr.data(), xi.data(), yr.data(), yi.data(), n, c, s, sigma.real(), sigma.imag());
    kernels::rotate_rows_avx2(xr2.data(), xi2.data(), yr2.data(), yi2.data(), n, c, s, sigma.real(), sigma.imag());
    CHECK(same_bits(xr, xr2));
    CHECK(same_bits(xi, xi2));
    CHECK(same_bits(yr, yr2));
    CHECK(same_bits(yi, yi2));
  }
}

TEST_CASE("polynomial modulus kernels agree bitwise") {
  if (!isa_available(Isa::avx2)) return;
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const PackedPoly q(random_poly(rng, 1 + trial % 7, trial % 6));
    const std::size_t n = 3 + 5 * static_cast<std::size_t>(trial);
    const auto zr = random_vec(rng, n), zi = random_vec(rng, n);
    std::vector<double> a(n), b(n);
    kernels::poly_abs2_scalar(q, zr.data(), zi.data(), a.data(), n);
    kernels::poly_abs2_avx2(q, zr.data(), zi.data(), b.data(), n);
    CHECK(same_bits(a, b));
  }
}

TEST_CASE("dispatched modulus matches direct evaluation") {
  std::mt19937 rng(3);
  const PlanarPoly p = random_poly(rng, 6, 4);
  const PackedPoly q(p);
  const auto zr = random_vec(rng, 50), zi = random_vec(rng, 50);
  std::vector<double> out(50);
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_available(isa)) continue;
    set_isa(isa);
    poly_abs2(q, zr, zi, out);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double direct = std::norm(p({zr[k], zi[k]}));
      CHECK(out[k] == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  set_isa(Isa::scalar);
}
