#include "doctest.h"

#include "essnorm/hermitian_eigen.hpp"
#include "essnorm/simd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>

using namespace essnorm;

namespace {

ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n, double density = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, {u(rng), 0.0});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (keep(rng) > density) continue;
      const std::complex<double> v{u(rng), u(rng)};
      a.set(i, j, v);
      a.set(j, i, std::conj(v));
    }
  }
  return a;
}

std::vector<double> eigen_oracle(const ComplexMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

}  // namespace

TEST_CASE("Jacobi eigenvalues match the Eigen oracle") {
  std::mt19937 rng(42);
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 24, 40}) {
    const auto a = random_hermitian(rng, n);
    const auto res = jacobi_eigenvalues(a);
    CHECK(res.converged);
    const auto ref = eigen_oracle(a);
    const double scale = std::max(1.0, a.frobenius_norm());
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(res.eigenvalues[k] - ref[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("blockwise solve matches dense solve") {
  std::mt19937 rng(7);
  const auto a = random_hermitian(rng, 30, 0.05);
  const auto blocks = nonzero_blocks(a);
  std::size_t total = 0;
  for (const auto& b : blocks) {
    CHECK(std::is_sorted(b.begin(), b.end()));
    total += b.size();
  }
  CHECK(total == 30);
  for (std::size_t k = 1; k < blocks.size(); ++k) CHECK(blocks[k - 1].front() < blocks[k].front());
  const auto ev = hermitian_eigenvalues(a);
  const auto ref = eigen_oracle(a);
  for (std::size_t k = 0; k < ev.size(); ++k) CHECK(std::abs(ev[k] - ref[k]) <= 1e-12 * std::max(1.0, a.frobenius_norm()));
}

TEST_CASE("diagonal and degenerate inputs") {
  ComplexMatrix d(4);
  for (std::size_t i = 0; i < 4; ++i) d.set(i, i, {static_cast<double>(i), 0.0});
  CHECK(hermitian_eigenvalues(d) == std::vector<double>{3.0, 2.0, 1.0, 0.0});
  CHECK(hermitian_eigenvalues(ComplexMatrix(3)) == std::vector<double>{0.0, 0.0, 0.0});
  ComplexMatrix r(2);
  r.set(0, 1, {0.0, 1.0});
  r.set(1, 0, {0.0, -1.0});
  const auto ev = hermitian_eigenvalues(r);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(-1.0));
}

TEST_CASE("eigenvalues do not depend on the instruction set") {
  using simd::Isa;
  if (!simd::isa_available(Isa::avx2)) return;
  std::mt19937 rng(5);
  const auto a = random_hermitian(rng, 37);
  simd::set_isa(Isa::scalar);
  const auto s = jacobi_eigenvalues(a).eigenvalues;
  simd::set_isa(Isa::avx2);
  const auto v = jacobi_eigenvalues(a).eigenvalues;
  simd::set_isa(Isa::scalar);
  CHECK(s == v);
}
