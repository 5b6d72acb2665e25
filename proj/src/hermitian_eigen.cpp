#include "essnorm/hermitian_eigen.hpp"

#include "essnorm/simd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>

namespace essnorm {

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t k = 0; k < re_.size(); ++k) s += re_[k] * re_[k] + im_[k] * im_[k];
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

ComplexMatrix ComplexMatrix::principal(const std::vector<std::size_t>& idx) const {
  ComplexMatrix out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out.set(i, j, (*this)(idx[i], idx[j]));
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

JacobiResult jacobi_eigenvalues(ComplexMatrix a, const JacobiOptions& opts) {
  const std::size_t n = a.size();
  JacobiResult result;
  const double norm = a.frobenius_norm();
  const double target = opts.rel_tol * norm;

  for (int sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
    result.off_norm = off_diagonal_norm(a);
    result.sweeps = sweep;
    if (result.off_norm <= target) {
      result.converged = true;
      break;
    }
    if (sweep == opts.max_sweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const std::complex<double> beta = a(p, q);
        const double b = std::abs(beta);
        if (b == 0.0) continue;
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        // Entries already below rounding of both diagonals are dropped.
        if (sweep > 3 && std::abs(alpha) + 100.0 * b == std::abs(alpha) &&
            std::abs(gamma) + 100.0 * b == std::abs(gamma)) {
          a.set(p, q, 0.0);
          a.set(q, p, 0.0);
          continue;
        }
        const std::complex<double> sigma = beta / b;
        const double zeta = (gamma - alpha) / (2.0 * b);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        simd::rotate_rows(std::span<double>(a.row_re(p), n), std::span<double>(a.row_im(p), n),
                          std::span<double>(a.row_re(q), n), std::span<double>(a.row_im(q), n), c, s, sigma);
        // The column update mirrors the rows by Hermitian symmetry.
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a.set(k, p, std::conj(a(p, k)));
          a.set(k, q, std::conj(a(q, k)));
        }
        a.set(p, p, alpha - t * b);
        a.set(q, q, gamma + t * b);
        a.set(p, q, 0.0);
        a.set(q, p, 0.0);
      }
    }
  }

  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i).real();
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
  return result;
}

std::vector<std::vector<std::size_t>> nonzero_blocks(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(i, j) != 0.0 || a(j, i) != 0.0) {
        const auto ri = find(i);
        const auto rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, const JacobiOptions& opts) {
  std::vector<double> all;
  all.reserve(a.size());
  for (const auto& block : nonzero_blocks(a)) {
    if (block.size() == 1) {
      all.push_back(a(block[0], block[0]).real());
      continue;
    }
    const auto r = jacobi_eigenvalues(a.principal(block), opts);
    all.insert(all.end(), r.eigenvalues.begin(), r.eigenvalues.end());
  }
  std::sort(all.begin(), all.end(), std::greater<>());
  return all;
}

}  // namespace essnorm
