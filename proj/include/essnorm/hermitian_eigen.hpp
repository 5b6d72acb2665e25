#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace essnorm {

/// Dense complex square matrix stored as split row-major real/imaginary
/// planes, the layout the SIMD rotation kernel works on.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), re_(n * n, 0.0), im_(n * n, 0.0) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return {re_[i * n_ + j], im_[i * n_ + j]};
  }
  void set(std::size_t i, std::size_t j, std::complex<double> v) {
    re_[i * n_ + j] = v.real();
    im_[i * n_ + j] = v.imag();
  }
  double* row_re(std::size_t i) { return re_.data() + i * n_; }
  double* row_im(std::size_t i) { return im_.data() + i * n_; }

  [[nodiscard]] double frobenius_norm() const;
  /// Largest |A_ij - conj(A_ji)|.
  [[nodiscard]] double hermitian_defect() const;
  /// Principal submatrix on the given rows/columns, in that order.
  [[nodiscard]] ComplexMatrix principal(const std::vector<std::size_t>& idx) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm is at most rel_tol * ||A||_F.
  double rel_tol = 1e-14;
  int max_sweeps = 100;
};

struct JacobiResult {
  std::vector<double> eigenvalues;  ///< descending
  int sweeps = 0;
  double off_norm = 0.0;
  bool converged = false;
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations in
/// fixed row-major (p, q) order. Deterministic for a given input and ISA-
/// independent: the SIMD and scalar rotation kernels agree bitwise.
JacobiResult jacobi_eigenvalues(ComplexMatrix a, const JacobiOptions& opts = {});

/// Splits the index set into connected components of the nonzero pattern;
/// each component is returned sorted ascending, components ordered by their
/// smallest index.
std::vector<std::vector<std::size_t>> nonzero_blocks(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix, solving each decoupled block
/// separately. Descending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, const JacobiOptions& opts = {});

}  // namespace essnorm
