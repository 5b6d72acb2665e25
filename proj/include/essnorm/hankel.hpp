#pragma once

#include "essnorm/bergman.hpp"
#include "essnorm/domain.hpp"
#include "essnorm/hermitian_eigen.hpp"
#include "essnorm/symbol.hpp"

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace essnorm {

/// Ordered list of orthonormal basis indices.
///
/// The graded window holds every e_mn with tail_start < m + n <= degree,
/// sorted by total degree and then by m.
class BasisWindow {
 public:
  BasisWindow() = default;
  static BasisWindow graded(int degree, int tail_start = -1);
  /// Arbitrary index list kept in the given order. Duplicates are rejected.
  static BasisWindow from_indices(std::vector<BasisIndex> indices);

  [[nodiscard]] const std::vector<BasisIndex>& indices() const { return indices_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  [[nodiscard]] const BasisIndex& operator[](std::size_t i) const { return indices_[i]; }
  /// Position of idx, or -1.
  [[nodiscard]] long find(const BasisIndex& idx) const;
  [[nodiscard]] int max_degree() const;

 private:
  std::vector<BasisIndex> indices_;
  std::map<BasisIndex, std::size_t> position_;
};

/// One coefficient <phi e_idx, e_target> = coeff * sqrt(radicand), with
/// coeff and radicand exact.
struct ProjectionCoeff {
  BasisIndex target;
  QComplex coeff;
  mpq_class radicand;
  [[nodiscard]] std::complex<double> value() const;
};

/// Nonzero coefficients of P(phi e_idx) in the orthonormal basis, sorted by
/// target index.
std::vector<ProjectionCoeff> projection_coeffs(const Symbol& phi, const BasisIndex& idx, const ProductDomain& dom);

enum class Arithmetic { exact, floating };

/// Gram matrix G_ij = <H e_j, H e_i> of the Hankel operator on a window.
///
/// In exact mode every entry is first assembled in the monomial basis as a
/// rational multiple of pi^2 (the sparse `monomial` map) together with the
/// exact squared monomial norms; the dense floating matrix is derived from
/// those. Floating mode assembles the normalized entries directly in double
/// precision through a separate set of formulas and leaves `monomial` empty.
struct HermitianGram {
  BasisWindow window;
  ComplexMatrix dense;
  Arithmetic arithmetic = Arithmetic::floating;
  /// True when the entries are exact: exact arithmetic on an exact symbol.
  bool exact = false;
  /// Nonzero entries <H z^mj w^nj, H z^mi w^ni> / pi^2 keyed by (i, j).
  std::map<std::pair<std::size_t, std::size_t>, QComplex> monomial;
  /// ||z^m w^n||^2 / pi^2 per window position.
  std::vector<mpq_class> monomial_norms;

  /// G_ii as an exact rational. Exact mode only.
  [[nodiscard]] mpq_class exact_diagonal(std::size_t i) const;
  /// Descending eigenvalues of the dense matrix.
  [[nodiscard]] std::vector<double> eigenvalues(const JacobiOptions& opts = {}) const;
  /// Exact positive semidefiniteness by rational LDL^H. Exact mode only.
  [[nodiscard]] bool exact_psd() const;
  /// Coefficients c_0..c_n (ascending powers) of det(lambda I - G), exact.
  /// Computed on the rational similar matrix D^-1 Gt. Exact mode only.
  [[nodiscard]] std::vector<mpq_class> exact_char_poly() const;
};

HermitianGram gram(const Symbol& phi, const BasisWindow& window, const ProductDomain& dom,
                   Arithmetic arithmetic = Arithmetic::exact);

/// Square root of the largest Gram eigenvalue over all e_mn with m + n <= degree.
double op_norm(const Symbol& phi, int degree, const ProductDomain& dom, Arithmetic arithmetic = Arithmetic::exact);

/// One Rayleigh value along a normalized-kernel direction g (x) k_p.
struct SequencePoint {
  double p = 0.0;
  double value = 0.0;
  int best_g = 0;      ///< index m of the basis vector e_m in the other coordinate
  int kernel_degree = 0;
  double tail = 0.0;   ///< truncation tail mass of k_p
};

/// Rayleigh values ||H f|| / ||f|| for f = e_m (x) k_p, maximized over m.
/// `kernel` names the coordinate carrying k_p: SliceFamily::w puts the kernel
/// in w and lets e_m range over z.
struct KernelSequence {
  SliceFamily kernel = SliceFamily::w;
  std::vector<SequencePoint> points;
  /// Quadratic extrapolation to |p| -> 1 in t = 1 - |p|^2 through the last
  /// three points (the last value when fewer are available).
  double limit = 0.0;
  /// Gap between the quadratic and the linear extrapolant.
  double limit_error = 0.0;
  std::vector<std::string> warnings;
};

struct KernelSequenceOptions {
  std::vector<double> p_schedule{0.0, 0.5, 0.9, 0.99, 0.999, 0.9999, 0.99999};
  /// Fixed truncation degree of k_p; 0 picks the smallest degree with tail
  /// mass below tail_tol for each p.
  int kernel_degree = 0;
  double tail_tol = 1e-8;
  /// e_m ranges over m = 0..other_degree.
  int other_degree = 30;
};

KernelSequence kernel_sequence_est(const Symbol& phi, const ProductDomain& dom, SliceFamily kernel,
                                   const KernelSequenceOptions& opts = {});

struct TailCell {
  int tail_start = 0;
  int degree = 0;
  double value = 0.0;  ///< sup singular value of H on the window (tail_start, degree]
};

struct BracketOptions {
  int degree = 30;
  std::vector<int> tail_starts{0, 10, 20};
  /// Each table row uses degrees degree, degree - stride, ... above the
  /// tail start, at most `depth` of them.
  int table_stride = 2;
  int table_depth = 5;
  KernelSequenceOptions sequence;
  Arithmetic arithmetic = Arithmetic::exact;
  JacobiOptions jacobi;
};

struct EssNormBracket {
  double lower_est = 0.0;
  double upper_est = 0.0;
  /// Largest Rayleigh value at the largest |p| over both kernel families.
  double lower_certified = 0.0;
  /// Tail value at the largest tail start and full degree.
  double upper_raw = 0.0;
  /// Larger of the two extrapolation error estimates.
  double tolerance = 0.0;
  bool exact = false;
  std::vector<TailCell> table;
  std::vector<KernelSequence> sequences;
  std::vector<std::string> warnings;

  /// Per-|p| maximum over the kernel families.
  [[nodiscard]] std::vector<std::pair<double, double>> sequence() const;
};

/// Throws std::invalid_argument unless every tail start is below the degree.
EssNormBracket ess_norm_bracket(const Symbol& phi, const ProductDomain& dom, const BracketOptions& opts = {});

/// Value at 0 of the polynomial through (x_i, y_i), by Neville's scheme.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y);

/// Biholomorphic self-map of the product domain.
struct Unitary {
  enum class Kind { rotate, swap };
  Kind kind = Kind::rotate;
  double alpha = 0.0;
  double beta = 0.0;

  static Unitary rotate(double alpha, double beta) { return {Kind::rotate, alpha, beta}; }
  static Unitary swap() { return {Kind::swap, 0.0, 0.0}; }
};

/// phi o F for F(z, w) = (e^{i alpha} z, e^{i beta} w) or F(z, w) = (w, z).
/// Rotations by multiples of pi/2 stay exact; other angles flag the result
/// inexact. Throws std::invalid_argument for swap when r1 != r2.
Symbol apply_unitary(const Symbol& phi, const Unitary& f, const ProductDomain& dom);

}  // namespace essnorm
