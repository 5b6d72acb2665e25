#pragma once

#include "essnorm/domain.hpp"
#include "essnorm/rational.hpp"

#include <array>
#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace essnorm {

/// Powers of z, zbar, w, wbar in one monomial.
struct Exponent {
  int z = 0;
  int zbar = 0;
  int w = 0;
  int wbar = 0;

  auto operator<=>(const Exponent&) const = default;
  [[nodiscard]] int degree() const { return z + zbar + w + wbar; }
};

/// Polynomial in z, zbar, w, wbar with exact complex rational coefficients.
///
/// The term map never stores a zero coefficient, so two symbols are equal
/// exactly when their term maps are. The inexact flag records that some
/// coefficient came from a decimal literal or a floating rotation; it is
/// carried through arithmetic and into every downstream report.
class Symbol {
 public:
  using TermMap = std::map<Exponent, QComplex>;

  Symbol() = default;

  static Symbol constant(const QComplex& c);
  static Symbol monomial(const Exponent& e, const QComplex& c = QComplex(1));
  static Symbol z() { return monomial({1, 0, 0, 0}); }
  static Symbol zbar() { return monomial({0, 1, 0, 0}); }
  static Symbol w() { return monomial({0, 0, 1, 0}); }
  static Symbol wbar() { return monomial({0, 0, 0, 1}); }

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool inexact() const { return inexact_; }
  void set_inexact(bool v = true) { inexact_ = v; }
  [[nodiscard]] int degree() const;
  /// True when no term carries zbar or wbar.
  [[nodiscard]] bool holomorphic() const;
  /// True when only z and zbar appear.
  [[nodiscard]] bool depends_only_on_z() const;

  /// Adds c to the coefficient of e, erasing the entry if it cancels.
  void add_term(const Exponent& e, const QComplex& c);

  /// Maps (a,b,c,d) to (b,a,d,c) with conjugated coefficients.
  [[nodiscard]] Symbol conjugate() const;

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  Symbol& operator*=(const QComplex& c);

  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  friend Symbol operator*(const Symbol& a, const Symbol& b);
  friend Symbol operator*(Symbol a, const QComplex& c) { return a *= c; }
  friend Symbol operator*(const QComplex& c, Symbol a) { return a *= c; }
  friend Symbol operator-(const Symbol& a) { return a * QComplex(-1); }
  friend bool operator==(const Symbol& a, const Symbol& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
  bool inexact_ = false;
};

/// Human-readable form such as "2*zbar*w^2 + (1/2+i)".
std::string to_string(const Symbol& s);

QComplex eval(const Symbol& s, const QComplex& z, const QComplex& w);
std::complex<double> eval(const Symbol& s, std::complex<double> z, std::complex<double> w);

// Formal Wirtinger derivatives.
Symbol d_z(const Symbol& s);
Symbol dbar_z(const Symbol& s);
Symbol d_w(const Symbol& s);
Symbol dbar_w(const Symbol& s);

/// Which coordinate varies along a boundary disk. A z-family slice is
/// xi -> (center + scale*xi, r2*e^{i theta}); a w-family slice is
/// xi -> (r1*e^{i theta}, center + scale*xi).
enum class SliceFamily { z, w };

const char* to_string(SliceFamily f);

struct DiskSlice {
  SliceFamily family = SliceFamily::z;
  double boundary_angle = 0.0;
  std::complex<double> center{0.0, 0.0};
  std::complex<double> scale{1.0, 0.0};
};

/// Throws std::invalid_argument unless scale != 0 and |center| + |scale|
/// fits in the varying coordinate's closed disk.
void validate(const DiskSlice& slice, const ProductDomain& dom);

/// Wirtinger dbar in the coordinate that varies along the family.
Symbol dbar_varying(const Symbol& s, SliceFamily family);

/// Polynomial sum c_ab zeta^a conj(zeta)^b in a single complex variable.
struct PlanarPoly {
  struct Term {
    int a;
    int b;
    std::complex<double> c;
  };
  std::vector<Term> terms;

  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  [[nodiscard]] int max_power() const;
  [[nodiscard]] std::complex<double> operator()(std::complex<double> zeta) const;
};

/// Fixes the non-varying coordinate at radius * e^{i theta} and returns the
/// remaining polynomial in the varying coordinate.
PlanarPoly freeze_boundary(const Symbol& s, SliceFamily family, double theta, const ProductDomain& dom);

/// Polynomial in xi, xibar and the unimodular boundary constant u = e^{i theta},
/// keyed by (power of xi, power of xibar, Laurent power of u).
struct SlicePoly {
  std::map<std::array<int, 3>, std::complex<double>> terms;

  [[nodiscard]] std::complex<double> eval(std::complex<double> xi, double theta) const;
  /// Collapses u at the given angle.
  [[nodiscard]] PlanarPoly at_angle(double theta) const;
  [[nodiscard]] SlicePoly dbar() const;
  [[nodiscard]] double max_abs_coeff() const;
};

struct Restriction {
  SlicePoly value;  ///< phi o F
  SlicePoly dbar;   ///< (phi o F)_xibar
};

/// Substitutes the slice parametrization into s. Throws on invalid slices.
Restriction restrict_to_slice(const Symbol& s, const DiskSlice& slice, const ProductDomain& dom);

/// One residual Laurent coefficient from the harmonicity test: the mixed
/// second derivative restricted to the boundary circle of the fixed
/// coordinate, as coef * v^p * vbar^q * f^k where v is the varying
/// coordinate and f the fixed one (k may be negative after vbar = r^2/v).
struct LaurentTerm {
  int p;
  int q;
  int k;
  QComplex coef;
};

struct HarmonicityWitness {
  SliceFamily family;
  std::vector<LaurentTerm> residual;
};

struct HarmonicityReport {
  bool admissible = true;
  std::vector<HarmonicityWitness> witnesses;
};

/// Renders a witness residual with negative powers of the fixed coordinate
/// written through its conjugate on the boundary circle, e.g. "-zbar".
std::string to_string(const HarmonicityWitness& w, const ProductDomain& dom);

/// Harmonicity of phi along every boundary disk of the product domain.
HarmonicityReport check_admissible(const Symbol& s, const ProductDomain& dom);

}  // namespace essnorm
