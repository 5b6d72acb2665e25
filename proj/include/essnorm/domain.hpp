#pragma once

#include "essnorm/rational.hpp"

namespace essnorm {

/// Product of two centered disks {|z| < r1} x {|w| < r2} in C^2.
///
/// Radii are exact rationals so that every monomial moment, and hence every
/// Gram entry, is a rational multiple of a power of pi.
class ProductDomain {
 public:
  ProductDomain(mpq_class r1, mpq_class r2);

  static ProductDomain unit_bidisk() { return {1, 1}; }

  [[nodiscard]] const mpq_class& r1() const { return r1_; }
  [[nodiscard]] const mpq_class& r2() const { return r2_; }
  [[nodiscard]] double r1d() const { return r1_.get_d(); }
  [[nodiscard]] double r2d() const { return r2_.get_d(); }
  /// Diameter 2*sqrt(r1^2 + r2^2).
  [[nodiscard]] double tau() const;
  [[nodiscard]] bool is_unit_bidisk() const { return r1_ == 1 && r2_ == 1; }

  friend bool operator==(const ProductDomain& a, const ProductDomain& b) { return a.r1_ == b.r1_ && a.r2_ == b.r2_; }

 private:
  mpq_class r1_;
  mpq_class r2_;
};

}  // namespace essnorm
