#include "essnorm/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace essnorm {

ProductDomain::ProductDomain(mpq_class r1, mpq_class r2) : r1_(std::move(r1)), r2_(std::move(r2)) {
  if (sgn(r1_) <= 0 || sgn(r2_) <= 0) throw std::invalid_argument("disk radii must be positive");
}

double ProductDomain::tau() const {
  const mpq_class s = r1_ * r1_ + r2_ * r2_;
  return 2.0 * std::sqrt(s.get_d());
}

}  // namespace essnorm
