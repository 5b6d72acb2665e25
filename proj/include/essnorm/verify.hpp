#pragma once

#include "essnorm/domain.hpp"

#include <string>
#include <vector>

namespace essnorm {

struct VerifyOptions {
  double tau0 = 1.0;  ///< radius of the cutoff disk
  double r0 = 0.5;    ///< wedge radius
  double eps1 = 0.1;  ///< wedge opening defect, in (0, pi)
  std::vector<int> j{1, 2, 3};
  int radial_nodes = 24;
  int angular_nodes = 64;
  /// Degree of the window used by the unitary-invariance rows.
  int unitary_degree = 8;
  /// Relative perturbation of the cutoff's leading coefficient; nonzero only
  /// for the negative-control self test.
  double perturb_chi = 0.0;
  double rel_tol = 1e-8;

  /// Throws std::invalid_argument outside 0 < eps1 < pi, r0 > 0, tau0 > 0,
  /// j >= 1, positive node counts.
  void validate() const;
};

struct VerifyRow {
  std::string name;
  std::string closed_form;  ///< the formula the closed value comes from
  double closed = 0.0;
  double computed = 0.0;
  double abs_error = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  [[nodiscard]] bool pass() const;
};

/// Closed-form identities behind the essential-norm lower bound, each
/// reproduced independently by quadrature or by the spectral pipeline. A
/// row passes when |computed - closed| <= rel_tol * max(1, |closed|).
VerifyReport run_verification(const ProductDomain& dom, const VerifyOptions& opts = {});

}  // namespace essnorm
