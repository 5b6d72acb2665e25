#pragma once

#include "essnorm/domain.hpp"
#include "essnorm/hankel.hpp"
#include "essnorm/symbol.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace essnorm {

/// Thrown by the bound evaluators when the symbol fails the boundary
/// harmonicity test.
class NotAdmissible : public std::domain_error {
 public:
  explicit NotAdmissible(HarmonicityReport report);
  [[nodiscard]] const HarmonicityReport& report() const { return report_; }

 private:
  HarmonicityReport report_;
};

/// Grid sizes of the disk-family searches.
///
/// A z-family disk is xi -> (a + c xi, r2 e^{i theta}). theta runs over
/// grid_theta equally spaced angles; a over a polar grid with grid_center
/// radii i*r1/(grid_center-1) and grid_center angles; |c| over the levels
/// l*r1/grid_scale that keep |a| + |c| <= r1. The infimum over each disk uses
/// inner_angular x inner_radial points plus its center. Every search ends
/// with refine_rounds rounds of a 5-point-per-axis stencil around the best
/// point, the step shrinking 4x per round. The w-family is symmetric.
struct SearchConfig {
  int grid_theta = 64;
  int grid_center = 33;
  int grid_scale = 32;
  int inner_angular = 64;
  int inner_radial = 16;
  int refine_rounds = 3;
  /// Families searched. An empty list is the diagnostic "no boundary disks"
  /// configuration, for which every bound is 0.
  std::vector<SliceFamily> families{SliceFamily::z, SliceFamily::w};

  /// Throws std::invalid_argument on nonpositive counts.
  void validate() const;
};

struct BoundValue {
  double value = 0.0;
  /// Maximizing disk; empty when the value is 0 by convention or the
  /// objective vanishes identically.
  std::optional<DiskSlice> argmax;
};

struct SearchDiagnostics {
  long outer_candidates = 0;    ///< maximin candidates evaluated in full
  long coarse_evaluations = 0;  ///< candidates screened on the coarse inner grid
  long outer_pruned = 0;        ///< candidates never screened
  long refine_evaluations = 0;
};

struct BoundReport {
  /// sup over disks of |F'(0)|^2-weighted infimum, before the constants.
  double maximin = 0.0;
  /// sup of the relevant dbar derivative over the boundary disks.
  double boundary_sup = 0.0;
  BoundValue thm1_lower;
  BoundValue thm1_upper;
  std::optional<BoundValue> thm2_lower;  ///< unit bidisk only
  SearchConfig config;
  SearchDiagnostics diagnostics;
};

/// Lower bound sup_F |F'(0)| inf_xi |(phi o F)_xibar| / (sqrt(2) tau).
BoundValue thm1_lower(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg = {});
/// Upper bound sqrt(e) tau sup_F sup_xi |(phi o F)_xibar| / |F'(0)|.
BoundValue thm1_upper(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg = {});
/// Bidisk lower bound sup_F |F'(0)| inf_xi |(phi o F)_xibar| / sqrt(2).
/// Throws std::invalid_argument off the unit bidisk.
BoundValue thm2_lower(const Symbol& phi, const SearchConfig& cfg = {});

/// All bounds from one maximin search and one sup search.
BoundReport evaluate_bounds(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg = {});

/// Norm bounds of the dbar-Neumann operator in terms of the diameter.
struct NeumannConstants {
  double norm_N = 0.0;          ///< e tau^2
  double norm_dbarN = 0.0;      ///< sqrt(e) tau
  double norm_dbarstarN = 0.0;  ///< sqrt(e) tau
};

NeumannConstants neumann_constants(const ProductDomain& dom);

/// (V(D) inf_D |phi_vbar|, pi |F'(0)| inf_disk |(phi o F)_xibar|) for the
/// image disk D of the slice, v the varying coordinate. The two sides are
/// evaluated independently on corresponding grids.
std::pair<double, double> vd_identity_check(const Symbol& phi, const DiskSlice& slice, const ProductDomain& dom,
                                            const SearchConfig& cfg = {});

struct SandwichRow {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct SandwichReport {
  std::vector<SandwichRow> rows;
  double tolerance = 0.0;
  [[nodiscard]] bool pass() const;
};

/// Checks thm1_lower <= thm2_lower <= lower_est + tol and
/// upper_est <= thm1_upper + tol; off the bidisk thm1_lower <= lower_est + tol
/// replaces the first two. tol = base_tol + bracket.tolerance.
SandwichReport sandwich_check(const BoundReport& bounds, const EssNormBracket& bracket, double base_tol = 1e-6);

/// Infimum (or supremum) of |q| over the closed disk {|zeta - center| <= radius}
/// by polar grid and local refinement. Returns the value and its location.
std::pair<double, std::complex<double>> disk_inf_abs(const PlanarPoly& q, std::complex<double> center, double radius,
                                                     const SearchConfig& cfg);
std::pair<double, std::complex<double>> disk_sup_abs(const PlanarPoly& q, std::complex<double> center, double radius,
                                                     const SearchConfig& cfg);

}  // namespace essnorm
