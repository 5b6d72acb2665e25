#include "essnorm/bounds.hpp"

#include "essnorm/simd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <tuple>

namespace essnorm {

NotAdmissible::NotAdmissible(HarmonicityReport report)
    : std::domain_error("symbol is not harmonic along the boundary disks"), report_(std::move(report)) {}

void SearchConfig::validate() const {
  if (grid_theta < 1 || grid_center < 2 || grid_scale < 1 || inner_angular < 1 || inner_radial < 1 ||
      refine_rounds < 0)
    throw std::invalid_argument("search grid sizes must be positive (grid_center >= 2, refine_rounds >= 0)");
}

namespace {

using Points = std::vector<std::complex<double>>;

std::vector<double> abs2_at(const simd::PackedPoly& q, const Points& pts) {
  std::vector<double> zr(pts.size());
  std::vector<double> zi(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    zr[k] = pts[k].real();
    zi[k] = pts[k].imag();
  }
  std::vector<double> out(pts.size());
  simd::poly_abs2(q, zr, zi, out);
  return out;
}

// Extremum of a nonnegative field over the closed disk {|zeta - center| <= radius}.
// `eval` maps points zeta to |.|^2. Grid first, then refine_rounds rounds of
// a 5x5 stencil around the incumbent; the first stencil step is half the
// radial spacing, so it reaches the neighbouring rings and spokes.
template <class Eval>
std::pair<double, std::complex<double>> disk_extreme(const Eval& eval, std::complex<double> center, double radius,
                                                     const SearchConfig& cfg, bool minimize) {
  Points pts;
  pts.reserve(1 + static_cast<std::size_t>(cfg.inner_radial) * cfg.inner_angular);
  pts.push_back(center);
  for (int l = 1; l <= cfg.inner_radial; ++l)
    for (int k = 0; k < cfg.inner_angular; ++k)
      pts.push_back(center + std::polar(radius * l / cfg.inner_radial, 2.0 * std::numbers::pi * k / cfg.inner_angular));
  auto better = [minimize](double a, double b) { return minimize ? a < b : a > b; };

  auto vals = eval(pts);
  std::size_t best = 0;
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (better(vals[k], vals[best])) best = k;
  double best_val = vals[best];
  std::complex<double> best_pt = pts[best];

  double h = radius / cfg.inner_radial / 2.0;
  for (int round = 0; round < cfg.refine_rounds; ++round, h /= 4.0) {
    Points st;
    st.reserve(25);
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        if (i == 0 && j == 0) continue;
        std::complex<double> p = best_pt + std::complex<double>(i * h, j * h);
        const double d = std::abs(p - center);
        if (d > radius) p = center + (p - center) * (radius / d);
        st.push_back(p);
      }
    const auto sv = eval(st);
    for (std::size_t k = 0; k < sv.size(); ++k)
      if (better(sv[k], best_val)) {
        best_val = sv[k];
        best_pt = st[k];
      }
  }
  return {std::sqrt(std::max(0.0, best_val)), best_pt};
}

double varying_radius(const ProductDomain& dom, SliceFamily f) { return f == SliceFamily::z ? dom.r1d() : dom.r2d(); }

std::vector<SliceFamily> family_list(const SearchConfig& cfg) {
  std::vector<SliceFamily> fams = cfg.families;
  std::sort(fams.begin(), fams.end());
  fams.erase(std::unique(fams.begin(), fams.end()), fams.end());
  return fams;
}

void require_admissible(const Symbol& phi, const ProductDomain& dom) {
  auto report = check_admissible(phi, dom);
  if (!report.admissible) throw NotAdmissible(std::move(report));
}

// Grid position of one maximin candidate; the tuple order is the
// lexicographic tie-break order (family, theta, a, c).
struct Key {
  int family, theta, a_radius, a_angle, scale;
  auto operator<=>(const Key&) const = default;
};

// Stage 0 carries the bound c^2 |q(a)| from the disk center, stage 1 the
// bound from a coarse subset of the inner grid.
struct Candidate {
  double bound;
  Key key;
  int stage;
};

struct CandidateOrder {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.bound != y.bound) return x.bound < y.bound;
    return y.key < x.key;
  }
};

struct MaximinResult {
  double value = 0.0;
  std::optional<DiskSlice> argmax;
};

class Maximin {
 public:
  Maximin(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg, SearchDiagnostics& diag)
      : phi_(phi), dom_(dom), cfg_(cfg), diag_(diag) {
    for (auto f : {SliceFamily::z, SliceFamily::w}) dbar_[static_cast<int>(f)] = dbar_varying(phi, f);
  }

  MaximinResult run() {
    const auto fams = family_list(cfg_);
    if (fams.empty()) return {};
    grid_search(fams);
    if (!found_) return {};
    refine();
    return {best_, slice_};
  }

 private:
  simd::PackedPoly packed(SliceFamily f, double theta) const {
    return simd::PackedPoly(freeze_boundary(dbar_[static_cast<int>(f)], f, theta, dom_));
  }

  double objective(const simd::PackedPoly& q, std::complex<double> a, double c) const {
    const auto eval = [&q](const Points& p) { return abs2_at(q, p); };
    return c * c * disk_extreme(eval, a, c, cfg_, true).first;
  }

  void offer(double value, SliceFamily f, double theta, std::complex<double> a, double c, const Key* key) {
    const bool tie = found_ && std::abs(value - best_) <= 1e-12;
    const bool take = !found_ || value > best_ + 1e-12 || (tie && key != nullptr && has_key_ && *key < best_key_);
    if (!take) return;
    found_ = true;
    best_ = value;
    slice_ = DiskSlice{f, theta, a, {c, 0.0}};
    has_key_ = key != nullptr;
    if (key) best_key_ = *key;
  }

  void grid_search(const std::vector<SliceFamily>& fams) {
    const int G = cfg_.grid_center;
    const int S = cfg_.grid_scale;
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> queue;
    std::vector<std::vector<simd::PackedPoly>> polys(2);
    std::vector<std::complex<double>> centers;
    std::vector<std::pair<int, int>> center_idx;
    centers.push_back({0.0, 0.0});
    center_idx.emplace_back(0, 0);
    for (int i = 1; i < G; ++i)
      for (int k = 0; k < G; ++k) {
        centers.push_back(std::polar(static_cast<double>(i) / (G - 1), 2.0 * std::numbers::pi * k / G));
        center_idx.emplace_back(i, k);
      }

    for (auto f : fams) {
      const int fi = static_cast<int>(f);
      const double r = varying_radius(dom_, f);
      polys[fi].reserve(cfg_.grid_theta);
      Points a_pts(centers.size());
      for (std::size_t k = 0; k < centers.size(); ++k) a_pts[k] = r * centers[k];
      for (int t = 0; t < cfg_.grid_theta; ++t) {
        polys[fi].push_back(packed(f, theta_at(t)));
        const auto at_center = abs2_at(polys[fi].back(), a_pts);
        for (std::size_t k = 0; k < centers.size(); ++k) {
          const auto [i, ang] = center_idx[k];
          const int l_max = S * (G - 1 - i) / (G - 1);
          if (l_max < 1) continue;
          const double c = r * l_max / S;
          const double bound = c * c * std::sqrt(at_center[k]);
          if (bound > 0.0) queue.push({bound, {fi, t, i, ang, l_max}, 0});
        }
      }
    }

    while (!queue.empty()) {
      const Candidate cand = queue.top();
      queue.pop();
      if (found_ && cand.bound < best_ - 1e-12) {
        diag_.outer_pruned += static_cast<long>(queue.size()) + 1;
        break;
      }
      const Key& k = cand.key;
      const auto f = static_cast<SliceFamily>(k.family);
      const double r = varying_radius(dom_, f);
      const std::complex<double> a = r * (k.a_radius == 0 ? std::complex<double>(0.0, 0.0)
                                                           : std::polar(static_cast<double>(k.a_radius) / (G - 1),
                                                                        2.0 * std::numbers::pi * k.a_angle / G));
      const double c = r * k.scale / S;
      const auto& q = polys[k.family][k.theta];
      if (cand.stage == 0) {
        if (k.scale > 1) {
          const double c2 = r * (k.scale - 1) / S;
          queue.push({cand.bound * (c2 * c2) / (c * c), {k.family, k.theta, k.a_radius, k.a_angle, k.scale - 1}, 0});
        }
        const auto coarse = abs2_at(q, coarse_points(a, c));
        const double b1 = c * c * std::sqrt(*std::min_element(coarse.begin(), coarse.end()));
        ++diag_.coarse_evaluations;
        queue.push({std::min(b1, cand.bound), k, 1});
        continue;
      }
      const double value = objective(q, a, c);
      ++diag_.outer_candidates;
      offer(value, f, theta_at(k.theta), a, c, &k);
    }
  }

  // Every (inner_radial/4)-th ring and (inner_angular/16)-th spoke of the
  // inner grid, rim included: a subset of the points objective() visits.
  Points coarse_points(std::complex<double> a, double c) const {
    const int R = cfg_.inner_radial;
    const int A = cfg_.inner_angular;
    const int sr = std::max(1, R / 4);
    const int sa = std::max(1, A / 16);
    Points pts{a};
    for (int l = R; l >= 1; l -= sr)
      for (int k = 0; k < A; k += sa)
        pts.push_back(a + std::polar(c * l / R, 2.0 * std::numbers::pi * k / A));
    return pts;
  }

  // Local search in (theta, a, s) with c = s (r - |a|), so moves along the
  // containment constraint |a| + c <= r stay feasible.
  void refine() {
    const SliceFamily f = slice_.family;
    const double r = varying_radius(dom_, f);
    double h_theta = 2.0 * std::numbers::pi / cfg_.grid_theta / 2.0;
    double h_a = r / (cfg_.grid_center - 1) / 2.0;
    double h_s = 1.0 / cfg_.grid_scale / 2.0;
    for (int round = 0; round < cfg_.refine_rounds; ++round, h_theta /= 4.0, h_a /= 4.0, h_s /= 4.0) {
      const DiskSlice base = slice_;
      const double s0 = base.scale.real() / (r - std::abs(base.center));
      std::array<simd::PackedPoly, 5> q;
      for (int i = 0; i < 5; ++i) q[i] = packed(f, base.boundary_angle + (i - 2) * h_theta);
      for (int it = 0; it < 5; ++it)
        for (int ir = -2; ir <= 2; ++ir)
          for (int ii = -2; ii <= 2; ++ii)
            for (int is = -2; is <= 2; ++is) {
              if (it == 2 && ir == 0 && ii == 0 && is == 0) continue;
              const std::complex<double> a = base.center + std::complex<double>(ir * h_a, ii * h_a);
              const double room = r - std::abs(a);
              const double s = std::min(1.0, s0 + is * h_s);
              if (!(room > 0.0) || !(s > 0.0)) continue;
              const double c = s * room;
              const double bound = c * c * std::sqrt(abs2_at(q[it], {a})[0]);
              if (bound <= best_ + 1e-12) continue;
              ++diag_.refine_evaluations;
              offer(objective(q[it], a, c), f, base.boundary_angle + (it - 2) * h_theta, a, c, nullptr);
            }
    }
  }

  [[nodiscard]] double theta_at(int t) const { return 2.0 * std::numbers::pi * t / cfg_.grid_theta; }

  const Symbol& phi_;
  const ProductDomain& dom_;
  const SearchConfig& cfg_;
  SearchDiagnostics& diag_;
  std::array<Symbol, 2> dbar_;
  bool found_ = false;
  bool has_key_ = false;
  double best_ = 0.0;
  Key best_key_{};
  DiskSlice slice_;
};

MaximinResult boundary_sup(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg,
                           SearchDiagnostics& diag) {
  MaximinResult out;
  bool found = false;
  for (auto f : family_list(cfg)) {
    const Symbol d = dbar_varying(phi, f);
    const double r = varying_radius(dom, f);
    auto sup_at = [&](double theta) {
      const simd::PackedPoly q(freeze_boundary(d, f, theta, dom));
      const auto eval = [&q](const Points& p) { return abs2_at(q, p); };
      return disk_extreme(eval, {0.0, 0.0}, r, cfg, false).first;
    };
    double best = -1.0;
    double best_theta = 0.0;
    for (int t = 0; t < cfg.grid_theta; ++t) {
      const double theta = 2.0 * std::numbers::pi * t / cfg.grid_theta;
      const double v = sup_at(theta);
      if (v > best + 1e-12) {
        best = v;
        best_theta = theta;
      }
    }
    double h = 2.0 * std::numbers::pi / cfg.grid_theta / 2.0;
    for (int round = 0; round < cfg.refine_rounds; ++round, h /= 4.0) {
      const double base = best_theta;
      for (int i = -2; i <= 2; ++i) {
        if (i == 0) continue;
        const double v = sup_at(base + i * h);
        ++diag.refine_evaluations;
        if (v > best + 1e-12) {
          best = v;
          best_theta = base + i * h;
        }
      }
    }
    if (best > 0.0 && (!found || best > out.value + 1e-12)) {
      found = true;
      out.value = best;
      out.argmax = DiskSlice{f, best_theta, {0.0, 0.0}, {r, 0.0}};
    }
  }
  return out;
}

}  // namespace

std::pair<double, std::complex<double>> disk_inf_abs(const PlanarPoly& q, std::complex<double> center, double radius,
                                                     const SearchConfig& cfg) {
  const simd::PackedPoly p(q);
  return disk_extreme([&p](const Points& pts) { return abs2_at(p, pts); }, center, radius, cfg, true);
}

std::pair<double, std::complex<double>> disk_sup_abs(const PlanarPoly& q, std::complex<double> center, double radius,
                                                     const SearchConfig& cfg) {
  const simd::PackedPoly p(q);
  return disk_extreme([&p](const Points& pts) { return abs2_at(p, pts); }, center, radius, cfg, false);
}

BoundReport evaluate_bounds(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg) {
  cfg.validate();
  require_admissible(phi, dom);
  BoundReport rep;
  rep.config = cfg;
  const double tau = dom.tau();

  const auto lower = Maximin(phi, dom, cfg, rep.diagnostics).run();
  rep.maximin = lower.value;
  rep.thm1_lower = {lower.value / (std::numbers::sqrt2 * tau), lower.argmax};
  if (dom.is_unit_bidisk()) rep.thm2_lower = BoundValue{lower.value / std::numbers::sqrt2, lower.argmax};

  const auto upper = boundary_sup(phi, dom, cfg, rep.diagnostics);
  rep.boundary_sup = upper.value;
  rep.thm1_upper = {std::exp(0.5) * tau * upper.value, upper.argmax};
  return rep;
}

BoundValue thm1_lower(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg) {
  cfg.validate();
  require_admissible(phi, dom);
  SearchDiagnostics diag;
  const auto r = Maximin(phi, dom, cfg, diag).run();
  return {r.value / (std::numbers::sqrt2 * dom.tau()), r.argmax};
}

BoundValue thm1_upper(const Symbol& phi, const ProductDomain& dom, const SearchConfig& cfg) {
  cfg.validate();
  require_admissible(phi, dom);
  SearchDiagnostics diag;
  const auto r = boundary_sup(phi, dom, cfg, diag);
  return {std::exp(0.5) * dom.tau() * r.value, r.argmax};
}

BoundValue thm2_lower(const Symbol& phi, const SearchConfig& cfg) {
  cfg.validate();
  const auto dom = ProductDomain::unit_bidisk();
  require_admissible(phi, dom);
  SearchDiagnostics diag;
  const auto r = Maximin(phi, dom, cfg, diag).run();
  return {r.value / std::numbers::sqrt2, r.argmax};
}

NeumannConstants neumann_constants(const ProductDomain& dom) {
  const double tau = dom.tau();
  const double se = std::exp(0.5);
  return {std::numbers::e * tau * tau, se * tau, se * tau};
}

std::pair<double, double> vd_identity_check(const Symbol& phi, const DiskSlice& slice, const ProductDomain& dom,
                                            const SearchConfig& cfg) {
  validate(slice, dom);
  cfg.validate();
  const double c = std::abs(slice.scale);

  const simd::PackedPoly direct(freeze_boundary(dbar_varying(phi, slice.family), slice.family, slice.boundary_angle, dom));
  const auto lhs_eval = [&direct](const Points& p) { return abs2_at(direct, p); };
  const double lhs = std::numbers::pi * c * c * disk_extreme(lhs_eval, slice.center, c, cfg, true).first;

  // Same image points, pulled back to xi = (zeta - center) / scale.
  const simd::PackedPoly pulled(restrict_to_slice(phi, slice, dom).dbar.at_angle(slice.boundary_angle));
  const auto rhs_eval = [&](const Points& p) {
    Points xi(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) xi[k] = (p[k] - slice.center) / slice.scale;
    return abs2_at(pulled, xi);
  };
  const double rhs = std::numbers::pi * c * disk_extreme(rhs_eval, slice.center, c, cfg, true).first;
  return {lhs, rhs};
}

bool SandwichReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

SandwichReport sandwich_check(const BoundReport& bounds, const EssNormBracket& bracket, double base_tol) {
  SandwichReport rep;
  rep.tolerance = base_tol + bracket.tolerance;
  const double tol = rep.tolerance;
  auto row = [&](std::string name, double lhs, double rhs) {
    rep.rows.push_back({std::move(name), lhs, rhs, lhs <= rhs + tol});
  };
  if (bounds.thm2_lower) {
    row("thm1_lower <= thm2_lower", bounds.thm1_lower.value, bounds.thm2_lower->value);
    row("thm2_lower <= lower_est", bounds.thm2_lower->value, bracket.lower_est);
  } else {
    row("thm1_lower <= lower_est", bounds.thm1_lower.value, bracket.lower_est);
  }
  row("lower_est <= upper_est", bracket.lower_est, bracket.upper_est);
  row("upper_est <= thm1_upper", bracket.upper_est, bounds.thm1_upper.value);
  return rep;
}

}  // namespace essnorm
