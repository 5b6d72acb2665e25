#include "essnorm/hankel.hpp"

#include "essnorm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace essnorm {

BasisWindow BasisWindow::graded(int degree, int tail_start) {
  std::vector<BasisIndex> idx;
  for (int d = std::max(tail_start + 1, 0); d <= degree; ++d)
    for (int m = 0; m <= d; ++m) idx.push_back({m, d - m});
  return from_indices(std::move(idx));
}

BasisWindow BasisWindow::from_indices(std::vector<BasisIndex> indices) {
  BasisWindow w;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i].m < 0 || indices[i].n < 0) throw std::invalid_argument("basis indices must be nonnegative");
    if (!w.position_.emplace(indices[i], i).second) throw std::invalid_argument("duplicate basis index in window");
  }
  w.indices_ = std::move(indices);
  return w;
}

long BasisWindow::find(const BasisIndex& idx) const {
  const auto it = position_.find(idx);
  return it == position_.end() ? -1 : static_cast<long>(it->second);
}

int BasisWindow::max_degree() const {
  int d = -1;
  for (const auto& i : indices_) d = std::max(d, i.degree());
  return d;
}

std::complex<double> ProjectionCoeff::value() const { return coeff.to_complex() * std::sqrt(radicand.get_d()); }

std::vector<ProjectionCoeff> projection_coeffs(const Symbol& phi, const BasisIndex& idx, const ProductDomain& dom) {
  std::map<BasisIndex, QComplex> acc;
  for (const auto& [e, c] : phi.terms()) {
    const BasisIndex target{e.z - e.zbar + idx.m, e.w - e.wbar + idx.n};
    if (target.m < 0 || target.n < 0) continue;
    const mpq_class mz = moment_over_pi(e.z + idx.m, e.zbar + target.m, dom.r1());
    const mpq_class mw = moment_over_pi(e.w + idx.n, e.wbar + target.n, dom.r2());
    acc[target] += c * mpq_class(mz * mw);
  }
  std::vector<ProjectionCoeff> out;
  const mpq_class d_src = monomial_norm_sq_over_pi2(idx, dom);
  for (const auto& [target, c] : acc) {
    if (c.is_zero()) continue;
    out.push_back({target, c, mpq_class(1 / (d_src * monomial_norm_sq_over_pi2(target, dom)))});
  }
  return out;
}

namespace {

struct TermInfo {
  int a, b, c, d;
  QComplex coef;
  std::complex<double> coefd;
};

std::vector<TermInfo> term_list(const Symbol& phi) {
  std::vector<TermInfo> out;
  for (const auto& [e, c] : phi.terms()) out.push_back({e.z, e.zbar, e.w, e.wbar, c, c.to_complex()});
  return out;
}

// Term pairs (t, t') grouped by the index shift they induce: row i pairs
// with column j only when (m_i - m_j, n_i - n_j) equals the pair's charge
// difference. t acts on the column vector, t' (conjugated) on the row.
using PairMap = std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>>;

PairMap pairs_by_shift(const std::vector<TermInfo>& terms) {
  PairMap out;
  for (std::size_t t = 0; t < terms.size(); ++t)
    for (std::size_t u = 0; u < terms.size(); ++u) {
      const int dm = (terms[t].a - terms[t].b) - (terms[u].a - terms[u].b);
      const int dn = (terms[t].c - terms[t].d) - (terms[u].c - terms[u].d);
      out[{dm, dn}].emplace_back(t, u);
    }
  return out;
}

class PowerCache {
 public:
  explicit PowerCache(mpq_class base) : base_(std::move(base)), pow_{mpq_class(1)} {}
  const mpq_class& operator()(int e) {
    while (static_cast<int>(pow_.size()) <= e) pow_.push_back(pow_.back() * base_);
    return pow_[e];
  }

 private:
  mpq_class base_;
  std::vector<mpq_class> pow_;
};

// <H z^mj w^nj, H z^mi w^ni> / pi^2 from monomial moments and the closed
// form P(z^A zbar^B) = [A >= B] r^{2B} (A-B+1)/(A+1) z^{A-B}.
QComplex exact_entry(const std::vector<TermInfo>& terms, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                     const BasisIndex& row, const BasisIndex& col, PowerCache& r1, PowerCache& r2) {
  QComplex acc;
  for (const auto& [t, u] : pairs) {
    const TermInfo& x = terms[t];
    const TermInfo& y = terms[u];
    const int az = x.a + col.m + y.b;
    const int aw = x.c + col.n + y.d;
    mpq_class value = r1(2 * az + 2) / (az + 1) * r2(2 * aw + 2) / (aw + 1);
    const int kz = x.a + col.m - x.b;
    const int kw = x.c + col.n - x.d;
    if (kz >= 0 && kw >= 0) {
      const mpq_class pz = r1(2 * x.b) * (kz + 1) / (x.a + col.m + 1) * r1(2 * y.b) * (kz + 1) / (y.a + row.m + 1) *
                           r1(2 * kz + 2) / (kz + 1);
      const mpq_class pw = r2(2 * x.d) * (kw + 1) / (x.c + col.n + 1) * r2(2 * y.d) * (kw + 1) / (y.c + row.n + 1) *
                           r2(2 * kw + 2) / (kw + 1);
      value -= pz * pw;
    }
    if (sgn(value) == 0) continue;
    acc += x.coef * conj(y.coef) * value;
  }
  return acc;
}

// One-variable normalized pieces. For a term z^a zbar^b acting on e_j and
// z^a' zbar^b' on e_i (with i - j equal to the charge difference):
//   <z^a zbar^b e_j, z^a' zbar^b' e_i> = r^{a+b+a'+b'} sqrt((j+1)(i+1)) / (a+j+b'+1)
// and P(z^a zbar^b e_j) = r^{a+b} sqrt((j+1)(k+1)) / (a+j+1) e_k, k = a+j-b.
double full_part(double r, int a, int b, int a2, int b2, int j, int i) {
  return ipow(r, a + b + a2 + b2) * std::sqrt((j + 1.0) * (i + 1.0)) / (a + j + b2 + 1.0);
}

double proj_part(double r, int a, int b, int j) {
  const int k = a + j - b;
  return ipow(r, a + b) * std::sqrt((j + 1.0) * (k + 1.0)) / (a + j + 1.0);
}

std::complex<double> floating_entry(const std::vector<TermInfo>& terms,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                    const BasisIndex& row, const BasisIndex& col, double r1, double r2) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [t, u] : pairs) {
    const TermInfo& x = terms[t];
    const TermInfo& y = terms[u];
    double value = full_part(r1, x.a, x.b, y.a, y.b, col.m, row.m) * full_part(r2, x.c, x.d, y.c, y.d, col.n, row.n);
    const int kz = x.a + col.m - x.b;
    const int kw = x.c + col.n - x.d;
    if (kz >= 0 && kw >= 0)
      value -= proj_part(r1, x.a, x.b, col.m) * proj_part(r1, y.a, y.b, row.m) * proj_part(r2, x.c, x.d, col.n) *
               proj_part(r2, y.c, y.d, row.n);
    acc += x.coefd * std::conj(y.coefd) * value;
  }
  return acc;
}

std::vector<std::vector<QComplex>> dense_monomial(const HermitianGram& g) {
  const std::size_t n = g.window.size();
  std::vector<std::vector<QComplex>> a(n, std::vector<QComplex>(n));
  for (const auto& [ij, v] : g.monomial) a[ij.first][ij.second] = v;
  return a;
}

}  // namespace

HermitianGram gram(const Symbol& phi, const BasisWindow& window, const ProductDomain& dom, Arithmetic arithmetic) {
  HermitianGram g;
  g.window = window;
  g.arithmetic = arithmetic;
  g.exact = arithmetic == Arithmetic::exact && !phi.inexact();
  const std::size_t n = window.size();
  g.dense = ComplexMatrix(n);

  const auto terms = term_list(phi);
  const auto pairs = pairs_by_shift(terms);

  if (arithmetic == Arithmetic::exact) {
    PowerCache r1(dom.r1());
    PowerCache r2(dom.r2());
    g.monomial_norms.reserve(n);
    for (const auto& idx : window.indices()) g.monomial_norms.push_back(monomial_norm_sq_over_pi2(idx, dom));
    for (std::size_t i = 0; i < n; ++i) {
      const BasisIndex& row = window[i];
      for (const auto& [shift, list] : pairs) {
        const long j = window.find({row.m - shift.first, row.n - shift.second});
        if (j < 0) continue;
        QComplex v = exact_entry(terms, list, row, window[j], r1, r2);
        if (v.is_zero()) continue;
        const auto& di = g.monomial_norms[i];
        const auto& dj = g.monomial_norms[j];
        const QComplex scaled(mpq_class(v.re / di), mpq_class(v.im / di));
        const double ratio = std::sqrt(mpq_class(di / dj).get_d());
        g.dense.set(i, j, scaled.to_complex() * ratio);
        g.monomial.emplace(std::make_pair(i, static_cast<std::size_t>(j)), std::move(v));
      }
    }
  } else {
    const double r1 = dom.r1d();
    const double r2 = dom.r2d();
    for (std::size_t i = 0; i < n; ++i) {
      const BasisIndex& row = window[i];
      for (const auto& [shift, list] : pairs) {
        const long j = window.find({row.m - shift.first, row.n - shift.second});
        if (j < 0) continue;
        g.dense.set(i, j, floating_entry(terms, list, row, window[j], r1, r2));
      }
    }
  }
  return g;
}

mpq_class HermitianGram::exact_diagonal(std::size_t i) const {
  if (arithmetic != Arithmetic::exact) throw std::logic_error("exact_diagonal needs an exact-mode Gram");
  const auto it = monomial.find({i, i});
  if (it == monomial.end()) return 0;
  return it->second.re / monomial_norms[i];
}

std::vector<double> HermitianGram::eigenvalues(const JacobiOptions& opts) const {
  return hermitian_eigenvalues(dense, opts);
}

bool HermitianGram::exact_psd() const {
  if (arithmetic != Arithmetic::exact) throw std::logic_error("exact_psd needs an exact-mode Gram");
  auto a = dense_monomial(*this);
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k].im) != 0) return false;
    const mpq_class pivot = a[k][k].re;
    if (sgn(pivot) < 0) return false;
    if (sgn(pivot) == 0) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (!a[k][j].is_zero()) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const QComplex f = a[i][k] * mpq_class(1 / pivot);
      for (std::size_t j = k + 1; j < n; ++j)
        if (!a[k][j].is_zero()) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

std::vector<mpq_class> HermitianGram::exact_char_poly() const {
  if (arithmetic != Arithmetic::exact) throw std::logic_error("exact_char_poly needs an exact-mode Gram");
  auto b = dense_monomial(*this);
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i)
    for (auto& v : b[i]) v *= mpq_class(1 / monomial_norms[i]);

  // Faddeev-LeVerrier.
  std::vector<QComplex> c(n + 1);
  c[n] = QComplex(1);
  std::vector<std::vector<QComplex>> m(n, std::vector<QComplex>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<QComplex>> next(n, std::vector<QComplex>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        QComplex s;
        for (std::size_t l = 0; l < n; ++l)
          if (!b[i][l].is_zero() && !m[l][j].is_zero()) s += b[i][l] * m[l][j];
        if (i == j) s += c[n - k + 1];
        next[i][j] = std::move(s);
      }
    m = std::move(next);
    QComplex tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (!b[i][l].is_zero() && !m[l][i].is_zero()) tr += b[i][l] * m[l][i];
    c[n - k] = -tr * mpq_class(1, static_cast<unsigned long>(k));
  }
  std::vector<mpq_class> out;
  out.reserve(n + 1);
  for (const auto& v : c) {
    if (sgn(v.im) != 0) throw std::logic_error("characteristic polynomial of a Hermitian Gram must be real");
    out.push_back(v.re);
  }
  return out;
}

double op_norm(const Symbol& phi, int degree, const ProductDomain& dom, Arithmetic arithmetic) {
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  const auto ev = gram(phi, BasisWindow::graded(degree), dom, arithmetic).eigenvalues();
  return std::sqrt(std::max(0.0, ev.front()));
}

double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) throw std::invalid_argument("extrapolation needs matching nonempty nodes");
  std::vector<double> p = y;
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) p[i] = (x[i] * p[i + 1] - x[i + m] * p[i]) / (x[i] - x[i + m]);
  return p[0];
}

namespace {

// Neumaier-compensated running sum; the kernel sums run over up to ~10^6
// terms of mixed magnitude.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

// Term exponents seen from the kernel coordinate (k) and the other one (o).
struct SplitTerm {
  int ka, kb;  // kernel coordinate powers
  int oa, ob;  // other coordinate powers
  std::complex<double> coef;
};

SequencePoint rayleigh_at(const std::vector<SplitTerm>& terms, double r_kernel, double r_other, double p, int degree,
                          int other_degree) {
  SequencePoint pt;
  pt.p = p;
  pt.kernel_degree = degree;
  const double x = p * p;
  pt.tail = kernel_tail_mass(x, degree);

  // x^kappa, resynchronized with std::pow to keep the error independent of degree.
  std::vector<double> xk(static_cast<std::size_t>(degree) + 1);
  double run = 1.0;
  for (int k = 0; k <= degree; ++k) {
    if (k % 1024 == 0) run = std::pow(x, k);
    xk[k] = run;
    run *= x;
  }
  const double one_minus_x_sq = (1.0 - x) * (1.0 - x);

  const std::size_t t_count = terms.size();
  std::vector<double> sf(t_count * t_count, 0.0);
  std::vector<double> sp(t_count * t_count, 0.0);
  for (std::size_t t = 0; t < t_count; ++t)
    for (std::size_t u = 0; u < t_count; ++u) {
      const auto& a = terms[t];
      const auto& b = terms[u];
      if ((a.oa - a.ob) != (b.oa - b.ob)) continue;
      const int delta = (a.ka - a.kb) - (b.ka - b.kb);
      const double p_delta = std::pow(p, std::abs(delta));
      CompensatedSum full;
      CompensatedSum proj;
      for (int k = std::max(0, -delta); k <= degree && k + delta <= degree; ++k) {
        const int k2 = k + delta;
        // k_kappa k_kappa' = (1-x)^2 sqrt((k+1)(k2+1)) p^{k + k2}
        const double w = one_minus_x_sq * std::sqrt((k + 1.0) * (k2 + 1.0)) *
                         (delta >= 0 ? xk[k] : xk[k2]) * p_delta;
        if (w == 0.0) continue;
        full.add(w * full_part(r_kernel, a.ka, a.kb, b.ka, b.kb, k, k2));
        if (a.ka + k - a.kb >= 0)
          proj.add(w * proj_part(r_kernel, a.ka, a.kb, k) * proj_part(r_kernel, b.ka, b.kb, k2));
      }
      sf[t * t_count + u] = full.value();
      sp[t * t_count + u] = proj.value();
    }

  const double norm_sq = 1.0 - pt.tail;
  double best = -1.0;
  for (int m = 0; m <= other_degree; ++m) {
    std::complex<double> acc{0.0, 0.0};
    double magnitude = 0.0;
    for (std::size_t t = 0; t < t_count; ++t)
      for (std::size_t u = 0; u < t_count; ++u) {
        const auto& a = terms[t];
        const auto& b = terms[u];
        if ((a.oa - a.ob) != (b.oa - b.ob)) continue;
        const double f = full_part(r_other, a.oa, a.ob, b.oa, b.ob, m, m) * sf[t * t_count + u];
        double pr = 0.0;
        if (a.oa + m - a.ob >= 0)
          pr = proj_part(r_other, a.oa, a.ob, m) * proj_part(r_other, b.oa, b.ob, m) * sp[t * t_count + u];
        acc += a.coef * std::conj(b.coef) * (f - pr);
        magnitude += std::abs(a.coef) * std::abs(b.coef) * std::abs(f);
      }
    // ||phi f||^2 - ||P(phi f)||^2 below the cancellation floor is zero.
    const double re = acc.real() > 64.0 * std::numeric_limits<double>::epsilon() * magnitude ? acc.real() : 0.0;
    const double value = std::sqrt(re / norm_sq);
    if (value > best + 1e-12) {
      best = value;
      pt.best_g = m;
    }
  }
  pt.value = std::max(best, 0.0);
  return pt;
}

}  // namespace

KernelSequence kernel_sequence_est(const Symbol& phi, const ProductDomain& dom, SliceFamily kernel,
                                   const KernelSequenceOptions& opts) {
  if (opts.other_degree < 0) throw std::invalid_argument("other_degree must be >= 0");
  if (opts.kernel_degree < 0) throw std::invalid_argument("kernel degree must be >= 0");
  for (double p : opts.p_schedule)
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("kernel parameters must satisfy 0 <= |p| < 1");

  std::vector<SplitTerm> terms;
  for (const auto& [e, c] : phi.terms()) {
    if (kernel == SliceFamily::w) {
      terms.push_back({e.w, e.wbar, e.z, e.zbar, c.to_complex()});
    } else {
      terms.push_back({e.z, e.zbar, e.w, e.wbar, c.to_complex()});
    }
  }
  const double r_kernel = kernel == SliceFamily::w ? dom.r2d() : dom.r1d();
  const double r_other = kernel == SliceFamily::w ? dom.r1d() : dom.r2d();

  KernelSequence seq;
  seq.kernel = kernel;
  for (double p : opts.p_schedule) {
    const int degree = opts.kernel_degree > 0 ? opts.kernel_degree : kernel_degree_for(p, opts.tail_tol);
    auto pt = rayleigh_at(terms, r_kernel, r_other, p, degree, opts.other_degree);
    if (pt.tail >= opts.tail_tol)
      seq.warnings.push_back("kernel truncation at |p| = " + format12(p) + " leaves tail mass " + format12(pt.tail));
    seq.points.push_back(pt);
  }

  std::vector<SequencePoint> sorted = seq.points;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  sorted.erase(std::unique(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.p == b.p; }),
               sorted.end());
  if (sorted.empty()) return seq;
  if (sorted.size() < 3) {
    seq.limit = sorted.back().value;
    return seq;
  }
  std::vector<double> t;
  std::vector<double> v;
  for (std::size_t i = sorted.size() - 3; i < sorted.size(); ++i) {
    t.push_back(1.0 - sorted[i].p * sorted[i].p);
    v.push_back(sorted[i].value);
  }
  seq.limit = extrapolate_to_zero(t, v);
  const double linear = extrapolate_to_zero({t[1], t[2]}, {v[1], v[2]});
  seq.limit_error = std::abs(seq.limit - linear);
  return seq;
}

std::vector<std::pair<double, double>> EssNormBracket::sequence() const {
  std::map<double, double> best;
  for (const auto& s : sequences)
    for (const auto& pt : s.points) {
      auto [it, inserted] = best.emplace(pt.p, pt.value);
      if (!inserted) it->second = std::max(it->second, pt.value);
    }
  return {best.begin(), best.end()};
}

EssNormBracket ess_norm_bracket(const Symbol& phi, const ProductDomain& dom, const BracketOptions& opts) {
  if (opts.degree < 1) throw std::invalid_argument("truncation degree must be >= 1");
  if (opts.tail_starts.empty()) throw std::invalid_argument("at least one tail start is required");
  if (opts.table_stride < 1 || opts.table_depth < 1) throw std::invalid_argument("table stride and depth must be >= 1");
  for (int k : opts.tail_starts)
    if (k < 0 || k >= opts.degree) throw std::invalid_argument("tail starts must lie in [0, degree)");

  EssNormBracket out;
  const auto full = gram(phi, BasisWindow::graded(opts.degree), dom, opts.arithmetic);
  out.exact = full.exact;

  std::vector<int> starts = opts.tail_starts;
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  const int k_max = starts.back();

  std::vector<double> h_top;
  std::vector<double> v_top;
  for (int k : starts) {
    int count = 0;
    for (int d = opts.degree; d > k && count < opts.table_depth; d -= opts.table_stride, ++count) {
      std::vector<std::size_t> sel;
      for (std::size_t i = 0; i < full.window.size(); ++i) {
        const int deg = full.window[i].degree();
        if (deg > k && deg <= d) sel.push_back(i);
      }
      const auto ev = hermitian_eigenvalues(full.dense.principal(sel), opts.jacobi);
      const double value = std::sqrt(std::max(0.0, ev.front()));
      out.table.push_back({k, d, value});
      if (k == k_max) {
        h_top.push_back(1.0 / d);
        v_top.push_back(value);
      }
    }
  }

  out.upper_raw = v_top.front();
  double upper_tol = 0.0;
  double upper_extrap = out.upper_raw;
  if (v_top.size() >= 2) {
    upper_extrap = extrapolate_to_zero(h_top, v_top);
    const std::vector<double> h_less(h_top.begin(), h_top.end() - 1);
    const std::vector<double> v_less(v_top.begin(), v_top.end() - 1);
    upper_tol = std::abs(upper_extrap - extrapolate_to_zero(h_less, v_less));
  }
  out.upper_est = std::max(out.upper_raw, upper_extrap);

  KernelSequenceOptions seq_opts = opts.sequence;
  seq_opts.other_degree = opts.degree;
  double lower_tol = 0.0;
  double seq_limit = 0.0;
  for (auto family : {SliceFamily::z, SliceFamily::w}) {
    auto s = kernel_sequence_est(phi, dom, family, seq_opts);
    if (!s.points.empty()) {
      const auto top = std::max_element(s.points.begin(), s.points.end(),
                                        [](const auto& a, const auto& b) { return a.p < b.p; });
      out.lower_certified = std::max(out.lower_certified, top->value);
    }
    if (s.limit > seq_limit) {
      seq_limit = s.limit;
      lower_tol = s.limit_error;
    }
    out.warnings.insert(out.warnings.end(), s.warnings.begin(), s.warnings.end());
    out.sequences.push_back(std::move(s));
  }
  out.lower_est = std::max(out.upper_raw, seq_limit);
  out.tolerance = std::max(upper_tol, lower_tol);
  return out;
}

namespace {

// e^{i theta * power} exactly when theta is a multiple of pi/2.
bool quarter_turns(double theta, long& turns) {
  const double q = theta / (std::numbers::pi / 2.0);
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-12) return false;
  turns = static_cast<long>(r);
  return true;
}

QComplex i_power(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return QComplex(1);
    case 1:
      return QComplex(0, 1);
    case 2:
      return QComplex(-1);
    default:
      return QComplex(0, -1);
  }
}

}  // namespace

Symbol apply_unitary(const Symbol& phi, const Unitary& f, const ProductDomain& dom) {
  Symbol out;
  out.set_inexact(phi.inexact());
  if (f.kind == Unitary::Kind::swap) {
    if (dom.r1() != dom.r2()) throw std::invalid_argument("swap needs equal radii");
    for (const auto& [e, c] : phi.terms()) out.add_term({e.w, e.wbar, e.z, e.zbar}, c);
    return out;
  }
  long qa = 0;
  long qb = 0;
  const bool exact = quarter_turns(f.alpha, qa) && quarter_turns(f.beta, qb);
  for (const auto& [e, c] : phi.terms()) {
    const int cz = e.z - e.zbar;
    const int cw = e.w - e.wbar;
    if (exact) {
      out.add_term(e, c * i_power(qa * cz + qb * cw));
    } else {
      out.add_term(e, c * QComplex::from_double(std::polar(1.0, f.alpha * cz + f.beta * cw)));
    }
  }
  if (!exact) out.set_inexact(true);
  return out;
}

}  // namespace essnorm
