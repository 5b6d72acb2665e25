#include "essnorm/report.hpp"

#include "essnorm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace essnorm {

using nlohmann::json;

json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format12(v));
}

namespace {

json complex_json(std::complex<double> c) { return json::array({json_number(c.real()), json_number(c.imag())}); }

json slice_json(const std::optional<DiskSlice>& s) {
  if (!s) return nullptr;
  return {{"family", to_string(s->family)},
          {"boundary_angle", json_number(s->boundary_angle)},
          {"center", complex_json(s->center)},
          {"scale", complex_json(s->scale)}};
}

json bound_json(const BoundValue& b) { return {{"value", json_number(b.value)}, {"argmax", slice_json(b.argmax)}}; }

json families_json(const std::vector<SliceFamily>& fams) {
  json out = json::array();
  for (auto f : fams) out.push_back(to_string(f));
  return out;
}

json admissibility_json(const HarmonicityReport& h, const ProductDomain& dom) {
  json witnesses = json::array();
  for (const auto& w : h.witnesses) {
    json residual = json::array();
    for (const auto& t : w.residual)
      residual.push_back(
          {{"p", t.p}, {"q", t.q}, {"k", t.k}, {"re", to_string(t.coef.re)}, {"im", to_string(t.coef.im)}});
    witnesses.push_back({{"family", to_string(w.family)}, {"text", to_string(w, dom)}, {"residual", residual}});
  }
  return {{"admissible", h.admissible}, {"witnesses", witnesses}};
}

json bounds_json(const BoundReport& b, const ProductDomain& dom) {
  const auto nc = neumann_constants(dom);
  const auto& c = b.config;
  json out = {
      {"thm1_lower", bound_json(b.thm1_lower)},
      {"thm1_upper", bound_json(b.thm1_upper)},
      {"thm2_lower", b.thm2_lower ? bound_json(*b.thm2_lower) : json(nullptr)},
      {"maximin", json_number(b.maximin)},
      {"boundary_sup", json_number(b.boundary_sup)},
      {"neumann",
       {{"norm_N", json_number(nc.norm_N)},
        {"norm_dbarN", json_number(nc.norm_dbarN)},
        {"norm_dbarstarN", json_number(nc.norm_dbarstarN)}}},
      {"search",
       {{"grid_theta", c.grid_theta},
        {"grid_center", c.grid_center},
        {"grid_scale", c.grid_scale},
        {"grid_inner", {c.inner_angular, c.inner_radial}},
        {"refine_rounds", c.refine_rounds},
        {"families", families_json(c.families)}}},
      {"diagnostics",
       {{"outer_candidates", b.diagnostics.outer_candidates},
        {"coarse_evaluations", b.diagnostics.coarse_evaluations},
        {"outer_pruned", b.diagnostics.outer_pruned},
        {"refine_evaluations", b.diagnostics.refine_evaluations}}},
  };
  return out;
}

json bracket_json(const EssNormBracket& b) {
  json table = json::array();
  for (const auto& c : b.table) table.push_back({c.tail_start, c.degree, json_number(c.value)});
  json seq = json::array();
  for (const auto& [p, v] : b.sequence()) seq.push_back({json_number(p), json_number(v)});
  json families = json::array();
  for (const auto& s : b.sequences) {
    json pts = json::array();
    for (const auto& pt : s.points)
      pts.push_back({{"p", json_number(pt.p)},
                     {"value", json_number(pt.value)},
                     {"best_g", pt.best_g},
                     {"kernel_degree", pt.kernel_degree},
                     {"tail", json_number(pt.tail)}});
    families.push_back({{"kernel", to_string(s.kernel)},
                        {"points", pts},
                        {"limit", json_number(s.limit)},
                        {"limit_error", json_number(s.limit_error)}});
  }
  return {{"lower_est", json_number(b.lower_est)},
          {"upper_est", json_number(b.upper_est)},
          {"lower_certified", json_number(b.lower_certified)},
          {"upper_raw", json_number(b.upper_raw)},
          {"tolerance", json_number(b.tolerance)},
          {"exact", b.exact},
          {"table", table},
          {"sequence", seq},
          {"kernel_sequences", families},
          {"warnings", b.warnings}};
}

json sandwich_json(const SandwichReport& s) {
  json rows = json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"name", r.name}, {"lhs", json_number(r.lhs)}, {"rhs", json_number(r.rhs)}, {"pass", r.pass}});
  return {{"pass", s.pass()}, {"tolerance", json_number(s.tolerance)}, {"rows", rows}};
}

json verify_json(const VerifyReport& v, const VerifyOptions& q) {
  json rows = json::array();
  for (const auto& r : v.rows)
    rows.push_back({{"name", r.name},
                    {"closed_form", r.closed_form},
                    {"closed", json_number(r.closed)},
                    {"computed", json_number(r.computed)},
                    {"abs_error", json_number(r.abs_error)},
                    {"pass", r.pass}});
  return {{"pass", v.pass()},
          {"quadrature",
           {{"tau0", json_number(q.tau0)},
            {"r0", json_number(q.r0)},
            {"eps1", json_number(q.eps1)},
            {"j", q.j},
            {"radial_nodes", q.radial_nodes},
            {"angular_nodes", q.angular_nodes},
            {"rel_tol", json_number(q.rel_tol)}}},
          {"rows", rows}};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

const char* pass_word(bool pass) { return pass ? "PASS" : "FAIL"; }

std::string slice_text(const std::optional<DiskSlice>& s) {
  if (!s) return "-";
  return "family=" + std::string(to_string(s->family)) + " theta=" + format12(s->boundary_angle) + " center=(" +
         format12(s->center.real()) + "," + format12(s->center.imag()) + ") scale=(" + format12(s->scale.real()) +
         "," + format12(s->scale.imag()) + ")";
}

}  // namespace

json to_json(const RunReport& report, const RunConfig& cfg, bool with_timings) {
  json out;
  out["command"] = report.command;
  out["domain"] = {{"r1", to_string(cfg.domain.r1())},
                   {"r2", to_string(cfg.domain.r2())},
                   {"r1_decimal", json_number(cfg.domain.r1d())},
                   {"r2_decimal", json_number(cfg.domain.r2d())},
                   {"tau", json_number(cfg.domain.tau())}};
  if (cfg.symbol) {
    json sym = symbol_to_json(*cfg.symbol);
    sym["text"] = to_string(*cfg.symbol);
    sym["inexact"] = cfg.symbol->inexact();
    out["symbol"] = sym;
  }
  if (report.admissibility) out["admissibility"] = admissibility_json(*report.admissibility, cfg.domain);
  if (report.bounds) out["bounds"] = bounds_json(*report.bounds, cfg.domain);
  if (report.bracket) {
    out["bracket"] = bracket_json(*report.bracket);
    out["bracket"]["degree"] = cfg.truncation.degree;
    out["bracket"]["tail_starts"] = cfg.truncation.tail_starts;
  }
  if (report.sandwich) out["sandwich"] = sandwich_json(*report.sandwich);
  if (report.verify) out["verify"] = verify_json(*report.verify, cfg.quadrature);
  if (with_timings) {
    json t = json::object();
    for (const auto& [name, secs] : report.timings) t[name] = json_number(secs);
    out["timings"] = t;
  }
  return out;
}

void write_table(std::ostream& os, const RunReport& report, const RunConfig& cfg, bool with_timings) {
  const auto flags = os.flags();
  os << std::left;
  os << "domain  r1=" << to_string(cfg.domain.r1()) << "  r2=" << to_string(cfg.domain.r2())
     << "  tau=" << format12(cfg.domain.tau()) << "\n";
  if (cfg.symbol) os << "symbol  " << to_string(*cfg.symbol) << (cfg.symbol->inexact() ? "  (inexact)" : "") << "\n";

  if (report.admissibility) {
    const auto& h = *report.admissibility;
    os << "\nadmissible: " << (h.admissible ? "yes" : "no") << "\n";
    for (const auto& w : h.witnesses)
      os << "  " << to_string(w.family) << "-family residual: " << to_string(w, cfg.domain) << "\n";
  }

  if (report.bounds) {
    const auto& b = *report.bounds;
    os << "\nbound            value           argmax\n";
    auto row = [&](const char* name, const BoundValue& v) {
      os << std::left << std::setw(17) << name << std::setw(16) << format12(v.value) << slice_text(v.argmax)
         << "\n";
    };
    row("thm1_lower", b.thm1_lower);
    if (b.thm2_lower) row("thm2_lower", *b.thm2_lower);
    row("thm1_upper", b.thm1_upper);
    const auto nc = neumann_constants(cfg.domain);
    os << "neumann  ||N|| <= " << format12(nc.norm_N) << "  ||dbar N|| <= " << format12(nc.norm_dbarN)
       << "  ||dbar* N|| <= " << format12(nc.norm_dbarstarN) << "\n";
    const auto& d = b.diagnostics;
    os << "search   full=" << d.outer_candidates << " coarse=" << d.coarse_evaluations
       << " pruned=" << d.outer_pruned << " refine=" << d.refine_evaluations << "\n";
  }

  if (report.bracket) {
    const auto& b = *report.bracket;
    os << "\ntail table (k, N, ||H (I - P_k)|| on degrees <= N)\n";
    for (const auto& c : b.table)
      os << "  " << std::right << std::setw(4) << c.tail_start << std::setw(5) << c.degree << "  "
         << format12(c.value) << "\n";
    os << "kernel sequences (|p|, value)\n";
    for (const auto& s : b.sequences) {
      os << "  " << to_string(s.kernel) << "-kernel\n";
      for (const auto& pt : s.points)
        os << "    " << std::left << std::setw(10) << format12(pt.p) << std::setw(20) << format12(pt.value)
           << "g=e_" << pt.best_g << "  M=" << pt.kernel_degree << "\n";
      os << "    limit " << format12(s.limit) << " +- " << format12(s.limit_error) << "\n";
    }
    os << std::left;
    os << "essential norm bracket  [" << format12(b.lower_est) << ", " << format12(b.upper_est) << "]  tol "
       << format12(b.tolerance) << (b.exact ? "  (exact Gram)" : "") << "\n";
    os << "  certified lower " << format12(b.lower_certified) << "  raw upper " << format12(b.upper_raw) << "\n";
    for (const auto& w : b.warnings) os << "  warning: " << w << "\n";
  }

  if (report.sandwich) {
    const auto& s = *report.sandwich;
    os << "\nsandwich (tol " << format12(s.tolerance) << "): " << pass_word(s.pass()) << "\n";
    for (const auto& r : s.rows)
      os << "  " << std::setw(28) << r.name << format12(r.lhs) << " vs " << format12(r.rhs) << "  "
         << pass_word(r.pass) << "\n";
  }

  if (report.verify) {
    const auto& v = *report.verify;
    std::size_t width = 8;
    for (const auto& r : v.rows) width = std::max(width, r.name.size());
    const int w = static_cast<int>(width) + 2;
    os << "\n" << std::setw(w) << "identity" << std::setw(20) << "closed" << std::setw(20) << "computed"
       << std::setw(20) << "abs_error" << "\n";
    for (const auto& r : v.rows)
      os << std::setw(w) << r.name << std::setw(20) << format12(r.closed) << std::setw(20) << format12(r.computed)
         << std::setw(20) << format12(r.abs_error) << pass_word(r.pass) << "\n";
    os << "verification: " << pass_word(v.pass()) << "\n";
  }

  if (with_timings && !report.timings.empty()) {
    os << "\ntimings (s)\n";
    for (const auto& [name, secs] : report.timings) os << "  " << std::setw(14) << name << format12(secs) << "\n";
  }
  os.flags(flags);
}

void write_csv(std::ostream& os, const RunReport& report, const RunConfig& cfg, bool with_timings) {
  bool first = true;
  auto section = [&](const char* name) {
    if (!first) os << "\n";
    first = false;
    os << "# " << name << "\n";
  };

  if (report.admissibility) {
    section("admissibility");
    os << "family,residual\n";
    if (report.admissibility->witnesses.empty()) os << "-,0\n";
    for (const auto& w : report.admissibility->witnesses)
      os << to_string(w.family) << "," << csv_escape(to_string(w, cfg.domain)) << "\n";
  }
  if (report.bounds) {
    section("bounds");
    os << "bound,value,family,boundary_angle,center_re,center_im,scale_re,scale_im\n";
    auto row = [&](const char* name, const BoundValue& v) {
      os << name << "," << format12(v.value);
      if (v.argmax) {
        const auto& s = *v.argmax;
        os << "," << to_string(s.family) << "," << format12(s.boundary_angle) << "," << format12(s.center.real())
           << "," << format12(s.center.imag()) << "," << format12(s.scale.real()) << ","
           << format12(s.scale.imag());
      } else {
        os << ",,,,,,";
      }
      os << "\n";
    };
    row("thm1_lower", report.bounds->thm1_lower);
    if (report.bounds->thm2_lower) row("thm2_lower", *report.bounds->thm2_lower);
    row("thm1_upper", report.bounds->thm1_upper);
  }
  if (report.bracket) {
    const auto& b = *report.bracket;
    section("bracket");
    os << "lower_est,upper_est,lower_certified,upper_raw,tolerance,exact\n"
       << format12(b.lower_est) << "," << format12(b.upper_est) << "," << format12(b.lower_certified) << ","
       << format12(b.upper_raw) << "," << format12(b.tolerance) << "," << (b.exact ? "true" : "false") << "\n";
    section("table");
    os << "tail_start,degree,value\n";
    for (const auto& c : b.table) os << c.tail_start << "," << c.degree << "," << format12(c.value) << "\n";
    section("sequence");
    os << "kernel,p,value,best_g,kernel_degree,tail\n";
    for (const auto& s : b.sequences)
      for (const auto& pt : s.points)
        os << to_string(s.kernel) << "," << format12(pt.p) << "," << format12(pt.value) << "," << pt.best_g << ","
           << pt.kernel_degree << "," << format12(pt.tail) << "\n";
  }
  if (report.sandwich) {
    section("sandwich");
    os << "inequality,lhs,rhs,pass\n";
    for (const auto& r : report.sandwich->rows)
      os << csv_escape(r.name) << "," << format12(r.lhs) << "," << format12(r.rhs) << ","
         << (r.pass ? "true" : "false") << "\n";
  }
  if (report.verify) {
    section("verify");
    os << "name,closed_form,closed,computed,abs_error,pass\n";
    for (const auto& r : report.verify->rows)
      os << csv_escape(r.name) << "," << csv_escape(r.closed_form) << "," << format12(r.closed) << ","
         << format12(r.computed) << "," << format12(r.abs_error) << "," << (r.pass ? "true" : "false") << "\n";
  }
  if (with_timings && !report.timings.empty()) {
    section("timings");
    os << "stage,seconds\n";
    for (const auto& [name, secs] : report.timings) os << name << "," << format12(secs) << "\n";
  }
}

void write_report(std::ostream& os, const RunReport& report, const RunConfig& cfg, bool with_timings) {
  switch (cfg.format) {
    case OutputFormat::json:
      os << to_json(report, cfg, with_timings).dump(2) << "\n";
      break;
    case OutputFormat::csv:
      write_csv(os, report, cfg, with_timings);
      break;
    case OutputFormat::table:
      write_table(os, report, cfg, with_timings);
      break;
  }
}

}  // namespace essnorm
