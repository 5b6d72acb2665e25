#include "essnorm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace essnorm {

using nlohmann::json;

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("unknown output format '" + s + "' (expected table, json or csv)");
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::table:
      return "table";
    case OutputFormat::json:
      return "json";
    case OutputFormat::csv:
      return "csv";
  }
  return "?";
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.contains(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

int get_int(const json& j, const std::string& key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

double get_double(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

std::vector<int> get_int_list(const json& j, const std::string& key, std::vector<int> fallback,
                              const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw ConfigError(where + "." + key + " must be an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

// Rational from a string literal or a JSON number. Floats go through their
// shortest round-trip decimal form, so 0.1 reads as 1/10.
ParsedRational rational_from(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return {mpq_class(v.get<long>()), true};
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw ConfigError(where + " must be finite");
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, d);
      return parse_rational(std::string_view(buf, res.ptr - buf));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + " must be a number or a rational string");
}

ProductDomain domain_from(const json& j) {
  check_keys(j, {"r1", "r2"}, "domain");
  const mpq_class r1 = j.contains("r1") ? rational_from(j.at("r1"), "domain.r1").value : mpq_class(1);
  const mpq_class r2 = j.contains("r2") ? rational_from(j.at("r2"), "domain.r2").value : mpq_class(1);
  if (sgn(r1) <= 0 || sgn(r2) <= 0) throw ConfigError("domain radii must be positive");
  return {r1, r2};
}

void truncation_from(const json& j, BracketOptions& t) {
  const std::string where = "truncation";
  check_keys(j, {"degree", "tail_starts", "kernel_degree", "p_schedule"}, where);
  t.degree = get_int(j, "degree", t.degree, where);
  t.tail_starts = get_int_list(j, "tail_starts", t.tail_starts, where);
  t.sequence.kernel_degree = get_int(j, "kernel_degree", t.sequence.kernel_degree, where);
  if (j.contains("p_schedule")) {
    const auto& v = j.at("p_schedule");
    if (!v.is_array()) throw ConfigError("truncation.p_schedule must be an array of numbers");
    t.sequence.p_schedule.clear();
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError("truncation.p_schedule must be an array of numbers");
      t.sequence.p_schedule.push_back(e.get<double>());
    }
  }
}

void search_from(const json& j, SearchConfig& s) {
  const std::string where = "search";
  check_keys(j, {"grid_theta", "grid_center", "grid_scale", "grid_inner", "refine_rounds", "families"}, where);
  s.grid_theta = get_int(j, "grid_theta", s.grid_theta, where);
  s.grid_center = get_int(j, "grid_center", s.grid_center, where);
  s.grid_scale = get_int(j, "grid_scale", s.grid_scale, where);
  s.refine_rounds = get_int(j, "refine_rounds", s.refine_rounds, where);
  const auto inner = get_int_list(j, "grid_inner", {s.inner_angular, s.inner_radial}, where);
  if (inner.size() != 2) throw ConfigError("search.grid_inner must be [angular, radial]");
  s.inner_angular = inner[0];
  s.inner_radial = inner[1];
  if (j.contains("families")) {
    const auto& v = j.at("families");
    if (!v.is_array()) throw ConfigError("search.families must be an array");
    s.families.clear();
    for (const auto& e : v) {
      const std::string name = e.is_string() ? e.get<std::string>() : "";
      if (name == "z") {
        s.families.push_back(SliceFamily::z);
      } else if (name == "w") {
        s.families.push_back(SliceFamily::w);
      } else {
        throw ConfigError("search.families entries must be \"z\" or \"w\"");
      }
    }
  }
}

void quadrature_from(const json& j, VerifyOptions& q) {
  const std::string where = "quadrature";
  check_keys(j, {"radial_nodes", "angular_nodes", "tau0", "r0", "eps1", "j"}, where);
  q.radial_nodes = get_int(j, "radial_nodes", q.radial_nodes, where);
  q.angular_nodes = get_int(j, "angular_nodes", q.angular_nodes, where);
  q.tau0 = get_double(j, "tau0", q.tau0, where);
  q.r0 = get_double(j, "r0", q.r0, where);
  q.eps1 = get_double(j, "eps1", q.eps1, where);
  if (j.contains("j") && j.at("j").is_number_integer()) {
    q.j = {j.at("j").get<int>()};
  } else {
    q.j = get_int_list(j, "j", q.j, where);
  }
}

}  // namespace

Symbol symbol_from_json(const json& j) {
  check_keys(j, {"terms"}, "symbol");
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ConfigError("symbol.terms must be an array");
  Symbol s;
  bool inexact = false;
  std::size_t n = 0;
  for (const auto& t : j.at("terms")) {
    const std::string where = "symbol.terms[" + std::to_string(n++) + "]";
    check_keys(t, {"z", "zbar", "w", "wbar", "re", "im"}, where);
    Exponent e{get_int(t, "z", 0, where), get_int(t, "zbar", 0, where), get_int(t, "w", 0, where),
               get_int(t, "wbar", 0, where)};
    if (e.z < 0 || e.zbar < 0 || e.w < 0 || e.wbar < 0) throw ConfigError(where + ": exponents must be >= 0");
    const auto re = t.contains("re") ? rational_from(t.at("re"), where + ".re") : ParsedRational{0, true};
    const auto im = t.contains("im") ? rational_from(t.at("im"), where + ".im") : ParsedRational{0, true};
    inexact = inexact || !re.exact || !im.exact;
    s.add_term(e, QComplex(re.value, im.value));
  }
  s.set_inexact(inexact);
  return s;
}

json symbol_to_json(const Symbol& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms())
    terms.push_back(
        {{"z", e.z}, {"zbar", e.zbar}, {"w", e.w}, {"wbar", e.wbar}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return {{"terms", terms}};
}

void RunConfig::validate() const {
  const auto& t = truncation;
  if (t.degree < 1) throw ConfigError("truncation.degree must be >= 1");
  if (t.tail_starts.empty()) throw ConfigError("truncation.tail_starts must not be empty");
  for (int k : t.tail_starts)
    if (k < 0) throw ConfigError("truncation.tail_starts must be >= 0");
  const int k_max = *std::max_element(t.tail_starts.begin(), t.tail_starts.end());
  if (t.degree < k_max + 1) throw ConfigError("truncation.degree must be at least max(tail_starts) + 1");
  if (t.sequence.kernel_degree < 0) throw ConfigError("truncation.kernel_degree must be >= 0");
  for (double p : t.sequence.p_schedule)
    if (!(p >= 0.0 && p < 1.0)) throw ConfigError("truncation.p_schedule entries must satisfy 0 <= |p| < 1");
  try {
    search.validate();
    quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig config_from_json(const json& j) {
  check_keys(j, {"domain", "symbol", "truncation", "search", "quadrature", "output"}, "config");
  RunConfig cfg;
  if (j.contains("domain")) cfg.domain = domain_from(j.at("domain"));
  if (j.contains("symbol")) cfg.symbol = symbol_from_json(j.at("symbol"));
  if (j.contains("truncation")) truncation_from(j.at("truncation"), cfg.truncation);
  if (j.contains("search")) search_from(j.at("search"), cfg.search);
  if (j.contains("quadrature")) quadrature_from(j.at("quadrature"), cfg.quadrature);
  if (j.contains("output")) {
    const auto& o = j.at("output");
    check_keys(o, {"format"}, "output");
    if (o.contains("format")) {
      if (!o.at("format").is_string()) throw ConfigError("output.format must be a string");
      cfg.format = parse_format(o.at("format").get<std::string>());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace essnorm
