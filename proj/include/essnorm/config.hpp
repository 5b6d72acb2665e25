#pragma once

#include "essnorm/bounds.hpp"
#include "essnorm/domain.hpp"
#include "essnorm/hankel.hpp"
#include "essnorm/symbol.hpp"
#include "essnorm/verify.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace essnorm {

/// Malformed or out-of-range configuration. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { table, json, csv };

OutputFormat parse_format(const std::string& s);
const char* to_string(OutputFormat f);

/// Everything one CLI invocation needs.
struct RunConfig {
  ProductDomain domain = ProductDomain::unit_bidisk();
  std::optional<Symbol> symbol;
  BracketOptions truncation;
  SearchConfig search;
  VerifyOptions quadrature;
  OutputFormat format = OutputFormat::table;

  /// Checks the cross-field invariants: degree >= max tail start + 1, every
  /// |p| < 1, and the quadrature ranges. Throws ConfigError.
  void validate() const;
};

/// Symbol from {"terms":[{"z":a,"zbar":b,"w":c,"wbar":d,"re":"p/q","im":"p/q"}, ...]}.
/// Coefficients are rational strings, integers, or decimals; decimals flag
/// the symbol inexact. Throws ConfigError.
Symbol symbol_from_json(const nlohmann::json& j);
nlohmann::json symbol_to_json(const Symbol& s);

/// Parses a whole configuration document. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
/// Reads and parses a configuration file. Throws ConfigError.
RunConfig load_config(const std::string& path);

}  // namespace essnorm
