#pragma once

#include "essnorm/bounds.hpp"
#include "essnorm/config.hpp"
#include "essnorm/hankel.hpp"
#include "essnorm/symbol.hpp"
#include "essnorm/verify.hpp"

#include "json.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace essnorm {

/// Whatever one command produced. Sections that were not run stay empty.
struct RunReport {
  std::string command;
  std::optional<HarmonicityReport> admissibility;
  std::optional<BoundReport> bounds;
  std::optional<EssNormBracket> bracket;
  /// Present iff the symbol was admissible and both bounds and bracket ran.
  std::optional<SandwichReport> sandwich;
  std::optional<VerifyReport> verify;
  /// Wall-clock seconds per stage, in execution order.
  std::vector<std::pair<std::string, double>> timings;
};

/// Rounds to 12 significant digits; non-finite values become null.
nlohmann::json json_number(double v);

/// JSON document of the report. Timings are left out unless requested so
/// that identical configurations give byte-identical output.
nlohmann::json to_json(const RunReport& report, const RunConfig& cfg, bool with_timings = false);

void write_table(std::ostream& os, const RunReport& report, const RunConfig& cfg, bool with_timings = false);
/// One CSV block per section, each introduced by a "# section" line.
void write_csv(std::ostream& os, const RunReport& report, const RunConfig& cfg, bool with_timings = false);

void write_report(std::ostream& os, const RunReport& report, const RunConfig& cfg, bool with_timings = false);

}  // namespace essnorm
