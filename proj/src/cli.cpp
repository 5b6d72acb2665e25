#include "essnorm/cli.hpp"

#include "essnorm/bounds.hpp"
#include "essnorm/config.hpp"
#include "essnorm/hankel.hpp"
#include "essnorm/report.hpp"
#include "essnorm/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <optional>

namespace essnorm::cli {

namespace {

struct Flags {
  std::string config_path;
  std::string format;
  std::optional<int> degree;
  std::vector<int> tail_starts;
  std::string out_path;
  bool self_test = false;
  bool timings = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "RunConfig JSON file");
  sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
  sub->add_option("--out", f.out_path, "write the report here instead of stdout");
  sub->add_flag("--timings", f.timings, "include wall-clock stage timings");
}

void add_truncation(CLI::App* sub, Flags& f) {
  sub->add_option("--deg", f.degree, "truncation degree N");
  sub->add_option("--tail-starts", f.tail_starts, "comma-separated tail starts k")->delimiter(',');
}

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& r) : report_(r) {}
  template <class F>
  auto time(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    report_.timings.emplace_back(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return result;
  }

 private:
  RunReport& report_;
};

const Symbol& require_symbol(const RunConfig& cfg) {
  if (!cfg.symbol) throw ConfigError("this command needs a symbol in the configuration");
  return *cfg.symbol;
}

// Admissibility first; returns false (and leaves the witnesses in the
// report) when the symbol is rejected.
bool gate(const RunConfig& cfg, RunReport& report, Stopwatch& sw) {
  const Symbol& phi = require_symbol(cfg);
  report.admissibility = sw.time("admissibility", [&] { return check_admissible(phi, cfg.domain); });
  return report.admissibility->admissible;
}

void spectral(const RunConfig& cfg, RunReport& report, Stopwatch& sw) {
  const Symbol& phi = *cfg.symbol;
  report.bounds = sw.time("bounds", [&] { return evaluate_bounds(phi, cfg.domain, cfg.search); });
  report.bracket = sw.time("bracket", [&] { return ess_norm_bracket(phi, cfg.domain, cfg.truncation); });
  report.sandwich = sandwich_check(*report.bounds, *report.bracket);
}

int execute(const std::string& command, const RunConfig& cfg, bool self_test, RunReport& report) {
  Stopwatch sw(report);
  report.command = command;
  if (command == "check-symbol") return gate(cfg, report, sw) ? ok : rejected;
  if (command == "bounds") {
    if (!gate(cfg, report, sw)) return rejected;
    report.bounds = sw.time("bounds", [&] { return evaluate_bounds(*cfg.symbol, cfg.domain, cfg.search); });
    return ok;
  }
  if (command == "essnorm") {
    if (!gate(cfg, report, sw)) return rejected;
    spectral(cfg, report, sw);
    return report.sandwich->pass() ? ok : rejected;
  }
  VerifyOptions q = cfg.quadrature;
  if (self_test) q.perturb_chi = 1e-3;
  if (command == "verify") {
    report.verify = sw.time("verify", [&] { return run_verification(cfg.domain, q); });
    return report.verify->pass() ? ok : rejected;
  }
  // report: everything
  const bool admissible = gate(cfg, report, sw);
  if (admissible) spectral(cfg, report, sw);
  report.verify = sw.time("verify", [&] { return run_verification(cfg.domain, q); });
  const bool pass = admissible && report.sandwich->pass() && report.verify->pass();
  return pass ? ok : rejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Essential norm estimates for Hankel operators on product domains", "essnorm"};
  app.require_subcommand(1);
  Flags flags;

  auto* check = app.add_subcommand("check-symbol", "test the boundary harmonicity condition");
  auto* bounds = app.add_subcommand("bounds", "evaluate the disk-family lower and upper bounds");
  auto* essnorm = app.add_subcommand("essnorm", "spectral bracket of the essential norm with sandwich verdict");
  auto* verify = app.add_subcommand("verify", "reproduce the closed-form identities by quadrature");
  auto* report = app.add_subcommand("report", "run every stage");
  for (auto* sub : {check, bounds, essnorm, verify, report}) add_common(sub, flags);
  for (auto* sub : {essnorm, report}) add_truncation(sub, flags);
  for (auto* sub : {verify, report})
    sub->add_flag("--self-test", flags.self_test, "perturb the cutoff by 1e-3 (negative control)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  RunReport result;
  int code = ok;
  try {
    if (!flags.config_path.empty()) cfg = load_config(flags.config_path);
    if (!flags.format.empty()) cfg.format = parse_format(flags.format);
    if (flags.degree) cfg.truncation.degree = *flags.degree;
    if (!flags.tail_starts.empty()) cfg.truncation.tail_starts = flags.tail_starts;
    cfg.validate();
    code = execute(command, cfg, flags.self_test, result);
  } catch (const ConfigError& e) {
    err << "essnorm: " << e.what() << "\n";
    return config_error;
  } catch (const std::invalid_argument& e) {
    err << "essnorm: " << e.what() << "\n";
    return config_error;
  }

  if (flags.out_path.empty()) {
    write_report(out, result, cfg, flags.timings);
  } else {
    std::ofstream file(flags.out_path);
    if (!file) {
      err << "essnorm: cannot write '" << flags.out_path << "'\n";
      return config_error;
    }
    write_report(file, result, cfg, flags.timings);
  }
  return code;
}

}  // namespace essnorm::cli
