#include "doctest.h"

#include "essnorm/cli.hpp"
#include "essnorm/config.hpp"
#include "essnorm/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace essnorm;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("essnorm_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

const char* zbar_cfg = R"({"symbol":{"terms":[{"zbar":1,"re":"1"}]},
  "truncation":{"degree":12,"tail_starts":[0,4,8],"p_schedule":[0,0.5,0.9]},
  "search":{"grid_theta":16,"grid_center":9,"grid_scale":8,"grid_inner":[32,8],"refine_rounds":2}})";

}  // namespace

TEST_CASE("symbol JSON round trip") {
  const json j = json::parse(R"({"terms":[{"z":1,"zbar":2,"re":"3/4","im":"-1/2"},{"wbar":1,"re":"2"}]})");
  const Symbol s = symbol_from_json(j);
  CHECK_FALSE(s.inexact());
  CHECK(s.terms().at({1, 2, 0, 0}) == QComplex(mpq_class(3, 4), mpq_class(-1, 2)));
  CHECK(symbol_from_json(symbol_to_json(s)) == s);

  const Symbol d = symbol_from_json(json::parse(R"({"terms":[{"zbar":1,"re":"0.1"}]})"));
  CHECK(d.inexact());
  CHECK(d.terms().at({0, 1, 0, 0}) == QComplex(mpq_class(1, 10)));

  CHECK_THROWS_AS(symbol_from_json(json::parse(R"({"terms":[{"zbar":-1,"re":"1"}]})")), ConfigError);
  CHECK_THROWS_AS(symbol_from_json(json::parse(R"({"terms":[{"zbar":1,"re":"x"}]})")), ConfigError);
  CHECK_THROWS_AS(symbol_from_json(json::parse(R"({"terms":[{"q":1}]})")), ConfigError);
}

TEST_CASE("config parsing and invariants") {
  const auto cfg = config_from_json(json::parse(R"({"domain":{"r1":"3/2","r2":0.5},
    "search":{"grid_inner":[32,8],"families":["w"]},"quadrature":{"tau0":0.5,"j":[1,2]},"output":{"format":"csv"}})"));
  CHECK(cfg.domain.r1() == mpq_class(3, 2));
  CHECK(cfg.domain.r2() == mpq_class(1, 2));
  CHECK(cfg.search.inner_angular == 32);
  CHECK(cfg.search.inner_radial == 8);
  CHECK(cfg.search.families == std::vector<SliceFamily>{SliceFamily::w});
  CHECK(cfg.quadrature.tau0 == 0.5);
  CHECK(cfg.format == OutputFormat::csv);

  for (const char* bad : {R"({"truncation":{"degree":10,"tail_starts":[10]}})",
                          R"({"truncation":{"p_schedule":[1.0]}})",
                          R"({"quadrature":{"eps1":3.2}})",
                          R"({"quadrature":{"r0":0}})",
                          R"({"quadrature":{"tau0":-1}})",
                          R"({"domain":{"r1":0}})",
                          R"({"output":{"format":"xml"}})",
                          R"({"extra":1})"})
    CHECK_THROWS_AS(config_from_json(json::parse(bad)), ConfigError);
}

TEST_CASE("check-symbol exit codes") {
  CHECK(run({"check-symbol", "--config", write_temp("zbar.json", zbar_cfg)}).code == 0);
  const auto rej = run({"check-symbol", "--format", "json", "--config",
                        write_temp("zz.json", R"({"symbol":{"terms":[{"z":1,"zbar":1,"re":"1"}]}})")});
  CHECK(rej.code == 1);
  const json j = json::parse(rej.out);
  CHECK(j["admissibility"]["admissible"] == false);
  CHECK(j["admissibility"]["witnesses"][0]["text"] == "1");
  CHECK(run({"check-symbol", "--config", write_temp("bad.json", "{\"symbol\":")}).code == 2);
  CHECK(run({"check-symbol", "--config", "/nonexistent/essnorm.json"}).code == 2);
  CHECK(run({"check-symbol"}).code == 2);  // no symbol
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bounds command") {
  const auto r = run({"bounds", "--format", "json", "--config", write_temp("zbar.json", zbar_cfg)});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["bounds"]["thm1_lower"]["value"] == 0.25);
  CHECK(j["bounds"]["thm2_lower"]["value"] == 0.707106781187);
  CHECK(j["bounds"]["thm1_upper"]["value"] == 4.66328796319);
  CHECK(j["bounds"]["thm2_lower"]["argmax"]["family"] == "z");
  CHECK(j["bounds"]["search"]["grid_inner"] == json::array({32, 8}));
  CHECK_FALSE(j.contains("timings"));

  const auto rej = run({"bounds", "--config",
                        write_temp("zz.json", R"({"symbol":{"terms":[{"z":1,"zbar":1,"re":"1"}]}})")});
  CHECK(rej.code == 1);
}

TEST_CASE("essnorm command") {
  const auto path = write_temp("zbar.json", zbar_cfg);
  const auto r = run({"essnorm", "--format", "json", "--config", path});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["bracket"]["lower_est"] == 0.707106781187);
  CHECK(j["bracket"]["upper_est"] == 0.707106781187);
  CHECK(j["bracket"]["table"][0] == json::array({0, 12, 0.707106781187}));
  CHECK(j["bracket"]["sequence"].size() == 3);
  CHECK(j["sandwich"]["pass"] == true);
  CHECK(j["sandwich"]["rows"].size() == 4);

  const auto again = run({"essnorm", "--format", "json", "--config", path});
  CHECK(again.out == r.out);

  const auto deg = run({"essnorm", "--format", "json", "--deg", "10", "--tail-starts", "0,6", "--config", path});
  REQUIRE(deg.code == 0);
  const json jd = json::parse(deg.out);
  CHECK(jd["bracket"]["degree"] == 10);
  CHECK(jd["bracket"]["tail_starts"] == json::array({0, 6}));
  CHECK(run({"essnorm", "--deg", "5", "--tail-starts", "0,8", "--config", path}).code == 2);

  const auto csv = run({"essnorm", "--format", "csv", "--config", path});
  CHECK(csv.out.find("tail_start,degree,value\n0,12,0.707106781187") != std::string::npos);
}

TEST_CASE("holomorphic symbol brackets to zero") {
  const auto r = run({"essnorm", "--format", "json", "--config",
                      write_temp("z.json", R"({"symbol":{"terms":[{"z":1,"re":"1"}]},
                        "truncation":{"degree":8,"tail_starts":[0,4],"p_schedule":[0,0.5]},
                        "search":{"grid_theta":8,"grid_center":5,"grid_scale":4,"grid_inner":[16,4]}})")});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["bracket"]["lower_est"] == 0.0);
  CHECK(j["bracket"]["upper_est"] == 0.0);
}

TEST_CASE("verify command") {
  const auto ok = run({"verify", "--format", "csv"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("# verify\nname,closed_form,closed,computed,abs_error,pass\n", 0) == 0);
  CHECK(ok.out.find(",false\n") == std::string::npos);

  const auto half = run({"verify", "--format", "json", "--config", write_temp("tau.json", R"({"quadrature":{"tau0":0.5}})")});
  CHECK(half.code == 0);
  const json j = json::parse(half.out);
  bool found = false;
  for (const auto& row : j["verify"]["rows"])
    if (row["name"] == "chi_z_norm_sq") {
      found = true;
      CHECK(row["closed"] == 10.1859163579);
      CHECK(row["pass"] == true);
    }
  CHECK(found);

  const auto neg = run({"verify", "--self-test", "--format", "json"});
  CHECK(neg.code == 1);
  const json jn = json::parse(neg.out);
  CHECK(jn["verify"]["pass"] == false);

  CHECK(run({"verify", "--config", write_temp("eps.json", R"({"quadrature":{"eps1":4}})")}).code == 2);
}

TEST_CASE("report command and output file") {
  const auto path = write_temp("zbar.json", zbar_cfg);
  const auto out = (std::filesystem::temp_directory_path() / "essnorm_test_report.json").string();
  const auto r = run({"report", "--format", "json", "--out", out, "--timings", "--config", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  const json j = json::parse(in);
  for (const char* key : {"admissibility", "bounds", "bracket", "sandwich", "verify", "timings"}) CHECK(j.contains(key));

  const auto rej = run({"report", "--format", "json", "--config",
                        write_temp("zz.json", R"({"symbol":{"terms":[{"z":1,"zbar":1,"re":"1"}]}})")});
  CHECK(rej.code == 1);
  const json jr = json::parse(rej.out);
  CHECK_FALSE(jr.contains("sandwich"));
  CHECK(jr.contains("verify"));
}

TEST_CASE("json numbers carry twelve significant digits") {
  CHECK(json_number(0.70710678118654752).dump() == "0.707106781187");
  CHECK(json_number(std::nan("")).is_null());
  CHECK(json_number(-0.0).dump() == "0.0");
}
