#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include "thermopauli/json_io.hpp"

using namespace thermopauli;
using json_io::CliOptions;
using json_io::CommandResult;
using json_io::run_command;
using nlohmann::json;

namespace {

// lambda_2 = +-1/4: all-zero u with w4 = -10 * (1/4)^2
const char* kTropicalHappy = R"({"schema":1,"n0":4,"u":[0,0,0,0],"w":[0,0,0,-0.625]})";

// the quadratic profile at sigma = 1 on the smallest window
const char* kSubtropicalHappy =
    R"({"schema":1,"m0":1,"n0":2,"A":[[0,0,0],[0,0,0]],"B":[[0,0,0],[0,0,1]]})";

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t next = text.find("\r\n", pos);
    if (next == std::string::npos) break;
    out.push_back(text.substr(pos, next - pos));
    pos = next + 2;
  }
  return out;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("thermopauli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path file(const std::string& name, const std::string& contents) const {
    const auto p = path / name;
    std::ofstream f(p, std::ios::binary);
    f << contents;
    return p;
  }
};

int run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "\"" + THERMOPAULI_CLI_PATH + "\" " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tropical command round trip") {
  const CommandResult res = run_command("tropical", kTropicalHappy);
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.output_json);
  CHECK(out.at("schema") == 1);
  CHECK(out.at("diagnostics").at("q").get<double>() == -0.0625);
  CHECK(out.at("diagnostics").at("D").get<double>() == 0.25);
  CHECK(out.at("diagnostics").at("cond_w2") == true);
  CHECK(out.at("diagnostics").at("degenerate") == false);
  const json& sols = out.at("solutions");
  REQUIRE(sols.size() == 2);
  CHECK(sols[0].at("lambda")[1].get<double>() == 0.25);
  CHECK(sols[1].at("lambda")[1].get<double>() == -0.25);
  CHECK(sols[0].at("rho")[1].get<double>() == 0.25);
  CHECK(sols[0].at("residual").get<double>() == 0.0);
  CHECK(res.csv.empty());

  SUBCASE("deterministic and backend-independent on dyadic data") {
    const CommandResult again = run_command("tropical", kTropicalHappy);
    CHECK(again.output_json == res.output_json);
    CliOptions exact;
    exact.backend = "exact";
    const CommandResult ex = run_command("tropical", kTropicalHappy, exact);
    REQUIRE(ex.exit_code == 0);
    CHECK(ex.output_json == res.output_json);
  }
  SUBCASE("solution survives the verify command") {
    const json sol = out.at("solutions")[0];
    const json doc = {{"schema", 1},
                      {"kind", "tropical"},
                      {"problem", json::parse(kTropicalHappy)},
                      {"solution", {{"lambda", sol.at("lambda")}, {"rho", sol.at("rho")}}}};
    const CommandResult ver = run_command("verify", doc.dump());
    REQUIRE(ver.exit_code == 0);
    CHECK(json::parse(ver.output_json).at("residual").get<double>() == 0.0);

    json bad = doc;
    bad["solution"]["lambda"][2] = 0.001;
    const CommandResult worse = run_command("verify", bad.dump());
    REQUIRE(worse.exit_code == 0);
    CHECK(json::parse(worse.output_json).at("residual").get<double>() > 1e-6);
  }
}

TEST_CASE("subtropical command round trip") {
  const CommandResult res = run_command("subtropical", kSubtropicalHappy);
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.output_json);
  CHECK(out.at("c_report").at("c2").get<double>() == 1.0);
  CHECK(out.at("c_report").at("nonneg_on_grid") == true);
  const json& sols = out.at("solutions");
  REQUIRE(sols.size() == 2);
  CHECK(sols[0].at("f").at("coeffs")[0][2].get<double>() == 1.0);
  CHECK(sols[1].at("f").at("coeffs")[0][2].get<double>() == -1.0);
  CHECK(sols[0].at("g").at("coeffs")[1][0].get<double>() == 0.5);
  CHECK(sols[1].at("g").at("coeffs")[1][0].get<double>() == -0.5);
  CHECK(sols[0].at("P") == json::array({0.0, 0.0}));
  CHECK(sols[0].at("residual").get<double>() == 0.0);

  SUBCASE("verify accepts the emitted tables") {
    const json& sol = sols[1];
    const json doc = {{"schema", 1},
                      {"kind", "subtropical"},
                      {"problem", json::parse(kSubtropicalHappy)},
                      {"solution",
                       {{"f", sol.at("f")}, {"g", sol.at("g")}, {"P", sol.at("P")}}}};
    const CommandResult ver = run_command("verify", doc.dump());
    REQUIRE(ver.exit_code == 0);
    CHECK(json::parse(ver.output_json).at("residual").get<double>() == 0.0);
  }
}

TEST_CASE("schema violations exit 3 with a pointer") {
  auto expect_schema_fail = [](const std::string& cmd, const std::string& text,
                               const std::string& needle) {
    const CommandResult res = run_command(cmd, text);
    CHECK(res.exit_code == 3);
    const json out = json::parse(res.output_json);
    CHECK(out.at("error").at("category") == "schema");
    const std::string msg = out.at("error").at("message").get<std::string>();
    CHECK(msg.find(needle) != std::string::npos);
  };

  expect_schema_fail("tropical", R"({"schema":1,"n0":4,"u":[0,0,0,0]})", "/w");
  expect_schema_fail("tropical",
                     R"({"schema":1,"n0":4,"u":[0,0,0,0],"w":[0,0,0,0],"extra":1})", "extra");
  expect_schema_fail("tropical", R"({"schema":1,"n0":"four","u":[],"w":[]})", "/n0");
  expect_schema_fail("tropical", R"({"schema":2,"n0":4,"u":[0,0,0,0],"w":[0,0,0,0]})", "schema");
  expect_schema_fail("tropical", R"({"schema":1,"n0":4,"u":[0,0,0],"w":[0,0,0,0]})", "/u");
  expect_schema_fail("tropical", "not json", "not valid JSON");
  expect_schema_fail("tropical", "[1,2]", "expected a JSON object");
  expect_schema_fail("bogus", R"({"schema":1})", "unknown command");
  expect_schema_fail("fluctuations",
                     R"({"schema":1,"kernel":{"A":[[1]]},"request":"density_intensive",)"
                     R"("csv":{"kind":"x","min":-1,"max":1,"count":3}})",
                     "/csv/kind");

  CliOptions bad_backend;
  bad_backend.backend = "quad";
  CHECK(run_command("tropical", kTropicalHappy, bad_backend).exit_code == 3);
  CliOptions bad_kb;
  bad_kb.kB = 0.0;
  CHECK(run_command("tropical", kTropicalHappy, bad_kb).exit_code == 3);
}

TEST_CASE("admissibility rejections exit 2 with a category") {
  SUBCASE("degenerate tropical data") {
    const CommandResult res =
        run_command("tropical", R"({"schema":1,"n0":4,"u":[0,0,0,0],"w":[0,0,0.125,0]})");
    CHECK(res.exit_code == 2);
    const json out = json::parse(res.output_json);
    CHECK(out.at("error").at("category") == "degenerate");
    CHECK(out.at("error").at("message") == "degenerate: q equals (3 u1 w1)^2");
  }
  SUBCASE("order-2 condition violated") {
    const CommandResult res =
        run_command("tropical", R"({"schema":1,"n0":4,"u":[0,0,0,0],"w":[0,0.5,0,-0.625]})");
    CHECK(res.exit_code == 2);
    CHECK(json::parse(res.output_json).at("error").at("category") == "inconsistent_input");
  }
  SUBCASE("negative curvature in the deformed problem") {
    const CommandResult res = run_command(
        "subtropical",
        R"({"schema":1,"m0":1,"n0":2,"A":[[0,0,0],[0,0,0]],"B":[[0,0,0],[0,0,-1]]})");
    CHECK(res.exit_code == 2);
    CHECK(json::parse(res.output_json).at("error").at("category") == "no_real_solution");
  }
  SUBCASE("empty mole interval") {
    const CommandResult res = run_command(
        "chemical", R"({"schema":1,"units":"model","N0":0,"N1":5,"N2":0,"K":1})");
    CHECK(res.exit_code == 2);
    CHECK(json::parse(res.output_json).at("error").at("category") == "infeasible");
  }
}

TEST_CASE("internal failures exit 1") {
  const json doc = {{"schema", 1},
                    {"model", {{"type", "sackur_tetrode"}}},
                    {"C", json::array({json::array({0.0, 0.0, 0.0}), json::array({0.0, 0.0, 0.0}),
                                       json::array({0.0, 0.0, 0.0})})},
                    {"released", json::array({0})},
                    {"start", json::array({1.0, 1.0, 1.0})}};
  const CommandResult res = run_command("reduce", doc.dump());
  CHECK(res.exit_code == 1);
  CHECK(json::parse(res.output_json).at("error").at("category") == "singular");
}

TEST_CASE("thermo commands over JSON") {
  SUBCASE("chemical closed form") {
    const CommandResult res = run_command(
        "chemical", R"({"schema":1,"units":"model","N0":1,"N1":1,"N2":0,"K":4})");
    REQUIRE(res.exit_code == 0);
    CHECK(json::parse(res.output_json).at("x").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("gibbs distinct regime") {
    const CommandResult res = run_command(
        "gibbs",
        R"({"schema":1,"units":"model","u":1,"v":1,"n":1,"M0":1,"M1":2,"eps0":0.1,"K":1e12})");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.output_json);
    CHECK(out.at("regime") == "distinct");
    CHECK(out.at("mixing_entropy").get<double>() ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("reduce two-gas contact") {
    const json doc = {
        {"schema", 1},
        {"model",
         {{"type", "product"},
          {"factors", json::array({{{"type", "sackur_tetrode"}}, {{"type", "sackur_tetrode"}}})}}},
        {"C",
         json::array({json::array({1.0, 0.0, 0.0, 1.0, 0.0, 0.0}),
                      json::array({0.0, 1.0, 0.0, 0.0, 0.0, 0.0}),
                      json::array({0.0, 0.0, 1.0, 0.0, 0.0, 0.0}),
                      json::array({0.0, 0.0, 0.0, 0.0, 1.0, 0.0}),
                      json::array({0.5, 0.0, 0.0, -0.5, 0.0, 0.0}),
                      json::array({0.0, 0.0, 0.0, 0.0, 0.0, 1.0})})},
        {"released", json::array({4})},
        {"start", json::array({3.0, 1.0, 1.0, 1.0, 1.0, 1.0})}};
    const CommandResult res = run_command("reduce", doc.dump());
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.output_json);
    CHECK(out.at("E")[0].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(out.at("E")[3].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(out.at("beta")[0].get<double>() - out.at("beta")[3].get<double>()) < 1e-10);
    CHECK(out.at("condition_number").get<double>() > 1.0);
  }
}

TEST_CASE("fluctuations command emits CSV plot data") {
  const std::string input =
      R"({"schema":1,"kernel":{"A":[[1]]},"request":"density_extensive",)"
      R"("csv":{"kind":"x","min":-2,"max":2,"count":5}})";
  const CommandResult res = run_command("fluctuations", input);
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.output_json);
  CHECK(out.at("kind") == "density_extensive");
  CHECK(out.at("dim") == 1);
  CHECK(out.at("h").get<double>() == 2.0);
  CHECK(out.at("rows") == 5);

  const auto lines = split_lines(res.csv);
  REQUIRE(lines.size() == 6);  // header + 5 rows
  CHECK(lines[0] == "x,value");
  CHECK(std::stod(lines[1]) == -2.0);
  const std::size_t comma = lines[3].find(',');
  REQUIRE(comma != std::string::npos);
  CHECK(std::stod(lines[3].substr(0, comma)) == 0.0);
  const double mid = std::stod(lines[3].substr(comma + 1));
  CHECK(std::abs(mid - 1.0 / std::sqrt(2.0 * 3.14159265358979324)) < 1e-12);

  // determinism: byte-identical CSV on a second run
  CHECK(run_command("fluctuations", input).csv == res.csv);
}

TEST_CASE("model registry parses and rejects") {
  using json_io::parse_model_json;
  CHECK(parse_model_json(R"({"type":"sackur_tetrode","mass":2.0})")->dim() == 3);
  CHECK(parse_model_json(
            R"({"type":"quadratic","const":1,"linear":[0,0],"hessian":[[-1,0],[0,-1]]})")
            ->dim() == 2);
  CHECK(parse_model_json(
            R"({"type":"linear_change","base":{"type":"sackur_tetrode"},)"
            R"("C":[[1,0,0],[0,1,0],[0,0,1]]})")
            ->dim() == 3);
  CHECK(parse_model_json(R"({"type":"shifted","base":{"type":"sackur_tetrode"},"q":2})")
            ->eval(Eigen::Vector3d::Ones()) ==
        doctest::Approx(parse_model_json(R"({"type":"sackur_tetrode"})")
                            ->eval(Eigen::Vector3d::Ones()) -
                        2.0));
  CHECK_THROWS_AS(parse_model_json(R"({"type":"mystery"})"), schema_error);
  CHECK_THROWS_AS(parse_model_json("{{{"), schema_error);
  CHECK_THROWS_AS(parse_model_json(R"({"type":"quadratic","const":0})"), schema_error);
}

TEST_CASE("command line end to end") {
  const TempDir dir;
  const auto in = dir.file("trop.json", kTropicalHappy);
  const auto out = dir.path / "out.json";
  const auto csv = dir.path / "plot.csv";

  SUBCASE("output file and exit code") {
    const int code =
        run_cli("tropical --input " + in.string() + " --output " + out.string() + " 2>/dev/null");
    CHECK(code == 0);
    const json doc = json::parse(slurp(out));
    CHECK(doc.at("solutions").size() == 2);
  }
  SUBCASE("stdout by default") {
    const auto redirect = dir.path / "stdout.json";
    const int code =
        run_cli("tropical --input " + in.string() + " > " + redirect.string() + " 2>/dev/null");
    CHECK(code == 0);
    CHECK(json::parse(slurp(redirect)).at("schema") == 1);
  }
  SUBCASE("environment backend overrides the flag") {
    // 0.27 has no rational square root, so the exact backend must refuse
    const auto hard = dir.file("hard.json",
                               R"({"schema":1,"n0":4,"u":[0,0,0,0.125],"w":[0,0,0,-0.8]})");
    const std::string base = "tropical --input " + hard.string() + " --backend float --output " +
                             out.string() + " 2>/dev/null";
    CHECK(run_cli(base) == 0);
    CHECK(run_cli(base, "THERMOPAULI_BACKEND=exact ") == 2);
    CHECK(json::parse(slurp(out)).at("error").at("category") == "exactness");
    // an empty environment value falls back to the flag
    CHECK(run_cli(base, "THERMOPAULI_BACKEND= ") == 0);
  }
  SUBCASE("csv lands in the requested file") {
    const auto fin = dir.file("fluct.json",
                              R"({"schema":1,"kernel":{"A":[[1]]},"request":"density_extensive",)"
                              R"("csv":{"kind":"x","min":-1,"max":1,"count":3}})");
    const int code = run_cli("fluctuations --input " + fin.string() + " --output " + out.string() +
                             " --csv " + csv.string() + " 2>/dev/null");
    CHECK(code == 0);
    const auto lines = split_lines(slurp(csv));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "x,value");
  }
  SUBCASE("schema violation surfaces as exit 3") {
    const auto bad = dir.file("bad.json", R"({"schema":1,"n0":4,"u":[0,0,0,0]})");
    CHECK(run_cli("tropical --input " + bad.string() + " --output " + out.string() +
                  " 2>/dev/null") == 3);
  }
  SUBCASE("unreadable input exits 1") {
    CHECK(run_cli("tropical --input " + (dir.path / "missing.json").string() +
                  " 2>/dev/null") == 1);
  }
}
