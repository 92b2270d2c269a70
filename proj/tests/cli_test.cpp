#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "haloproj/problem_spec.hpp"

using namespace haloproj;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_test_out") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char ch : text) {
    if (ch == '\n') ++lines;
  }
  return lines;
}

const std::string kMinimalSpec = R"({
  "name": "c05",
  "dimension": 1,
  "x0": [1.0],
  "operator": {"type": "contraction", "alpha": 0.5}
})";

}  // namespace

TEST_CASE("minimal document parses with defaults") {
  const ProblemSpec spec = parse_spec(kMinimalSpec);
  CHECK(spec.name == "c05");
  CHECK(spec.dimension == 1);
  CHECK(spec.op.tag == OperatorSpec::Tag::Contraction);
  CHECK(spec.op.alpha == 0.5);
  CHECK(spec.tol_residual == 1e-8);
  CHECK(spec.divergence_radius == 1e6);
  CHECK(spec.max_iter == 10000);
  CHECK(!spec.emit_baseline);

  const RunConfig cfg = make_run_config(spec);
  CHECK(cfg.x0.dim() == 1);
  CHECK(cfg.op->describe() == "contraction(alpha=0.5)");
}

TEST_CASE("parse errors name the offending key") {
  const auto key_of = [](const std::string& text) {
    try {
      parse_spec(text);
    } catch (const SpecError& e) {
      return e.key;
    }
    return std::string("<no error>");
  };

  CHECK(key_of(R"({"name":"x","dimension":1,"x0":[1],
                   "operator":{"type":"contraction","alpha":1.5}})") == "operator.alpha");
  CHECK(key_of(R"({"name":"x","dimension":3,"x0":[1,2],
                   "operator":{"type":"contraction","alpha":0.5}})") == "x0");
  CHECK(key_of(R"({"name":"x","dimension":1,"x0":[1],
                   "operator":{"type":"warp"}})") == "operator.type");
  CHECK(key_of(R"({"name":"x","dimension":1,"x0":[1],
                   "operator":{"type":"subgradient_custom"}})") == "operator.type");
  CHECK(key_of(R"({"name":"x","dimension":1,"x0":[1],"tol_residual":0,
                   "operator":{"type":"contraction","alpha":0.5}})") == "tol_residual");
  CHECK(key_of(R"({"name":"x","dimension":1,"x0":[1],"surprise":3,
                   "operator":{"type":"contraction","alpha":0.5}})") == "surprise");
  CHECK(key_of(R"({"name":"bad name","dimension":1,"x0":[1],
                   "operator":{"type":"contraction","alpha":0.5}})") == "name");
  CHECK(key_of(R"({"name":"x","dimension":2,"x0":[1,0],
                   "operator":{"type":"translation","alpha":1.0,"direction":[1,1]}})") ==
        "operator.direction");
  CHECK(key_of(R"({"name":"x","dimension":2,"x0":[1,0],
                   "operator":{"type":"sign_paper_instance"}})") == "operator.type");
  CHECK(key_of("not json at all") == "<document>");
  CHECK(key_of(R"({"name":"x","dimension":1,"x0":[1e999],
                   "operator":{"type":"contraction","alpha":0.5}})") == "<document>");
}

TEST_CASE("execute writes trace and summary with a status exit code") {
  const ProblemSpec spec = parse_spec(kMinimalSpec);
  const fs::path dir = fresh_dir("run_c05");
  CHECK(execute(spec, dir) == 0);

  const std::string csv = read_file(dir / "c05.trace.csv");
  const std::string summary = read_file(dir / "c05.summary.txt");
  CHECK(summary.find("status: Converged") != std::string::npos);
  CHECK(summary.find("operator: contraction(alpha=0.5)") != std::string::npos);

  // one header plus one row per iteration
  const std::vector<TraceEntry> trace = trace_from_csv(csv, spec.dimension);
  CHECK(count_lines(csv) == static_cast<int>(trace.size()) + 1);
  REQUIRE(!trace.empty());
  REQUIRE(trace.back().x.has_value());
  CHECK(std::abs((*trace.back().x)[0]) <= 1e-6);
}

TEST_CASE("exit codes follow the run status") {
  SUBCASE("infeasible run exits 2") {
    const ProblemSpec spec = parse_spec(R"({"name":"sign","dimension":1,"x0":[0.0],
                                            "operator":{"type":"sign_paper_instance"}})");
    const fs::path dir = fresh_dir("run_sign");
    CHECK(execute(spec, dir) == 2);
    const std::string summary = read_file(dir / "sign.summary.txt");
    CHECK(summary.find("status: Infeasible") != std::string::npos);
    CHECK(summary.find("infeasible_at: 2") != std::string::npos);
  }
  SUBCASE("diverging run exits 3") {
    const ProblemSpec spec = parse_spec(R"({"name":"walk","dimension":1,"x0":[0.0],
      "operator":{"type":"translation","alpha":1.0,"direction":[1.0]},
      "divergence_radius":50.0})");
    CHECK(execute(spec, fresh_dir("run_walk")) == 3);
  }
  SUBCASE("exhausted budget exits 4") {
    const ProblemSpec spec = parse_spec(R"({"name":"short","dimension":1,"x0":[1.0],
      "operator":{"type":"contraction","alpha":0.5},"max_iter":3})");
    CHECK(execute(spec, fresh_dir("run_short")) == 4);
  }
}

TEST_CASE("rerunning a spec produces byte-identical CSV") {
  const ProblemSpec spec = parse_spec(R"({"name":"ell2","dimension":5,"x0":[1,1,0,0,0],
                                          "operator":{"type":"subgradient_ell2"}})");
  const fs::path dir1 = fresh_dir("det_1");
  const fs::path dir2 = fresh_dir("det_2");
  CHECK(execute(spec, dir1) == 0);
  CHECK(execute(spec, dir2) == 0);
  CHECK(read_file(dir1 / "ell2.trace.csv") == read_file(dir2 / "ell2.trace.csv"));
  CHECK(read_file(dir1 / "ell2.summary.txt") == read_file(dir2 / "ell2.summary.txt"));
}

TEST_CASE("trace CSV round-trips exactly") {
  const ProblemSpec spec = parse_spec(kMinimalSpec);
  const RunConfig cfg = make_run_config(spec);
  const RunResult result = run(cfg);
  const std::string csv = trace_to_csv(result.trace, spec.dimension);
  const std::vector<TraceEntry> back = trace_from_csv(csv, spec.dimension);
  REQUIRE(back.size() == result.trace.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].n == result.trace[i].n);
    CHECK(back[i].residual == result.trace[i].residual);
    CHECK(back[i].dist_to_x0 == result.trace[i].dist_to_x0);
    CHECK(back[i].num_constraints == result.trace[i].num_constraints);
    REQUIRE(back[i].x.has_value());
    CHECK(*back[i].x == *result.trace[i].x);
  }
}

TEST_CASE("baseline emission writes a second trace") {
  ProblemSpec spec = parse_spec(kMinimalSpec);
  spec.emit_baseline = true;
  spec.tol_residual = 1e-4;
  const fs::path dir = fresh_dir("run_baseline");
  CHECK(execute(spec, dir) == 0);
  CHECK(fs::exists(dir / "c05.baseline.trace.csv"));
  const std::string summary = read_file(dir / "c05.summary.txt");
  CHECK(summary.find("baseline_status:") != std::string::npos);
}

TEST_CASE("verify subcommand re-checks an emitted trace") {
  const fs::path dir = fresh_dir("verify");
  const fs::path spec_path = dir / "spec.json";
  {
    std::ofstream out(spec_path, std::ios::binary);
    out << kMinimalSpec;
  }
  const ProblemSpec spec = parse_spec(kMinimalSpec);
  REQUIRE(execute(spec, dir) == 0);

  std::string report;
  CHECK(verify_trace_file(dir / "c05.trace.csv", spec_path, &report) == 0);
  CHECK(report.find("violations: 0") != std::string::npos);

  // corrupt one iterate: monotonicity of the distance column breaks
  std::string csv = read_file(dir / "c05.trace.csv");
  const std::size_t last_line = csv.rfind('\n', csv.size() - 2);
  REQUIRE(last_line != std::string::npos);
  std::string corrupted = csv.substr(0, last_line + 1);
  {
    std::istringstream lines(csv.substr(last_line + 1));
    std::string row;
    std::getline(lines, row);
    // row: n,residual,dist,...; overwrite dist with 0
    std::size_t first = row.find(','), second = row.find(',', first + 1);
    std::size_t third = row.find(',', second + 1);
    corrupted += row.substr(0, second) + ",0" + row.substr(third) + "\n";
  }
  const fs::path bad_csv = dir / "c05.bad.csv";
  {
    std::ofstream out(bad_csv, std::ios::binary);
    out << corrupted;
  }
  report.clear();
  CHECK(verify_trace_file(bad_csv, spec_path, &report) == 5);
  CHECK(report.find("monotone_distance") != std::string::npos);

  CHECK(verify_trace_file(dir / "missing.csv", spec_path, nullptr) == 1);
}

TEST_CASE("command-line binary round trip") {
  const fs::path dir = fresh_dir("binary");
  const std::string spec = std::string(HALOPROJ_SPEC_DIR) + "/c05.json";
  const std::string cmd = std::string(HALOPROJ_BIN) + " run " + spec + " --out " + dir.string();
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  CHECK(WEXITSTATUS(rc) == 0);
  CHECK(fs::exists(dir / "c05.trace.csv"));

  const std::string verify_cmd = std::string(HALOPROJ_BIN) + " verify " +
                                 (dir / "c05.trace.csv").string() + " " + spec + " > /dev/null";
  const int rc2 = std::system(verify_cmd.c_str());
  REQUIRE(rc2 != -1);
  CHECK(WEXITSTATUS(rc2) == 0);

  const int rc3 = std::system((std::string(HALOPROJ_BIN) + " run missing.json --out . 2>/dev/null").c_str());
  REQUIRE(rc3 != -1);
  CHECK(WEXITSTATUS(rc3) == 1);
}

TEST_CASE("wide problems emit scalar-only CSV that still verifies") {
  // coordinate columns stop at dimension 16
  std::string doc = R"({"name":"wide","dimension":17,"x0":[)";
  for (int i = 0; i < 17; ++i) doc += (i ? ",1.0" : "1.0");
  doc += R"(],"operator":{"type":"contraction","alpha":0.5},"max_iter":5})";
  const ProblemSpec spec = parse_spec(doc);
  const fs::path dir = fresh_dir("run_wide");
  CHECK(execute(spec, dir) == 4);  // budget exhausted on purpose

  const std::string csv = read_file(dir / "wide.trace.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "n,residual,dist_to_x0,num_constraints,qp_working_set_changes");

  const fs::path spec_path = dir / "wide.json";
  {
    std::ofstream out(spec_path, std::ios::binary);
    out << doc;
  }
  std::string report;
  CHECK(verify_trace_file(dir / "wide.trace.csv", spec_path, &report) == 0);
  CHECK(report.find("0 with coordinates") != std::string::npos);
}
