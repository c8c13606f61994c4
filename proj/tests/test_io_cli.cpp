#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polycurve/commands.hpp"
#include "polycurve/io.hpp"
#include "test_helpers.hpp"

using namespace polycurve;
using namespace polycurve::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("polycurve_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_quiet(const cli::RunConfig& config, std::string* captured = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(config, out, err);
  if (captured) *captured = out.str();
  return code;
}

}  // namespace

TEST_CASE("curve JSON round trip preserves the exact doubles") {
  const auto circle = make_r_circle<double>(3);
  const auto parsed = io::parse_curve_json(io::curve_to_json(circle));
  const auto& back = std::get<CircleAnsatzCurved>(parsed);
  CHECK(back.terms.front().frequency == circle.terms.front().frequency);
  CHECK((back.constant_axis - circle.constant_axis).cwiseAbs().maxCoeff() == 0.0);

  const auto disc = sample(circle, 32);
  const auto parsed_disc = io::parse_curve_json(io::curve_to_json(disc));
  const auto& back_disc = std::get<DiscreteCurved>(parsed_disc);
  CHECK(back_disc.period == disc.period);
  CHECK((back_disc.samples - disc.samples).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("curve JSON rejects malformed and schema-violating input") {
  CHECK_THROWS_AS(io::parse_curve_json("{not json"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_curve_json("{\"type\":\"blob\"}"), InvalidArgument);
  CHECK_THROWS_AS(io::parse_curve_json("{\"type\":\"ansatz\",\"terms\":[]}"), InvalidArgument);
  // off-sphere discrete data violates the type invariant
  CHECK_THROWS_AS(
      io::parse_curve_json(
          "{\"type\":\"discrete\",\"L\":1.0,\"samples\":[[2,0,0],[2,0,0],[2,0,0],[2,0,0],"
          "[2,0,0],[2,0,0],[2,0,0],[2,0,0],[2,0,0],[2,0,0],[2,0,0],[2,0,0],[2,0,0],[2,0,0],"
          "[2,0,0],[2,0,0]]}"),
      InvalidArgument);
}

TEST_CASE("verify: the r=3 circle passes with exit 0 and a tiny residual") {
  std::string output;
  cli::RunConfig config;
  config.command = "verify";
  config.params = {{"family", "r-circle"}, {"r", "3"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  const auto report = nlohmann::json::parse(output);
  CHECK(report["passed"].get<bool>());
  for (const auto& check : report["checks"]) CHECK(check["max_norm"].get<double>() <= 1e-8);
  CHECK(report["frenet"]["relation_satisfied"].get<bool>());
}

TEST_CASE("classify: direct tuple emits the satisfied row") {
  std::string output;
  cli::RunConfig config;
  config.command = "classify";
  config.params = {{"K", "1"}, {"r", "2"}, {"k", "1"}, {"tau", "0"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  CHECK(output.find("satisfied") != std::string::npos);
  CHECK(output.find("true") != std::string::npos);
}

TEST_CASE("classify: CSV input gets the appended columns") {
  TempDir dir;
  const std::string input = dir.file("tuples.csv");
  io::write_file(input, "K,r,k,tau\n1,2,1,0\n-1,2,1,1\n");
  std::string output;
  cli::RunConfig config;
  config.command = "classify";
  config.inputs = {input};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  std::istringstream lines(output);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "K,r,k,tau,lhs,rhs,satisfied");
  CHECK(row1.find("true") != std::string::npos);
  CHECK(row2.find("false") != std::string::npos);
}

TEST_CASE("malformed curve JSON exits 2 and writes no output file") {
  TempDir dir;
  const std::string bad = dir.file("bad.json");
  io::write_file(bad, "{\"type\":\"ansatz\"");
  cli::RunConfig config;
  config.command = "residual";
  config.inputs = {bad};
  config.params = {{"kind", "triharmonic"}};
  config.output = dir.file("report.json");
  CHECK(run_quiet(config) == cli::kExitValidation);
  CHECK_FALSE(fs::exists(config.output));
}

TEST_CASE("residual command evaluates a stored curve") {
  TempDir dir;
  const std::string path = dir.file("circle.json");
  io::write_file(path, io::curve_to_json(make_r_circle<double>(3)));
  std::string output;
  cli::RunConfig config;
  config.command = "residual";
  config.inputs = {path};
  config.params = {{"kind", "triharmonic"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  const auto report = nlohmann::json::parse(output);
  CHECK(report["kind"].get<std::string>() == "extrinsic_ode_r3");
  CHECK(report["max_norm"].get<double>() < 1e-8);
}

TEST_CASE("unknown parameter keys are rejected, not ignored") {
  cli::RunConfig config;
  config.command = "verify";
  config.params = {{"family", "r-circle"}, {"r", "3"}, {"tol", "1e-3"}};
  CHECK(run_quiet(config) == cli::kExitValidation);
}

TEST_CASE("empty sweep grids exit 2") {
  cli::RunConfig config;
  config.command = "sweep";
  config.params = {{"family", "single-freq"}, {"r", "3"}, {"a2", "0.5:5:0"}};
  CHECK(run_quiet(config) == cli::kExitValidation);
}

TEST_CASE("sweep: single-frequency residual minima sit at the polynomial roots") {
  std::string output;
  cli::RunConfig config;
  config.command = "sweep";
  config.params = {{"family", "single-freq"}, {"r", "3"}, {"a2", "0.5:5:50"}, {"n-eval", "64"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  // parse the intrinsic column of feasible rows
  std::istringstream lines(output);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::pair<double, double>> rows;
  while (std::getline(lines, line)) {
    std::stringstream fields(line);
    std::string a2, feasible, alpha, ode, intrinsic;
    std::getline(fields, a2, ',');
    std::getline(fields, feasible, ',');
    std::getline(fields, alpha, ',');
    std::getline(fields, ode, ',');
    std::getline(fields, intrinsic, ',');
    if (feasible == "true") rows.emplace_back(std::stod(a2), std::stod(intrinsic));
  }
  REQUIRE(rows.size() > 10);
  // local minima of the residual over the feasible grid
  std::vector<double> minima;
  for (size_t i = 1; i + 1 < rows.size(); ++i)
    if (rows[i].second < rows[i - 1].second && rows[i].second < rows[i + 1].second)
      minima.push_back(rows[i].first);
  if (rows.front().second < rows[1].second) minima.push_back(rows.front().first);
  const double spacing = 4.5 / 49.0;
  for (double m : minima) CHECK((std::abs(m - 1.0) < 2 * spacing || std::abs(m - 3.0) < 2 * spacing));
  CHECK(minima.size() >= 1);
}

TEST_CASE("sweep: two-frequency residual vanishes along the a^2 + b^2 = 2 line") {
  std::string output;
  cli::RunConfig config;
  config.command = "sweep";
  config.params = {{"family", "two-freq"}, {"r", "2"}, {"a2", "0.5:1.5:5"},
                   {"b2", "0.5:1.5:5"}, {"n-eval", "64"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  std::istringstream lines(output);
  std::string line;
  std::getline(lines, line);  // header
  int on_line = 0, off_line = 0;
  while (std::getline(lines, line)) {
    std::stringstream fields(line);
    std::string a2, b2, feasible, alpha, residual;
    std::getline(fields, a2, ',');
    std::getline(fields, b2, ',');
    std::getline(fields, feasible, ',');
    std::getline(fields, alpha, ',');
    std::getline(fields, residual, ',');
    if (feasible != "true") continue;
    const double sum = std::stod(a2) + std::stod(b2);
    const double value = std::stod(residual);
    if (std::abs(sum - 2.0) < 1e-12) {
      CHECK(value <= 1e-8);
      ++on_line;
    } else if (std::abs(sum - 2.0) > 0.1 && std::stod(alpha) > 0.01 &&
               std::stod(alpha) < 0.99) {
      CHECK(value > 1e-3);
      ++off_line;
    }
  }
  CHECK(on_line >= 3);
  CHECK(off_line >= 2);
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  TempDir dir;
  for (const char* name : {"first.json", "second.json"}) {
    cli::RunConfig config;
    config.command = "solve";
    config.params = {{"system", "triharmonic-two-freq"}, {"freq-axis", "6"},
                     {"simplex-axis", "4"}};
    config.output = dir.file(name);
    CHECK(run_quiet(config) == cli::kExitOk);
  }
  CHECK(io::read_file(dir.file("first.json")) == io::read_file(dir.file("second.json")));
}

TEST_CASE("minimize: restricted mode writes the trace and its CSV projection") {
  TempDir dir;
  cli::RunConfig config;
  config.command = "minimize";
  config.params = {{"r", "2"}, {"N", "64"}, {"mode", "restricted"}, {"alpha0-sq", "0.4"}};
  config.output = dir.file("trace.json");
  CHECK(run_quiet(config) == cli::kExitOk);
  const auto trace = nlohmann::json::parse(io::read_file(dir.file("trace.json")));
  CHECK(trace["converged"].get<bool>());
  CHECK(std::abs(trace["final_alpha_sq"].get<double>() - 0.5) < 0.01);
  REQUIRE(fs::exists(dir.file("trace.csv")));
  const auto csv = io::read_file(dir.file("trace.csv"));
  CHECK(csv.rfind("step,energy\n", 0) == 0);
}

TEST_CASE("probe command evaluates the curvature family") {
  std::string output;
  cli::RunConfig config;
  config.command = "probe";
  config.params = {{"alpha", "1"}, {"beta", "2"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  const auto report = nlohmann::json::parse(output);
  CHECK(report["report"]["max_abs"].get<double>() <= 1e-12);
}

TEST_CASE("frenet CSV export carries the frame columns") {
  const auto fren = frenet_data(make_r_circle<double>(2, 3));
  const auto csv = io::frenet_to_csv(fren);
  CHECK(csv.rfind("s,k,tau,torsion_defined,T_0", 0) == 0);
  // one header plus one row per sample
  CHECK(std::count(csv.begin(), csv.end(), '\n') == fren.sample_count() + 1);
}

TEST_CASE("unknown commands and formats exit 2") {
  cli::RunConfig config;
  config.command = "render";
  CHECK(run_quiet(config) == cli::kExitValidation);
  config.command = "probe";
  config.format = "xml";
  CHECK(run_quiet(config) == cli::kExitValidation);
}

TEST_CASE("unwritable output paths exit 4 with a diagnostic") {
  cli::RunConfig config;
  config.command = "classify";
  config.params = {{"K", "1"}, {"r", "2"}, {"k", "1"}, {"tau", "0"}};
  config.output = "/nonexistent-dir/out.csv";
  std::ostringstream out, err;
  CHECK(cli::run(config, out, err) == cli::kExitIo);
  CHECK(err.str().find("error:") != std::string::npos);
}

TEST_CASE("sweep output is independent of the worker count") {
  auto sweep_with_threads = [](const char* threads) {
    setenv("POLYCURVE_THREADS", threads, 1);
    cli::RunConfig config;
    config.command = "sweep";
    config.params = {{"family", "single-freq"}, {"r", "3"}, {"a2", "1:4:12"},
                     {"n-eval", "64"}};
    std::string output;
    CHECK(run_quiet(config, &output) == cli::kExitOk);
    unsetenv("POLYCURVE_THREADS");
    return output;
  };
  CHECK(sweep_with_threads("1") == sweep_with_threads("4"));
}

TEST_CASE("minimize: full mode reports non-convergence under a tiny budget") {
  TempDir dir;
  cli::RunConfig config;
  config.command = "minimize";
  config.params = {{"r", "2"}, {"N", "32"}, {"mode", "full"}, {"max-iters", "5"},
                   {"seed", "3"}};
  config.output = dir.file("trace.json");
  CHECK(run_quiet(config) == cli::kExitNumerical);
  const auto trace = nlohmann::json::parse(io::read_file(dir.file("trace.json")));
  CHECK_FALSE(trace["converged"].get<bool>());
  // objective monotone over the recorded rows
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& row : trace["iterations"]) {
    CHECK(row["energy"].get<double>() <= previous + 1e-12);
    previous = row["energy"].get<double>();
  }
}

TEST_CASE("residual command handles sampled curves") {
  TempDir dir;
  const std::string path = dir.file("sampled.json");
  io::write_file(path, io::curve_to_json(sample(make_r_circle<double>(3), 128)));
  std::string output;
  cli::RunConfig config;
  config.command = "residual";
  config.inputs = {path};
  config.params = {{"kind", "intrinsic"}, {"r", "3"}};
  CHECK(run_quiet(config, &output) == cli::kExitOk);
  const auto report = nlohmann::json::parse(output);
  CHECK(report["kind"].get<std::string>() == "intrinsic_r");
  CHECK(report["max_norm"].get<double>() < 1e-5);
}
