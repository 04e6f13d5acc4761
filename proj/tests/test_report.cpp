#include "fixtures.hpp"
#include "polaron/report.hpp"

#include <doctest.h>

#include <unistd.h>

#include <fstream>
#include <sstream>

using namespace polaron;
namespace fs = std::filesystem;

namespace {

// A resolution that keeps the end-to-end tests fast while every
// verification row still passes.
RunConfig quick_config(const fs::path& out) {
  RunConfig c;
  c.grid_n = 1500;
  c.momentum_n = 1000;
  c.quad_reduced_n = 200;
  c.quad_angular_nodes = 32;
  c.oracle_step = 1e-2;
  c.output_dir = out.string();
  return c;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("polaron_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error_field(const nlohmann::json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field;
  }
  return "";
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("defaults and round trip") {
  const RunConfig d = parse_config(nlohmann::json::object());
  CHECK(d.grid_n == 3000);
  CHECK(d.cutoff_eps_list == std::vector<double>{0.5, 0.2, 0.1, 0.05});
  const RunConfig back = parse_config(to_json(d));
  CHECK(to_json(back) == to_json(d));

  const RunConfig c = parse_config({{"grid.n", 1200}, {"cutoff.shape", "gaussian"}, {"cutoff.eps_list", {0.3, 0.1}}});
  CHECK(c.grid_n == 1200);
  CHECK(c.cutoff(0.1).shape == CutoffShape::gaussian);
  CHECK(c.solver_options().n == 1200);
}

TEST_CASE("config errors name the field") {
  CHECK(config_error_field({{"grid.n", 0}}) == "grid.n");
  CHECK(config_error_field({{"grid.n", 2.5}}) == "grid.n");
  CHECK(config_error_field({{"grid.n", "many"}}) == "grid.n");
  CHECK(config_error_field({{"grid.rmax", -1.0}}) == "grid.rmax");
  CHECK(config_error_field({{"momentum.pmax", 0}}) == "momentum.pmax");
  CHECK(config_error_field({{"solver.mixing", 0.0}}) == "solver.mixing");
  CHECK(config_error_field({{"solver.init", "random"}}) == "solver.init");
  CHECK(config_error_field({{"solver.max_iter", 0}}) == "solver.max_iter");
  CHECK(config_error_field({{"cutoff.shape", "box"}}) == "cutoff.shape");
  CHECK(config_error_field({{"cutoff.eps_list", {0.1, 0.2}}}) == "cutoff.eps_list");
  CHECK(config_error_field({{"cutoff.eps_list", {0.1, -0.2}}}) == "cutoff.eps_list");
  CHECK(config_error_field({{"cutoff.eps_list", nlohmann::json::array()}}) == "cutoff.eps_list");
  CHECK(config_error_field({{"cutoff.eps_list", 0.1}}) == "cutoff.eps_list");
  CHECK(config_error_field({{"quad.angular_nodes", 1}}) == "quad.angular_nodes");
  CHECK(config_error_field({{"grid", {{"n", 10}}}}) == "grid");
  CHECK(config_error_field(nlohmann::json::array()) == "<root>");
}

TEST_CASE("load_config reports unreadable and malformed files") {
  const fs::path dir = scratch_dir("load");
  fs::create_directories(dir);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
  std::ofstream(dir / "good.json") << R"({"grid.n": 100})";
  CHECK(load_config(dir / "good.json").grid_n == 100);
  fs::remove_all(dir);
}

TEST_CASE("content hash is FNV-1a 64") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("foobar") == "85944171f73967e8");
}

TEST_CASE("format_real round trips") {
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = fixtures::uniform(-1.0, 1.0) * std::pow(10.0, fixtures::uniform(-300.0, 300.0));
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(0.1) == "0.1");
}

TEST_CASE("solve writes deterministic artifacts") {
  const fs::path a = scratch_dir("solve_a");
  const fs::path b = scratch_dir("solve_b");
  std::ostringstream log;
  REQUIRE(cmd_solve(quick_config(a), log) == kSuccess);
  REQUIRE(cmd_solve(quick_config(b), log) == kSuccess);
  for (const char* name : {"pekar_state.json", "profiles.csv"}) {
    REQUIRE(fs::exists(a / name));
    CHECK(slurp(a / name) == slurp(b / name));
  }

  const auto doc = nlohmann::json::parse(slurp(a / "pekar_state.json"));
  CHECK(doc.at("schema") == "polaron.pekar_state/1");
  for (const char* key : {"T", "D", "eP", "mu"}) CHECK(doc.at("energies").at(key).is_number());
  CHECK(doc.at("iterations").get<int>() > 0);
  CHECK(doc.at("residuals").at("el_position").get<double>() <= 1e-6);
  CHECK(doc.at("residuals").at("el_momentum").get<double>() <= 1e-3);
  CHECK(doc.at("config").at("grid.n") == 1500);
  CHECK(doc.at("config_hash") == content_hash(doc.at("config").dump()));
  auto unhashed = doc;
  unhashed.erase("content_hash");
  CHECK(doc.at("content_hash") == content_hash(unhashed.dump()));

  const std::string csv = slurp(a / "profiles.csv");
  CHECK(csv.find("r,psi,rho,Phi\n") != std::string::npos);
  CHECK(csv.find("p,psi_hat,dpsi_hat,phi\n") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("solve: invalid configuration and non-convergence") {
  const fs::path dir = scratch_dir("solve_fail");
  std::ostringstream log;
  RunConfig bad = quick_config(dir);
  bad.grid_n = 0;
  CHECK(cmd_solve(bad, log) == kConfigError);
  CHECK(log.str().find("grid.n") != std::string::npos);

  RunConfig stuck = quick_config(dir);
  stuck.solver_max_iter = 2;
  CHECK(cmd_solve(stuck, log) == kNumericalFailure);
  CHECK(fs::exists(dir / "residual_history.csv"));
  CHECK(!fs::exists(dir / "pekar_state.json"));
  fs::remove_all(dir);
}

TEST_CASE("verify passes at a moderate resolution") {
  std::ostringstream log;
  const auto rows = verification_rows(quick_config("."), log);
  CHECK(rows.size() >= 15);
  for (const auto& r : rows) {
    INFO(r.name << " computed=" << r.computed << " expected=" << r.expected);
    CHECK(r.pass);
    CHECK(r.pass == (std::abs(r.computed - r.expected) <= r.tolerance));
  }
}

TEST_CASE("verify fails on a coarse grid") {
  const fs::path dir = scratch_dir("verify_coarse");
  RunConfig c = quick_config(dir);
  c.grid_n = 100;
  std::ostringstream log;
  CHECK(cmd_verify(c, log) == kVerifyFailed);
  const std::string table = slurp(dir / "verify.csv");
  CHECK(table.find("check_name,computed,expected,tolerance,pass\n") != std::string::npos);
  CHECK(table.find(",false\n") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("massbound sweep") {
  const fs::path a = scratch_dir("mb_a");
  const fs::path b = scratch_dir("mb_b");
  std::ostringstream log;
  REQUIRE(cmd_massbound(quick_config(a), log) == kSuccess);
  REQUIRE(cmd_massbound(quick_config(b), log) == kSuccess);
  const std::string text = slurp(a / "massbound.csv");
  CHECK(text == slurp(b / "massbound.csv"));

  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("eps,", 0) == 0) continue;
    std::vector<double> cols;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 6);
    rows.push_back(cols);
  }
  REQUIRE(rows.size() == 5);
  CHECK(rows.back()[0] == 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(rows[i][4]) < std::abs(rows[i - 1][4]));
  fs::remove_all(a);
  fs::remove_all(b);
}

}  // TEST_SUITE
