#pragma once

// Batch front end: JSON run configuration, the solve -> observables ->
// mass-bound pipeline, and the CSV/JSON artifacts it writes.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numerical failure.

#include "polaron/mass_bound.hpp"
#include "polaron/pekar.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace polaron {

enum ExitCode : int { kSuccess = 0, kVerifyFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field(std::move(field)) {}
  std::string field;
};

struct RunConfig {
  int grid_n = 3000;
  double grid_rmax = 30.0;
  int momentum_n = 2000;
  double momentum_pmax = 2.0;
  int quad_reduced_n = 400;
  int quad_angular_nodes = 64;
  std::string solver_init = "hydrogenic";
  double solver_mixing = 0.5;
  double solver_tol_energy = 1e-10;
  double solver_tol_psi = 1e-8;
  int solver_max_iter = 500;
  double oracle_step = 1e-3;
  std::string cutoff_shape = "bump";
  double cutoff_support_radius = 1.0;
  std::vector<double> cutoff_eps_list{0.5, 0.2, 0.1, 0.05};
  std::string output_dir = ".";

  SolverOptions solver_options() const;
  QuadratureSettings quadrature() const;
  CutoffSpec cutoff(double eps) const;
};

/// Parses a flat JSON object with dotted keys ("grid.n", ...). Missing keys
/// keep their defaults; unknown keys, wrong types and invalid values throw
/// ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
void validate(const RunConfig& cfg);

/// Fully resolved configuration as a flat JSON object.
nlohmann::json to_json(const RunConfig& cfg);

/// 64-bit FNV-1a of a byte string, rendered as 16 hex digits.
std::string content_hash(const std::string& bytes);

/// Shortest text that round-trips a double; "inf"/"-inf"/"nan" otherwise.
std::string format_real(double x);

struct VerifyRow {
  std::string name;
  double computed;
  double expected;
  double tolerance;  // absolute, on |computed - expected|
  bool pass;
};

int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_massbound(const RunConfig& cfg, std::ostream& log);

/// Identity checks behind cmd_verify, without touching the filesystem.
std::vector<VerifyRow> verification_rows(const RunConfig& cfg, std::ostream& log);

}  // namespace polaron
