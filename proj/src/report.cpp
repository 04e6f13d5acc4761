#include "polaron/report.hpp"

#include "polaron/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace polaron {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- config

template <typename T>
T take(const json& v, const std::string& key);

template <>
int take<int>(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -(1LL << 30) || x > (1LL << 30)) throw ConfigError(key, "integer out of range");
  return static_cast<int>(x);
}

template <>
double take<double>(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

template <>
std::string take<std::string>(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

using Setter = std::function<void(RunConfig&, const json&)>;

template <typename T>
Setter setter(T RunConfig::*member, std::string key) {
  return [member, key](RunConfig& c, const json& v) { c.*member = take<T>(v, key); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n", setter(&RunConfig::grid_n, "grid.n")},
      {"grid.rmax", setter(&RunConfig::grid_rmax, "grid.rmax")},
      {"momentum.n", setter(&RunConfig::momentum_n, "momentum.n")},
      {"momentum.pmax", setter(&RunConfig::momentum_pmax, "momentum.pmax")},
      {"quad.reduced_n", setter(&RunConfig::quad_reduced_n, "quad.reduced_n")},
      {"quad.angular_nodes", setter(&RunConfig::quad_angular_nodes, "quad.angular_nodes")},
      {"solver.init", setter(&RunConfig::solver_init, "solver.init")},
      {"solver.mixing", setter(&RunConfig::solver_mixing, "solver.mixing")},
      {"solver.tol_energy", setter(&RunConfig::solver_tol_energy, "solver.tol_energy")},
      {"solver.tol_psi", setter(&RunConfig::solver_tol_psi, "solver.tol_psi")},
      {"solver.max_iter", setter(&RunConfig::solver_max_iter, "solver.max_iter")},
      {"oracle.step", setter(&RunConfig::oracle_step, "oracle.step")},
      {"cutoff.shape", setter(&RunConfig::cutoff_shape, "cutoff.shape")},
      {"cutoff.support_radius", setter(&RunConfig::cutoff_support_radius, "cutoff.support_radius")},
      {"cutoff.eps_list",
       [](RunConfig& c, const json& v) {
         if (!v.is_array()) throw ConfigError("cutoff.eps_list", "expected an array of numbers");
         c.cutoff_eps_list.clear();
         for (const auto& e : v) c.cutoff_eps_list.push_back(take<double>(e, "cutoff.eps_list"));
       }},
      {"output.dir", setter(&RunConfig::output_dir, "output.dir")},
  };
  return table;
}

// ---------------------------------------------------------------- artifacts

struct Pipeline {
  PekarState state;
  MomentumProfile profile;
};

Pipeline run_pipeline(const RunConfig& cfg, std::ostream& log) {
  PekarState state = solve_pekar(cfg.solver_options());
  log << "solve: " << state.iterations << " iterations, eP = " << format_real(state.eP) << "\n";
  MomentumProfile mp = momentum_profile(state, build_grid(cfg.momentum_n, cfg.momentum_pmax));
  return {std::move(state), std::move(mp)};
}

// The output location is not part of a run's identity.
json artifact_config(const RunConfig& cfg) {
  json j = to_json(cfg);
  j.erase("output.dir");
  return j;
}

std::string csv_header(const RunConfig& cfg, const std::string& title, const std::string& data) {
  const std::string config = artifact_config(cfg).dump();
  std::ostringstream out;
  out << "# " << title << "\n";
  out << "# config=" << config << "\n";
  out << "# config_hash=" << content_hash(config) << "\n";
  out << "# content_hash=" << content_hash(data) << "\n";
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::filesystem::path prepare_output(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("output.dir", "cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_history(const std::filesystem::path& dir, const ConvergenceFailure& e) {
  std::ostringstream data;
  data << "iteration,energy,psi_change\n";
  for (std::size_t i = 0; i < e.energies.size(); ++i) {
    data << i << "," << format_real(e.energies[i]) << ","
         << (i >= 1 && i - 1 < e.psi_changes.size() ? format_real(e.psi_changes[i - 1]) : std::string("nan"))
         << "\n";
  }
  write_file(dir / "residual_history.csv", data.str());
}

// Runs `body`, mapping failures onto the exit-code contract.
int guarded(const RunConfig& cfg, std::ostream& log, const std::function<int(const std::filesystem::path&)>& body) {
  std::filesystem::path dir;
  try {
    validate(cfg);
    dir = prepare_output(cfg);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  try {
    return body(dir);
  } catch (const ConvergenceFailure& e) {
    log << "numerical failure: " << e.what() << "\n";
    write_history(dir, e);
    return kNumericalFailure;
  } catch (const NumericalFailure& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DomainFailure& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const StepSizeFailure& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvalidArgument& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

VerifyRow relative_row(std::string name, double computed, double reference, double rel_tol) {
  const double ratio = computed / reference;
  return {std::move(name), ratio, 1.0, rel_tol, std::abs(ratio - 1.0) <= rel_tol};
}

VerifyRow absolute_row(std::string name, double computed, double expected, double tol) {
  return {std::move(name), computed, expected, tol, std::abs(computed - expected) <= tol};
}

}  // namespace

// ---------------------------------------------------------------- RunConfig

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.n = grid_n;
  o.rmax = grid_rmax;
  o.init = solver_init == "gaussian" ? InitialProfile::gaussian : InitialProfile::hydrogenic;
  o.mixing = solver_mixing;
  o.tol_energy = solver_tol_energy;
  o.tol_psi = solver_tol_psi;
  o.max_iter = solver_max_iter;
  return o;
}

QuadratureSettings RunConfig::quadrature() const { return {quad_reduced_n, quad_angular_nodes}; }

CutoffSpec RunConfig::cutoff(double eps) const {
  CutoffSpec c;
  c.eps = eps;
  c.support_radius = cutoff_support_radius;
  c.shape = cutoff_shape == "gaussian" ? CutoffShape::gaussian
            : cutoff_shape == "one"    ? CutoffShape::one
                                       : CutoffShape::bump;
  return c;
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown configuration key");
    it->second(cfg, value);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const char* field, const char* message) {
    if (!ok) throw ConfigError(field, message);
  };
  require(c.grid_n >= 4, "grid.n", "must be an integer >= 4");
  require(c.grid_rmax > 0.0 && std::isfinite(c.grid_rmax), "grid.rmax", "must be positive");
  require(c.momentum_n >= 4, "momentum.n", "must be an integer >= 4");
  require(c.momentum_pmax > 0.0 && std::isfinite(c.momentum_pmax), "momentum.pmax", "must be positive");
  require(c.quad_reduced_n >= 3, "quad.reduced_n", "must be an integer >= 3");
  require(c.quad_angular_nodes >= 2, "quad.angular_nodes", "must be an integer >= 2");
  require(c.solver_init == "hydrogenic" || c.solver_init == "gaussian", "solver.init",
          "must be \"hydrogenic\" or \"gaussian\"");
  require(c.solver_mixing > 0.0 && c.solver_mixing <= 1.0, "solver.mixing", "must lie in (0, 1]");
  require(c.solver_tol_energy > 0.0, "solver.tol_energy", "must be positive");
  require(c.solver_tol_psi > 0.0, "solver.tol_psi", "must be positive");
  require(c.solver_max_iter >= 1, "solver.max_iter", "must be a positive integer");
  require(c.oracle_step > 0.0, "oracle.step", "must be positive");
  require(c.cutoff_shape == "bump" || c.cutoff_shape == "gaussian" || c.cutoff_shape == "one",
          "cutoff.shape", "must be \"bump\", \"gaussian\" or \"one\"");
  require(c.cutoff_support_radius > 0.0, "cutoff.support_radius", "must be positive");
  require(!c.cutoff_eps_list.empty(), "cutoff.eps_list", "must not be empty");
  for (std::size_t i = 0; i < c.cutoff_eps_list.size(); ++i) {
    require(c.cutoff_eps_list[i] > 0.0 && std::isfinite(c.cutoff_eps_list[i]), "cutoff.eps_list",
            "entries must be positive");
    if (i > 0) {
      require(c.cutoff_eps_list[i] < c.cutoff_eps_list[i - 1], "cutoff.eps_list", "must be strictly decreasing");
    }
  }
  require(!c.output_dir.empty(), "output.dir", "must not be empty");
}

json to_json(const RunConfig& c) {
  json j;
  j["grid.n"] = c.grid_n;
  j["grid.rmax"] = c.grid_rmax;
  j["momentum.n"] = c.momentum_n;
  j["momentum.pmax"] = c.momentum_pmax;
  j["quad.reduced_n"] = c.quad_reduced_n;
  j["quad.angular_nodes"] = c.quad_angular_nodes;
  j["solver.init"] = c.solver_init;
  j["solver.mixing"] = c.solver_mixing;
  j["solver.tol_energy"] = c.solver_tol_energy;
  j["solver.tol_psi"] = c.solver_tol_psi;
  j["solver.max_iter"] = c.solver_max_iter;
  j["oracle.step"] = c.oracle_step;
  j["cutoff.shape"] = c.cutoff_shape;
  j["cutoff.support_radius"] = c.cutoff_support_radius;
  j["cutoff.eps_list"] = c.cutoff_eps_list;
  j["output.dir"] = c.output_dir;
  return j;
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- commands

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  return guarded(cfg, log, [&](const std::filesystem::path& dir) {
    const Pipeline run = run_pipeline(cfg, log);
    const PekarState& s = run.state;
    const MomentumProfile& mp = run.profile;
    const double el_momentum = el_residual_momentum(mp, cfg.quadrature());

    json doc;
    doc["schema"] = "polaron.pekar_state/1";
    doc["config"] = artifact_config(cfg);
    doc["config_hash"] = content_hash(doc["config"].dump());
    doc["energies"] = {{"T", s.T}, {"D", s.D}, {"eP", s.eP}, {"mu", s.mu}};
    doc["iterations"] = s.iterations;
    doc["residuals"] = {{"el_position", s.residual}, {"el_momentum", el_momentum}};
    doc["mass_coeff"] = mp.mass_coeff;
    doc["grid"] = {{"n", cfg.grid_n}, {"rmax", cfg.grid_rmax}, {"h", s.psi.grid().spacing()}};
    doc["momentum_grid"] = {{"n", cfg.momentum_n}, {"pmax", cfg.momentum_pmax}, {"h", mp.pgrid->spacing()}};
    doc["content_hash"] = content_hash(doc.dump());
    write_file(dir / "pekar_state.json", doc.dump(2) + "\n");

    const RadialFunction phi = coulomb_potential(s.rho);
    std::ostringstream data;
    data << "# table=position\n";
    data << "r,psi,rho,Phi\n";
    for (int i = 0; i < s.psi.size(); ++i) {
      data << format_real(s.psi.grid().node(i)) << "," << format_real(s.psi[i]) << "," << format_real(s.rho[i])
           << "," << format_real(phi[i]) << "\n";
    }
    data << "\n# table=momentum\n";
    data << "p,psi_hat,dpsi_hat,phi\n";
    for (int j = 0; j < mp.psi_hat.size(); ++j) {
      data << format_real(mp.pgrid->node(j)) << "," << format_real(mp.psi_hat[j]) << ","
           << format_real(mp.dpsi_hat[j]) << "," << format_real(mp.phi[j]) << "\n";
    }
    write_file(dir / "profiles.csv", csv_header(cfg, "polaron profiles", data.str()) + data.str());
    log << "wrote " << (dir / "pekar_state.json").string() << " and " << (dir / "profiles.csv").string() << "\n";
    return static_cast<int>(kSuccess);
  });
}

std::vector<VerifyRow> verification_rows(const RunConfig& cfg, std::ostream& log) {
  std::vector<VerifyRow> rows;
  const SolverOptions opts = cfg.solver_options();
  const PekarState s = solve_pekar(opts);
  log << "verify: SCF eP = " << format_real(s.eP) << "\n";

  rows.push_back(relative_row("virial D=2T", s.D, 2.0 * s.T, 1e-4));
  rows.push_back(relative_row("virial eP=-T", s.eP, -s.T, 1e-4));
  rows.push_back(relative_row("virial mu=3T", s.mu, 3.0 * s.T, 1e-4));
  rows.push_back(absolute_row("el_residual_position", el_residual_position(s), 0.0, 1e-6));
  try {
    const PekarState oracle = imaginary_time_oracle(opts, cfg.oracle_step);
    rows.push_back(relative_row("eP scf/imaginary_time", s.eP, oracle.eP, 1e-4));
  } catch (const std::runtime_error& e) {
    log << "verify: imaginary-time oracle failed: " << e.what() << "\n";
    rows.push_back({"eP scf/imaginary_time", std::nan(""), 1.0, 1e-4, false});
  }

  std::optional<MomentumProfile> profile;
  try {
    profile = momentum_profile(s, build_grid(cfg.momentum_n, cfg.momentum_pmax));
  } catch (const DomainFailure& e) {
    log << "verify: " << e.what() << "\n";
    rows.push_back({"psi_hat positive", 0.0, 1.0, 0.0, false});
    return rows;
  }
  const MomentumProfile& mp = *profile;

  const QuadratureSettings quad = cfg.quadrature();
  const auto one = RadialTestFunction::constant(1.0);
  rows.push_back(absolute_row("plancherel", momentum_norm(mp), 1.0, 1e-5));
  rows.push_back(relative_row("field_energy int(phi^2)=D", field_norm(mp), s.D, 1e-4));
  rows.push_back(absolute_row("el_residual_momentum", el_residual_momentum(mp, quad), 0.0, 1e-3));
  rows.push_back(absolute_row("lemma1 density g=1", lemma1_density_expectation(mp, one), 1.0, 1e-5));
  rows.push_back(relative_row("lemma1 number g=1", lemma1_number_expectation(mp, one), s.D, 1e-4));

  const RadialTestFunction xi{[](double k) { return std::exp(-k * k); }, true};
  const RadialFunction rho_hat = fourier_density(s.rho, mp.pgrid);
  Vector reduction(mp.pgrid->size());
  for (int j = 0; j < reduction.size(); ++j) {
    const double k = mp.pgrid->node(j);
    reduction[j] = k * k * mp.phi[j] * xi(k) * rho_hat[j];
  }
  const double cross_oracle = 4.0 * std::numbers::pi * integrate_1d(*mp.pgrid, reduction);
  rows.push_back(relative_row("lemma1 cross g=1", lemma1_cross(mp, xi, one, quad), cross_oracle, 1e-3));

  const CutoffSpec identity = CutoffSpec::identity();
  const double R = pairing_term(mp, identity);
  const double Q1 = kinetic_term(mp, identity);
  const double Q2 = potential_term(mp, identity, quad);
  rows.push_back(absolute_row("R=-3/2", R, -1.5, 1e-3));
  const double eps_min = cfg.cutoff_eps_list.back();
  rows.push_back(absolute_row("R(eps_min)=-3/2", pairing_term(mp, cfg.cutoff(eps_min)), -1.5, 1e-2));
  rows.push_back(absolute_row("Q1-Q2=3", Q1 - Q2, 3.0, 1e-2));

  const RadialGrid& g = s.psi.grid();
  const Vector r4 = g.nodes().array().pow(4);
  const RadialFunction dpsi = radial_derivative(s.psi);
  const double q1_oracle = 4.0 * std::numbers::pi *
                           (integrate_1d(g, dpsi.values().cwiseAbs2().cwiseProduct(r4)) +
                            s.mu * integrate_1d(g, s.rho.values().cwiseProduct(r4)));
  const double q2_oracle = 2.0 * coulomb_bilinear(s.rho, s.rho.times_power(2));
  rows.push_back(relative_row("Q1 parseval", Q1, q1_oracle, 1e-2));
  rows.push_back(relative_row("Q2 parseval", Q2, q2_oracle, 1e-2));
  rows.push_back(absolute_row("f endpoint=0", 1.0 + (Q1 - Q2) / 3.0 + 4.0 * R / 3.0, 0.0, 2e-2));
  return rows;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  return guarded(cfg, log, [&](const std::filesystem::path& dir) {
    const std::vector<VerifyRow> rows = verification_rows(cfg, log);
    std::ostringstream data;
    data << "check_name,computed,expected,tolerance,pass\n";
    bool all = true;
    for (const auto& r : rows) {
      data << r.name << "," << format_real(r.computed) << "," << format_real(r.expected) << ","
           << format_real(r.tolerance) << "," << (r.pass ? "true" : "false") << "\n";
      log << (r.pass ? "PASS " : "FAIL ") << r.name << "  computed=" << format_real(r.computed)
          << " expected=" << format_real(r.expected) << " tol=" << format_real(r.tolerance) << "\n";
      all = all && r.pass;
    }
    write_file(dir / "verify.csv", csv_header(cfg, "polaron verify", data.str()) + data.str());
    return static_cast<int>(all ? kSuccess : kVerifyFailed);
  });
}

int cmd_massbound(const RunConfig& cfg, std::ostream& log) {
  return guarded(cfg, log, [&](const std::filesystem::path& dir) {
    const Pipeline run = run_pipeline(cfg, log);
    const QuadratureSettings quad = cfg.quadrature();
    std::ostringstream data;
    data << "eps,R,Q1,Q2,f,m_lower\n";
    auto emit = [&](const MassBoundReport& rep) {
      data << format_real(rep.eps) << "," << format_real(rep.R) << "," << format_real(rep.Q1) << ","
           << format_real(rep.Q2) << "," << format_real(rep.f) << "," << format_real(rep.m_lower) << "\n";
      log << "eps=" << format_real(rep.eps) << " f=" << format_real(rep.f) << "\n";
    };
    std::vector<CutoffSpec> cuts;
    for (double eps : cfg.cutoff_eps_list) cuts.push_back(cfg.cutoff(eps));
    for (const MassBoundReport& rep : bound_sweep(run.profile, cuts, quad)) emit(rep);
    write_file(dir / "massbound.csv", csv_header(cfg, "polaron massbound", data.str()) + data.str());
    return static_cast<int>(kSuccess);
  });
}

}  // namespace polaron
