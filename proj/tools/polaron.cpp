// polaron solve|verify|massbound --config <path> [--out <dir>]

#include "polaron/report.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Pekar polaron strong-coupling laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto add_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    return sub;
  };
  CLI::App* solve = add_command("solve", "solve the Pekar problem and write profiles");
  CLI::App* verify = add_command("verify", "run the identity checks and write verify.csv");
  CLI::App* massbound = add_command("massbound", "sweep the cutoff and write massbound.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : polaron::kConfigError;
  }

  polaron::RunConfig cfg;
  try {
    cfg = polaron::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
  } catch (const polaron::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return polaron::kConfigError;
  }

  if (solve->parsed()) return polaron::cmd_solve(cfg, std::cerr);
  if (verify->parsed()) return polaron::cmd_verify(cfg, std::cerr);
  if (massbound->parsed()) return polaron::cmd_massbound(cfg, std::cerr);
  return polaron::kConfigError;
}
