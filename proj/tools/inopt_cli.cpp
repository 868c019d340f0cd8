#include <string>
#include <vector>

#include "CLI11.hpp"
#include "inopt/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"inexact first-order solvers with per-iterate certification"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", out_path;
  std::vector<double> alphas;
  int parallel = 1;
  double theta_min = 1.1, theta_max = 5.0;
  int points = 40;
  std::string trace_path, constants_path;

  auto* run = app.add_subcommand("run", "execute one experiment from a config file");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_dir, "output directory");

  auto* sweep =
      app.add_subcommand("alpha-sweep", "re-run a base config across decay exponents");
  sweep->add_option("--config", config_path, "base config file path")->required();
  sweep->add_option("--alphas", alphas, "comma-separated exponents")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--parallel", parallel, "number of concurrent runs");

  auto* ctheta = app.add_subcommand("ctheta", "tabulate the decay-exponent threshold curve");
  ctheta->add_option("--min", theta_min, "left endpoint (> 1)");
  ctheta->add_option("--max", theta_max, "right endpoint");
  ctheta->add_option("--points", points, "grid size");
  ctheta->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "re-audit a stored trace");
  verify->add_option("--trace", trace_path, "trace CSV path")->required();
  verify->add_option("--constants", constants_path, "constants JSON path")->required();
  verify->add_option("--out", out_path, "report output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return inopt::cli::cmd_run(config_path, out_dir);
  if (sweep->parsed()) return inopt::cli::cmd_alpha_sweep(config_path, alphas, out_dir, parallel);
  if (ctheta->parsed()) return inopt::cli::cmd_ctheta(theta_min, theta_max, points, out_path);
  if (verify->parsed()) return inopt::cli::cmd_verify(trace_path, constants_path, out_path);
  return 2;
}
