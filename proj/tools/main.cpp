#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pathspace/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo verification of functional inequalities on path space "
      "over manifolds with boundary"};
  app.require_subcommand(1);

  pathspace::CliOptions opt;
  std::string factor2_str;
  std::vector<CLI::Option*> seed_opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON configuration file")
        ->required();
    cmd->add_option("--out", opt.out_dir, "output directory (default: .)");
    seed_opts.push_back(
        cmd->add_option("--seed", opt.seed, "override paths.base_seed"));
    cmd->add_option("--factor2", factor2_str,
                    "override the factor-2 entropy constant")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--paths", opt.paths_override,
                    "override paths.n_paths");
    cmd->add_option("--steps", opt.steps_override, "override grid.n_steps");
  };

  CLI::App* constants =
      app.add_subcommand("constants", "emit the constants table as CSV");
  CLI::App* verify =
      app.add_subcommand("verify", "run one verification scenario");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Cartesian parameter sweep, one CSV row per cell");
  CLI::App* dump =
      app.add_subcommand("dump-paths", "write sampled paths as CSV");
  for (CLI::App* cmd : {constants, verify, sweep, dump}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const CLI::Option* o : seed_opts)
    if (o->count() > 0) opt.has_seed = true;
  if (!factor2_str.empty())
    opt.factor2_override = factor2_str == "on" ? 1 : 0;

  try {
    if (constants->parsed()) return pathspace::run_constants(opt);
    if (verify->parsed()) return pathspace::run_verify(opt);
    if (sweep->parsed()) return pathspace::run_sweep(opt);
    return pathspace::run_dump_paths(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
