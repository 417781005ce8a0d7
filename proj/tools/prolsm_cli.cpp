#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prolsm/errors.hpp"
#include "prolsm/experiment.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Prolate-based linear sampling for the restricted Fourier operator"};
  std::string config_path, preset_name, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> reg;
  std::optional<double> alpha;
  std::optional<int> quad;
  std::vector<std::string> sets;
  bool list = false, serial = false;

  app.add_option("--config", config_path, "key=value config file, or a summary.json to replay")
      ->check(CLI::ExistingFile);
  app.add_option("--preset", preset_name, "named experiment (see --list-presets)");
  app.add_option("--out", out_dir, "output directory for scan.csv and summary.json");
  app.add_option("--seed", seed, "noise seed");
  app.add_option("--reg", reg, "regularization filter")->check(CLI::IsMember({"cutoff", "tikhonov"}));
  app.add_option("--alpha", alpha, "cutoff threshold relative to mu_0, or Tikhonov alpha");
  app.add_option("--quad", quad, "LGL quadrature nodes N_q");
  app.add_option("--set", sets, "override one config key (key=value), repeatable");
  app.add_flag("--list-presets", list, "print preset names and exit");
  app.add_flag("--serial", serial, "run the serial reference kernels");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto &name : prolsm::list_presets())
      std::cout << name << '\n';
    return 0;
  }

  try {
    prolsm::ExperimentConfig cfg;
    if (!preset_name.empty())
      cfg = prolsm::preset(preset_name);
    if (!config_path.empty())
      cfg = prolsm::load_config(config_path, cfg);
    for (const auto &kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw prolsm::InputError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed)
      cfg.seed = *seed;
    if (reg)
      cfg.set("reg", *reg);
    if (alpha)
      cfg.alpha = *alpha;
    if (quad)
      cfg.n_q = *quad;

    const auto run = prolsm::run_experiment(cfg, serial ? prolsm::Exec::Serial : prolsm::Exec::Parallel);
    prolsm::write_outputs(run, out_dir);
    std::fprintf(stderr, "%s: dim J = %d, %zu points, %.2f s -> %s\n", run.config.name.c_str(), run.dim,
                 run.scan.size(), run.wall_seconds, out_dir.c_str());
    return 0;
  } catch (const prolsm::InputError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const prolsm::NumericalError &e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}
