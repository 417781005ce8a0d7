#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "prolsm/contrast.hpp"
#include "prolsm/forward.hpp"
#include "prolsm/inverse.hpp"
#include "prolsm/pswf.hpp"

namespace prolsm {

inline constexpr const char *kVersion = "1.0.0";

// Noiseless index-set floor on |lambda_n|: below it the prolate eigenvalues
// are no longer resolved in double precision.
inline constexpr double kLambdaFloor = 3e-17;

enum class RunMode { Standard, SignChanging };

struct ExperimentConfig {
  std::string name = "custom";
  double c = 20.0;
  int n_max = 0;      // PSWFs 0..n_max; 0 selects ceil(2c/pi) + 40
  int n_t = 0;        // 0 selects 2 n_max + 30
  int n_q = 100;
  double eps = 0.05;
  double delta = 0.0;
  std::uint64_t seed = 0;

  ProfileKind profile = ProfileKind::Constant;
  double r = 0.66;
  int m = 4;
  double gap = 0.0;
  std::vector<Piece> pieces; // Piecewise only

  double z_start = -0.88;
  double z_stop = 0.88;
  int z_count = 89;

  FilterKind reg = FilterKind::SpectralCutoff;
  double alpha = 0.0;
  // Index set {0..dim-1} keeps |lambda_n| > max(delta, lambda_floor);
  // dim > 0 overrides the rule.
  double lambda_floor = kLambdaFloor;
  int dim = 0;
  int fm_terms = 0;

  RunMode mode = RunMode::Standard;
  double q_inf = 0.0;
  double background_radius = 0.0;

  // Fills the derived defaults (n_max, n_t).
  ExperimentConfig resolved() const;
  // Throws InputError naming the violated invariant.
  void validate() const;
  ContrastProfile make_profile() const;
  std::vector<double> z_grid() const;

  // Applies one key=value assignment; unknown keys throw.
  void set(const std::string &key, const std::string &value);
  std::map<std::string, std::string> to_map() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json &j);
};

// Flat "key = value" text; '#' starts a comment. A JSON document (such as a
// run summary with a "config" object) is accepted too.
ExperimentConfig parse_config(const std::string &text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path &path, ExperimentConfig base = {});

std::vector<std::string> list_presets();
ExperimentConfig preset(const std::string &name);

struct RunResult {
  ExperimentConfig config; // resolved
  PswfBasis basis;
  int dim = 0;
  bool j_saturated = false;
  DataMatrix data;                  // A or A_tilde (noisy when delta > 0)
  std::optional<DataMatrix> background;
  ScanResult scan;
  double wall_seconds = 0.0;
};

int select_index_set(const PswfBasis &basis, double floor);

RunResult run_experiment(const ExperimentConfig &config, Exec exec = Exec::Parallel);

std::string scan_csv(const ScanResult &scan);
nlohmann::json run_summary(const RunResult &run);
// Writes scan.csv and summary.json into dir (created if missing).
void write_outputs(const RunResult &run, const std::filesystem::path &dir);

} // namespace prolsm
