#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "prolsm/errors.hpp"
#include "prolsm/experiment.hpp"

namespace prolsm {

namespace {

ExperimentConfig base(const std::string &name, double c, double eps, double delta) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.c = c;
  cfg.eps = eps;
  cfg.delta = delta;
  cfg.profile = ProfileKind::Constant;
  cfg.r = 0.66;
  cfg.m = 4;
  return cfg.resolved();
}

const std::map<std::string, std::function<ExperimentConfig()>> &registry() {
  static const auto table = [] {
    std::map<std::string, std::function<ExperimentConfig()>> t;
    t["fig2_c20"] = [] { return base("fig2_c20", 20.0, 0.05, 0.0); };
    t["fig2_c40"] = [] { return base("fig2_c40", 40.0, 0.05, 0.0); };
    t["fig3_noisy_c20"] = [] { return base("fig3_noisy_c20", 20.0, 0.05, 0.05); };
    for (int c : {3, 5, 7, 10})
      for (bool noisy : {false, true}) {
        const std::string name = "fig4_c" + std::to_string(c) + (noisy ? "_noisy" : "_clean");
        t[name] = [=] { return base(name, c, 0.1, noisy ? 0.05 : 0.0); };
      }
    t["fig5_sign"] = [] {
      auto cfg = base("fig5_sign", 40.0, 0.05, 0.0);
      cfg.profile = ProfileKind::Piecewise;
      cfg.pieces = {{-0.6, 0.6, 0.0, 0.0, 0.5, 2.0 * std::numbers::pi / 0.6}};
      cfg.r = 0.6;
      cfg.mode = RunMode::SignChanging;
      cfg.q_inf = 1.0;
      cfg.background_radius = 0.8;
      return cfg;
    };
    for (const char *gap : {"1.16", "0.08", "0.06", "0.04", "0.02", "0.01"}) {
      const std::string name = std::string("fig6_gap_") + gap;
      const double g = std::stod(gap);
      t[name] = [=] {
        auto cfg = base(name, 100.0, 0.05, 0.0);
        cfg.profile = ProfileKind::TwoComponent;
        cfg.gap = g;
        cfg.n_q = 240;
        return cfg;
      };
    }
    return t;
  }();
  return table;
}

} // namespace

std::vector<std::string> list_presets() {
  std::vector<std::string> names;
  for (const auto &[name, make] : registry())
    names.push_back(name);
  return names;
}

ExperimentConfig preset(const std::string &name) {
  const auto &t = registry();
  const auto it = t.find(name);
  if (it == t.end())
    throw InputError("unknown preset '" + name + "' (see --list-presets)");
  return it->second();
}

} // namespace prolsm
