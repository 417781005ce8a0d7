#include "prolsm/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "prolsm/errors.hpp"

namespace prolsm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw InputError("config: '" + key + "' expects a number, got '" + v + "'");
  return x;
}

long long parse_int(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw InputError("config: '" + key + "' expects an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_seed(const std::string &v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    if (!v.empty() && v[0] != '-')
      x = std::stoull(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw InputError("config: 'seed' expects a non-negative integer, got '" + v + "'");
  return x;
}

std::vector<Piece> parse_pieces(const std::string &v) {
  std::vector<Piece> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty())
      continue;
    std::vector<double> f;
    std::stringstream fs(item);
    std::string cell;
    while (std::getline(fs, cell, ':'))
      f.push_back(parse_double("pieces", trim(cell)));
    if (f.size() < 3 || f.size() > 6)
      throw InputError("config: piece '" + item + "' needs lo:hi:a0[:a1[:a2[:k]]]");
    f.resize(6, 0.0);
    out.push_back({f[0], f[1], f[2], f[3], f[4], f[5]});
  }
  return out;
}

std::string format_pieces(const std::vector<Piece> &pieces) {
  std::string out;
  for (const auto &p : pieces) {
    if (!out.empty())
      out += ';';
    out += fmt(p.lo) + ':' + fmt(p.hi) + ':' + fmt(p.a0) + ':' + fmt(p.a1) + ':' + fmt(p.a2) + ':' + fmt(p.k);
  }
  return out;
}

std::string reciprocal_cell(const Reciprocal &r) { return r.infinite ? "inf" : fmt(r.value); }

} // namespace

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig out = *this;
  if (out.n_max <= 0)
    out.n_max = static_cast<int>(std::ceil(2.0 * c / std::numbers::pi)) + 40;
  if (out.n_t <= 0)
    out.n_t = 2 * out.n_max + 30;
  return out;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string &msg) { throw InputError("invalid config: " + msg); };
  if (!(c > 0.0))
    fail("bandwidth c must be positive");
  if (n_max < 0)
    fail("N must be non-negative");
  if (n_t < 2 * n_max + 30)
    fail("N_t >= 2N+30 violated (N_t=" + std::to_string(n_t) + ", N=" + std::to_string(n_max) + ")");
  if (n_q < 2)
    fail("N_q >= 2 violated");
  if (!(eps > 0.0))
    fail("eps must be positive");
  if (!(delta >= 0.0))
    fail("delta >= 0 violated");
  if (z_count < 0)
    fail("z_count must be non-negative");
  if (z_count > 0) {
    if (z_count > 1 && !(z_start <= z_stop))
      fail("z_start <= z_stop violated");
    if (!(z_start - eps > -1.0 && z_stop + eps < 1.0))
      fail("z grid +- eps must stay inside (-1, 1)");
  }
  if (profile == ProfileKind::Piecewise) {
    if (pieces.empty())
      fail("piecewise profile needs at least one piece");
  } else if (!(r > 0.0 && r < 1.0)) {
    fail("support radius r must lie in (0, 1)");
  }
  if (profile == ProfileKind::Oscillatory && m < 0)
    fail("oscillation count m must be non-negative");
  if (profile == ProfileKind::TwoComponent && !(gap >= 0.0 && gap < 2.0 * r))
    fail("two_component gap must lie in [0, 2r)");
  if (reg == FilterKind::Tikhonov && !(alpha > 0.0))
    fail("Tikhonov regularization needs alpha > 0");
  if (!(alpha >= 0.0))
    fail("alpha must be non-negative");
  if (!(lambda_floor >= 0.0))
    fail("lambda_floor must be non-negative");
  if (dim < 0 || dim > n_max + 1)
    fail("dim must lie in 0..N+1");
  if (fm_terms < 0)
    fail("fm_terms must be non-negative");
  if (mode == RunMode::SignChanging) {
    if (!(q_inf > 0.0))
      fail("sign_changing mode needs q_inf > 0");
    if (!(background_radius > 0.0 && background_radius < 1.0))
      fail("sign_changing mode needs D_radius in (0, 1)");
  }
}

ContrastProfile ExperimentConfig::make_profile() const {
  switch (profile) {
  case ProfileKind::Constant: return ContrastProfile::constant(r);
  case ProfileKind::IncDec: return ContrastProfile::inc_dec(r);
  case ProfileKind::DecInc: return ContrastProfile::dec_inc(r);
  case ProfileKind::Oscillatory: return ContrastProfile::oscillatory(r, m);
  case ProfileKind::TwoComponent: return ContrastProfile::two_component(r, gap);
  case ProfileKind::Piecewise: return ContrastProfile::piecewise(pieces);
  }
  throw InputError("unknown profile kind");
}

std::vector<double> ExperimentConfig::z_grid() const {
  std::vector<double> zs(z_count);
  for (int i = 0; i < z_count; ++i)
    zs[i] = z_count == 1 ? z_start : z_start + (z_stop - z_start) * i / (z_count - 1);
  return zs;
}

void ExperimentConfig::set(const std::string &key_in, const std::string &value_in) {
  const std::string key = trim(key_in), v = trim(value_in);
  auto as_int = [&] { return static_cast<int>(parse_int(key, v)); };
  if (key == "name")
    name = v;
  else if (key == "c")
    c = parse_double(key, v);
  else if (key == "N")
    n_max = as_int();
  else if (key == "N_t")
    n_t = as_int();
  else if (key == "N_q")
    n_q = as_int();
  else if (key == "eps")
    eps = parse_double(key, v);
  else if (key == "delta")
    delta = parse_double(key, v);
  else if (key == "seed")
    seed = parse_seed(v);
  else if (key == "profile")
    profile = profile_kind_from_string(v);
  else if (key == "r")
    r = parse_double(key, v);
  else if (key == "m")
    m = as_int();
  else if (key == "gap")
    gap = parse_double(key, v);
  else if (key == "pieces")
    pieces = parse_pieces(v);
  else if (key == "z_start")
    z_start = parse_double(key, v);
  else if (key == "z_stop")
    z_stop = parse_double(key, v);
  else if (key == "z_count")
    z_count = as_int();
  else if (key == "reg") {
    if (v == "cutoff")
      reg = FilterKind::SpectralCutoff;
    else if (v == "tikhonov")
      reg = FilterKind::Tikhonov;
    else
      throw InputError("config: 'reg' must be cutoff or tikhonov, got '" + v + "'");
  } else if (key == "alpha")
    alpha = parse_double(key, v);
  else if (key == "lambda_floor")
    lambda_floor = parse_double(key, v);
  else if (key == "dim")
    dim = as_int();
  else if (key == "fm_terms")
    fm_terms = as_int();
  else if (key == "mode") {
    if (v == "standard")
      mode = RunMode::Standard;
    else if (v == "sign_changing")
      mode = RunMode::SignChanging;
    else
      throw InputError("config: 'mode' must be standard or sign_changing, got '" + v + "'");
  } else if (key == "q_inf")
    q_inf = parse_double(key, v);
  else if (key == "D_radius")
    background_radius = parse_double(key, v);
  else
    throw InputError("config: unknown key '" + key + "'");
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
  return {
      {"name", name},
      {"c", fmt(c)},
      {"N", std::to_string(n_max)},
      {"N_t", std::to_string(n_t)},
      {"N_q", std::to_string(n_q)},
      {"eps", fmt(eps)},
      {"delta", fmt(delta)},
      {"seed", std::to_string(seed)},
      {"profile", to_string(profile)},
      {"r", fmt(r)},
      {"m", std::to_string(m)},
      {"gap", fmt(gap)},
      {"pieces", format_pieces(pieces)},
      {"z_start", fmt(z_start)},
      {"z_stop", fmt(z_stop)},
      {"z_count", std::to_string(z_count)},
      {"reg", reg == FilterKind::Tikhonov ? "tikhonov" : "cutoff"},
      {"alpha", fmt(alpha)},
      {"lambda_floor", fmt(lambda_floor)},
      {"dim", std::to_string(dim)},
      {"fm_terms", std::to_string(fm_terms)},
      {"mode", mode == RunMode::SignChanging ? "sign_changing" : "standard"},
      {"q_inf", fmt(q_inf)},
      {"D_radius", fmt(background_radius)},
  };
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &[k, v] : to_map())
    j[k] = v;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json &j) {
  const auto &src = j.contains("config") ? j.at("config") : j;
  if (!src.is_object())
    throw InputError("config: JSON document must be an object");
  ExperimentConfig cfg;
  for (const auto &[k, v] : src.items())
    cfg.set(k, v.is_string() ? v.get<std::string>() : v.dump());
  return cfg;
}

ExperimentConfig parse_config(const std::string &text, ExperimentConfig base) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
      throw InputError(std::string("config: malformed JSON: ") + e.what());
    }
    return ExperimentConfig::from_json(j);
  }
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    base.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path &path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

int select_index_set(const PswfBasis &basis, double floor) {
  int dim = 0;
  while (dim < basis.count() && std::abs(basis.lambda[dim]) > floor)
    ++dim;
  return dim;
}

RunResult run_experiment(const ExperimentConfig &config, Exec exec) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult out;
  out.config = config.resolved();
  const auto &cfg = out.config;
  cfg.validate();

  out.basis = solve_pswf(cfg.c, cfg.n_max, cfg.n_t);
  if (cfg.dim > 0) {
    out.dim = cfg.dim;
  } else {
    out.dim = select_index_set(out.basis, std::max(cfg.delta, cfg.lambda_floor));
    out.j_saturated = out.dim == out.basis.count();
  }
  if (out.dim == 0)
    throw InputError("invalid config: no prolate eigenvalue exceeds the index-set floor");

  const auto rule = lgl_rule(cfg.n_q);
  const auto profile = cfg.make_profile();
  if (cfg.mode == RunMode::SignChanging) {
    const auto shifted = profile.plus_background(cfg.q_inf, cfg.background_radius);
    out.data = assemble_data_matrix(shifted, out.basis, out.dim, rule, exec);
    out.background = assemble_background_matrix(cfg.q_inf, cfg.background_radius, out.basis, out.dim, rule, exec);
  } else {
    out.data = assemble_data_matrix(profile, out.basis, out.dim, rule, exec);
  }
  if (cfg.delta > 0.0)
    out.data = add_noise(out.data, cfg.delta, cfg.seed);

  ScanInputs in;
  in.basis = &out.basis;
  in.dim = out.dim;
  in.rule = &rule;
  in.data = &out.data;
  in.background = out.background ? &*out.background : nullptr;
  in.reg = {cfg.reg, cfg.alpha};
  in.profile = &profile;
  in.q_inf = cfg.q_inf;
  in.background_radius = cfg.background_radius;
  in.fm_terms = cfg.fm_terms;
  const auto zs = cfg.z_grid();
  out.scan = scan(zs, cfg.eps, in, exec);

  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string scan_csv(const ScanResult &scan) {
  std::string out = "z,raw_lsm_re,raw_lsm_im,I_lsm,I_glsm,fm_sum,I_diff,q_avg_ref,q_exact\n";
  for (const auto &row : scan) {
    out += fmt(row.z) + ',' + fmt(row.raw.real()) + ',' + fmt(row.raw.imag()) + ',' + reciprocal_cell(row.lsm) +
           ',' + reciprocal_cell(row.glsm) + ',' + fmt(row.fm_sum) + ',' +
           (row.diff ? reciprocal_cell(*row.diff) : "") + ',' + (row.q_avg_ref ? fmt(*row.q_avg_ref) : "") + ',' +
           fmt(row.q_exact) + '\n';
  }
  return out;
}

nlohmann::json run_summary(const RunResult &run) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = run.config.to_json();
  j["dim"] = run.dim;
  j["j_saturated"] = run.j_saturated;
  j["index_floor"] = std::max(run.config.delta, run.config.lambda_floor);
  j["mu"] = run.data.eigenvalues;
  if (run.background)
    j["mu_background"] = run.background->eigenvalues;
  std::vector<double> lre, lim;
  for (int n = 0; n < run.dim; ++n) {
    lre.push_back(run.basis.lambda[n].real());
    lim.push_back(run.basis.lambda[n].imag());
  }
  j["lambda_re"] = lre;
  j["lambda_im"] = lim;
  j["chi"] = std::vector<double>(run.basis.chi.begin(), run.basis.chi.begin() + run.dim);
  j["retained_modes"] = retained_modes(run.data, make_filter({run.config.reg, run.config.alpha}, run.data));
  j["noise"] = {{"delta", run.config.delta},
                {"seed", run.config.seed},
                {"noise_calibration", "relative"},
                {"achieved_ratio", run.data.achieved_noise_ratio}};
#ifdef PROLSM_HAVE_OPENMP
  j["openmp"] = true;
#else
  j["openmp"] = false;
#endif
  j["wall_time_s"] = run.wall_seconds;
  return j;
}

void write_outputs(const RunResult &run, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "scan.csv", std::ios::binary);
    if (!out)
      throw InputError("cannot write " + (dir / "scan.csv").string());
    out << scan_csv(run.scan);
  }
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out)
    throw InputError("cannot write " + (dir / "summary.json").string());
  out << run_summary(run).dump(2) << '\n';
}

} // namespace prolsm
