#include "prolsm/forward.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "prolsm/errors.hpp"

namespace prolsm {

namespace {

constexpr double kRealnessTol = 1e-10;

std::vector<cplx> phases_of(const PswfBasis &basis, int dim) {
  std::vector<cplx> u(dim);
  for (int j = 0; j < dim; ++j) {
    const double m = std::abs(basis.lambda[j]);
    u[j] = m > 0.0 ? std::conj(basis.lambda[j]) / m : cplx(1.0);
  }
  return u;
}

ComplexMatrix phase_transform(const DataMatrix &a) {
  const int n = a.dim();
  ComplexMatrix b(n, n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      b(l, j) = a.phases[l] * a.entries(l, j) * std::conj(a.phases[j]);
  return b;
}

void hermitian_symmetrize(ComplexMatrix &m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

void write_csv(const std::filesystem::path &path, const ComplexMatrix &m, bool imag) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write " + path.string());
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", imag ? m(i, j).imag() : m(i, j).real());
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

cplx forward_data(const ContrastProfile &profile, double c, double t) {
  return fourier_transform(profile, 2.0 * c * t);
}

ComplexMatrix kernel_matrix(const ContrastProfile &profile, double c, const QuadratureRule &rule, Exec exec) {
  const int nq = rule.order();
  ComplexMatrix kernel(nq, nq);
  // u((t-s)/2) = F(c (t - s))
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b)
      kernel(a, b) = fourier_transform(profile, c * (rule.nodes[a] - rule.nodes[b]));
  return kernel;
}

std::vector<cplx> apply_data_operator(const ComplexMatrix &kernel, const QuadratureRule &rule,
                                      std::span<const double> g) {
  const std::size_t nq = rule.nodes.size();
  if (kernel.rows() != nq || kernel.cols() != nq || g.size() != nq)
    throw InputError("apply_data_operator: kernel, rule and samples must share the node count");
  std::vector<cplx> out(nq);
  for (std::size_t a = 0; a < nq; ++a) {
    cplx acc = 0.0;
    for (std::size_t b = 0; b < nq; ++b)
      acc += kernel(a, b) * (rule.weights[b] * g[b]);
    out[a] = acc;
  }
  return out;
}

DataMatrix assemble_data_matrix(const ContrastProfile &profile, const PswfBasis &basis, int dim,
                                const QuadratureRule &rule, Exec exec) {
  if (dim < 1 || dim > basis.count())
    throw InputError("assemble_data_matrix: index set size " + std::to_string(dim) + " outside 1.." +
                     std::to_string(basis.count()));
  const double c = basis.bandwidth;
  const int nq = rule.order();
  const RealMatrix psi = pswf_values(basis, dim, rule.nodes);
  const bool par = exec == Exec::Parallel;

  const ComplexMatrix kernel = kernel_matrix(profile, c, rule, exec);

  // Y(a, j) = sum_b K(a, b) w_b psi_j(x_b)
  ComplexMatrix y(nq, dim);
#pragma omp parallel for schedule(static) if (par)
  for (int a = 0; a < nq; ++a)
    for (int j = 0; j < dim; ++j) {
      cplx acc = 0.0;
      for (int b = 0; b < nq; ++b)
        acc += kernel(a, b) * (rule.weights[b] * psi(j, b));
      y(a, j) = acc;
    }

  DataMatrix out;
  out.c = c;
  out.entries = ComplexMatrix(dim, dim);
#pragma omp parallel for schedule(static) if (par)
  for (int l = 0; l < dim; ++l)
    for (int j = 0; j < dim; ++j) {
      cplx acc = 0.0;
      for (int a = 0; a < nq; ++a)
        acc += (psi(l, a) * rule.weights[a]) * y(a, j);
      out.entries(l, j) = acc;
    }
  hermitian_symmetrize(out.entries);
  out.phases = phases_of(basis, dim);
  eigendecompose(out);
  return out;
}

DataMatrix assemble_background_matrix(double q_inf, double radius, const PswfBasis &basis, int dim,
                                      const QuadratureRule &rule, Exec exec) {
  return assemble_data_matrix(ContrastProfile::background(q_inf, radius), basis, dim, rule, exec);
}

DataMatrix add_noise(const DataMatrix &a, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0))
    throw InputError("add_noise: noise level must be non-negative");
  DataMatrix out = a;
  out.noise_level = delta;
  out.seed = seed;
  if (delta == 0.0) {
    out.achieved_noise_ratio = 0.0;
    return out;
  }
  const int n = a.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix e(n, n);
  for (auto &v : e.data()) {
    const double re = normal(rng);
    v = cplx(re, normal(rng));
  }
  ComplexMatrix h = 0.5 * (e + conj_transpose(e));
  hermitian_symmetrize(h);
  const double norm_a = hermitian_spectral_norm(a.entries);
  const double scale = delta * norm_a / hermitian_spectral_norm(h);
  out.entries = a.entries + scale * h;
  out.achieved_noise_ratio = hermitian_spectral_norm(out.entries - a.entries) / norm_a;
  eigendecompose(out);
  return out;
}

double phase_realness_defect(const DataMatrix &a) {
  const ComplexMatrix b = phase_transform(a);
  double im = 0.0;
  for (const auto &v : b.data())
    im = std::max(im, std::abs(v.imag()));
  const double scale = max_abs_entry(b);
  return scale > 0.0 ? im / scale : 0.0;
}

void eigendecompose(DataMatrix &a) {
  const int n = a.dim();
  if (static_cast<int>(a.phases.size()) != n)
    a.phases.assign(n, cplx(1.0));
  std::vector<double> values;
  ComplexMatrix vectors(n, n);
  if (phase_realness_defect(a) <= kRealnessTol) {
    const ComplexMatrix b = phase_transform(a);
    RealMatrix br(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        br(i, j) = b(i, j).real();
    auto eig = jacobi_eigen(br);
    values = std::move(eig.values);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        vectors(i, k) = std::conj(a.phases[i]) * eig.vectors(i, k);
  } else {
    auto eig = hermitian_jacobi_eigen(a.entries);
    values = std::move(eig.values);
    vectors = std::move(eig.vectors);
  }
  // descending
  a.eigenvalues.assign(values.rbegin(), values.rend());
  a.eigenvectors = ComplexMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      a.eigenvectors(i, k) = vectors(i, n - 1 - k);
}

void write_data_matrix(const DataMatrix &a, const std::filesystem::path &prefix) {
  const std::string base = prefix.string();
  write_csv(base + "_re.csv", a.entries, false);
  write_csv(base + "_im.csv", a.entries, true);
  nlohmann::json j;
  j["c"] = a.c;
  j["dim"] = a.dim();
  j["delta"] = a.noise_level;
  j["seed"] = a.seed;
  j["achieved_noise_ratio"] = a.achieved_noise_ratio;
  std::vector<double> pr, pi;
  for (auto p : a.phases) {
    pr.push_back(p.real());
    pi.push_back(p.imag());
  }
  j["phases_re"] = pr;
  j["phases_im"] = pi;
  std::ofstream out(base + ".json");
  if (!out)
    throw InputError("cannot write " + base + ".json");
  out << j.dump(2) << '\n';
}

DataMatrix read_data_matrix(const std::filesystem::path &prefix) {
  const std::string base = prefix.string();
  std::ifstream in(base + ".json");
  if (!in)
    throw InputError("cannot read " + base + ".json");
  const auto j = nlohmann::json::parse(in);
  DataMatrix a;
  a.c = j.at("c").get<double>();
  const int n = j.at("dim").get<int>();
  a.noise_level = j.at("delta").get<double>();
  a.seed = j.at("seed").get<std::uint64_t>();
  a.achieved_noise_ratio = j.value("achieved_noise_ratio", 0.0);
  const auto pr = j.at("phases_re").get<std::vector<double>>();
  const auto pi = j.at("phases_im").get<std::vector<double>>();
  const auto re = read_csv(base + "_re.csv");
  const auto im = read_csv(base + "_im.csv");
  if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n ||
      static_cast<int>(pr.size()) != n || static_cast<int>(pi.size()) != n)
    throw InputError("read_data_matrix: dimension mismatch with header dim=" + std::to_string(n));
  a.entries = ComplexMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
      throw InputError("read_data_matrix: row " + std::to_string(i) + " has wrong length");
    for (int k = 0; k < n; ++k)
      a.entries(i, k) = cplx(re[i][k], im[i][k]);
  }
  for (int i = 0; i < n; ++i)
    a.phases.emplace_back(pr[i], pi[i]);
  eigendecompose(a);
  return a;
}

} // namespace prolsm
