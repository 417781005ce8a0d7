#include "prolsm/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "prolsm/errors.hpp"

namespace prolsm {

double RegularizationFilter::operator()(double t) const {
  switch (kind) {
  case FilterKind::SpectralCutoff: return (t > 0.0 && t >= alpha) ? 1.0 / t : 0.0;
  case FilterKind::Tikhonov: return 1.0 / (t + alpha);
  }
  return 0.0;
}

RegularizationFilter make_filter(const RegularizationSpec &spec, const DataMatrix &a) {
  if (spec.kind == FilterKind::Tikhonov) {
    if (!(spec.alpha > 0.0))
      throw InputError("Tikhonov filter needs alpha > 0");
    return {FilterKind::Tikhonov, spec.alpha};
  }
  if (!(spec.alpha >= 0.0))
    throw InputError("cutoff threshold must be non-negative");
  const double mu0 = a.eigenvalues.empty() ? 0.0 : std::max(a.eigenvalues.front(), 0.0);
  const double tau = std::max(kCutoffFloor, spec.alpha) * mu0;
  return {FilterKind::SpectralCutoff, tau * tau};
}

int retained_modes(const DataMatrix &a, const RegularizationFilter &filter) {
  const double mu0 = a.eigenvalues.empty() ? 0.0 : a.eigenvalues.front();
  int n = 0;
  for (double mu : a.eigenvalues) {
    if (!(mu > 0.0))
      continue;
    const bool kept = filter.kind == FilterKind::SpectralCutoff ? mu * mu >= filter.alpha : mu >= kCutoffFloor * mu0;
    if (kept)
      ++n;
  }
  return n;
}

ProbeRegion::ProbeRegion(double z_, double eps_) : z(z_), eps(eps_) {
  if (!(eps > 0.0))
    throw InputError("probe region: eps must be positive");
  if (!(z - eps > -1.0 && z + eps < 1.0))
    throw InputError("probe region (" + std::to_string(z - eps) + ", " + std::to_string(z + eps) +
                     ") leaves (-1, 1)");
}

std::vector<double> region_integrals(const ProbeRegion &region, const PswfBasis &basis, int dim,
                                     const QuadratureRule &rule) {
  const auto mapped = rule.mapped(region.lo(), region.hi());
  const RealMatrix psi = pswf_values(basis, dim, mapped.nodes);
  std::vector<double> out(dim, 0.0);
  for (int l = 0; l < dim; ++l) {
    double s = 0.0;
    for (std::size_t k = 0; k < mapped.nodes.size(); ++k)
      s += mapped.weights[k] * psi(l, k);
    out[l] = s;
  }
  return out;
}

namespace {

std::vector<cplx> phi_from_integrals(const PswfBasis &basis, std::span<const double> ints, double length) {
  std::vector<cplx> phi(ints.size());
  for (std::size_t l = 0; l < ints.size(); ++l)
    phi[l] = basis.lambda[l] * (ints[l] / length);
  return phi;
}

cplx project(const DataMatrix &a, int n, std::span<const cplx> v) {
  cplx s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    s += std::conj(a.eigenvectors(i, n)) * v[i];
  return s;
}

} // namespace

std::vector<cplx> phi_coeffs(const ProbeRegion &region, const PswfBasis &basis, int dim,
                             const QuadratureRule &rule) {
  const auto ints = region_integrals(region, basis, dim, rule);
  return phi_from_integrals(basis, ints, region.length());
}

std::vector<cplx> regularized_solve(const DataMatrix &a, std::span<const cplx> phi,
                                    const RegularizationFilter &filter) {
  const int n = a.dim();
  if (static_cast<int>(phi.size()) != n)
    throw InputError("regularized_solve: right-hand side has " + std::to_string(phi.size()) +
                     " entries, matrix dimension is " + std::to_string(n));
  std::vector<cplx> g(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double mu = a.eigenvalues[k];
    if (!(mu > 0.0))
      continue;
    const double f = filter(mu * mu) * mu;
    if (f == 0.0)
      continue;
    const cplx coef = f * project(a, k, phi);
    for (int i = 0; i < n; ++i)
      g[i] += coef * a.eigenvectors(i, k);
  }
  return g;
}

Reciprocal Reciprocal::of(double x) {
  if (x == 0.0)
    return {0.0, true};
  return {1.0 / x, false};
}

cplx lsm_raw(std::span<const cplx> g, const PswfBasis &basis, std::span<const double> region_ints) {
  if (g.size() != region_ints.size())
    throw InputError("lsm_raw: coefficient and region-integral lengths differ");
  cplx s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    s += std::conj(basis.lambda[j]) * g[j] * region_ints[j];
  return s;
}

cplx lsm_raw(std::span<const cplx> g, const PswfBasis &basis, const ProbeRegion &region,
             const QuadratureRule &rule) {
  const auto ints = region_integrals(region, basis, static_cast<int>(g.size()), rule);
  return lsm_raw(g, basis, ints);
}

Reciprocal lsm_indicator(cplx raw) { return Reciprocal::of(raw.real()); }

Reciprocal glsm_indicator(std::span<const cplx> g, const DataMatrix &a, const ProbeRegion &region) {
  const auto ag = multiply(a.entries, g);
  cplx s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    s += std::conj(g[i]) * ag[i];
  return Reciprocal::of(region.length() * s.real());
}

double fm_partial_sum(const DataMatrix &a, std::span<const cplx> phi, int n_terms) {
  if (n_terms < 0 || n_terms > a.dim())
    throw InputError("fm_partial_sum: n_terms " + std::to_string(n_terms) + " outside 0.." +
                     std::to_string(a.dim()));
  double s = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    const double mu = a.eigenvalues[k];
    if (mu > 0.0)
      s += std::norm(project(a, k, phi)) / mu;
  }
  return s;
}

namespace {

Reciprocal difference(Reciprocal a, Reciprocal b) {
  if (a.infinite || b.infinite)
    return {0.0, true};
  return {a.value - b.value, false};
}

} // namespace

Reciprocal differential_indicator(const DataMatrix &a_tilde, const DataMatrix &a_inf, const ProbeRegion &region,
                                  const PswfBasis &basis, int dim, const RegularizationSpec &reg,
                                  const QuadratureRule &rule) {
  if (a_tilde.dim() != dim || a_inf.dim() != dim)
    throw InputError("differential_indicator: matrices must both have dimension " + std::to_string(dim));
  const auto ints = region_integrals(region, basis, dim, rule);
  const auto phi = phi_from_integrals(basis, ints, region.length());
  const auto g_t = regularized_solve(a_tilde, phi, make_filter(reg, a_tilde));
  const auto g_i = regularized_solve(a_inf, phi, make_filter(reg, a_inf));
  return difference(lsm_indicator(lsm_raw(g_t, basis, ints)), lsm_indicator(lsm_raw(g_i, basis, ints)));
}

ScanResult scan(std::span<const double> zs, double eps, const ScanInputs &in, Exec exec) {
  if (!in.basis || !in.rule || !in.data || !in.profile)
    throw InputError("scan: basis, rule, data and profile are required");
  if (in.data->dim() != in.dim || (in.background && in.background->dim() != in.dim))
    throw InputError("scan: data matrix dimension differs from the index set size " + std::to_string(in.dim));
  if (!(eps > 0.0))
    throw InputError("scan: eps must be positive");

  std::ostringstream bad;
  int n_bad = 0;
  for (double z : zs)
    if (!(z - eps > -1.0 && z + eps < 1.0))
      bad << (n_bad++ ? ", " : "") << z;
  if (n_bad)
    throw InputError("scan: probe region leaves (-1, 1) at z = " + bad.str());

  const auto filter = make_filter(in.reg, *in.data);
  const int fm_terms = in.fm_terms > 0 ? std::min(in.fm_terms, in.dim) : retained_modes(*in.data, filter);
  std::optional<RegularizationFilter> filter_inf;
  std::optional<ContrastProfile> shifted;
  if (in.background) {
    filter_inf = make_filter(in.reg, *in.background);
    shifted = in.profile->plus_background(in.q_inf, in.background_radius);
  }

  ScanResult out(zs.size());
  std::exception_ptr failure;
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t i = 0; i < zs.size(); ++i) {
    try {
      const ProbeRegion region(zs[i], eps);
      const auto ints = region_integrals(region, *in.basis, in.dim, *in.rule);
      const auto phi = phi_from_integrals(*in.basis, ints, region.length());
      const auto g = regularized_solve(*in.data, phi, filter);
      ScanRow row;
      row.z = zs[i];
      row.raw = lsm_raw(g, *in.basis, ints);
      row.lsm = lsm_indicator(row.raw);
      row.glsm = glsm_indicator(g, *in.data, region);
      row.fm_sum = fm_partial_sum(*in.data, phi, fm_terms);
      row.q_exact = contrast_eval(*in.profile, zs[i]);
      if (in.background) {
        const auto g_inf = regularized_solve(*in.background, phi, *filter_inf);
        row.diff = difference(row.lsm, lsm_indicator(lsm_raw(g_inf, *in.basis, ints)));
        if (auto h = harmonic_average(*shifted, region.lo(), region.hi()))
          row.q_avg_ref = *h - in.q_inf;
      } else {
        row.q_avg_ref = harmonic_average(*in.profile, region.lo(), region.hi());
      }
      out[i] = row;
    } catch (...) {
#pragma omp critical(prolsm_scan_failure)
      if (!failure)
        failure = std::current_exception();
    }
  }
  if (failure)
    std::rethrow_exception(failure);
  return out;
}

} // namespace prolsm
