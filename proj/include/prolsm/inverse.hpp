#pragma once

#include <optional>
#include <span>
#include <vector>

#include "prolsm/contrast.hpp"
#include "prolsm/forward.hpp"
#include "prolsm/pswf.hpp"
#include "prolsm/quadrature.hpp"

namespace prolsm {

enum class FilterKind { SpectralCutoff, Tikhonov };

// f_alpha(t) evaluated at t = mu^2.
//   SpectralCutoff: 1/t if t >= alpha, else 0
//   Tikhonov:       1/(t + alpha)
// Both satisfy |mu^2 f_alpha(mu^2)| <= 1.
struct RegularizationFilter {
  FilterKind kind = FilterKind::SpectralCutoff;
  double alpha = 0.0;

  double operator()(double t) const;
};

// Noiseless eigenvalues below this fraction of mu_0 are assembly roundoff.
inline constexpr double kCutoffFloor = 1e-13;

// User-level choice. For SpectralCutoff `alpha` is a threshold on mu relative
// to mu_0, raised to kCutoffFloor; for Tikhonov it is used as given.
struct RegularizationSpec {
  FilterKind kind = FilterKind::SpectralCutoff;
  double alpha = 0.0;
};

RegularizationFilter make_filter(const RegularizationSpec &spec, const DataMatrix &a);

// Number of leading eigenvalues that the filter keeps (mu > 0, and mu^2 >=
// alpha for the cutoff; mu >= kCutoffFloor * mu_0 for Tikhonov).
int retained_modes(const DataMatrix &a, const RegularizationFilter &filter);

// R(z, eps) = (z - eps, z + eps), required inside (-1, 1).
struct ProbeRegion {
  double z = 0.0;
  double eps = 0.0;

  ProbeRegion(double z, double eps);
  double lo() const { return z - eps; }
  double hi() const { return z + eps; }
  double length() const { return 2.0 * eps; }
};

// int_R psi_l for l < dim, by `rule` mapped onto R.
std::vector<double> region_integrals(const ProbeRegion &region, const PswfBasis &basis, int dim,
                                     const QuadratureRule &rule);

// phi_l = lambda_l <E_z, psi_l> with E_z = 1_R / |R|.
std::vector<cplx> phi_coeffs(const ProbeRegion &region, const PswfBasis &basis, int dim,
                             const QuadratureRule &rule);

// g = sum_n f(mu_n^2) mu_n <phi, zeta_n> zeta_n over mu_n > 0.
std::vector<cplx> regularized_solve(const DataMatrix &a, std::span<const cplx> phi,
                                    const RegularizationFilter &filter);

// Reciprocal of a value that may be exactly zero (reported as infinite).
struct Reciprocal {
  double value = 0.0;
  bool infinite = false;

  static Reciprocal of(double x);
};

// <S g, 1_R> = sum_j conj(lambda_j) g_j int_R psi_j.
cplx lsm_raw(std::span<const cplx> g, const PswfBasis &basis, std::span<const double> region_ints);
cplx lsm_raw(std::span<const cplx> g, const PswfBasis &basis, const ProbeRegion &region,
             const QuadratureRule &rule);
// I(z) = 1 / Re <S g, 1_R>.
Reciprocal lsm_indicator(cplx raw);

// (|R| g^H A g)^-1.
Reciprocal glsm_indicator(std::span<const cplx> g, const DataMatrix &a, const ProbeRegion &region);

// sum_{n < n_terms} |<phi, zeta_n>|^2 / mu_n, skipping mu_n <= 0.
double fm_partial_sum(const DataMatrix &a, std::span<const cplx> phi, int n_terms);

// I(A_tilde) - I(A_inf); infinite if either reciprocal is.
Reciprocal differential_indicator(const DataMatrix &a_tilde, const DataMatrix &a_inf, const ProbeRegion &region,
                                  const PswfBasis &basis, int dim, const RegularizationSpec &reg,
                                  const QuadratureRule &rule);

struct ScanRow {
  double z = 0.0;
  cplx raw;
  Reciprocal lsm;
  Reciprocal glsm;
  double fm_sum = 0.0;
  std::optional<Reciprocal> diff;     // sign-changing mode only
  std::optional<double> q_avg_ref;    // undefined unless q > 0 on R
  double q_exact = 0.0;
};

using ScanResult = std::vector<ScanRow>;

struct ScanInputs {
  const PswfBasis *basis = nullptr;
  int dim = 0;
  const QuadratureRule *rule = nullptr;
  const DataMatrix *data = nullptr;       // A, or A_tilde in sign-changing mode
  const DataMatrix *background = nullptr; // A_inf; set only in sign-changing mode
  RegularizationSpec reg;
  const ContrastProfile *profile = nullptr; // q itself (without background)
  double q_inf = 0.0;
  double background_radius = 0.0;
  int fm_terms = 0; // 0: modes retained by the filter
};

// One row per z in grid order. Every R(z, eps) must lie in (-1, 1); the
// InputError lists all offending points.
ScanResult scan(std::span<const double> zs, double eps, const ScanInputs &in, Exec exec = Exec::Parallel);

} // namespace prolsm
