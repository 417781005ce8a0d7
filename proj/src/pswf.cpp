#include "prolsm/pswf.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "prolsm/errors.hpp"
#include "prolsm/quadrature.hpp"

namespace prolsm {

namespace {

constexpr double kDenominatorGuard = 1e-300;
// Leading coefficients below this fraction of the column maximum are
// recomputed from the three-term recurrence.
constexpr double kRefineFraction = 1e-3;

double diag_entry(double c, int j) {
  const double jj = j;
  return jj * (jj + 1.0) + c * c * (2.0 * jj * (jj + 1.0) - 1.0) / ((2.0 * jj + 3.0) * (2.0 * jj - 1.0));
}

double offdiag_entry(double c, int j) {
  const double jj = j;
  return c * c * (jj + 1.0) * (jj + 2.0) / ((2.0 * jj + 3.0) * std::sqrt((2.0 * jj + 1.0) * (2.0 * jj + 5.0)));
}

// The leading entries of an eigenvector of the parity block decay towards
// index 0 faster than the QL absolute error (~1e-16), so they are rebuilt
// from the ratios rho_k = b_k / b_{k+1}, which follow from row 0 exactly and
// are stable while chi exceeds the diagonal.
void refine_leading(std::span<const double> d, std::span<const double> e, double chi, std::span<double> b) {
  double peak = 0.0;
  for (double v : b)
    peak = std::max(peak, std::abs(v));
  std::size_t stop = 0;
  while (stop < b.size() && std::abs(b[stop]) <= kRefineFraction * peak)
    ++stop;
  if (stop == 0 || stop >= b.size())
    return;

  std::vector<double> rho(stop);
  for (std::size_t k = 0; k < stop; ++k) {
    const double den = d[k] - chi + (k > 0 ? e[k - 1] * rho[k - 1] : 0.0);
    if (den >= 0.0)
      return; // past the turning point; keep the QL vector
    rho[k] = -e[k] / den;
  }
  for (std::size_t k = stop; k-- > 0;)
    b[k] = rho[k] * b[k + 1];
}

void check_index(const PswfBasis &basis, int n, const char *what) {
  if (n < 0 || n >= basis.count())
    throw InputError(std::string(what) + ": index " + std::to_string(n) + " outside 0.." +
                     std::to_string(basis.count() - 1));
}

} // namespace

RealMatrix assemble_galerkin(double c, int n_t) {
  if (n_t < 2)
    throw InputError("assemble_galerkin: truncation must be at least 2");
  RealMatrix d(n_t, n_t);
  for (int j = 0; j < n_t; ++j) {
    d(j, j) = diag_entry(c, j);
    if (j + 2 < n_t) {
      d(j, j + 2) = offdiag_entry(c, j);
      d(j + 2, j) = d(j, j + 2);
    }
  }
  return d;
}

PswfBasis solve_pswf(double c, int n_max, int n_t) {
  if (!(c > 0.0))
    throw InputError("solve_pswf: bandwidth c must be positive");
  if (n_max < 0)
    throw InputError("solve_pswf: n_max must be non-negative");
  if (n_t < 2 * n_max + 30)
    throw InputError("solve_pswf: truncation N_t=" + std::to_string(n_t) + " below 2N+30=" +
                     std::to_string(2 * n_max + 30));

  PswfBasis basis;
  basis.bandwidth = c;
  basis.truncation = n_t;
  basis.coeffs = RealMatrix(n_t, n_max + 1);
  basis.chi.assign(n_max + 1, 0.0);

  // D couples only equal-parity indices: two independent tridiagonal blocks.
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<double> d, e;
    for (int j = parity; j < n_t; j += 2) {
      d.push_back(diag_entry(c, j));
      if (j + 2 < n_t)
        e.push_back(offdiag_entry(c, j));
    }
    const auto eig = tridiagonal_eigen(d, e);
    std::vector<double> b(d.size());
    for (int n = parity, k = 0; n <= n_max; n += 2, ++k) {
      for (std::size_t i = 0; i < d.size(); ++i)
        b[i] = eig.vectors(i, k);
      refine_leading(d, e, eig.values[k], b);

      std::size_t peak = 0;
      for (std::size_t i = 1; i < b.size(); ++i)
        if (std::abs(b[i]) > std::abs(b[peak]))
          peak = i;
      const double sign = b[peak] < 0.0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < b.size(); ++i)
        basis.coeffs(parity + 2 * i, n) = sign * b[i];
      basis.chi[n] = eig.values[k];
    }
  }

  for (int n = 1; n <= n_max; ++n)
    if (!(basis.chi[n] > basis.chi[n - 1]))
      throw NumericalError("solve_pswf: Sturm-Liouville eigenvalues not interlaced at n=" +
                           std::to_string(n) + " (c=" + std::to_string(c) + ")");

  basis.lambda = prolate_eigenvalues(basis);
  return basis;
}

double pswf_eval(const PswfBasis &basis, int n, double x) {
  check_index(basis, n, "pswf_eval");
  std::vector<double> p(basis.truncation);
  normalized_legendre_table(x, p);
  double s = 0.0;
  for (int j = 0; j < basis.truncation; ++j)
    s += basis.coeffs(j, n) * p[j];
  return s;
}

double pswf_deriv_at_zero(const PswfBasis &basis, int n) {
  check_index(basis, n, "pswf_deriv_at_zero");
  double s = 0.0;
  for (int j = 1; j < basis.truncation; j += 2)
    s += basis.coeffs(j, n) * std::sqrt(j + 0.5) * legendre_deriv(j, 0.0);
  return s;
}

std::vector<cplx> prolate_eigenvalues(const PswfBasis &basis) {
  const double c = basis.bandwidth;
  std::vector<cplx> lambda(basis.count());
  for (int n = 0; n < basis.count(); ++n) {
    if (n % 2 == 0) {
      const double psi0 = pswf_eval(basis, n, 0.0);
      if (std::abs(psi0) < kDenominatorGuard)
        throw NumericalError("prolate_eigenvalues: psi_" + std::to_string(n) + "(0) vanishes");
      lambda[n] = std::sqrt(2.0) * basis.coeffs(0, n) / psi0;
    } else {
      const double dpsi0 = pswf_deriv_at_zero(basis, n);
      if (std::abs(dpsi0) < kDenominatorGuard)
        throw NumericalError("prolate_eigenvalues: psi_" + std::to_string(n) + "'(0) vanishes");
      lambda[n] = cplx(0.0, std::sqrt(2.0 / 3.0) * c * basis.coeffs(1, n) / dpsi0);
    }
  }
  return lambda;
}

RealMatrix pswf_values(const PswfBasis &basis, int count, std::span<const double> xs) {
  if (count < 0 || count > basis.count())
    throw InputError("pswf_values: requested " + std::to_string(count) + " functions, basis has " +
                     std::to_string(basis.count()));
  RealMatrix out(count, xs.size());
  std::vector<double> p(basis.truncation);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    normalized_legendre_table(xs[k], p);
    for (int n = 0; n < count; ++n) {
      double s = 0.0;
      for (int j = n % 2; j < basis.truncation; j += 2)
        s += basis.coeffs(j, n) * p[j];
      out(n, k) = s;
    }
  }
  return out;
}

void write_pswf_csv(const PswfBasis &basis, std::ostream &out) {
  const auto old = out.precision(17);
  out << "n,chi,lambda_re,lambda_im\n";
  for (int n = 0; n < basis.count(); ++n)
    out << n << ',' << basis.chi[n] << ',' << basis.lambda[n].real() << ',' << basis.lambda[n].imag()
        << '\n';
  out.precision(old);
}

} // namespace prolsm
