#pragma once
// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "prolsm/contrast.hpp"
#include "prolsm/forward.hpp"
#include "prolsm/linalg.hpp"
#include "prolsm/pswf.hpp"
#include "prolsm/quadrature.hpp"

namespace oracle {

using prolsm::cplx;

// Composite LGL over every piece of q, `panels` panels per piece.
template <typename F>
cplx integrate_over_support(const prolsm::ContrastProfile &q, F &&f, int panels = 8, int nodes = 60) {
  const auto rule = prolsm::lgl_rule(nodes);
  cplx sum = 0.0;
  for (const auto &p : q.pieces)
    for (int i = 0; i < panels; ++i) {
      const double a = p.lo + (p.hi - p.lo) * i / panels, b = p.lo + (p.hi - p.lo) * (i + 1) / panels;
      sum += prolsm::integrate([&](double s) { return f(s) * p.value(s); }, a, b, rule);
    }
  return sum;
}

// u(t) by quadrature of int exp(2ict y) q(y) dy.
inline cplx forward_data_quadrature(const prolsm::ContrastProfile &q, double c, double t) {
  return integrate_over_support(q, [&](double y) { return std::exp(cplx(0.0, 2.0 * c * t * y)); });
}

// Factorized route: <N psi_j, psi_l> = conj(lambda_j) lambda_l int q psi_j psi_l.
inline prolsm::ComplexMatrix factorized_matrix(const prolsm::ContrastProfile &q, const prolsm::PswfBasis &basis,
                                               int dim) {
  prolsm::ComplexMatrix m(dim, dim);
  for (int l = 0; l < dim; ++l)
    for (int j = 0; j <= l; ++j) {
      const cplx in = integrate_over_support(
          q, [&](double s) { return prolsm::pswf_eval(basis, j, s) * prolsm::pswf_eval(basis, l, s); });
      m(l, j) = std::conj(basis.lambda[j]) * basis.lambda[l] * in.real();
      m(j, l) = std::conj(m(l, j));
    }
  return m;
}

// int_{-1}^{1} exp(i c x y) psi_n(y) dy.
inline cplx apply_fourier(const prolsm::PswfBasis &basis, int n, double x, const prolsm::QuadratureRule &rule) {
  return prolsm::integrate(
      [&](double y) { return std::exp(cplx(0.0, basis.bandwidth * x * y)) * prolsm::pswf_eval(basis, n, y); }, -1.0,
      1.0, rule);
}

template <typename F>
double central_difference(F &&f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Spectral norm by power iteration on A^H A (independent of the Jacobi solver).
inline double spectral_norm_power(const prolsm::ComplexMatrix &a, int iters = 2000) {
  const std::size_t n = a.cols();
  std::vector<cplx> v(n);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (auto &x : v)
    x = cplx(nd(rng), nd(rng));
  double sigma = 0.0;
  const auto ah = prolsm::conj_transpose(a);
  for (int it = 0; it < iters; ++it) {
    double norm = 0.0;
    for (auto &x : v)
      norm += std::norm(x);
    norm = std::sqrt(norm);
    for (auto &x : v)
      x /= norm;
    const auto w = prolsm::multiply(ah, prolsm::multiply(a, v));
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += (std::conj(v[i]) * w[i]).real();
    sigma = std::sqrt(s);
    v = w;
  }
  return sigma;
}

inline prolsm::ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  prolsm::ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = nd(rng);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cplx(nd(rng), nd(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

} // namespace oracle
