#include "prolsm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace prolsm {

namespace {

constexpr double kNewtonTol = 1e-15;
constexpr int kNewtonMaxSteps = 100;

// P_n and P_{n-1} at x (n >= 1).
void legendre_pair(int n, double x, double &pn, double &pnm1) {
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

} // namespace

double legendre(int n, double x) {
  if (n == 0)
    return 1.0;
  double pn, pnm1;
  legendre_pair(n, x, pn, pnm1);
  return pn;
}

double legendre_deriv(int n, double x) {
  if (n == 0)
    return 0.0;
  // P'_{k+1} = P'_{k-1} + (2k+1) P_k, run alongside the value recurrence.
  double p_prev = 1.0, p_cur = x;    // P_0, P_1
  double d_prev = 0.0, d_cur = 1.0;  // P'_0, P'_1
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1);
    const double d_next = d_prev + (2 * k + 1) * p_cur;
    p_prev = p_cur;
    p_cur = p_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return d_cur;
}

double normalized_legendre(int n, double x) { return legendre(n, x) * std::sqrt(n + 0.5); }

void normalized_legendre_table(double x, std::span<double> out) {
  if (out.empty())
    return;
  double p0 = 1.0, p1 = x;
  out[0] = std::sqrt(0.5);
  if (out.size() > 1)
    out[1] = x * std::sqrt(1.5);
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
    out[k + 1] = p2 * std::sqrt(k + 1.5);
  }
}

QuadratureRule QuadratureRule::mapped(double a, double b) const {
  if (!(a < b))
    throw InputError("QuadratureRule::mapped: degenerate interval, need a < b");
  QuadratureRule out;
  out.nodes.resize(nodes.size());
  out.weights.resize(weights.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    out.nodes[j] = mid + half * nodes[j];
    out.weights[j] = half * weights[j];
  }
  return out;
}

QuadratureRule lgl_rule(int n_q) {
  if (n_q < 2)
    throw InputError("lgl_rule: need at least 2 nodes, got " + std::to_string(n_q));

  const int n = n_q - 1; // nodes are extrema of P_n
  QuadratureRule rule;
  rule.nodes.assign(n_q, 0.0);
  rule.weights.assign(n_q, 0.0);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;

  // Solve for the lower half and mirror, so the rule is exactly symmetric.
  for (int j = 1; 2 * j < n; ++j) {
    double x = -std::cos(std::numbers::pi * j / n);
    bool converged = false;
    for (int step = 0; step < kNewtonMaxSteps; ++step) {
      double pn, pnm1;
      legendre_pair(n, x, pn, pnm1);
      const double dp = n * (pnm1 - x * pn) / (1.0 - x * x);
      const double d2p = (2.0 * x * dp - n * (n + 1.0) * pn) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) <= kNewtonTol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("lgl_rule: Newton iteration for node " + std::to_string(j) +
                           " of " + std::to_string(n_q) + " did not converge");
    rule.nodes[j] = x;
    rule.nodes[n - j] = -x;
  }
  if (n_q % 2 == 1)
    rule.nodes[n / 2] = 0.0;

  const double scale = 2.0 / (static_cast<double>(n_q) * n);
  for (int j = 0; j < n_q; ++j) {
    const double p = legendre(n, rule.nodes[j]);
    rule.weights[j] = scale / (p * p);
  }
  return rule;
}

} // namespace prolsm
