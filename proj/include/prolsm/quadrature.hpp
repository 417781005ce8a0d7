#pragma once

#include <complex>
#include <span>
#include <vector>

#include "prolsm/errors.hpp"

namespace prolsm {

// P_n(x) by the three-term Bonnet recurrence.
double legendre(int n, double x);

// P'_n(x) by P'_{k+1} = P'_{k-1} + (2k+1) P_k; valid on all of [-1, 1].
double legendre_deriv(int n, double x);

// P_n(x) * sqrt(n + 1/2), orthonormal on [-1, 1].
double normalized_legendre(int n, double x);

// Fills out[j] = normalized_legendre(j, x) for j < out.size() in one pass.
void normalized_legendre_table(double x, std::span<double> out);

// Legendre-Gauss-Lobatto rule on [-1, 1]. Immutable once built.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
  // Highest polynomial degree integrated exactly.
  int exactness() const { return 2 * order() - 3; }

  // Nodes and weights affinely mapped onto [a, b].
  QuadratureRule mapped(double a, double b) const;
};

// Interior nodes are the zeros of P'_{n_q-1}, found by Newton iteration seeded
// at the Chebyshev-Gauss-Lobatto points. Requires n_q >= 2.
QuadratureRule lgl_rule(int n_q);

// (b-a)/2 * sum_j w_j f(mapped x_j). Throws InputError unless a < b.
template <typename F>
std::complex<double> integrate(F &&f, double a, double b, const QuadratureRule &rule) {
  if (!(a < b))
    throw InputError("integrate: degenerate interval, need a < b");
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    sum += rule.weights[j] * std::complex<double>(f(mid + half * rule.nodes[j]));
  return half * sum;
}

} // namespace prolsm
