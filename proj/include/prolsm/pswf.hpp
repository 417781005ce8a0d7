#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "prolsm/linalg.hpp"

namespace prolsm {

// First count() prolate spheroidal wave functions psi_n(.; c) on [-1, 1],
// stored as normalized-Legendre expansions.
//
//   psi_n(x) = sum_j coeffs(j, n) * Pbar_j(x),   j < truncation
//
// Sign convention: the largest-magnitude coefficient of every column is
// positive. chi holds the Sturm-Liouville eigenvalues (strictly increasing);
// lambda the eigenvalues of g -> int_{-1}^{1} exp(i c x y) g(y) dy, real for
// even n and purely imaginary for odd n.
struct PswfBasis {
  double bandwidth = 0.0;
  int truncation = 0;
  RealMatrix coeffs; // truncation x count
  std::vector<double> chi;
  std::vector<cplx> lambda;

  int count() const { return static_cast<int>(chi.size()); }
};

// Legendre-Galerkin matrix of the prolate Sturm-Liouville operator
// -d/dx (1-x^2) d/dx + c^2 x^2 in the normalized Legendre basis (n_t x n_t).
// Non-zero only on the main diagonal and the +-2 off-diagonals.
RealMatrix assemble_galerkin(double c, int n_t);

// psi_0..psi_n_max with prolate eigenvalues filled in. Requires
// n_t >= 2 n_max + 30 (InputError otherwise).
PswfBasis solve_pswf(double c, int n_max, int n_t);

double pswf_eval(const PswfBasis &basis, int n, double x);
double pswf_deriv_at_zero(const PswfBasis &basis, int n);

// lambda_n = sqrt(2) B_0n / psi_n(0) for even n,
// lambda_n = sqrt(2/3) i c B_1n / psi_n'(0) for odd n.
std::vector<cplx> prolate_eigenvalues(const PswfBasis &basis);

// values(n, k) = psi_n(xs[k]) for n < count.
RealMatrix pswf_values(const PswfBasis &basis, int count, std::span<const double> xs);

// Debug dump: header "n,chi,lambda_re,lambda_im", one row per function.
void write_pswf_csv(const PswfBasis &basis, std::ostream &out);

} // namespace prolsm
