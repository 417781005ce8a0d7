#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "prolsm/contrast.hpp"
#include "prolsm/linalg.hpp"
#include "prolsm/pswf.hpp"
#include "prolsm/quadrature.hpp"

namespace prolsm {

enum class Exec { Serial, Parallel };

// u(t) = int exp(2 i c t y) q(y) dy.
cplx forward_data(const ContrastProfile &profile, double c, double t);

// K(a, b) = u((x_a - x_b)/2) at the nodes of `rule`.
ComplexMatrix kernel_matrix(const ContrastProfile &profile, double c, const QuadratureRule &rule,
                            Exec exec = Exec::Parallel);

// (N g)(x_a) = sum_b K(a, b) w_b g(x_b), g given at the nodes of `rule`.
std::vector<cplx> apply_data_operator(const ComplexMatrix &kernel, const QuadratureRule &rule,
                                      std::span<const double> g);

// Galerkin matrix of the data operator (N g)(t) = int u((t-s)/2) g(s) ds on
// the index set {0, ..., dim-1}. entries(l, j) = <N psi_j, psi_l>, so the
// matrix acts on PSWF coefficient vectors. Eigenvalues are stored in
// decreasing order with eigenvectors (zeta_n) as columns.
struct DataMatrix {
  double c = 0.0;
  ComplexMatrix entries;
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
  // conj(lambda_j)/|lambda_j|: U A U^H is real for noiseless data.
  std::vector<cplx> phases;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  double achieved_noise_ratio = 0.0; // ||A^delta - A||_2 / ||A||_2

  int dim() const { return static_cast<int>(entries.rows()); }
};

// Kernel route: both integrals by `rule` on [-1, 1], kernel evaluated from the
// closed-form transform. Result is Hermitian-symmetrized and eigendecomposed.
DataMatrix assemble_data_matrix(const ContrastProfile &profile, const PswfBasis &basis, int dim,
                                const QuadratureRule &rule, Exec exec = Exec::Parallel);

DataMatrix assemble_background_matrix(double q_inf, double radius, const PswfBasis &basis, int dim,
                                      const QuadratureRule &rule, Exec exec = Exec::Parallel);

// A + s*(E + E^H)/2 with E complex Gaussian from seed, s chosen so that the
// perturbation has spectral norm delta * ||A||_2. delta = 0 returns A as is.
DataMatrix add_noise(const DataMatrix &a, double delta, std::uint64_t seed);

// Fills eigenvalues/eigenvectors. Uses a real Jacobi solve on U A U^H when
// that matrix is real within 1e-10 (relative), complex Jacobi otherwise.
void eigendecompose(DataMatrix &a);

// Largest |imaginary part| of U A U^H relative to max |entry|.
double phase_realness_defect(const DataMatrix &a);

// <prefix>_re.csv, <prefix>_im.csv and <prefix>.json (c, dim, delta, seed).
void write_data_matrix(const DataMatrix &a, const std::filesystem::path &prefix);
DataMatrix read_data_matrix(const std::filesystem::path &prefix);

} // namespace prolsm
