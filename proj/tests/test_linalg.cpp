#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "prolsm/errors.hpp"
#include "prolsm/linalg.hpp"

using namespace prolsm;

namespace {

template <typename M>
double reconstruction_error(const M &a, const std::vector<double> &values, const M &v) {
  double worst = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += cplx(v(i, k)) * values[k] * std::conj(cplx(v(j, k)));
      worst = std::max(worst, std::abs(s - cplx(a(i, j))));
    }
  return worst;
}

} // namespace

TEST_CASE("tridiagonal QL on small matrices") {
  const std::vector<double> d{2.0, 2.0}, e{1.0};
  const auto eig = tridiagonal_eigen(d, e);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-15));

  // -1, 2, -1 stencil: eigenvalues 2 - 2 cos(k pi/(n+1))
  const int n = 20;
  const std::vector<double> dd(n, 2.0), ee(n - 1, -1.0);
  const auto lap = tridiagonal_eigen(dd, ee);
  for (int k = 1; k <= n; ++k)
    CHECK(lap.values[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * M_PI / (n + 1))).epsilon(1e-13));

  RealMatrix full(n, n);
  for (int i = 0; i < n; ++i) {
    full(i, i) = 2.0;
    if (i + 1 < n)
      full(i, i + 1) = full(i + 1, i) = -1.0;
  }
  CHECK(reconstruction_error(full, lap.values, lap.vectors) < 1e-13);
  CHECK_THROWS_AS(tridiagonal_eigen(dd, std::vector<double>(3, 0.0)), InputError);
}

TEST_CASE("Jacobi agrees with QL and reconstructs") {
  const int n = 15;
  std::vector<double> d(n), e(n - 1);
  for (int i = 0; i < n; ++i)
    d[i] = std::sin(1.0 + i);
  for (int i = 0; i + 1 < n; ++i)
    e[i] = 0.3 * std::cos(2.0 * i);
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = d[i];
    if (i + 1 < n)
      a(i, i + 1) = a(i + 1, i) = e[i];
  }
  const auto ql = tridiagonal_eigen(d, e);
  const auto jac = jacobi_eigen(a);
  for (int k = 0; k < n; ++k)
    CHECK(jac.values[k] == doctest::Approx(ql.values[k]).epsilon(1e-13));
  CHECK(reconstruction_error(a, jac.values, jac.vectors) < 1e-13);
}

TEST_CASE("complex Jacobi on a random Hermitian matrix") {
  const auto a = oracle::random_hermitian(30, 11);
  const auto eig = hermitian_jacobi_eigen(a);
  CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
  CHECK(reconstruction_error(a, eig.values, eig.vectors) < 1e-12);
  // orthonormal columns
  double worst = 0.0;
  for (int p = 0; p < 30; ++p)
    for (int q = 0; q < 30; ++q) {
      cplx s = 0.0;
      for (int i = 0; i < 30; ++i)
        s += std::conj(eig.vectors(i, p)) * eig.vectors(i, q);
      worst = std::max(worst, std::abs(s - (p == q ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-13);
  CHECK(hermitian_spectral_norm(a) == doctest::Approx(oracle::spectral_norm_power(a)).epsilon(1e-10));
}

TEST_CASE("Jacobi keeps tiny eigenvalues of graded matrices") {
  // diag(1, 1e-20, 1e-30) rotated by a small coupling
  RealMatrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-20;
  a(2, 2) = 1e-30;
  a(1, 2) = a(2, 1) = 1e-26;
  const auto eig = jacobi_eigen(a);
  CHECK(eig.values[2] == doctest::Approx(1.0));
  CHECK(eig.values[1] == doctest::Approx(1e-20).epsilon(1e-10));
  CHECK(eig.values[0] == doctest::Approx(1e-30 - 1e-32).epsilon(1e-4));
}

TEST_CASE("matrix helpers") {
  ComplexMatrix a(2, 2), b(2, 2);
  a(0, 1) = cplx(1, 2);
  b(0, 1) = cplx(0, 1);
  CHECK((a + b)(0, 1) == cplx(1, 3));
  CHECK((a - b)(0, 1) == cplx(1, 1));
  CHECK((2.0 * a)(0, 1) == cplx(2, 4));
  CHECK(conj_transpose(a)(1, 0) == cplx(1, -2));
  CHECK(max_abs_entry(a) == doctest::Approx(std::sqrt(5.0)));
  CHECK(max_abs_diff(a, b) == doctest::Approx(std::sqrt(2.0)));
  const std::vector<cplx> x{1.0, 1.0};
  CHECK(multiply(a, x)[0] == cplx(1, 2));
  CHECK_THROWS_AS(a + ComplexMatrix(3, 3), InputError);
  CHECK_THROWS_AS(multiply(a, std::vector<cplx>(3)), InputError);
}
