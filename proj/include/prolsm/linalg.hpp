#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace prolsm {

using cplx = std::complex<double>;

// Dense row-major matrix. Small sizes only (a few hundred rows at most).
template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> &data() { return data_; }
  const std::vector<T> &data() const { return data_; }

  bool operator==(const Matrix &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;

// Eigenvalues in ascending order; column k of `vectors` belongs to values[k].
struct SymmetricEigen {
  std::vector<double> values;
  RealMatrix vectors;
};

struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Implicit-shift QL on a symmetric tridiagonal matrix (diag d, off-diagonal e,
// e[i] couples i and i+1). Throws NumericalError after 60 sweeps per eigenvalue.
SymmetricEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag);

// Cyclic Jacobi rotations for a dense real symmetric matrix.
SymmetricEigen jacobi_eigen(const RealMatrix &a);

// Cyclic complex Jacobi rotations for a dense Hermitian matrix (only the
// upper triangle is referenced).
HermitianEigen hermitian_jacobi_eigen(const ComplexMatrix &a);

// Largest |eigenvalue| of a Hermitian matrix, i.e. its spectral norm.
double hermitian_spectral_norm(const ComplexMatrix &a);

ComplexMatrix conj_transpose(const ComplexMatrix &a);
ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(double s, const ComplexMatrix &a);
std::vector<cplx> multiply(const ComplexMatrix &a, std::span<const cplx> x);

double max_abs_entry(const ComplexMatrix &a);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

} // namespace prolsm
