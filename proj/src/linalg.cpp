#include "prolsm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "prolsm/errors.hpp"

namespace prolsm {

namespace {

constexpr int kQlMaxIter = 60;
constexpr int kJacobiMaxSweeps = 100;

template <typename T>
void sort_ascending(std::vector<double> &values, Matrix<T> &vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> v(n);
  Matrix<T> z(vectors.rows(), n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = values[order[k]];
    for (std::size_t i = 0; i < vectors.rows(); ++i)
      z(i, k) = vectors(i, order[k]);
  }
  values = std::move(v);
  vectors = std::move(z);
}

double phase_of(double x) { return x < 0.0 ? -1.0 : 1.0; }
cplx phase_of(cplx x) {
  const double m = std::abs(x);
  return m == 0.0 ? cplx(1.0) : x / m;
}
double conj_of(double x) { return x; }
cplx conj_of(cplx x) { return std::conj(x); }
double real_of(double x) { return x; }
double real_of(cplx x) { return x.real(); }

// Cyclic Jacobi on a real symmetric or complex Hermitian matrix. Pairs are
// rotated until |a_pq| <= eps * sqrt(|a_pp a_qq|), which keeps small
// eigenvalues of graded matrices accurate.
template <typename T>
void jacobi_impl(Matrix<T> a, std::vector<double> &values, Matrix<T> &vectors) {
  const std::size_t n = a.rows();
  if (a.cols() != n)
    throw InputError("jacobi: matrix must be square");
  vectors = Matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    vectors(i, i) = T(1.0);
    for (std::size_t j = 0; j < i; ++j)
      a(i, j) = conj_of(a(j, i));
    a(i, i) = T(real_of(a(i, i)));
  }
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0)
          continue;
        const double app = real_of(a(p, p));
        const double aqq = real_of(a(q, q));
        if (apq <= eps * std::sqrt(std::abs(app * aqq)) || apq < std::numeric_limits<double>::min()) {
          a(p, q) = T(0.0);
          a(q, p) = T(0.0);
          continue;
        }
        rotated = true;
        const T ph = phase_of(a(p, q));
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // U = [[c, s*ph], [-s*conj(ph), c]] on (p, q); A <- U^H A U, V <- V U.
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * conj_of(ph) * akq;
          a(k, q) = s * ph * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * ph * aqk;
          a(q, k) = s * conj_of(ph) * apk + c * aqk;
        }
        a(p, q) = T(0.0);
        a(q, p) = T(0.0);
        a(p, p) = T(real_of(a(p, p)));
        a(q, q) = T(real_of(a(q, q)));
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = vectors(k, p), vkq = vectors(k, q);
          vectors(k, p) = c * vkp - s * conj_of(ph) * vkq;
          vectors(k, q) = s * ph * vkp + c * vkq;
        }
      }
    }
    if (!rotated) {
      values.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        values[i] = real_of(a(i, i));
      sort_ascending(values, vectors);
      return;
    }
  }
  throw NumericalError("jacobi: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                       " sweeps (n=" + std::to_string(n) + ")");
}

} // namespace

SymmetricEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  if (n == 0)
    return {};
  if (offdiag.size() + 1 != n)
    throw InputError("tridiagonal_eigen: off-diagonal must have n-1 entries");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  RealMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    z(i, i) = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd)
          break;
      }
      if (m == l)
        break;
      if (++iter > kQlMaxIter)
        throw NumericalError("tridiagonal_eigen: QL iteration did not converge for eigenvalue " +
                             std::to_string(l));
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < n; ++k) {
          const double zf = z(k, ii + 1);
          z(k, ii + 1) = s * z(k, ii) + c * zf;
          z(k, ii) = c * z(k, ii) - s * zf;
        }
      }
      if (underflow)
        continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  SymmetricEigen out{std::move(d), std::move(z)};
  sort_ascending(out.values, out.vectors);
  return out;
}

SymmetricEigen jacobi_eigen(const RealMatrix &a) {
  SymmetricEigen out;
  jacobi_impl(a, out.values, out.vectors);
  return out;
}

HermitianEigen hermitian_jacobi_eigen(const ComplexMatrix &a) {
  HermitianEigen out;
  jacobi_impl(a, out.values, out.vectors);
  return out;
}

double hermitian_spectral_norm(const ComplexMatrix &a) {
  if (a.rows() == 0)
    return 0.0;
  const auto eig = hermitian_jacobi_eigen(a);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

ComplexMatrix conj_transpose(const ComplexMatrix &a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("matrix sum: dimension mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k)
    out.data()[k] += b.data()[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("matrix difference: dimension mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k)
    out.data()[k] -= b.data()[k];
  return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix &a) {
  ComplexMatrix out = a;
  for (auto &v : out.data())
    v *= s;
  return out;
}

std::vector<cplx> multiply(const ComplexMatrix &a, std::span<const cplx> x) {
  if (a.cols() != x.size())
    throw InputError("matrix-vector product: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double max_abs_entry(const ComplexMatrix &a) {
  double m = 0.0;
  for (const auto &v : a.data())
    m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

} // namespace prolsm
