#pragma once

#include <qentropy/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qentropy {

/// Eigenpairs of a Hermitian matrix. Eigenvalues are sorted descending
/// (stable, so ties keep their original diagonal order) and column k of
/// `vectors` belongs to values[k].
struct HermitianEigen {
  std::vector<double> values;
  SquareMatrix vectors;
  int sweeps = 0;
};

struct JacobiOptions {
  double off_diagonal_tolerance = 1e-12;
  int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_norm(const SquareMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

inline double frobenius_norm(const SquareMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

// Applies A <- J^H A J and V <- V J for the unitary J that zeroes A(p, q).
// J = D R with D = diag(1, .., conj(e), ..) making A(p, q) real and R the
// classical real Jacobi rotation in the (p, q) plane.
inline void jacobi_rotate(SquareMatrix& a, SquareMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex e = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(e);
  const Complex jqq = c * std::conj(e);

  const std::size_t d = a.dim();
  for (std::size_t k = 0; k < d; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;

    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * g;
  a(q, q) = aqq + t * g;
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Only the Hermitian
/// part of `a` is meaningful; callers validate Hermiticity beforehand.
inline HermitianEigen jacobi_eigen(SquareMatrix a, const JacobiOptions& options = {}) {
  const std::size_t d = a.dim();
  SquareMatrix v = SquareMatrix::identity(d);
  const double threshold =
      options.off_diagonal_tolerance * std::max(1.0, detail::frobenius_norm(a));

  int sweeps = 0;
  double off = detail::off_diagonal_norm(a);
  while (off >= threshold) {
    if (sweeps == options.max_sweeps) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "Jacobi iteration did not converge after " + std::to_string(sweeps) +
                      " sweeps; residual off-diagonal norm " + detail::fmt_real(off));
    }
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) detail::jacobi_rotate(a, v, p, q);
    ++sweeps;
    off = detail::off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a(l, l).real() > a(r, r).real();
  });

  HermitianEigen out{std::vector<double>(d), SquareMatrix(d), sweeps};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < d; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace qentropy
