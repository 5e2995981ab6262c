#pragma once

#include <qentropy/qentropy.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace qentropy::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine{20140917};
  return engine;
}

inline double uniform(double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>{lo, hi}(rng());
}

inline std::size_t uniform_dim(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>{lo, hi}(rng());
}

/// rho = G G^H / tr(G G^H) with Gaussian G; occasionally rank deficient.
inline DensityOperator random_density(std::size_t dim) {
  std::normal_distribution<double> normal;
  const std::size_t rank = uniform(0, 1) < 0.2 ? uniform_dim(1, dim) : dim;
  SquareMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = Complex(normal(rng()), normal(rng()));
  SquareMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return make_density(rho);
}

inline PureState random_pure(std::size_t dim) {
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(dim);
  double norm2 = 0.0;
  for (auto& c : amps) {
    c = Complex(normal(rng()), normal(rng()));
    norm2 += std::norm(c);
  }
  for (auto& c : amps) c /= std::sqrt(norm2);
  return PureState(std::move(amps));
}

/// Independent qubit eigenvalues from trace and determinant:
/// t/2 +- sqrt(t^2/4 - det).
inline std::pair<double, double> qubit_eigenvalues_from_det(const SquareMatrix& m) {
  const double t = m.trace().real();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double r = std::sqrt(std::max(0.0, t * t / 4.0 - det));
  return {t / 2.0 + r, t / 2.0 - r};
}

/// Binary entropy evaluated directly from its definition.
inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p) / std::log(2.0);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p) / std::log(2.0);
  return h;
}

inline double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace qentropy::test
