#pragma once

#include <qentropy/jacobi.hpp>
#include <qentropy/matrix.hpp>

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace qentropy {

/// Tolerances applied when validating density operators.
struct DensityTolerance {
  static constexpr double kHermitian = 1e-9;
  static constexpr double kTrace = 1e-9;
  static constexpr double kNegativeEigenvalue = 1e-9;
  static constexpr double kWeightSum = 1e-9;
};

/// Hermitian, unit-trace, positive-semidefinite matrix.
///
/// Obtain one through make_density() or one of the operations below; each of
/// them preserves the invariants. assume_valid() skips validation and is
/// reserved for constructions that are valid by algebra.
class DensityOperator {
 public:
  static DensityOperator assume_valid(SquareMatrix matrix) {
    return DensityOperator(std::move(matrix));
  }

  const SquareMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

  std::vector<double> diagonal() const {
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = matrix_(i, i).real();
    return out;
  }

  // Qubit accessors for [[x, conj(a)], [a, y]].
  double x() const { return qubit()(0, 0).real(); }
  double y() const { return qubit()(1, 1).real(); }
  Complex a() const { return qubit()(1, 0); }

 private:
  explicit DensityOperator(SquareMatrix matrix) : matrix_(std::move(matrix)) {}

  const SquareMatrix& qubit() const {
    if (dim() != 2) {
      throw Error(ErrorCode::DimensionMismatch,
                  "qubit accessor on a " + std::to_string(dim()) + "-dimensional operator");
    }
    return matrix_;
  }

  SquareMatrix matrix_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<PureState> eigenvectors;
};

struct WeightedOperator {
  double weight;
  DensityOperator state;
};

enum class Subsystem { A, B };

/// Validates `matrix` as a density operator. An asymmetry up to `tolerance`
/// is accepted and removed by replacing M with (M + M^H) / 2.
inline DensityOperator make_density(const SquareMatrix& matrix,
                                    double tolerance = DensityTolerance::kHermitian) {
  if (!matrix.all_finite()) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");

  const std::size_t d = matrix.dim();
  double asymmetry = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      asymmetry = std::max(asymmetry, std::abs(matrix(i, j) - std::conj(matrix(j, i))));
  if (asymmetry > tolerance) {
    throw Error(ErrorCode::NotHermitian,
                "max |M_ij - conj(M_ji)| = " + detail::fmt_real(asymmetry));
  }

  SquareMatrix hermitian = matrix + matrix.adjoint();
  hermitian *= 0.5;

  const double trace = hermitian.trace().real();
  if (std::abs(trace - 1.0) > DensityTolerance::kTrace) {
    throw Error(ErrorCode::TraceNotOne, "trace deviates from 1 by " + detail::fmt_real(trace - 1.0));
  }

  const double smallest = jacobi_eigen(hermitian).values.back();
  if (smallest < -DensityTolerance::kNegativeEigenvalue) {
    throw Error(ErrorCode::NotPositiveSemidefinite,
                "smallest eigenvalue is " + detail::fmt_real(smallest));
  }
  return DensityOperator::assume_valid(std::move(hermitian));
}

/// |phi><phi|
inline DensityOperator outer_product(const PureState& state) {
  const std::size_t d = state.dim();
  SquareMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = state[i] * std::conj(state[j]);
  return DensityOperator::assume_valid(std::move(m));
}

/// Convex combination sum_k w_k rho_k.
inline DensityOperator mix(std::span<const WeightedOperator> components) {
  if (components.empty()) throw Error(ErrorCode::WeightSumInvalid, "no components to mix");
  const std::size_t d = components.front().state.dim();
  double total = 0.0;
  SquareMatrix acc(d);
  for (const auto& [weight, state] : components) {
    if (!(weight >= 0.0)) {
      throw Error(ErrorCode::WeightSumInvalid, "negative weight " + detail::fmt_real(weight));
    }
    if (state.dim() != d) {
      throw Error(ErrorCode::DimensionMismatch, "components of dimension " + std::to_string(d) +
                                                    " and " + std::to_string(state.dim()));
    }
    total += weight;
    acc += weight * state.matrix();
  }
  if (std::abs(total - 1.0) > DensityTolerance::kWeightSum) {
    throw Error(ErrorCode::WeightSumInvalid,
                "weights sum to 1 " + std::string(total > 1.0 ? "+ " : "- ") +
                    detail::fmt_real(std::abs(total - 1.0)));
  }
  return DensityOperator::assume_valid(std::move(acc));
}

inline DensityOperator mix(std::initializer_list<WeightedOperator> components) {
  return mix(std::span<const WeightedOperator>(components.begin(), components.size()));
}

struct QubitSpectrum {
  double larger;
  double smaller;
};

/// Eigenvalues of a qubit density operator [[x, conj(a)], [a, y]]:
/// 1/2 +- sqrt(((x - y) / 2)^2 + |a|^2).
inline QubitSpectrum eig2_closed_form(const DensityOperator& op) {
  if (op.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "closed-form eigenvalues need dim 2, got " + std::to_string(op.dim()));
  }
  const double half_gap = 0.5 * (op.x() - op.y());
  const double radius = std::sqrt(half_gap * half_gap + std::norm(op.a()));
  return {0.5 + radius, 0.5 - radius};
}

inline SpectralDecomposition eig_hermitian(const DensityOperator& op) {
  HermitianEigen eig = jacobi_eigen(op.matrix());
  const std::size_t d = op.dim();
  SpectralDecomposition out;
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Complex> column(d);
    for (std::size_t i = 0; i < d; ++i) column[i] = eig.vectors(i, k);
    out.eigenvectors.emplace_back(std::move(column));
  }
  return out;
}

/// sum_i lambda_i |v_i><v_i|
inline SquareMatrix reconstruct(const SpectralDecomposition& spectrum) {
  const std::size_t d = spectrum.eigenvectors.front().dim();
  SquareMatrix acc(d);
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
    acc += spectrum.eigenvalues[k] * outer_product(spectrum.eigenvectors[k]).matrix();
  return acc;
}

/// Tensor product a (x) b; row index of the result is i_a * dim(b) + i_b.
inline DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  SquareMatrix m(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) m(i * db + k, j * db + l) = aij * b(k, l);
    }
  return DensityOperator::assume_valid(std::move(m));
}

inline DensityOperator partial_trace(const DensityOperator& ab, std::size_t dim_a,
                                     std::size_t dim_b, Subsystem keep) {
  if (dim_a == 0 || dim_b == 0 || ab.dim() != dim_a * dim_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator of dim " + std::to_string(ab.dim()) + " is not " +
                    std::to_string(dim_a) + " x " + std::to_string(dim_b));
  }
  if (keep == Subsystem::A) {
    SquareMatrix m(dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t j = 0; j < dim_a; ++j)
        for (std::size_t k = 0; k < dim_b; ++k) m(i, j) += ab(i * dim_b + k, j * dim_b + k);
    return DensityOperator::assume_valid(std::move(m));
  }
  SquareMatrix m(dim_b);
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l)
      for (std::size_t i = 0; i < dim_a; ++i) m(k, l) += ab(i * dim_b + k, i * dim_b + l);
  return DensityOperator::assume_valid(std::move(m));
}

}  // namespace qentropy
