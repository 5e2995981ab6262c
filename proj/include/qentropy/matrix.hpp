#pragma once

#include <qentropy/error.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qentropy {

using Complex = std::complex<double>;

namespace detail {

inline std::string fmt_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

/// Dense d x d complex matrix, row-major.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be at least 1");
  }

  SquareMatrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be at least 1");
    if (entries_.size() != dim * dim) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim * dim) +
                                                    " entries, got " +
                                                    std::to_string(entries_.size()));
    }
  }

  /// Real matrix from nested rows, e.g. {{0.7, 0.2}, {0.2, 0.3}}.
  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t d = rows.size();
    std::vector<Complex> entries;
    entries.reserve(d * d);
    for (const auto& row : rows) {
      if (row.size() != d) throw Error(ErrorCode::DimensionMismatch, "matrix rows must be square");
      for (double v : row) entries.emplace_back(v, 0.0);
    }
    return SquareMatrix(d, std::move(entries));
  }

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(std::span<const double> values) {
    SquareMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static SquareMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  SquareMatrix adjoint() const {
    SquareMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  SquareMatrix& operator+=(const SquareMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
  }

  SquareMatrix& operator*=(Complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs += rhs; }
  friend SquareMatrix operator*(Complex s, SquareMatrix m) { return m *= s; }

  friend SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
    lhs.require_same_dim(rhs);
    const std::size_t d = lhs.dim_;
    SquareMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const Complex l = lhs(i, k);
        if (l == Complex{}) continue;
        for (std::size_t j = 0; j < d; ++j) out(i, j) += l * rhs(k, j);
      }
    return out;
  }

  bool all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), detail::is_finite);
  }

 private:
  void require_same_dim(const SquareMatrix& other) const {
    if (other.dim_ != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "dimensions " + std::to_string(dim_) + " and " +
                                                    std::to_string(other.dim_) + " differ");
    }
  }

  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "cannot compare matrices");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

/// Unit-norm amplitude vector.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-9;

  explicit PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw Error(ErrorCode::InvalidArgument, "pure state needs amplitudes");
    double norm2 = 0.0;
    for (const auto& c : amplitudes_) {
      if (!detail::is_finite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
      norm2 += std::norm(c);
    }
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
      throw Error(ErrorCode::NotNormalized,
                  "sum |c_k|^2 deviates from 1 by " + detail::fmt_real(norm2 - 1.0));
    }
  }

  PureState(std::initializer_list<double> real_amplitudes)
      : PureState(std::vector<Complex>(real_amplitudes.begin(), real_amplitudes.end())) {}

  static PureState basis(std::size_t dim, std::size_t index) {
    std::vector<Complex> amps(dim);
    amps.at(index) = 1.0;
    return PureState(std::move(amps));
  }

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }

  /// |c_k|^2 for every k.
  std::vector<double> probabilities() const {
    std::vector<double> out;
    out.reserve(amplitudes_.size());
    for (const auto& c : amplitudes_) out.push_back(std::norm(c));
    return out;
  }

 private:
  std::vector<Complex> amplitudes_;
};

inline Complex inner_product(const PureState& bra, const PureState& ket) {
  if (bra.dim() != ket.dim()) throw Error(ErrorCode::DimensionMismatch, "inner product");
  Complex acc{};
  for (std::size_t k = 0; k < bra.dim(); ++k) acc += std::conj(bra[k]) * ket[k];
  return acc;
}

}  // namespace qentropy
