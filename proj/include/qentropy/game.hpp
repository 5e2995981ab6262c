#pragma once

#include <qentropy/entropy.hpp>
#include <qentropy/root_finding.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace qentropy {

/// How the interceptor re-mixes the sender's state: with probability
/// `injection_weight` it emits `injected` instead. Without an explicit state
/// it injects (sqrt(1 - lambda), sqrt(lambda)).
struct GameStrategy {
  double injection_weight = 0.5;
  std::optional<PureState> injected;
};

struct GameConfig {
  double lambda = 0.5;
  GameStrategy strategy;
};

namespace detail {

inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::DomainViolation,
                std::string(name) + " = " + fmt_real(p) + " outside [0, 1]");
  }
}

}  // namespace detail

/// diag(lambda, 1 - lambda)
inline DensityOperator sender_state(double lambda) {
  detail::require_probability(lambda, "lambda");
  return DensityOperator::assume_valid(SquareMatrix::diagonal({lambda, 1.0 - lambda}));
}

inline PureState default_injected_state(double lambda) {
  detail::require_probability(lambda, "lambda");
  return PureState{std::sqrt(1.0 - lambda), std::sqrt(lambda)};
}

/// (1 - q) rho_A + q |injected><injected|
inline DensityOperator receiver_state(const GameConfig& config) {
  detail::require_probability(config.lambda, "lambda");
  detail::require_probability(config.strategy.injection_weight, "injection_weight");
  const PureState injected =
      config.strategy.injected.value_or(default_injected_state(config.lambda));
  if (injected.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "injected state must be a qubit");
  }
  const double q = config.strategy.injection_weight;
  return mix({{1.0 - q, sender_state(config.lambda)}, {q, outer_product(injected)}});
}

/// Receiver state for the default strategy written out entrywise:
/// [[1/2, sqrt(lambda (1 - lambda)) / 2], [same, 1/2]].
inline DensityOperator receiver_state_closed_form(double lambda) {
  detail::require_probability(lambda, "lambda");
  const double off = 0.5 * std::sqrt(lambda * (1.0 - lambda));
  return DensityOperator::assume_valid(SquareMatrix::from_rows({{0.5, off}, {off, 0.5}}));
}

/// S_n(receiver) - S_n(sender); positive when the interceptor raises entropy.
inline double entropy_gain(const GameConfig& config) {
  return von_neumann(receiver_state(config)) - von_neumann(sender_state(config.lambda));
}

struct ThresholdSolution {
  double lower_root;
  double upper_root;
  double tolerance;
  double grid_step;
};

/// Lambdas in (0, 1) where the entropy gain changes sign, bracketed on a grid
/// and refined by bisection.
inline ThresholdSolution threshold_roots(double tolerance = 1e-9, double grid_step = 1e-3,
                                         const GameStrategy& strategy = {}) {
  if (!(tolerance > 0.0) || !(grid_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance and grid step must be positive");
  }
  const auto gain = [&](double lambda) { return entropy_gain({lambda, strategy}); };
  const auto brackets = bracket_sign_changes(gain, 0.0, 1.0, grid_step);
  if (brackets.empty()) {
    throw Error(ErrorCode::NoRootFound, "entropy gain never changes sign on (0, 1)");
  }
  if (brackets.size() != 2) {
    std::string where;
    for (const auto& b : brackets) where += " [" + detail::fmt_real(b.lower) + ", " +
                                            detail::fmt_real(b.upper) + "]";
    throw Error(brackets.size() > 2 ? ErrorCode::TooManyRoots : ErrorCode::NoRootFound,
                std::to_string(brackets.size()) + " sign change(s), expected 2:" + where);
  }
  return {bisect(gain, brackets[0], tolerance), bisect(gain, brackets[1], tolerance), tolerance,
          grid_step};
}

struct GameSweepRow {
  double lambda;
  double sender_entropy;
  double receiver_entropy;
  double gain;
};

inline std::vector<GameSweepRow> sweep_game(std::span<const double> lambdas,
                                            const GameStrategy& strategy = {}) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "empty lambda grid");
  std::vector<GameSweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const GameConfig config{lambda, strategy};
    const double s_a = von_neumann(sender_state(lambda));
    const double s_b = von_neumann(receiver_state(config));
    rows.push_back({lambda, s_a, s_b, s_b - s_a});
  }
  return rows;
}

}  // namespace qentropy
