#pragma once

#include <qentropy/density.hpp>

#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace qentropy {

struct EnsembleComponent {
  double weight;
  std::variant<PureState, DensityOperator> state;

  std::size_t dim() const {
    return std::visit([](const auto& s) { return s.dim(); }, state);
  }

  DensityOperator as_operator() const {
    if (const auto* pure = std::get_if<PureState>(&state)) return outer_product(*pure);
    return std::get<DensityOperator>(state);
  }
};

/// Preparation ensemble {p_i, rho_i}: nonempty, weights summing to one,
/// common dimension.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleComponent> components)
      : components_(std::move(components)) {
    if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "empty ensemble");
    dim_ = components_.front().dim();
    double total = 0.0;
    for (const auto& c : components_) {
      if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
        throw Error(ErrorCode::WeightSumInvalid,
                    "component weight " + detail::fmt_real(c.weight) + " outside [0, 1]");
      }
      if (c.dim() != dim_) {
        throw Error(ErrorCode::DimensionMismatch, "ensemble mixes dimensions " +
                                                      std::to_string(dim_) + " and " +
                                                      std::to_string(c.dim()));
      }
      total += c.weight;
    }
    if (std::abs(total - 1.0) > DensityTolerance::kWeightSum) {
      throw Error(ErrorCode::WeightSumInvalid,
                  "ensemble weights deviate from 1 by " + detail::fmt_real(total - 1.0));
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<EnsembleComponent>& components() const noexcept { return components_; }

 private:
  std::vector<EnsembleComponent> components_;
  std::size_t dim_ = 0;
};

/// Qubit source emitting |0>, |1> and u|0> + v|1> with probabilities p0, p1, p2.
struct QubitEnsembleSpec {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double u = 1.0;
  double v = 0.0;

  static constexpr double kTolerance = 1e-9;

  /// Builds the parameters from u^2; v is the nonnegative root of 1 - u^2.
  static QubitEnsembleSpec from_u2(double p0, double p1, double p2, double u2) {
    if (!(u2 >= -kTolerance && u2 <= 1.0 + kTolerance)) {
      throw Error(ErrorCode::DomainViolation, "u^2 = " + detail::fmt_real(u2) + " outside [0, 1]");
    }
    u2 = std::clamp(u2, 0.0, 1.0);
    QubitEnsembleSpec spec{p0, p1, p2, std::sqrt(u2), std::sqrt(1.0 - u2)};
    spec.validate();
    return spec;
  }

  void validate() const {
    for (double p : {p0, p1, p2}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::NotAProbabilityVector,
                    "probability " + detail::fmt_real(p) + " outside [0, 1]");
      }
    }
    if (std::abs(p0 + p1 + p2 - 1.0) > kTolerance) {
      throw Error(ErrorCode::WeightSumInvalid,
                  "p0 + p1 + p2 deviates from 1 by " + detail::fmt_real(p0 + p1 + p2 - 1.0));
    }
    if (!(u >= 0.0 && v >= 0.0)) throw Error(ErrorCode::DomainViolation, "u and v must be >= 0");
    if (std::abs(u * u + v * v - 1.0) > kTolerance) {
      throw Error(ErrorCode::NotNormalized,
                  "u^2 + v^2 deviates from 1 by " + detail::fmt_real(u * u + v * v - 1.0));
    }
  }

  PureState superposed() const { return PureState{u, v}; }
};

struct PureComponent {
  double weight;
  PureState state;
};

/// rho = mixed_weight * diag(mixed_diagonal) + sum_k w_k |phi_k><phi_k|.
struct MixedPureSplit {
  double mixed_weight = 1.0;
  std::vector<double> mixed_diagonal;
  std::vector<PureComponent> pures;

  double pure_weight() const {
    double total = 0.0;
    for (const auto& p : pures) total += p.weight;
    return total;
  }

  std::size_t dim() const { return mixed_diagonal.size(); }

  void validate() const {
    if (mixed_diagonal.empty()) throw Error(ErrorCode::InvalidArgument, "empty mixed diagonal");
    if (!(mixed_weight >= 0.0 && mixed_weight <= 1.0)) {
      throw Error(ErrorCode::WeightSumInvalid, "mixed weight outside [0, 1]");
    }
    if (std::abs(mixed_weight + pure_weight() - 1.0) > DensityTolerance::kWeightSum) {
      throw Error(ErrorCode::WeightSumInvalid, "split weights do not sum to 1");
    }
    double diag_sum = 0.0;
    for (double d : mixed_diagonal) {
      if (d < 0.0) throw Error(ErrorCode::NotAProbabilityVector, "negative mixed diagonal entry");
      diag_sum += d;
    }
    if (std::abs(diag_sum - 1.0) > DensityTolerance::kWeightSum) {
      throw Error(ErrorCode::NotAProbabilityVector, "mixed diagonal does not sum to 1");
    }
    for (const auto& p : pures) {
      if (p.state.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "pure component dim");
      if (!(p.weight >= 0.0)) throw Error(ErrorCode::WeightSumInvalid, "negative pure weight");
    }
  }
};

/// Mixes the split's components back into a single operator.
inline DensityOperator reconstruct(const MixedPureSplit& split) {
  split.validate();
  std::vector<WeightedOperator> parts;
  parts.push_back({split.mixed_weight,
                   DensityOperator::assume_valid(SquareMatrix::diagonal(split.mixed_diagonal))});
  for (const auto& p : split.pures) parts.push_back({p.weight, outer_product(p.state)});
  return mix(parts);
}

/// [[p0 + p2 u^2, p2 u v], [p2 u v, p1 + p2 v^2]]
inline DensityOperator assemble(const QubitEnsembleSpec& spec) {
  spec.validate();
  const double uv = spec.p2 * spec.u * spec.v;
  return DensityOperator::assume_valid(SquareMatrix::from_rows({
      {spec.p0 + spec.p2 * spec.u * spec.u, uv},
      {uv, spec.p1 + spec.p2 * spec.v * spec.v},
  }));
}

inline DensityOperator assemble_general(const Ensemble& ensemble) {
  std::vector<WeightedOperator> parts;
  parts.reserve(ensemble.components().size());
  for (const auto& c : ensemble.components()) parts.push_back({c.weight, c.as_operator()});
  return mix(parts);
}

/// The split read directly off the preparation: |0>, |1> form the mixed part
/// and the superposed state is the pure part.
inline MixedPureSplit qubit_spec_split(const QubitEnsembleSpec& spec) {
  spec.validate();
  MixedPureSplit split;
  split.mixed_weight = spec.p0 + spec.p1;
  if (split.mixed_weight > 0.0) {
    split.mixed_diagonal = {spec.p0 / split.mixed_weight, spec.p1 / split.mixed_weight};
  } else {
    split.mixed_diagonal = {0.5, 0.5};
  }
  if (spec.p2 > 0.0) split.pures.push_back({spec.p2, spec.superposed()});
  return split;
}

/// Reads a split off an ensemble: basis-state pure components and diagonal
/// density components form the mixed part, other pure states stay pure.
/// Returns nullopt when some density component has off-diagonal terms.
inline std::optional<MixedPureSplit> split_from_ensemble(const Ensemble& ensemble,
                                                         double tolerance = 1e-12) {
  const std::size_t d = ensemble.dim();
  std::vector<double> mixed(d, 0.0);
  MixedPureSplit split;
  split.mixed_weight = 0.0;
  for (const auto& c : ensemble.components()) {
    if (const auto* pure = std::get_if<PureState>(&c.state)) {
      const auto probs = pure->probabilities();
      const auto peak = std::max_element(probs.begin(), probs.end());
      if (*peak >= 1.0 - tolerance) {
        mixed[static_cast<std::size_t>(peak - probs.begin())] += c.weight;
        split.mixed_weight += c.weight;
      } else {
        split.pures.push_back({c.weight, *pure});
      }
      continue;
    }
    const auto& op = std::get<DensityOperator>(c.state);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j && std::abs(op(i, j)) > tolerance) return std::nullopt;
    const auto diag = op.diagonal();
    for (std::size_t i = 0; i < d; ++i) mixed[i] += c.weight * diag[i];
    split.mixed_weight += c.weight;
  }
  if (split.mixed_weight > 0.0) {
    for (auto& m : mixed) m /= split.mixed_weight;
    split.mixed_diagonal = std::move(mixed);
  } else {
    split.mixed_diagonal.assign(d, 1.0 / static_cast<double>(d));
  }
  return split;
}

/// Which root of p2 u v = a, u^2 + v^2 = 1 to use for the pure component.
enum class SplitBranch {
  Primary,   // u^2 >= v^2
  Mirrored,  // u^2 <= v^2
};

namespace detail {

inline constexpr double kSplitSlack = 1e-9;

inline void require_qubit(const DensityOperator& op, const char* what) {
  if (op.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " needs a qubit operator, got dim " + std::to_string(op.dim()));
  }
}

// Diagonal phase carried by the off-diagonal entry; the split is computed for
// |a| and the phase is put back on the pure component's second amplitude.
inline Complex offdiag_phase(const DensityOperator& op) {
  const double magnitude = std::abs(op.a());
  return magnitude > 0.0 ? op.a() / magnitude : Complex{1.0, 0.0};
}

inline double clamp_tiny_negative(double value) { return value < 0.0 ? 0.0 : value; }

}  // namespace detail

/// Member of the one-parameter family rho = (1 - p2) diag(m) + p2 |phi><phi|
/// with phi = (u, v e^{i arg a}) and p2 u v = |a|.
inline MixedPureSplit split_family(const DensityOperator& op, double p2,
                                   SplitBranch branch = SplitBranch::Primary) {
  detail::require_qubit(op, "split_family");
  if (!(p2 > 0.0 && p2 <= 1.0)) {
    throw Error(ErrorCode::NoValidSplit, "p2 = " + detail::fmt_real(p2) + " outside (0, 1]");
  }
  const double a = std::abs(op.a());
  const double x = op.x();
  const double y = op.y();

  double discriminant = 1.0 - 4.0 * a * a / (p2 * p2);
  if (discriminant < 0.0) {
    if (discriminant < -1e-12) {
      throw Error(ErrorCode::NoValidSplit, "p2 = " + detail::fmt_real(p2) +
                                               " is below 2|a| = " + detail::fmt_real(2.0 * a));
    }
    discriminant = 0.0;
  }
  const double root = std::sqrt(discriminant);
  const double larger = 0.5 * (1.0 + root);
  const double smaller = 0.5 * (1.0 - root);
  const double u2 = branch == SplitBranch::Primary ? larger : smaller;
  const double v2 = branch == SplitBranch::Primary ? smaller : larger;

  MixedPureSplit split;
  split.mixed_weight = 1.0 - p2;
  const double rest0 = x - p2 * u2;
  const double rest1 = y - p2 * v2;
  if (split.mixed_weight <= 1e-12) {
    if (std::abs(rest0) > detail::kSplitSlack || std::abs(rest1) > detail::kSplitSlack) {
      throw Error(ErrorCode::NoValidSplit, "p2 = 1 requires a pure operator");
    }
    split.mixed_weight = 0.0;
    split.mixed_diagonal = {x, y};
  } else {
    const double m0 = rest0 / split.mixed_weight;
    const double m1 = rest1 / split.mixed_weight;
    if (m0 < -detail::kSplitSlack || m1 < -detail::kSplitSlack) {
      throw Error(ErrorCode::NoValidSplit, "p2 = " + detail::fmt_real(p2) +
                                               " leaves a negative mixed diagonal (" +
                                               detail::fmt_real(m0) + ", " +
                                               detail::fmt_real(m1) + ")");
    }
    split.mixed_diagonal = {detail::clamp_tiny_negative(m0), detail::clamp_tiny_negative(m1)};
  }
  const Complex phase = detail::offdiag_phase(op);
  split.pures.push_back(
      {p2, PureState(std::vector<Complex>{std::sqrt(u2), std::sqrt(v2) * phase})});
  return split;
}

/// p2 = 2|a| member of the family: the pure part is |+> (up to the phase of a).
/// Needs x >= |a| and y >= |a|; at |a| = 1/2 the operator is |+><+| itself and
/// the mixed weight is zero.
inline MixedPureSplit symmetric_split(const DensityOperator& op) {
  detail::require_qubit(op, "symmetric_split");
  const double a = std::abs(op.a());
  const double x = op.x();
  const double y = op.y();
  if (a == 0.0) return MixedPureSplit{1.0, {x, y}, {}};
  if (x < a - 1e-12 || y < a - 1e-12) {
    throw Error(ErrorCode::NoValidSplit, "both diagonal entries must reach |a| = " +
                                             detail::fmt_real(a));
  }
  const double pure_weight = 2.0 * a;
  const double mixed_weight = 1.0 - pure_weight;
  const double amp = std::sqrt(0.5);
  const Complex phase = detail::offdiag_phase(op);
  std::vector<double> diagonal{x, y};
  if (mixed_weight > 1e-12) {
    diagonal = {detail::clamp_tiny_negative((x - a) / mixed_weight),
                detail::clamp_tiny_negative((y - a) / mixed_weight)};
  }
  return MixedPureSplit{std::max(mixed_weight, 0.0),
                        std::move(diagonal),
                        {{pure_weight, PureState(std::vector<Complex>{amp, amp * phase})}}};
}

struct SplitInterval {
  double lower;
  double upper;
};

/// Range of p2 for which split_family(op, p2, branch) has a nonnegative mixed
/// diagonal, or nullopt when the branch admits none.
inline std::optional<SplitInterval> split_interval(const DensityOperator& op, SplitBranch branch) {
  detail::require_qubit(op, "split_interval");
  const double a = std::abs(op.a());
  // On the primary branch p2 u^2 increases and p2 v^2 decreases with p2.
  const double rising = branch == SplitBranch::Primary ? op.x() : op.y();
  const double falling = branch == SplitBranch::Primary ? op.y() : op.x();
  if (rising < a || rising <= 0.0) return std::nullopt;
  double lower = 2.0 * a;
  if (falling < a) lower = (falling * falling + a * a) / falling;
  const double upper = std::min(1.0, (rising * rising + a * a) / rising);
  if (lower > upper + 1e-12) return std::nullopt;
  return SplitInterval{std::min(lower, 1.0), std::max(std::min(lower, 1.0), upper)};
}

/// Samples the split family on a uniform p2 grid (endpoints included) over
/// the primary branch's valid interval, falling back to the mirrored branch
/// when the primary one is empty. A diagonal operator yields `count` copies of
/// its all-mixed split; a degenerate interval yields a single split.
inline std::vector<MixedPureSplit> enumerate_splits(const DensityOperator& op, int count) {
  detail::require_qubit(op, "enumerate_splits");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");

  if (std::abs(op.a()) == 0.0) {
    return std::vector<MixedPureSplit>(static_cast<std::size_t>(count),
                                       MixedPureSplit{1.0, {op.x(), op.y()}, {}});
  }

  SplitBranch branch = SplitBranch::Primary;
  auto interval = split_interval(op, branch);
  if (!interval) {
    branch = SplitBranch::Mirrored;
    interval = split_interval(op, branch);
  }
  std::vector<MixedPureSplit> out;
  if (!interval) return out;

  const double width = interval->upper - interval->lower;
  const int points = width < 1e-12 ? 1 : count;
  for (int k = 0; k < points; ++k) {
    const double p2 = points == 1 ? interval->lower
                                  : interval->lower + width * k / static_cast<double>(points - 1);
    try {
      out.push_back(split_family(op, p2, branch));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoValidSplit) throw;
    }
  }
  return out;
}

}  // namespace qentropy
