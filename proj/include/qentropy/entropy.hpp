#pragma once

#include <qentropy/ensemble.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace qentropy {

/// Shannon entropy in bits, with 0 log 0 = 0. Entries in [-1e-12, 0) are
/// treated as zero. Terms are summed in sorted order so the result does not
/// depend on the order of `p`.
inline double shannon(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorCode::NotAProbabilityVector, "empty probability vector");
  std::vector<double> terms;
  terms.reserve(p.size());
  double total = 0.0;
  for (double pi : p) {
    if (!(pi >= -1e-12) || !std::isfinite(pi)) {
      throw Error(ErrorCode::NotAProbabilityVector, "entry " + detail::fmt_real(pi));
    }
    pi = std::max(pi, 0.0);
    total += pi;
    terms.push_back(pi > 0.0 ? -pi * std::log2(pi) : 0.0);
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorCode::NotAProbabilityVector, "entries sum to " + detail::fmt_real(total));
  }
  std::sort(terms.begin(), terms.end());
  double h = 0.0;
  for (double t : terms) h += t;
  return h;
}

inline double shannon(std::initializer_list<double> p) {
  return shannon(std::span<const double>(p.begin(), p.size()));
}

/// -tr(rho log2 rho)
inline double von_neumann(const DensityOperator& op) {
  return shannon(jacobi_eigen(op.matrix()).values);
}

/// Shannon entropy of the diagonal; blind to off-diagonal coherences.
inline double informational(const DensityOperator& op) { return shannon(op.diagonal()); }

/// Shannon entropy of the squared amplitudes in the reference basis.
inline double pure_entropy(const PureState& state) { return shannon(state.probabilities()); }

/// sum_k w_k S_p(phi_k): the entropy carried by the pure components alone.
inline double pure_share(const MixedPureSplit& split) {
  double share = 0.0;
  for (const auto& p : split.pures) share += p.weight * pure_entropy(p.state);
  return share;
}

/// Mixed weight times the entropy of the (diagonal) mixed component plus the
/// weighted informational entropies of the pure components.
inline double composite(const MixedPureSplit& split) {
  split.validate();
  const double mixed = split.mixed_weight > 0.0 ? split.mixed_weight * shannon(split.mixed_diagonal)
                                                : 0.0;
  return mixed + pure_share(split);
}

/// Composite entropy of the symmetric split of [[x, a], [a, y]]:
/// -(x-a)log(x-a) - (y-a)log(y-a) + (1-2a)log(1-2a) + 2a.
inline double composite_closed_form(double x, double y, double a) {
  if (std::abs(x + y - 1.0) > 1e-9) {
    throw Error(ErrorCode::DomainViolation, "x + y must be 1, got " + detail::fmt_real(x + y));
  }
  if (!(a >= 0.0)) throw Error(ErrorCode::DomainViolation, "a must be >= 0");
  if (!(x > a && y > a)) {
    throw Error(ErrorCode::DomainViolation, "need x > a and y > a (x = " + detail::fmt_real(x) +
                                                ", y = " + detail::fmt_real(y) +
                                                ", a = " + detail::fmt_real(a) + ")");
  }
  const auto xlogx = [](double t) { return t > 0.0 ? t * std::log2(t) : 0.0; };
  return -xlogx(x - a) - xlogx(y - a) + xlogx(1.0 - 2.0 * a) + 2.0 * a;
}

struct EntropyReport {
  double s_n = 0.0;
  double s_i = 0.0;
  std::optional<double> s_ci;
  std::optional<double> pure_share;
};

inline EntropyReport report(const DensityOperator& op,
                            const std::optional<MixedPureSplit>& split = std::nullopt) {
  EntropyReport out;
  out.s_n = von_neumann(op);
  out.s_i = informational(op);
  if (split) {
    if (split->dim() != op.dim()) {
      throw Error(ErrorCode::SplitMismatch, "split dimension differs from the operator's");
    }
    const double residual = max_abs_diff(reconstruct(*split).matrix(), op.matrix());
    if (residual > 1e-8) {
      throw Error(ErrorCode::SplitMismatch,
                  "split reconstructs the operator only to " + detail::fmt_real(residual));
    }
    out.s_ci = composite(*split);
    out.pure_share = qentropy::pure_share(*split);
  }
  return out;
}

struct HolevoReport {
  double chi = 0.0;
  double s_mix = 0.0;
  double avg_component_entropy = 0.0;
};

/// S_n(sum p_i rho_i) - sum p_i S_n(rho_i). Pure components contribute zero.
inline HolevoReport holevo_quantity(const Ensemble& ensemble) {
  HolevoReport out;
  out.s_mix = von_neumann(assemble_general(ensemble));
  for (const auto& c : ensemble.components()) {
    if (const auto* op = std::get_if<DensityOperator>(&c.state)) {
      out.avg_component_entropy += c.weight * von_neumann(*op);
    }
  }
  out.chi = out.s_mix - out.avg_component_entropy;
  return out;
}

// ---------------------------------------------------------------------------
// Ordering scan: where does S_n <= S_ci <= S_i hold over qubit preparations?

struct OrderingGrid {
  double p0_step = 0.05;
  double p1_step = 0.05;
  double u2_step = 0.1;
};

struct OrderingPoint {
  double p0, p1, p2, u2;
  double s_n, s_ci, s_i;
  bool holds_left;   // S_n <= S_ci
  bool holds_right;  // S_ci <= S_i
};

struct OrderingScanResult {
  OrderingGrid grid;
  std::vector<OrderingPoint> points;
  std::size_t left_violations = 0;
  std::size_t right_violations = 0;
};

namespace detail {

/// 0, step, 2 step, ... up to `hi` (inclusive within rounding).
inline std::vector<double> grid_values(double hi, double step) {
  const auto n = static_cast<long>(std::floor(hi / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(n + 1, 1L)));
  for (long k = 0; k <= n; ++k) out.push_back(std::min(static_cast<double>(k) * step, hi));
  return out;
}

}  // namespace detail

inline OrderingPoint evaluate_ordering(const QubitEnsembleSpec& spec) {
  const DensityOperator rho = assemble(spec);
  OrderingPoint pt{};
  pt.p0 = spec.p0;
  pt.p1 = spec.p1;
  pt.p2 = spec.p2;
  pt.u2 = spec.u * spec.u;
  pt.s_n = von_neumann(rho);
  pt.s_ci = composite(qubit_spec_split(spec));
  pt.s_i = informational(rho);
  pt.holds_left = pt.s_n <= pt.s_ci + 1e-12;
  pt.holds_right = pt.s_ci <= pt.s_i + 1e-12;
  return pt;
}

/// Records both inequalities at every grid point (p0, p1, p2 = 1 - p0 - p1, u^2)
/// in ascending (p0, p1, u^2) order. Violations are reported, not asserted.
inline OrderingScanResult ordering_scan(const OrderingGrid& grid = {}) {
  for (double step : {grid.p0_step, grid.p1_step, grid.u2_step}) {
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid steps must be positive");
  }
  OrderingScanResult out;
  out.grid = grid;
  const auto u2_values = detail::grid_values(1.0, grid.u2_step);
  for (double p0 : detail::grid_values(1.0, grid.p0_step)) {
    for (double p1 : detail::grid_values(1.0 - p0, grid.p1_step)) {
      const double p2 = std::max(0.0, 1.0 - p0 - p1);
      for (double u2 : u2_values) {
        const OrderingPoint pt = evaluate_ordering(QubitEnsembleSpec::from_u2(p0, p1, p2, u2));
        out.left_violations += pt.holds_left ? 0 : 1;
        out.right_violations += pt.holds_right ? 0 : 1;
        out.points.push_back(pt);
      }
    }
  }
  return out;
}

}  // namespace qentropy
