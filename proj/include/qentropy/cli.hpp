#pragma once

#include <qentropy/io.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qentropy::cli {

enum ExitStatus : int { kSuccess = 0, kValidationFailure = 2, kNumericalFailure = 3 };

struct Options {
  std::optional<std::string> input;
  bool csv = false;
  double tol = 1e-9;
  std::optional<double> step;
  int count = 11;
  std::optional<double> p2;
  int figure = 2;
  double u2_step = 0.1;
};

// ---------------------------------------------------------------------------
// Sweep tables

/// a, S_i, pure share, S_n for rho = [[1/2, a], [a, 1/2]], a = 0, 0.05, ..., 0.5.
inline SweepTable table1() {
  SweepTable table{{"a", "S_i", "S_p_share", "S_n"}, {}, "Table 1: rho = [[0.5, a], [a, 0.5]]"};
  for (int k = 0; k <= 10; ++k) {
    const double a = 0.05 * k;
    const auto rho = make_density(SquareMatrix::from_rows({{0.5, a}, {a, 0.5}}));
    const EntropyReport r = report(rho, symmetric_split(rho));
    table.add_row({a, r.s_i, *r.pure_share, r.s_n});
  }
  return table;
}

/// a, S_n, S_i, S_ci along [[1/2, a], [a, 1/2]] for a in [0, 1/2].
inline SweepTable figure2(double step) {
  SweepTable table{{"a", "S_n", "S_i", "S_ci"}, {}, "Figure 2: entropy against a"};
  for (double a : detail::grid_values(0.5, step)) {
    const auto rho = make_density(SquareMatrix::from_rows({{0.5, a}, {a, 0.5}}));
    const EntropyReport r = report(rho, symmetric_split(rho));
    table.add_row({a, r.s_n, r.s_i, *r.s_ci});
  }
  return table;
}

/// x, a, S_ci over a 2-D grid; points outside a < x < 1 - a are skipped and
/// counted in `omitted`.
inline SweepTable figure3(double step, std::size_t& omitted) {
  SweepTable table{{"x", "a", "S_ci"}, {}, "Figure 3: composite entropy against x and a"};
  omitted = 0;
  for (double x : detail::grid_values(1.0, step)) {
    for (double a : detail::grid_values(0.5, step)) {
      try {
        table.add_row({x, a, composite_closed_form(x, 1.0 - x, a)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainViolation) throw;
        ++omitted;
      }
    }
  }
  return table;
}

inline SweepTable figure5(double step, const GameStrategy& strategy = {}) {
  SweepTable table{{"lambda", "S_n_A", "S_n_B", "gain"}, {}, "Figure 5: entropy transforming system"};
  const auto lambdas = detail::grid_values(1.0, step);
  for (const auto& row : sweep_game(lambdas, strategy)) {
    table.add_row({row.lambda, row.sender_entropy, row.receiver_entropy, row.gain});
  }
  return table;
}

inline SweepTable theorem_scan_table(const OrderingScanResult& scan) {
  SweepTable table{{"p0", "p1", "p2", "u2", "S_n", "S_ci", "S_i", "holds_left", "holds_right"},
                   {},
                   "Ordering S_n <= S_ci <= S_i over qubit preparations"};
  for (const auto& pt : scan.points) {
    table.add_row({pt.p0, pt.p1, pt.p2, pt.u2, pt.s_n, pt.s_ci, pt.s_i,
                   pt.holds_left ? 1.0 : 0.0, pt.holds_right ? 1.0 : 0.0});
  }
  return table;
}

/// Points of the [[1/2, a], [a, 1/2]] family: p0 = p1 and either no pure
/// part or u^2 = 1/2.
inline bool in_symmetric_family(const OrderingPoint& pt) {
  return std::abs(pt.p0 - pt.p1) < 1e-9 && (pt.p2 < 1e-12 || std::abs(pt.u2 - 0.5) < 1e-9);
}

// ---------------------------------------------------------------------------
// Rendering helpers

namespace detail {

inline std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  return format_real(z.real()) + (z.imag() < 0.0 ? "-" : "+") + format_real(std::abs(z.imag())) +
         "i";
}

inline void print_matrix(const SquareMatrix& m, std::ostream& out) {
  out << "matrix:\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? ", " : "") << format_complex(m(i, j));
    out << "]\n";
  }
}

inline std::string describe_state(const PureState& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.dim(); ++k) out += (k ? ", " : "") + format_complex(s[k]);
  return out + ")";
}

inline std::string describe_split(const MixedPureSplit& split) {
  std::string out = format_real(split.mixed_weight) + " * diag(";
  for (std::size_t k = 0; k < split.mixed_diagonal.size(); ++k) {
    out += (k ? ", " : "") + format_real(split.mixed_diagonal[k]);
  }
  out += ")";
  for (const auto& p : split.pures) {
    out += " + " + format_real(p.weight) + " * |" + describe_state(p.state) + ">";
  }
  return out;
}

inline bool same_split(const MixedPureSplit& l, const MixedPureSplit& r) {
  if (l.mixed_weight != r.mixed_weight || l.mixed_diagonal != r.mixed_diagonal ||
      l.pures.size() != r.pures.size()) {
    return false;
  }
  for (std::size_t k = 0; k < l.pures.size(); ++k) {
    if (l.pures[k].weight != r.pures[k].weight) return false;
    for (std::size_t i = 0; i < l.pures[k].state.dim(); ++i)
      if (l.pures[k].state[i] != r.pures[k].state[i]) return false;
  }
  return true;
}

inline InputDocument load_required(const Options& options) {
  if (!options.input) throw Error(ErrorCode::MalformedInput, "--input is required");
  return load_input(*options.input);
}

/// Strategy from an optional game file; the file's lambda is not used.
inline GameStrategy strategy_from(const Options& options) {
  if (!options.input) return {};
  const InputDocument doc = load_input(*options.input);
  if (doc.kind != InputKind::Game) {
    throw Error(ErrorCode::MalformedInput, "expected a game file, got kind \"" +
                                               std::string(to_string(doc.kind)) + "\"");
  }
  return std::get<GameConfig>(doc.payload).strategy;
}

[[noreturn]] inline void wrong_kind(const InputDocument& doc, const char* command) {
  throw Error(ErrorCode::MalformedInput, std::string(command) + " does not accept kind \"" +
                                             std::string(to_string(doc.kind)) + "\"");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each writes its report to `out` and returns an exit status;
// errors propagate as qentropy::Error and are mapped by run().

inline int cmd_entropy(const InputDocument& doc, const Options& options, std::ostream& out) {
  std::optional<DensityOperator> rho;
  std::optional<MixedPureSplit> split;
  std::optional<double> s_p;

  switch (doc.kind) {
    case InputKind::Density: {
      rho = std::get<DensityOperator>(doc.payload);
      if (options.p2) {
        split = split_family(*rho, *options.p2);
      } else if (rho->dim() == 2) {
        try {
          split = symmetric_split(*rho);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoValidSplit) throw;
        }
      }
      break;
    }
    case InputKind::Pure: {
      const auto& state = std::get<PureState>(doc.payload);
      rho = outer_product(state);
      split = MixedPureSplit{0.0, state.probabilities(), {{1.0, state}}};
      s_p = pure_entropy(state);
      break;
    }
    case InputKind::Ensemble: {
      const auto& ensemble = std::get<Ensemble>(doc.payload);
      rho = assemble_general(ensemble);
      split = split_from_ensemble(ensemble);
      break;
    }
    case InputKind::QubitSpec: {
      const auto& spec = std::get<QubitEnsembleSpec>(doc.payload);
      rho = assemble(spec);
      split = options.p2 ? split_family(*rho, *options.p2) : qubit_spec_split(spec);
      break;
    }
    case InputKind::Game:
      detail::wrong_kind(doc, "entropy");
  }

  const EntropyReport r = report(*rho, split);
  if (options.csv) {
    out << "s_n,s_i,s_ci,pure_share\n"
        << format_real(r.s_n) << ',' << format_real(r.s_i) << ','
        << (r.s_ci ? format_real(*r.s_ci) : "") << ','
        << (r.pure_share ? format_real(*r.pure_share) : "") << '\n';
    return kSuccess;
  }
  out << "kind: " << to_string(doc.kind) << '\n';
  detail::print_matrix(rho->matrix(), out);
  out << "eigenvalues:";
  for (double l : eig_hermitian(*rho).eigenvalues) out << ' ' << format_real(l);
  out << '\n';
  out << "S_n = " << format_real(r.s_n) << " bits\n";
  out << "S_i = " << format_real(r.s_i) << " bits\n";
  if (s_p) out << "S_p = " << format_real(*s_p) << " bits\n";
  if (r.s_ci) {
    out << "S_ci = " << format_real(*r.s_ci) << " bits\n";
    out << "pure share = " << format_real(*r.pure_share) << " bits\n";
    out << "split: " << detail::describe_split(*split) << '\n';
  } else {
    out << "S_ci: no mixed + pure split available\n";
  }
  return kSuccess;
}

inline int cmd_decompose(const InputDocument& doc, const Options& options, std::ostream& out) {
  if (doc.kind != InputKind::Density) detail::wrong_kind(doc, "decompose");
  const auto& rho = std::get<DensityOperator>(doc.payload);
  std::vector<MixedPureSplit> splits;
  for (auto& s : enumerate_splits(rho, options.count)) {
    if (splits.empty() || !detail::same_split(splits.back(), s)) splits.push_back(std::move(s));
  }

  SweepTable table{{"p2", "mixed_weight", "mixed_d0", "mixed_d1", "u2", "v2", "residual", "S_ci"},
                   {},
                   "mixed + pure decompositions"};
  for (const auto& s : splits) {
    const double p2 = s.pure_weight();
    const double u2 = s.pures.empty() ? 1.0 : std::norm(s.pures.front().state[0]);
    const double v2 = s.pures.empty() ? 0.0 : std::norm(s.pures.front().state[1]);
    const double residual = max_abs_diff(reconstruct(s).matrix(), rho.matrix());
    table.add_row({p2, s.mixed_weight, s.mixed_diagonal[0], s.mixed_diagonal[1], u2, v2, residual,
                   composite(s)});
  }
  if (options.csv) {
    write_csv(table, out);
    return kSuccess;
  }
  detail::print_matrix(rho.matrix(), out);
  out << splits.size() << " decomposition(s)\n";
  for (std::size_t k = 0; k < splits.size(); ++k) {
    const auto& row = table.rows[k];
    out << "  " << detail::describe_split(splits[k]) << "\n    residual " << format_real(row[6])
        << ", S_ci = " << format_real(row[7]) << " bits\n";
  }
  return kSuccess;
}

inline int cmd_table1(std::ostream& out) {
  write_csv(table1(), out);
  return kSuccess;
}

inline int cmd_sweep(const Options& options, std::ostream& out, std::ostream& err) {
  switch (options.figure) {
    case 2:
      write_csv(figure2(options.step.value_or(0.01)), out);
      return kSuccess;
    case 3: {
      std::size_t omitted = 0;
      write_csv(figure3(options.step.value_or(0.05), omitted), out);
      if (omitted) err << "omitted " << omitted << " grid points outside a < x < 1 - a\n";
      return kSuccess;
    }
    case 5:
      write_csv(figure5(options.step.value_or(0.01), detail::strategy_from(options)), out);
      return kSuccess;
    default:
      throw Error(ErrorCode::InvalidArgument,
                  "unknown figure " + std::to_string(options.figure) + " (expected 2, 3 or 5)");
  }
}

inline int cmd_threshold(const Options& options, std::ostream& out) {
  const GameStrategy strategy = detail::strategy_from(options);
  const ThresholdSolution sol = threshold_roots(options.tol, options.step.value_or(1e-3), strategy);
  const double edges[] = {0.0, sol.lower_root, sol.upper_root, 1.0};
  if (options.csv) {
    out << "lower_root,upper_root,tolerance,grid_step\n"
        << format_real(sol.lower_root) << ',' << format_real(sol.upper_root) << ','
        << format_real(sol.tolerance) << ',' << format_real(sol.grid_step) << '\n';
    return kSuccess;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "lower_root = %.6f\nupper_root = %.6f\n", sol.lower_root,
                sol.upper_root);
  out << buf << "tolerance = " << format_real(sol.tolerance)
      << ", grid step = " << format_real(sol.grid_step) << '\n';
  for (int k = 0; k < 3; ++k) {
    const double mid = 0.5 * (edges[k] + edges[k + 1]);
    const double gain = entropy_gain({mid, strategy});
    std::snprintf(buf, sizeof buf, "interval (%.6f, %.6f): gain at midpoint %s is %c\n", edges[k],
                  edges[k + 1], format_real(mid).c_str(), gain > 0.0 ? '+' : '-');
    out << buf;
  }
  return kSuccess;
}

inline int cmd_holevo(const InputDocument& doc, const Options& options, std::ostream& out) {
  if (doc.kind != InputKind::Ensemble) detail::wrong_kind(doc, "holevo");
  const HolevoReport h = holevo_quantity(std::get<Ensemble>(doc.payload));
  if (options.csv) {
    out << "chi,s_mix,avg_component_entropy\n"
        << format_real(h.chi) << ',' << format_real(h.s_mix) << ','
        << format_real(h.avg_component_entropy) << '\n';
    return kSuccess;
  }
  out << "chi = " << format_real(h.chi) << " bits\n"
      << "S_n(average state) = " << format_real(h.s_mix) << " bits\n"
      << "sum p_i S_n(rho_i) = " << format_real(h.avg_component_entropy) << " bits\n";
  return kSuccess;
}

inline int cmd_theorem_scan(const Options& options, std::ostream& out, std::ostream& err) {
  const double step = options.step.value_or(0.05);
  const OrderingScanResult scan = ordering_scan({step, step, options.u2_step});

  std::size_t family_points = 0, family_violations = 0;
  std::size_t slice_points = 0, slice_violations = 0;
  for (const auto& pt : scan.points) {
    const bool ok = pt.holds_left && pt.holds_right;
    if (std::abs(pt.p0 - pt.p1) < 1e-9) {
      ++slice_points;
      slice_violations += ok ? 0 : 1;
    }
    if (in_symmetric_family(pt)) {
      ++family_points;
      family_violations += ok ? 0 : 1;
    }
  }

  std::ostream& summary = options.csv ? err : out;
  if (options.csv) write_csv(theorem_scan_table(scan), out);
  summary << "points=" << scan.points.size() << " holds_left_violations=" << scan.left_violations
          << " holds_right_violations=" << scan.right_violations << '\n';
  summary << "[[0.5,a],[a,0.5]] family: points=" << family_points
          << " violations=" << family_violations << '\n';
  summary << "p0=p1 slice: points=" << slice_points << " violations=" << slice_violations << '\n';
  if (!options.csv) {
    for (const auto& pt : scan.points) {
      if (pt.holds_left && pt.holds_right) continue;
      out << "violation at p0=" << format_real(pt.p0) << " p1=" << format_real(pt.p1)
          << " p2=" << format_real(pt.p2) << " u2=" << format_real(pt.u2)
          << ": S_n=" << format_real(pt.s_n) << " S_ci=" << format_real(pt.s_ci)
          << " S_i=" << format_real(pt.s_i) << (pt.holds_left ? "" : " [left]")
          << (pt.holds_right ? "" : " [right]") << '\n';
    }
  }
  return kSuccess;
}

/// Dispatches a subcommand and maps failures onto the exit status contract:
/// 2 for invalid input, 3 for numerical failure.
inline int run(std::string_view command, const Options& options, std::ostream& out,
               std::ostream& err) {
  try {
    if (command == "entropy") return cmd_entropy(detail::load_required(options), options, out);
    if (command == "decompose") return cmd_decompose(detail::load_required(options), options, out);
    if (command == "table1") return cmd_table1(out);
    if (command == "sweep") return cmd_sweep(options, out, err);
    if (command == "threshold") return cmd_threshold(options, out);
    if (command == "holevo") return cmd_holevo(detail::load_required(options), options, out);
    if (command == "theorem-scan") return cmd_theorem_scan(options, out, err);
    throw Error(ErrorCode::InvalidArgument, "unknown command \"" + std::string(command) + "\"");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kNumericalFailure : kValidationFailure;
  }
}

}  // namespace qentropy::cli
