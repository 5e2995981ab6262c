#pragma once

#include <qentropy/game.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace qentropy {

enum class InputKind { Density, Pure, Ensemble, QubitSpec, Game };

inline std::string_view to_string(InputKind kind) {
  switch (kind) {
    case InputKind::Density: return "density";
    case InputKind::Pure: return "pure";
    case InputKind::Ensemble: return "ensemble";
    case InputKind::QubitSpec: return "qubit-spec";
    case InputKind::Game: return "game";
  }
  return "unknown";
}

using InputPayload = std::variant<DensityOperator, PureState, Ensemble, QubitEnsembleSpec, GameConfig>;

/// A parsed and validated input file.
struct InputDocument {
  InputKind kind;
  InputPayload payload;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedInput, what);
}

inline const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) malformed(std::string("expected an object holding \"") + name + "\"");
  const auto it = obj.find(name);
  if (it == obj.end()) malformed(std::string("missing field \"") + name + "\"");
  return *it;
}

inline double number(const json& value, const char* what) {
  if (!value.is_number()) malformed(std::string(what) + " must be a number");
  return value.get<double>();
}

inline std::vector<double> number_array(const json& value, const char* what) {
  if (!value.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : value) out.push_back(number(v, what));
  return out;
}

inline PureState parse_pure(const json& obj) {
  const auto re = number_array(field(obj, "re"), "re");
  std::vector<double> im(re.size(), 0.0);
  if (obj.contains("im")) im = number_array(obj.at("im"), "im");
  if (im.size() != re.size()) malformed("re and im lengths differ");
  std::vector<Complex> amps;
  for (std::size_t k = 0; k < re.size(); ++k) amps.emplace_back(re[k], im[k]);
  return PureState(std::move(amps));
}

inline std::vector<std::vector<double>> number_rows(const json& value, const char* what) {
  if (!value.is_array()) malformed(std::string(what) + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : value) rows.push_back(number_array(row, what));
  return rows;
}

inline DensityOperator parse_density(const json& obj) {
  const auto re = number_rows(field(obj, "re"), "re");
  const std::size_t d = re.size();
  if (d == 0) malformed("density matrix has no rows");
  if (obj.contains("dim")) {
    const json& dim = obj.at("dim");
    if (!dim.is_number_integer() || dim.get<long>() != static_cast<long>(d)) {
      malformed("dim does not match the number of rows");
    }
  }
  std::vector<std::vector<double>> im(d, std::vector<double>(d, 0.0));
  if (obj.contains("im")) im = number_rows(obj.at("im"), "im");
  if (im.size() != d) malformed("im must have as many rows as re");
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < d; ++i) {
    if (re[i].size() != d || im[i].size() != d) malformed("matrix must be square");
    for (std::size_t j = 0; j < d; ++j) entries.emplace_back(re[i][j], im[i][j]);
  }
  return make_density(SquareMatrix(d, std::move(entries)));
}

inline Ensemble parse_ensemble(const json& obj) {
  const json& list = field(obj, "components");
  if (!list.is_array() || list.empty()) malformed("components must be a nonempty array");
  std::vector<EnsembleComponent> components;
  for (const auto& c : list) {
    const double weight = number(field(c, "weight"), "weight");
    const bool has_pure = c.contains("pure");
    const bool has_density = c.contains("density");
    if (has_pure == has_density) malformed("each component needs exactly one of pure / density");
    if (has_pure) {
      components.push_back({weight, parse_pure(c.at("pure"))});
    } else {
      components.push_back({weight, parse_density(c.at("density"))});
    }
  }
  return Ensemble(std::move(components));
}

inline QubitEnsembleSpec parse_qubit_spec(const json& obj) {
  return QubitEnsembleSpec::from_u2(number(field(obj, "p0"), "p0"), number(field(obj, "p1"), "p1"),
                                    number(field(obj, "p2"), "p2"), number(field(obj, "u2"), "u2"));
}

inline GameConfig parse_game(const json& obj) {
  GameConfig config;
  config.lambda = number(field(obj, "lambda"), "lambda");
  require_probability(config.lambda, "lambda");
  if (obj.contains("injection_weight")) {
    config.strategy.injection_weight = number(obj.at("injection_weight"), "injection_weight");
    require_probability(config.strategy.injection_weight, "injection_weight");
  }
  if (obj.contains("injected")) config.strategy.injected = parse_pure(obj.at("injected"));
  return config;
}

}  // namespace detail

inline InputDocument parse_input(std::string_view text) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) detail::malformed("input is not valid object notation");
  const detail::json& kind_field = detail::field(doc, "kind");
  if (!kind_field.is_string()) detail::malformed("kind must be a string");
  const auto kind = kind_field.get<std::string>();
  if (kind == "density") return {InputKind::Density, detail::parse_density(doc)};
  if (kind == "pure") return {InputKind::Pure, detail::parse_pure(doc)};
  if (kind == "ensemble") return {InputKind::Ensemble, detail::parse_ensemble(doc)};
  if (kind == "qubit-spec") return {InputKind::QubitSpec, detail::parse_qubit_spec(doc)};
  if (kind == "game") return {InputKind::Game, detail::parse_game(doc)};
  detail::malformed("unknown kind \"" + kind + "\"");
}

inline InputDocument load_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

// ---------------------------------------------------------------------------
// Tabular output

/// Real number with 6 significant digits; negative zero prints as 0.
inline std::string format_real(double value) {
  if (value == 0.0) value = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

/// Rectangular table of reals, rows in ascending sweep order.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string provenance;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
      throw Error(ErrorCode::DimensionMismatch, "row width differs from the header");
    }
    rows.push_back(std::move(row));
  }
};

inline void write_csv(const SweepTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
    out << '\n';
  }
}

}  // namespace qentropy
