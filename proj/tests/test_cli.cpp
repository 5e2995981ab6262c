#include <qentropy/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace qentropy;
namespace cli = qentropy::cli;

namespace {

std::string data(const std::string& name) { return std::string(QENTROPY_DATA_DIR) + "/" + name; }

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::string& command, cli::Options options) {
  std::ostringstream out, err;
  const int status = cli::run(command, options, out, err);
  return {status, out.str(), err.str()};
}

cli::Options with_input(const std::string& file, bool csv = false) {
  cli::Options o;
  o.input = data(file);
  o.csv = csv;
  return o;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(ParseInput, AllKinds) {
  EXPECT_EQ(InputKind::Density, load_input(data("density_07_03.json")).kind);
  EXPECT_EQ(InputKind::Pure, load_input(data("pure_08_06.json")).kind);
  EXPECT_EQ(InputKind::Ensemble, load_input(data("ensemble_orthogonal.json")).kind);
  EXPECT_EQ(InputKind::QubitSpec, load_input(data("qubit_spec_04_03_03.json")).kind);
  const auto game = load_input(data("game_lambda_025.json"));
  ASSERT_EQ(InputKind::Game, game.kind);
  EXPECT_EQ(0.25, std::get<GameConfig>(game.payload).lambda);
  EXPECT_EQ(0.5, std::get<GameConfig>(game.payload).strategy.injection_weight);
  EXPECT_FALSE(std::get<GameConfig>(game.payload).strategy.injected);
}

TEST(ParseInput, ImaginaryPartDefaultsToZero) {
  const auto doc = parse_input(R"({"kind":"density","re":[[0.5,0.1],[0.1,0.5]]})");
  EXPECT_EQ(Complex(0.1, 0.0), std::get<DensityOperator>(doc.payload)(0, 1));
  const auto complex = load_input(data("density_complex.json"));
  EXPECT_EQ(Complex(0.0, 0.25), std::get<DensityOperator>(complex.payload)(1, 0));
}

TEST(ParseInput, NamedValidationErrors) {
  const auto code = [](const std::string& file) {
    try {
      load_input(data(file));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(ErrorCode::NotPositiveSemidefinite, code("invalid/not_positive.json"));
  EXPECT_EQ(ErrorCode::NotHermitian, code("invalid/not_hermitian.json"));
  EXPECT_EQ(ErrorCode::MalformedInput, code("invalid/wrong_dim.json"));
  EXPECT_EQ(ErrorCode::WeightSumInvalid, code("invalid/weights.json"));
  EXPECT_EQ(ErrorCode::MalformedInput, code("invalid/truncated.json"));
  EXPECT_EQ(ErrorCode::MalformedInput, code("invalid/unknown_kind.json"));
  EXPECT_EQ(ErrorCode::MalformedInput, code("does_not_exist.json"));
}

TEST(ParseInput, RejectsAmbiguousComponent) {
  EXPECT_THROW(parse_input(R"({"kind":"ensemble","components":[{"weight":1,
      "pure":{"re":[1,0]},"density":{"re":[[1,0],[0,0]]}}]})"),
               Error);
  EXPECT_THROW(parse_input(R"({"kind":"pure","re":["a",0]})"), Error);
}

TEST(FormatReal, SixSignificantDigits) {
  EXPECT_EQ("0.754943", format_real(0.7549427179427943));
  EXPECT_EQ("1", format_real(1.0));
  EXPECT_EQ("0", format_real(-0.0));
  EXPECT_EQ("1e-09", format_real(1e-9));
}

TEST(EntropyCommand, WorkedDensity) {
  const auto r = run("entropy", with_input("density_07_03.json"));
  EXPECT_EQ(0, r.status);
  EXPECT_TRUE(contains(r.out, "S_n = 0.754943")) << r.out;
  EXPECT_TRUE(contains(r.out, "S_i = 0.881291")) << r.out;
  EXPECT_TRUE(contains(r.out, "S_ci = 0.790013")) << r.out;
}

TEST(EntropyCommand, QubitSpecEchoesMatrix) {
  const auto r = run("entropy", with_input("qubit_spec_04_03_03.json"));
  EXPECT_EQ(0, r.status);
  EXPECT_TRUE(contains(r.out, "[0.592, 0.144]")) << r.out;
  EXPECT_TRUE(contains(r.out, "[0.144, 0.408]")) << r.out;
  EXPECT_TRUE(contains(r.out, "S_ci = ")) << r.out;
}

TEST(EntropyCommand, PureBasisState) {
  const auto r = run("entropy", with_input("pure_basis_zero.json"));
  EXPECT_EQ(0, r.status);
  EXPECT_TRUE(contains(r.out, "S_n = 0 bits")) << r.out;
  EXPECT_TRUE(contains(r.out, "S_p = 0 bits")) << r.out;
}

TEST(EntropyCommand, CsvRow) {
  const auto r = run("entropy", with_input("density_07_03.json", true));
  ASSERT_EQ(0, r.status);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(2u, rows.size());
  EXPECT_EQ((std::vector<std::string>{"s_n", "s_i", "s_ci", "pure_share"}), rows[0]);
  EXPECT_EQ("0.754943", rows[1][0]);
  EXPECT_EQ("0.4", rows[1][3]);

  const auto no_split = run("entropy", with_input("density_complex.json", true));
  EXPECT_EQ("s_n,s_i,s_ci,pure_share\n0.811278,1,1,0.5\n", no_split.out);
}

TEST(EntropyCommand, ExplicitSplitParameter) {
  auto options = with_input("density_0592_0408.json", true);
  options.p2 = 0.3;
  const auto r = run("entropy", options);
  ASSERT_EQ(0, r.status) << r.err;
  // 0.7 H(4/7) + 0.3 H(0.64)
  const double expected = 0.7 * shannon({4.0 / 7.0, 3.0 / 7.0}) + 0.3 * shannon({0.64, 0.36});
  EXPECT_EQ(format_real(expected), parse_csv(r.out)[1][2]);

  options.p2 = 0.1;
  const auto bad = run("entropy", options);
  EXPECT_EQ(2, bad.status);
  EXPECT_TRUE(contains(bad.err, "NoValidSplit")) << bad.err;
}

TEST(EntropyCommand, ValidationFailureExitsTwo) {
  const auto r = run("entropy", with_input("invalid/not_positive.json"));
  EXPECT_EQ(2, r.status);
  EXPECT_TRUE(contains(r.err, "NotPositiveSemidefinite")) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(2, run("entropy", with_input("game_lambda_025.json")).status);
  EXPECT_EQ(2, run("entropy", cli::Options{}).status);
}

TEST(Table1Command, RowsMatchPublishedValues) {
  const auto r = run("table1", {});
  ASSERT_EQ(0, r.status);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(12u, rows.size());
  EXPECT_EQ((std::vector<std::string>{"a", "S_i", "S_p_share", "S_n"}), rows[0]);
  EXPECT_EQ((std::vector<std::string>{"0", "1", "0", "1"}), rows[1]);
  EXPECT_EQ((std::vector<std::string>{"0.25", "1", "0.5", "0.811278"}), rows[6]);
  EXPECT_EQ((std::vector<std::string>{"0.5", "1", "1", "0"}), rows[11]);
}

TEST(SweepCommand, Figure2) {
  cli::Options o;
  o.figure = 2;
  o.step = 0.05;
  const auto rows = parse_csv(run("sweep", o).out);
  ASSERT_EQ(12u, rows.size());
  EXPECT_EQ((std::vector<std::string>{"a", "S_n", "S_i", "S_ci"}), rows[0]);
  EXPECT_EQ((std::vector<std::string>{"0.25", "0.811278", "1", "1"}), rows[6]);
}

TEST(SweepCommand, Figure3OmitsDomainViolations) {
  cli::Options o;
  o.figure = 3;
  o.step = 0.25;
  const auto r = run("sweep", o);
  ASSERT_EQ(0, r.status);
  const auto rows = parse_csv(r.out);
  EXPECT_EQ((std::vector<std::string>{"x", "a", "S_ci"}), rows[0]);
  // x in {0, .25, .5, .75, 1}, a in {0, .25, .5}: valid only when a < x < 1 - a.
  // (0.25,0) (0.5,0) (0.5,0.25) (0.75,0) -> 4 rows, 11 omitted.
  ASSERT_EQ(5u, rows.size());
  EXPECT_EQ((std::vector<std::string>{"0.5", "0", "1"}), rows[2]);
  EXPECT_EQ((std::vector<std::string>{"0.5", "0.25", "1"}), rows[3]);
  EXPECT_TRUE(contains(r.err, "omitted 11")) << r.err;
}

TEST(SweepCommand, Figure5) {
  cli::Options o;
  o.figure = 5;
  o.step = 0.25;
  const auto rows = parse_csv(run("sweep", o).out);
  ASSERT_EQ(6u, rows.size());
  EXPECT_EQ((std::vector<std::string>{"lambda", "S_n_A", "S_n_B", "gain"}), rows[0]);
  EXPECT_EQ("0.5", rows[3][0]);
  EXPECT_EQ("1", rows[3][1]);
  EXPECT_EQ("0.811278", rows[3][2]);
  EXPECT_EQ((std::vector<std::string>{"0", "0", "1", "1"}), rows[1]);
}

TEST(SweepCommand, UnknownFigure) {
  cli::Options o;
  o.figure = 4;
  EXPECT_EQ(2, run("sweep", o).status);
}

TEST(ThresholdCommand, ReportsRootsAndSigns) {
  const auto r = run("threshold", {});
  ASSERT_EQ(0, r.status) << r.err;
  EXPECT_TRUE(contains(r.out, "lower_root = 0.276393")) << r.out;
  EXPECT_TRUE(contains(r.out, "upper_root = 0.723607")) << r.out;
  EXPECT_TRUE(contains(r.out, "(0.000000, 0.276393): gain at midpoint 0.138197 is +")) << r.out;
  EXPECT_TRUE(contains(r.out, "(0.276393, 0.723607): gain at midpoint 0.5 is -")) << r.out;
  EXPECT_TRUE(contains(r.out, "(0.723607, 1.000000): gain at midpoint 0.861803 is +")) << r.out;
}

TEST(ThresholdCommand, ToleranceRefinementConsistent) {
  cli::Options coarse;
  coarse.csv = true;
  coarse.tol = 1e-3;
  cli::Options fine = coarse;
  fine.tol = 1e-9;
  const auto c = parse_csv(run("threshold", coarse).out);
  const auto f = parse_csv(run("threshold", fine).out);
  EXPECT_NEAR(std::stod(f[1][0]), std::stod(c[1][0]), 1e-3);
  EXPECT_NEAR(std::stod(f[1][1]), std::stod(c[1][1]), 1e-3);
}

TEST(ThresholdCommand, NumericalFailureExitsThree) {
  // An interceptor that never injects leaves the gain identically zero.
  const std::string path = ::testing::TempDir() + "/no_injection.json";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs(R"({"kind":"game","lambda":0.5,"injection_weight":0})", f);
    std::fclose(f);
  }
  cli::Options o;
  o.input = path;
  const auto r = run("threshold", o);
  EXPECT_EQ(3, r.status);
  EXPECT_TRUE(contains(r.err, "NoRootFound")) << r.err;
}

TEST(DecomposeCommand, WorkedMatrix) {
  auto o = with_input("density_0592_0408.json", true);
  o.count = 1001;
  const auto r = run("decompose", o);
  ASSERT_EQ(0, r.status) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_EQ((std::vector<std::string>{"p2", "mixed_weight", "mixed_d0", "mixed_d1", "u2", "v2",
                                      "residual", "S_ci"}),
            rows[0]);
  ASSERT_EQ(1002u, rows.size());
  bool near_first = false, near_second = false;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double p2 = std::stod(rows[k][0]);
    const double mw = std::stod(rows[k][1]);
    const double m0 = mw * std::stod(rows[k][2]);
    const double m1 = mw * std::stod(rows[k][3]);
    const double u2 = std::stod(rows[k][4]);
    EXPECT_LT(std::stod(rows[k][6]), 1e-10);
    if (std::abs(p2 - 0.3) < 5e-3 && std::abs(m0 - 0.4) < 5e-3 && std::abs(m1 - 0.3) < 5e-3 &&
        std::abs(u2 - 0.64) < 5e-3) {
      near_first = true;
    }
    if (std::abs(p2 - 0.4) < 5e-3 && std::abs(m0 - 0.2512) < 5e-3 &&
        std::abs(m1 - 0.3488) < 5e-3 && std::abs(u2 - 0.847) < 5e-3) {
      near_second = true;
    }
  }
  EXPECT_TRUE(near_first);
  EXPECT_TRUE(near_second);
}

TEST(DecomposeCommand, MaximallyMixedCollapsesToOneSplit) {
  const auto r = run("decompose", with_input("density_maximally_mixed.json"));
  ASSERT_EQ(0, r.status);
  EXPECT_TRUE(contains(r.out, "1 decomposition(s)")) << r.out;
  EXPECT_TRUE(contains(r.out, "1 * diag(0.5, 0.5)\n")) << r.out;
}

TEST(DecomposeCommand, IncludesSymmetricSplit) {
  auto o = with_input("density_symmetric_a020.json", true);
  o.count = 11;
  const auto rows = parse_csv(run("decompose", o).out);
  // First grid point is p2 = 2a.
  EXPECT_EQ("0.4", rows[1][0]);
  EXPECT_EQ("0.6", rows[1][1]);
  EXPECT_EQ("0.5", rows[1][2]);
  EXPECT_EQ("0.5", rows[1][4]);
}

TEST(DecomposeCommand, RejectsOtherKinds) {
  EXPECT_EQ(2, run("decompose", with_input("pure_08_06.json")).status);
}

TEST(HolevoCommand, Examples) {
  const auto orth = run("holevo", with_input("ensemble_orthogonal.json", true));
  EXPECT_EQ("chi,s_mix,avg_component_entropy\n1,1,0\n", orth.out);
  const auto same = run("holevo", with_input("ensemble_identical_mixed.json", true));
  EXPECT_EQ("chi,s_mix,avg_component_entropy\n0,1,1\n", same.out);
  const auto pure = run("holevo", with_input("ensemble_all_pure.json"));
  EXPECT_TRUE(contains(pure.out, "sum p_i S_n(rho_i) = 0 bits")) << pure.out;
  EXPECT_EQ(2, run("holevo", with_input("density_07_03.json")).status);
}

TEST(TheoremScanCommand, CsvAndSummary) {
  cli::Options o;
  o.csv = true;
  const auto r = run("theorem-scan", o);
  ASSERT_EQ(0, r.status);
  const auto rows = parse_csv(r.out);
  EXPECT_EQ((std::vector<std::string>{"p0", "p1", "p2", "u2", "S_n", "S_ci", "S_i", "holds_left",
                                      "holds_right"}),
            rows[0]);
  EXPECT_EQ(231u * 11u + 1u, rows.size());
  EXPECT_TRUE(contains(r.err, "holds_right_violations=0")) << r.err;
  EXPECT_TRUE(contains(r.err, "family: points=")) << r.err;
  EXPECT_TRUE(contains(r.err, "violations=0\np0=p1")) << r.err;
  bool worked = false;
  for (const auto& row : rows) {
    if (row[0] == "0.5" && row[1] == "0.1" && row[3] == "0.5") {
      worked = true;
      EXPECT_EQ("1", row[7]);
    }
  }
  EXPECT_TRUE(worked);
}

TEST(TheoremScanCommand, TextListsViolations) {
  cli::Options o;
  o.step = 0.5;
  o.u2_step = 0.5;
  const auto r = run("theorem-scan", o);
  ASSERT_EQ(0, r.status);
  EXPECT_TRUE(contains(r.out, "points=18")) << r.out;
  EXPECT_TRUE(contains(r.out, "violation at p0=0 p1=0.5 p2=0.5 u2=1")) << r.out;
}

TEST(Commands, Deterministic) {
  for (const char* cmd : {"table1", "theorem-scan"}) {
    cli::Options o;
    o.csv = true;
    EXPECT_EQ(run(cmd, o).out, run(cmd, o).out);
  }
  const auto a = run("decompose", with_input("density_0592_0408.json", true));
  const auto b = run("decompose", with_input("density_0592_0408.json", true));
  EXPECT_EQ(a.out, b.out);
}

TEST(Binary, ExitStatusContract) {
  const std::string exe = QENTROPY_CLI;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(0, status("entropy --input " + data("density_07_03.json")));
  EXPECT_EQ(0, status("table1"));
  EXPECT_EQ(0, status("sweep --figure 5 --step 0.1"));
  EXPECT_EQ(2, status("entropy --input " + data("invalid/not_hermitian.json")));
  EXPECT_EQ(2, status("entropy"));
  EXPECT_EQ(2, status("sweep --figure 4"));
  EXPECT_EQ(2, status("bogus"));
}
