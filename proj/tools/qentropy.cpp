#include <qentropy/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Entropy measures for qubit state ensembles"};
  app.require_subcommand(1);

  qentropy::cli::Options options;
  const auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", options.input, "state file (object notation)")->required();
  };
  const auto add_csv = [&](CLI::App* cmd) { cmd->add_flag("--csv", options.csv, "emit CSV"); };

  auto* entropy = app.add_subcommand("entropy", "S_n, S_i and S_ci of a state");
  add_input(entropy);
  add_csv(entropy);
  entropy->add_option("--p2", options.p2, "pure weight of the split to use (qubits)");

  auto* decompose = app.add_subcommand("decompose", "enumerate mixed + pure decompositions");
  add_input(decompose);
  add_csv(decompose);
  decompose->add_option("--count", options.count, "number of p2 grid points")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("table1", "entropy table for [[0.5, a], [a, 0.5]] (CSV)");

  auto* sweep = app.add_subcommand("sweep", "figure data as CSV");
  sweep->add_option("--figure", options.figure, "figure id")
      ->required()
      ->check(CLI::IsMember({2, 3, 5}));
  sweep->add_option("--step", options.step, "grid step")->check(CLI::PositiveNumber);
  sweep->add_option("--input", options.input, "game file with the interceptor strategy (figure 5)");

  auto* threshold = app.add_subcommand("threshold", "lambdas where the interceptor gains entropy");
  threshold->add_option("--tol", options.tol, "bisection tolerance")->check(CLI::PositiveNumber);
  threshold->add_option("--step", options.step, "bracketing grid step")->check(CLI::PositiveNumber);
  threshold->add_option("--input", options.input, "game file with the interceptor strategy");
  add_csv(threshold);

  auto* holevo = app.add_subcommand("holevo", "Holevo quantity of an ensemble");
  add_input(holevo);
  add_csv(holevo);

  auto* scan = app.add_subcommand("theorem-scan", "check S_n <= S_ci <= S_i over a grid");
  scan->add_option("--step", options.step, "p0 / p1 grid step")->check(CLI::PositiveNumber);
  scan->add_option("--u2-step", options.u2_step, "u^2 grid step")->check(CLI::PositiveNumber);
  add_csv(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : qentropy::cli::kValidationFailure;
  }

  return qentropy::cli::run(app.get_subcommands().front()->get_name(), options, std::cout,
                            std::cerr);
}
