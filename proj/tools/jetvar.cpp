#include <iostream>

#include "CLI11.hpp"

#include "jetvar/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Symbolic calculus on jet bundles: Euler-Lagrange morphisms, formal differentials, fiberwise jets"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string command;
  std::vector<std::string> files;
  bool latex = false;
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
  std::optional<std::size_t> grid;

  app.add_option("command", command, "el | fed | fjet | natural | commute | order | oracle | check")
      ->required()
      ->check(CLI::IsMember(jetvar::command_names()));
  app.add_option("specfile", files, "Spec files");
  auto* latex_flag = app.add_flag("--latex", latex, "Emit LaTeX");
  app.add_flag("--json", json, "Emit JSON")->excludes(latex_flag);
  app.add_option("--seed", seed, "Seed for the randomized property suites")->capture_default_str();
  app.add_option("--tolerance", tolerance, "Relative tolerance for oracle checks")->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "Oracle grid points per axis")->check(CLI::Range(5, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    return jetvar::kExitInvalid;
  }

  jetvar::RunOptions options;
  options.format = latex ? jetvar::OutputFormat::Latex : json ? jetvar::OutputFormat::Json : jetvar::OutputFormat::Text;
  options.seed = seed;
  options.tolerance = tolerance;
  options.grid = grid;
  return jetvar::run(command, files, options, std::cout, std::cerr);
}
