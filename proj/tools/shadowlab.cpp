#include "shadowlab/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using shadowlab::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--enum", c.enumeration, "enumeration: block | bad")->check(CLI::IsMember({"block", "bad"}));
  sub->add_option("--metric", c.metric, "prod | rate:NAME[*beta] | otw:block | otw:bad");
  sub->add_option("--delta0", c.delta0, "threshold delta0, e.g. 1/4 or 2^-2");
  sub->add_option("--L", c.L, "Lipschitz constant");
  sub->add_option("--grid", c.grid, "delta grid: 2^-a..2^-b or a comma list");
  sub->add_option("--trials", c.trials, "pseudo-orbits per grid cell, or sample pairs");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--stages", c.stages, "bad-enumeration stages");
  sub->add_option("--entries", c.entries, "enumeration entries");
  sub->add_option("--order", c.order, "order of the shift space (product probe)");
  sub->add_option("--forbid", c.forbid, "forbidden blocks, comma separated (product probe)");
  sub->add_option("--out", c.out, "write the report here instead of stdout");
  sub->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact shadowing experiments on one-sided shifts"};
  app.set_version_flag("--version", shadowlab::cli::kVersion);
  app.require_subcommand(1);
  RunConfig config;

  auto* distance = app.add_subcommand("distance", "distance between two point literals");
  distance->add_option("x", config.x, "first point, e.g. 1.2(3)")->required();
  distance->add_option("y", config.y, "second point")->required();
  auto* probe = app.add_subcommand("probe", "Lipschitz shadowing probe over a delta grid");
  auto* counterexample = app.add_subcommand("counterexample", "bad-metric refutation certificate");
  auto* validate = app.add_subcommand("validate", "check an enumeration's defining properties");
  auto* modulus = app.add_subcommand("modulus", "empirical modulus table between otw:block and otw:bad");
  for (CLI::App* sub : {distance, probe, counterexample, validate, modulus}) add_common(sub, config);

  CLI11_PARSE(app, argc, argv);
  config.command = app.get_subcommands().front()->get_name();

  try {
    const auto outcome = shadowlab::cli::run(config);
    const std::string text = config.format == "csv" ? outcome.csv : outcome.report.dump(2) + "\n";
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(config.out);
      if (!file) {
        std::cerr << "error: cannot write " << config.out << "\n";
        return shadowlab::cli::kUsage;
      }
      file << text;
    }
    for (const auto& f : outcome.report["failures"]) std::cerr << "failed: " << f.get<std::string>() << "\n";
    return outcome.exit_code;
  } catch (const shadowlab::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return shadowlab::cli::kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return shadowlab::cli::kUsage;
  }
}
