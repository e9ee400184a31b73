#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boolcx/cli/commands.hpp"
#include "boolcx/errors.hpp"

namespace {

using namespace boolcx;
using namespace boolcx::cli;

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream in(item);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      if (!piece.empty()) out.push_back(piece);
    }
  }
  return out;
}

ZooOverrides load_overrides(const std::vector<std::string>& items, int cap) {
  ZooOverrides out;
  for (const auto& item : items) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos) throw UsageError("--override expects NAME=FILE, got '" + item + "'");
    const std::string name = FunctionSpec::parse(item.substr(0, eq)).to_string();
    out[name] = read_truth_table(item.substr(eq + 1), cap);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact complexity measures of Boolean functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<int> cap;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> shards;
  std::vector<std::string> override_items;
  app.add_option("--config", config_path, "JSON config file with caps, p, seed and shards");
  app.add_option("--cap", cap, "arity cap applied to every engine");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "random seed");
  app.add_option("--shards", shards, "worker threads for sampling")->check(CLI::PositiveNumber);
  app.add_option("--override", override_items, "replace a zoo function by a truth-table file, NAME=FILE");

  std::string p_text;
  std::vector<std::string> list_items;

  auto* measure = app.add_subcommand("measure", "compute complexity measures of one function");
  std::string spec;
  bool all = false;
  measure->add_option("spec", spec, "function expression")->required();
  measure->add_option("--p", p_text, "bit bias, num/den");
  auto* measures_opt = measure->add_option("--measures", list_items, "comma-separated subset of s,b,w,l,sc,a,sD,bD,wD,scD,aD,deg");
  measure->add_flag("--all", all, "every measure")->excludes(measures_opt);

  auto* reproduce = app.add_subcommand("reproduce", "expected against computed for the regression table");
  std::string filter;
  reproduce->add_option("--filter", filter, "run only rows whose id contains this text");

  auto* invariants = app.add_subcommand("invariants", "run the invariant suites");
  std::string level = "fast";
  std::vector<std::string> suites;
  unsigned threads = 0;
  invariants->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}));
  invariants->add_option("--suite", suites, "restrict to these suites");
  invariants->add_option("--threads", threads, "worker threads, 0 for all cores");

  auto* partial = app.add_subcommand("partial-info", "costs with coarse answers at bias p");
  std::string partial_spec;
  std::vector<std::string> kappa_items;
  bool critical = false;
  partial->add_option("spec", partial_spec, "function expression")->required();
  partial->add_option("--p", p_text, "bias of the coarse answers, num/den in (1/2, 1)")->required();
  partial->add_option("--kappa", kappa_items, "comma-separated kappa values");
  partial->add_flag("--critical", critical, "report the critical kappa");

  auto* perc = app.add_subcommand("perc", "bond percolation crossing on grids or multigraphs");
  PercRequest perc_request;
  std::string graph_path;
  std::uint64_t samples = perc_request.samples;
  bool exact_flag = false;
  bool mc_flag = false;
  perc->add_option("--m", perc_request.m, "grid size");
  perc->add_option("--graph", graph_path, "multigraph JSON file");
  perc->add_option("--p", p_text, "edge probability");
  perc->add_option("--quantity", list_items, "crossing, s, w or explore (comma-separated)");
  perc->add_option("--samples", samples, "Monte Carlo samples");
  auto* exact_opt = perc->add_flag("--exact", exact_flag, "exact enumeration");
  perc->add_flag("--mc", mc_flag, "Monte Carlo sampling")->excludes(exact_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config config = config_path.empty() ? Config{} : Config::load(config_path);
    if (cap) config.caps.set_all(*cap);
    if (seed) config.seed = *seed;
    if (shards) config.shards = *shards;
    const ZooOverrides overrides = load_overrides(override_items, config.caps.truth_table);

    Report report;
    if (measure->parsed()) {
      MeasureRequest req{spec, std::nullopt, split_list(list_items)};
      if (!p_text.empty()) req.p = parse_exact(p_text);
      if (!all && req.measures.empty()) throw UsageError("give --measures or --all");
      report = cmd_measure(req, config, overrides);
    } else if (reproduce->parsed()) {
      report = cmd_reproduce({overrides, filter}, config);
    } else if (invariants->parsed()) {
      InvariantOptions options;
      options.seed = config.seed;
      options.level = level == "full" ? InvariantLevel::full : InvariantLevel::fast;
      options.only = split_list(suites);
      options.threads = threads;
      report = cmd_invariants(options, config);
    } else if (partial->parsed()) {
      PartialInfoRequest req{partial_spec, parse_exact(p_text), {}, critical};
      for (const auto& k : split_list(kappa_items)) req.kappas.push_back(parse_exact(k));
      report = cmd_partialinfo(req, config, overrides);
    } else if (perc->parsed()) {
      if (!graph_path.empty()) perc_request.file = graph_path;
      if (!p_text.empty()) perc_request.p = p_text;
      if (!list_items.empty()) perc_request.quantities = split_list(list_items);
      perc_request.samples = samples;
      perc_request.seed = seed;
      perc_request.shards = shards;
      perc_request.mode = exact_flag ? PercMode::exact : mc_flag ? PercMode::monte_carlo : PercMode::automatic;
      report = cmd_percolation(perc_request, config);
    }
    std::cout << (format == "csv" ? report.to_csv() : report.to_json());
    return report.exit_code;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
