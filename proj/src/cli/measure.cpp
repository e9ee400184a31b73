#include <algorithm>
#include <functional>
#include <optional>

#include "boolcx/cli/commands.hpp"
#include "boolcx/dtree.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/localwit.hpp"
#include "boolcx/partialinfo.hpp"
#include "boolcx/percolation.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/subcube.hpp"
#include "common.hpp"

namespace boolcx::cli {

namespace {

using detail::caps_json;
using detail::Clock;
using detail::seconds_since;

struct MeasureEngine {
  std::string engine;
  std::function<Rational()> compute;
};

}  // namespace

const std::vector<std::string>& measure_keys() {
  static const std::vector<std::string> keys{"s", "b", "w", "l", "sc", "a", "sD", "bD", "wD", "scD", "aD", "deg"};
  return keys;
}

Report cmd_measure(const MeasureRequest& request, const Config& config, const ZooOverrides& overrides) {
  const auto start = Clock::now();
  const auto spec = FunctionSpec::parse(request.spec);
  std::vector<std::string> wanted = request.measures.empty() ? measure_keys() : request.measures;
  for (const auto& key : wanted) {
    if (std::find(measure_keys().begin(), measure_keys().end(), key) == measure_keys().end()) {
      throw UsageError("unknown measure '" + key + "'");
    }
  }
  const Rational p = request.p.value_or(config.p);
  if (p < 0 || p > 1) throw UsageError("p must lie in [0, 1]");
  const BooleanFunction f = spec.build(config.caps.truth_table, overrides);
  const ProductMeasure m(p);
  const auto& caps = config.caps;

  // The pointwise profile feeds six measures; compute it at most once.
  std::optional<PointwiseProfile> profile;
  const auto get_profile = [&]() -> const PointwiseProfile& {
    if (!profile) profile = pointwise_profile(f, PointwiseLimits{caps.pointwise});
    return *profile;
  };
  const auto dist = [&] { return distributional_measures(get_profile(), m, f.arity()); };
  const auto det = [&] { return deterministic_measures(get_profile()); };

  const std::map<std::string, MeasureEngine> engines{
      {"s", {"pointwise", [&] { return dist().sensitivity; }}},
      {"b", {"pointwise", [&] { return dist().block_sensitivity; }}},
      {"w", {"pointwise", [&] { return dist().witness; }}},
      {"l", {"localwit", [&] { return local_witness_complexity(f, m, LocalWitnessLimits{caps.localwit}); }}},
      {"sc", {"subcube", [&] { return sc_dist(f, m, SubcubeLimits{caps.subcube}); }}},
      {"a", {"dtree", [&] { return dist_cost(f, m, DtreeLimits{caps.dtree}); }}},
      {"sD", {"pointwise", [&] { return Rational(det().sensitivity); }}},
      {"bD", {"pointwise", [&] { return Rational(det().block_sensitivity); }}},
      {"wD", {"pointwise", [&] { return Rational(det().witness); }}},
      {"scD", {"subcube", [&] { return Rational(sc_det(f, SubcubeLimits{caps.subcube})); }}},
      {"aD", {"dtree", [&] { return Rational(det_depth(f, DtreeLimits{caps.dtree})); }}},
      {"deg", {"core", [&] { return Rational(degree(f)); }}},
  };

  Report report;
  report.command = "measure";
  report.columns = {"measure", "value", "status", "engine", "detail", "seconds"};
  report.meta["function"] = spec.to_string();
  report.meta["arity"] = f.arity();
  report.meta["p"] = exact(p);
  report.meta["caps"] = caps_json(caps);
  int skipped = 0;
  for (const auto& key : wanted) {
    const auto& engine = engines.at(key);
    const auto measure_start = Clock::now();
    nlohmann::ordered_json row{{"measure", key}, {"engine", engine.engine}};
    try {
      row["value"] = exact(engine.compute());
      row["status"] = "ok";
      row["detail"] = "";
    } catch (const CapExceeded& e) {
      row["value"] = nullptr;
      row["status"] = "skipped";
      row["detail"] = e.what();
      ++skipped;
    }
    row["seconds"] = seconds_since(measure_start);
    report.add_row(std::move(row));
  }
  report.summary["computed"] = static_cast<int>(wanted.size()) - skipped;
  report.summary["skipped"] = skipped;
  report.meta["elapsed_seconds"] = seconds_since(start);
  return report;
}

Report cmd_partialinfo(const PartialInfoRequest& request, const Config& config, const ZooOverrides& overrides) {
  const auto start = Clock::now();
  const auto spec = FunctionSpec::parse(request.spec);
  if (request.kappas.empty() && !request.critical) throw UsageError("give --kappa values or --critical");
  const BooleanFunction f = spec.build(config.caps.truth_table, overrides);
  const PartialInfoLimits limits{config.caps.partialinfo};
  Report report;
  report.command = "partial-info";
  report.columns = {"kind", "kappa", "value", "alpha", "beta"};
  report.meta["function"] = spec.to_string();
  report.meta["arity"] = f.arity();
  report.meta["p"] = exact(request.p);
  report.meta["caps"] = caps_json(config.caps);
  try {
    for (const auto& kappa : request.kappas) {
      const auto line = pk_strategy_line(f, request.p, kappa, limits);
      report.add_row({{"kind", "cost"},
                      {"kappa", exact(kappa)},
                      {"value", exact(line.at(kappa))},
                      {"alpha", exact(line.alpha)},
                      {"beta", exact(line.beta)}});
    }
    if (request.critical) {
      const Rational kappa = kappa_critical(f, request.p, limits);
      const auto line = pk_strategy_line(f, request.p, kappa, limits);
      report.add_row({{"kind", "critical"},
                      {"kappa", exact(kappa)},
                      {"value", exact(line.at(kappa))},
                      {"alpha", exact(line.alpha)},
                      {"beta", exact(line.beta)}});
      report.summary["kappa_critical"] = exact(kappa);
      report.summary["kappa0_bound"] = exact(kappa0_bound(f.arity() == 0 ? 1 : f.arity(), request.p));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  report.summary["classical_cost"] = exact(dist_cost(f, ProductMeasure(Rational(1, 2)), DtreeLimits{config.caps.dtree}));
  report.meta["elapsed_seconds"] = seconds_since(start);
  return report;
}

Report cmd_percolation(const PercRequest& request, const Config& config) {
  const auto start = Clock::now();
  if (request.m.has_value() == request.file.has_value()) throw UsageError("give exactly one of --m or --graph");
  if (request.m && *request.m < 1) throw UsageError("--m must be at least 1");
  const Multigraph g = request.m ? grid_graph(*request.m) : read_multigraph(*request.file);
  const Rational p = parse_exact(request.p);
  if (p < 0 || p > 1) throw UsageError("p must lie in [0, 1]");
  const bool exact_mode = request.mode == PercMode::exact || (request.mode == PercMode::automatic && request.m == 1);
  const std::uint64_t seed = request.seed.value_or(config.seed);
  const unsigned shards = request.shards.value_or(config.shards);

  Report report;
  report.command = "perc";
  report.meta["graph"] = request.m ? "grid(" + std::to_string(*request.m) + ")" : *request.file;
  report.meta["edges"] = g.edge_count();
  report.meta["p"] = exact(p);
  report.meta["mode"] = exact_mode ? "exact" : "monte-carlo";

  const auto canonical = [](const std::string& q) -> std::string {
    if (q == "crossing") return "crossing";
    if (q == "s" || q == "sensitivity") return "s";
    if (q == "w" || q == "b" || q == "witness") return "w";
    if (q == "explore" || q == "exploration") return "explore";
    throw UsageError("unknown percolation quantity '" + q + "'");
  };

  if (exact_mode) {
    report.columns = {"quantity", "value"};
    const BooleanFunction f = perc_function(g, config.caps.truth_table);
    const ProductMeasure m(p);
    for (const auto& q : request.quantities) {
      const std::string key = canonical(q);
      Rational value;
      if (key == "crossing") value = output_probability(f, m);
      if (key == "s") value = expected_sensitivity(f, m);
      if (key == "w") value = distributional_measures(f, m, PointwiseLimits{config.caps.pointwise}).witness;
      if (key == "explore") value = tree_cost(exploration_tree(g, config.caps.truth_table), f, m);
      report.add_row({{"quantity", q}, {"value", exact(value)}});
    }
  } else {
    report.columns = {"quantity", "mean", "standard_error", "samples", "seed", "minimum", "maximum"};
    report.meta["samples"] = request.samples;
    report.meta["seed"] = seed;
    report.meta["shards"] = shards;
    report.meta["generator"] = "mt19937_64 per sample, seeded through seed_seq(seed, sample)";
    const double pf = p.to_double();
    for (const auto& q : request.quantities) {
      const std::string key = canonical(q);
      const PercQuantity quantity = key == "crossing" ? PercQuantity::crossing
                                    : key == "s"      ? PercQuantity::sensitivity
                                    : key == "w"      ? PercQuantity::witness
                                                      : PercQuantity::exploration;
      const auto e = mc_estimate(g, pf, quantity, request.samples, seed, shards);
      report.add_row({{"quantity", q},
                      {"mean", e.mean},
                      {"standard_error", e.standard_error},
                      {"samples", e.samples},
                      {"seed", e.seed},
                      {"minimum", e.minimum},
                      {"maximum", e.maximum}});
    }
  }
  report.meta["elapsed_seconds"] = seconds_since(start);
  return report;
}

}  // namespace boolcx::cli
