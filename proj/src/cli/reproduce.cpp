#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

#include "boolcx/cli/commands.hpp"
#include "boolcx/dtree.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/localwit.hpp"
#include "boolcx/partialinfo.hpp"
#include "boolcx/percolation.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/subcube.hpp"
#include "boolcx/zoo.hpp"
#include "common.hpp"

namespace boolcx::cli {

namespace {

using detail::Clock;
using detail::seconds_since;

Rational R(std::string_view text) { return parse_exact(text); }

struct Outcome {
  std::string expected;
  std::string computed;
  bool pass = false;
};

// Accumulates named expected/computed pairs into one row.
class Comparison {
 public:
  Comparison& value(const std::string& name, const Rational& expected, const Rational& computed) {
    return text(name, exact(expected), exact(computed), expected == computed);
  }
  Comparison& value(const std::string& name, long expected, long computed) {
    return text(name, std::to_string(expected), std::to_string(computed), expected == computed);
  }
  Comparison& text(const std::string& name, const std::string& expected, const std::string& computed, bool ok) {
    append(expected_, name + "=" + expected);
    append(computed_, name + "=" + computed);
    pass_ = pass_ && ok;
    return *this;
  }
  Comparison& holds(const std::string& name, bool ok) { return text(name, "true", ok ? "true" : "false", ok); }
  // Reported without a claim attached.
  Comparison& info(const std::string& name, const std::string& computed) {
    append(computed_, name + "=" + computed);
    return *this;
  }
  [[nodiscard]] Outcome outcome() const { return {expected_, computed_, pass_}; }

 private:
  static void append(std::string& s, const std::string& piece) { s += (s.empty() ? "" : ", ") + piece; }
  std::string expected_;
  std::string computed_;
  bool pass_ = true;
};

struct Context {
  const ZooOverrides& overrides;
  const Config& config;

  [[nodiscard]] BooleanFunction fn(std::string_view spec) const {
    return FunctionSpec::parse(spec).build(config.caps.truth_table, overrides);
  }
  [[nodiscard]] DtreeLimits dtree() const { return {config.caps.dtree}; }
  [[nodiscard]] SubcubeLimits subcube() const { return {config.caps.subcube}; }
  [[nodiscard]] LocalWitnessLimits localwit() const { return {config.caps.localwit}; }
  [[nodiscard]] PointwiseLimits pointwise() const { return {config.caps.pointwise}; }
  [[nodiscard]] PartialInfoLimits partialinfo() const { return {config.caps.partialinfo}; }
};

struct Entry {
  std::string id;
  std::string claim;
  bool manifest = true;
  std::function<Outcome(const Context&)> run;
};

Input bits(std::string_view pattern) { return SubcubePattern::parse(pattern).values; }

std::string triple(int a, int b, int c) {
  return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
}

Rational report_value(const Report& r, const std::string& key_column, const std::string& key) {
  for (const auto& row : r.rows) {
    if (row.at(key_column) == key) return parse_exact(row.at("value").get<std::string>());
  }
  throw std::runtime_error("report has no row " + key);
}

constexpr std::string_view kMaj4Partition = "*111\n*000\n110*\n010*\n1*10\n0*10\n10*1\n00*1\n";
constexpr std::string_view kAeq3Partition = "000\n10*\n*10\n0*1\n111\n";

Outcome det_triple(const Context& c, std::string_view spec, int s, int b, int w) {
  const auto d = deterministic_measures(c.fn(spec), c.pointwise());
  const bool ok = d.sensitivity == s && d.block_sensitivity == b && d.witness == w;
  return {"sD,bD,wD=" + triple(s, b, w), "sD,bD,wD=" + triple(d.sensitivity, d.block_sensitivity, d.witness), ok};
}

Outcome dist_triple(const Context& c, std::string_view spec, const char* p, const char* s, const char* b,
                    const char* w) {
  const auto d = distributional_measures(c.fn(spec), ProductMeasure(R(p)), c.pointwise());
  return Comparison{}.value("s", R(s), d.sensitivity).value("b", R(b), d.block_sensitivity).value("w", R(w), d.witness).outcome();
}

Outcome mc_within(const McEstimate& e, double target, double k) {
  std::ostringstream computed;
  computed << "mean=" << e.mean << " se=" << e.standard_error << " n=" << e.samples;
  std::ostringstream expected;
  expected << "|mean-" << target << "| <= " << k << " se";
  return {expected.str(), computed.str(), std::abs(e.mean - target) <= k * e.standard_error};
}

std::vector<Entry> manifest_entries() {
  std::vector<Entry> t;
  const auto add = [&](std::string id, std::string claim, std::function<Outcome(const Context&)> run) {
    t.push_back({std::move(id), std::move(claim), true, std::move(run)});
  };

  add("core.maj3-balanced", "MAJ3 is balanced at p=1/2", [](const Context& c) {
    return Comparison{}.value("P[f=1]", R("1/2"), output_probability(c.fn("MAJ(3)"), ProductMeasure(R("1/2")))).outcome();
  });
  add("core.or2-and2-is-tribes", "OR2 composed with AND2 is TRIBES on 4 bits", [](const Context& c) {
    const auto f = c.fn("compose(OR(2),AND(2))");
    return Comparison{}.value("arity", 4L, f.arity()).holds("equals TRIBES(2,2)", f == c.fn("TRIBES(2,2)")).outcome();
  });
  add("core.iterated-maj3", "MAJ3 iterated twice has 9 bits and is balanced", [](const Context& c) {
    const auto f = c.fn("iter(MAJ(3),2)");
    return Comparison{}
        .value("arity", 9L, f.arity())
        .value("P[f=1]", R("1/2"), output_probability(f, ProductMeasure(R("1/2"))))
        .holds("equals compose(MAJ3,MAJ3)", f == c.fn("compose(MAJ(3),MAJ(3))"))
        .outcome();
  });
  add("core.iterated-maj3-witness", "witness size of MAJ3 iterated twice is 4 everywhere", [](const Context& c) {
    const auto prof = pointwise_profile(c.fn("iter(MAJ(3),2)"), c.pointwise());
    const auto [lo, hi] = std::minmax_element(prof.witness.begin(), prof.witness.end());
    return Comparison{}.value("min w(x)", 4L, *lo).value("max w(x)", 4L, *hi).outcome();
  });

  add("zoo.nisan8-support", "NISAN(8) is 1 exactly on weights 4 and 5", [](const Context& c) {
    const auto f = c.fn("NISAN(8)");
    long bad = 0;
    for (Input x = 0; x < f.size(); ++x) bad += f(x) != (weight(x) == 4 || weight(x) == 5);
    return Comparison{}.value("mismatched inputs", 0L, bad).outcome();
  });
  add("zoo.g4-support", "G4 is 1 exactly on 1001, 0001, 0101, 0110", [](const Context& c) {
    const auto f = c.fn("G4");
    const std::vector<Input> ones{bits("1001"), bits("0001"), bits("0101"), bits("0110")};
    long bad = 0;
    for (Input x = 0; x < f.size(); ++x) bad += f(x) != (std::find(ones.begin(), ones.end(), x) != ones.end());
    return Comparison{}.value("mismatched inputs", 0L, bad).outcome();
  });

  add("pointwise.nisan8-b-weight4", "b at a weight-4 input of NISAN(8) is 3n/4", [](const Context& c) {
    return Comparison{}.value("b(x)", 6L, block_sensitivity_at(c.fn("NISAN(8)"), bits("11110000"))).outcome();
  });
  add("pointwise.nisan8-w-weight4", "w at a weight-4 input of NISAN(8) is n-1", [](const Context& c) {
    return Comparison{}.value("w(x)", 7L, witness_size_at(c.fn("NISAN(8)"), bits("11110000"))).outcome();
  });
  add("pointwise.maj3-w-110", "MAJ3 witness size at 110 is 2", [](const Context& c) {
    return Comparison{}.value("w(110)", 2L, witness_size_at(c.fn("MAJ(3)"), bits("110"))).outcome();
  });
  add("pointwise.nisan8-det", "NISAN(8) deterministic s, b, w", [](const Context& c) { return det_triple(c, "NISAN(8)", 6, 6, 7); });
  add("pointwise.maj4-det", "MAJ4 deterministic s, b, w", [](const Context& c) { return det_triple(c, "MAJ4", 3, 3, 3); });
  add("pointwise.tribes22-det", "TRIBES(2,2) deterministic s, b, w", [](const Context& c) {
    return det_triple(c, "TRIBES(2,2)", 2, 2, 2);
  });
  add("pointwise.maj3-dist", "MAJ3 at p=1/2: s, b, w", [](const Context& c) {
    return dist_triple(c, "MAJ(3)", "1/2", "3/2", "7/4", "2");
  });
  add("pointwise.and3-dist", "AND3 at p=1/2: s, b, w", [](const Context& c) {
    return dist_triple(c, "AND(3)", "1/2", "3/4", "5/4", "5/4");
  });
  add("pointwise.g4-dist", "G4 at p=1/2: s, b, w as published", [](const Context& c) {
    return dist_triple(c, "G4", "1/2", "3/2", "9/4", "37/16");
  });

  add("dtree.maj4-aD", "deterministic depth of MAJ4", [](const Context& c) {
    return Comparison{}.value("aD", 4L, det_depth(c.fn("MAJ4"), c.dtree())).outcome();
  });
  add("dtree.nisan8-aD", "deterministic depth of NISAN(8) is n", [](const Context& c) {
    return Comparison{}.value("aD", 8L, det_depth(c.fn("NISAN(8)"), c.dtree())).outcome();
  });
  add("dtree.maj3-a", "a(MAJ3) at p=1/2", [](const Context& c) {
    return Comparison{}.value("a", R("5/2"), dist_cost(c.fn("MAJ(3)"), ProductMeasure(R("1/2")), c.dtree())).outcome();
  });
  add("dtree.and-formula", "a(AND_n) = (1-p^n)/(1-p) for n <= 5, p in {1/3,1/2,2/3}", [](const Context& c) {
    long agree = 0;
    for (int n = 1; n <= 5; ++n) {
      for (const char* ps : {"1/3", "1/2", "2/3"}) {
        const Rational p = R(ps);
        const auto f = c.fn("AND(" + std::to_string(n) + ")");
        agree += dist_cost(f, ProductMeasure(p), c.dtree()) == (Rational(1) - pow(p, n)) / (Rational(1) - p);
      }
    }
    return Comparison{}.value("cases agreeing", 15L, agree).outcome();
  });
  add("dtree.g4-h4-a", "a(G4) = 11/4 and a(H4) = 3 at p=1/2", [](const Context& c) {
    const ProductMeasure m(R("1/2"));
    return Comparison{}
        .value("a(G4)", R("11/4"), dist_cost(c.fn("G4"), m, c.dtree()))
        .value("a(H4)", R("3"), dist_cost(c.fn("H4"), m, c.dtree()))
        .outcome();
  });
  add("dtree.and2-tree", "optimal AND2 tree queries x1, then x2 only when x1=1; cost 3/2", [](const Context& c) {
    const auto f = c.fn("AND(2)");
    const ProductMeasure m(R("1/2"));
    const auto t = extract_tree(f, m, c.dtree());
    const auto& root = t.node(t.root());
    const bool shape = root.bit == 0 && t.node(root.zero).is_leaf() && !t.node(root.zero).value &&
                       t.node(root.one).bit == 1;
    return Comparison{}.holds("shape", shape).value("cost", R("3/2"), tree_cost(t, f, m)).outcome();
  });
  add("dtree.address2-tree", "optimal ADDRESS(2) tree reads both address bits and one data bit; cost 3",
      [](const Context& c) {
        const auto f = c.fn("ADDRESS(2)");
        const ProductMeasure m(R("1/2"));
        const auto t = extract_tree(f, m, c.dtree());
        bool shape = t.node(t.root()).bit < 2;
        for (Input x = 0; x < f.size(); ++x) {
          const Input q = t.queried_at(x);
          shape = shape && (q & 3U) == 3U && weight(q) == 3;
        }
        return Comparison{}.holds("shape", shape).value("cost", R("3"), tree_cost(t, f, m)).outcome();
      });
  add("dtree.maj3-tree-cost", "extracted MAJ3 tree costs 5/2 at p=1/2", [](const Context& c) {
    const auto f = c.fn("MAJ(3)");
    const ProductMeasure m(R("1/2"));
    return Comparison{}.value("cost", R("5/2"), tree_cost(extract_tree(f, m, c.dtree()), f, m)).outcome();
  });
  add("dtree.osss-maj3", "OSSS inequality for the optimal MAJ3 tree", [](const Context& c) {
    const auto f = c.fn("MAJ(3)");
    const ProductMeasure m(R("1/2"));
    const auto check = osss_check(f, m, extract_tree(f, m, c.dtree()));
    return Comparison{}.holds("Var <= bound", check.holds).info("Var", exact(check.variance)).info("bound", exact(check.bound)).outcome();
  });
  add("dtree.osss-tribes22", "OSSS inequality for the optimal TRIBES(2,2) tree", [](const Context& c) {
    const auto f = c.fn("TRIBES(2,2)");
    const ProductMeasure m(R("1/2"));
    const auto check = osss_check(f, m, extract_tree(f, m, c.dtree()));
    return Comparison{}.holds("Var <= bound", check.holds).info("Var", exact(check.variance)).info("bound", exact(check.bound)).outcome();
  });

  add("subcube.maj4-partition-valid", "published MAJ4 partition is a valid refining partition", [](const Context& c) {
    return Comparison{}.holds("valid", verify_partition(SubcubePartition::parse(kMaj4Partition), c.fn("MAJ4"))).outcome();
  });
  add("subcube.aeq3-partition-valid", "published A-EQ3 partition is a valid refining partition", [](const Context& c) {
    return Comparison{}.holds("valid", verify_partition(SubcubePartition::parse(kAeq3Partition), c.fn("AEQ3"))).outcome();
  });
  add("subcube.aeq3-partition-cost", "A-EQ3 partition costs 9/4 at p=1/2", [](const Context&) {
    return Comparison{}
        .value("cost", R("9/4"), partition_cost(SubcubePartition::parse(kAeq3Partition), ProductMeasure(R("1/2"))))
        .outcome();
  });
  add("subcube.maj4-partition-det", "MAJ4 partition has worst-case codimension 3", [](const Context&) {
    return Comparison{}.value("cost", 3L, partition_cost_det(SubcubePartition::parse(kMaj4Partition))).outcome();
  });
  add("subcube.nisan8-scD", "scD(NISAN(8)) = 8, searched with the cap raised to 8", [](const Context& c) {
    return Comparison{}.value("scD", 8L, sc_det(c.fn("NISAN(8)"), SubcubeLimits{std::max(8, c.config.caps.subcube)})).outcome();
  });
  add("subcube.maj4-scD", "scD(MAJ4) = 3", [](const Context& c) {
    return Comparison{}.value("scD", 3L, sc_det(c.fn("MAJ4"), c.subcube())).outcome();
  });
  add("subcube.maj3-sc", "sc(MAJ3) at p=1/2", [](const Context& c) {
    return Comparison{}.value("sc", R("5/2"), sc_dist(c.fn("MAJ(3)"), ProductMeasure(R("1/2")), c.subcube())).outcome();
  });
  add("subcube.g4-sc", "sc(G4) at p=1/2", [](const Context& c) {
    return Comparison{}.value("sc", R("11/4"), sc_dist(c.fn("G4"), ProductMeasure(R("1/2")), c.subcube())).outcome();
  });
  add("subcube.h4-sc", "sc(H4) at p=1/2", [](const Context& c) {
    return Comparison{}.value("sc", R("11/4"), sc_dist(c.fn("H4"), ProductMeasure(R("1/2")), c.subcube())).outcome();
  });
  add("subcube.aeq3-not-induced", "the optimal A-EQ3 partition arises from no decision tree", [](const Context&) {
    const bool induced = is_algorithm_induced(SubcubePartition::parse(kAeq3Partition));
    return Outcome{"induced=false", induced ? "induced=true" : "induced=false", !induced};
  });

  add("localwit.maj3-half", "l(MAJ3) at p=1/2", [](const Context& c) {
    return Comparison{}.value("l", R("5/2"), local_witness_complexity(c.fn("MAJ(3)"), ProductMeasure(R("1/2")), c.localwit())).outcome();
  });
  add("localwit.maj3-third", "l(MAJ3) at p=1/3", [](const Context& c) {
    return Comparison{}.value("l", R("22/9"), local_witness_complexity(c.fn("MAJ(3)"), ProductMeasure(R("1/3")), c.localwit())).outcome();
  });
  add("localwit.aeq3", "l(A-EQ3) at p=1/2", [](const Context& c) {
    return Comparison{}.value("l", R("9/4"), local_witness_complexity(c.fn("AEQ3"), ProductMeasure(R("1/2")), c.localwit())).outcome();
  });
  add("localwit.g4", "l(G4) lies in [37/16, 21/8] and equals the frozen optimum 21/8", [](const Context& c) {
    const Rational l = local_witness_complexity(c.fn("G4"), ProductMeasure(R("1/2")), c.localwit());
    return Comparison{}
        .text("l", "in [37/16,21/8]", exact(l), l >= R("37/16") && l <= R("21/8"))
        .value("frozen", R("21/8"), l)
        .outcome();
  });
  add("localwit.maj3-squared", "l(MAJ3 iterated twice) is over the cap; s^2 bounds it below by 81/16", [](const Context& c) {
    const auto f = c.fn("iter(MAJ(3),2)");
    const ProductMeasure m(R("1/2"));
    bool capped = false;
    try {
      (void)local_witness_complexity(f, m, c.localwit());
    } catch (const CapExceeded&) {
      capped = true;
    }
    const Rational s = expected_sensitivity(f, m);
    return Comparison{}.holds("cap error", capped).value("s^2", R("81/16"), s * s).outcome();
  });

  add("partialinfo.and2-kappa1", "a_{p,1}(AND2) = a(AND2) = 3/2", [](const Context& c) {
    Comparison cmp;
    for (const char* p : {"2/3", "3/4", "9/10"}) {
      cmp.value(std::string("p=") + p, R("3/2"), pk_cost(c.fn("AND(2)"), R(p), Rational(1), c.partialinfo()));
    }
    return cmp.outcome();
  });
  add("partialinfo.and2-formula", "a_{p,k}(AND2) = 3/2 + (k-2p+1)/4 below k = 2p-1", [](const Context& c) {
    Comparison cmp;
    for (const char* ps : {"2/3", "3/4"}) {
      const Rational p = R(ps);
      for (const Rational& kappa : {Rational(0), (2 * p - 1) / 2, (2 * p - 1) * Rational(9, 10)}) {
        cmp.value("p=" + exact(p) + " k=" + exact(kappa), R("3/2") + (kappa - 2 * p + 1) / 4,
                  pk_cost(c.fn("AND(2)"), p, kappa, c.partialinfo()));
      }
    }
    return cmp.outcome();
  });
  add("partialinfo.addr7", "ADDR7 at p=9/10, k=1/100 costs at most 9/2 + k + 6p(1-p)(p^2+(1-p)^2) < 5", [](const Context& c) {
    const Rational p = R("9/10");
    const Rational kappa = R("1/100");
    const Rational bound = R("9/2") + kappa + 6 * p * (1 - p) * (p * p + (1 - p) * (1 - p));
    const Rational v = pk_cost(c.fn("ADDR7"), p, kappa, c.partialinfo());
    return Comparison{}.text("value", "<= " + exact(bound) + " and < 5/1", exact(v), v <= bound && v < 5).outcome();
  });
  add("partialinfo.and2-critical", "k_c(AND2, p) = 2p - 1", [](const Context& c) {
    Comparison cmp;
    for (const char* ps : {"2/3", "3/4"}) {
      const Rational p = R(ps);
      cmp.value(std::string("p=") + ps, 2 * p - 1, kappa_critical(c.fn("AND(2)"), p, c.partialinfo()));
    }
    return cmp.outcome();
  });

  add("percolation.gadget", "two parallel pairs in series percolate as AND2 of OR2", [](const Context& c) {
    const Multigraph gadget{3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}}, {0}, {2}};
    return Comparison{}.holds("equal", perc_function(gadget) == c.fn("compose(AND(2),OR(2))")).outcome();
  });
  add("percolation.m3-crossing", "m=3 crossing probability at p=1/2 is 1/2 within 5 standard errors", [](const Context& c) {
    return mc_within(mc_estimate(grid_graph(3), 0.5, PercQuantity::crossing, 100000, c.config.seed, c.config.shards), 0.5, 5);
  });
  add("percolation.m3-witness", "every m=3 witness sample is at least m+1 = 4", [](const Context& c) {
    const auto e = mc_estimate(grid_graph(3), 0.5, PercQuantity::witness, 100000, c.config.seed, c.config.shards);
    return Comparison{}.text("min sample", ">= 4", std::to_string(e.minimum), e.minimum >= 4).outcome();
  });
  add("percolation.explore-linear", "exploration cost over m stays roughly flat for m in {3,5,7} at p=1/4",
      [](const Context& c) {
        std::vector<double> ratios;
        Comparison cmp;
        for (int m : {3, 5, 7}) {
          const auto e = explore_cost(grid_graph(m), 0.25, 20000, c.config.seed, c.config.shards);
          ratios.push_back(e.mean / m);
          std::ostringstream s;
          s << e.mean / m;
          cmp.info("m=" + std::to_string(m), s.str());
        }
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        std::ostringstream spread;
        spread << *hi / *lo;
        return cmp.text("max/min", "<= 1.25", spread.str(), *hi / *lo <= 1.25).outcome();
      });

  add("cli.measure-maj3-all", "measure MAJ(3) --p 1/2 --all", [](const Context& c) {
    const auto r = cmd_measure({"MAJ(3)", R("1/2"), {}}, c.config, c.overrides);
    Comparison cmp;
    for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
             {"s", "3/2"}, {"b", "7/4"}, {"w", "2"}, {"l", "5/2"}, {"sc", "5/2"}, {"a", "5/2"}}) {
      cmp.value(k, R(v), report_value(r, "measure", k));
    }
    return cmp.outcome();
  });
  add("cli.measure-g4", "measure G4 --p 1/2 --measures w,sc,a", [](const Context& c) {
    const auto r = cmd_measure({"G4", R("1/2"), {"w", "sc", "a"}}, c.config, c.overrides);
    return Comparison{}
        .value("w", R("37/16"), report_value(r, "measure", "w"))
        .value("sc", R("11/4"), report_value(r, "measure", "sc"))
        .value("a", R("11/4"), report_value(r, "measure", "a"))
        .outcome();
  });
  add("cli.partialinfo-and2-critical", "partial-info AND(2) --p 3/4 --critical", [](const Context& c) {
    const auto r = cmd_partialinfo({"AND(2)", R("3/4"), {}, true}, c.config, c.overrides);
    return Comparison{}.value("kappa_c", R("1/2"), parse_exact(r.summary.at("kappa_critical").get<std::string>())).outcome();
  });
  add("cli.partialinfo-addr7", "partial-info ADDR7 --p 9/10 --kappa 1/100", [](const Context& c) {
    const auto r = cmd_partialinfo({"ADDR7", R("9/10"), {R("1/100")}, false}, c.config, c.overrides);
    const Rational v = report_value(r, "kind", "cost");
    return Comparison{}.text("value", "< 5/1", exact(v), v < 5).outcome();
  });
  add("cli.partialinfo-kappa1", "partial-info MAJ(3) --p 3/4 --kappa 1 equals measure MAJ(3) a", [](const Context& c) {
    const auto pk = cmd_partialinfo({"MAJ(3)", R("3/4"), {Rational(1)}, false}, c.config, c.overrides);
    const auto a = cmd_measure({"MAJ(3)", R("1/2"), {"a"}}, c.config, c.overrides);
    return Comparison{}.value("value", report_value(a, "measure", "a"), report_value(pk, "kind", "cost")).outcome();
  });
  add("cli.perc-m3-crossing", "perc --m 3 --p 0.5 --quantity crossing --samples 100000 --seed 7", [](const Context& c) {
    PercRequest req;
    req.m = 3;
    req.p = "0.5";
    req.seed = 7;
    const auto r = cmd_percolation(req, c.config);
    McEstimate e;
    e.mean = r.rows.at(0).at("mean").get<double>();
    e.standard_error = r.rows.at(0).at("standard_error").get<double>();
    e.samples = r.rows.at(0).at("samples").get<std::uint64_t>();
    return mc_within(e, 0.5, 5);
  });
  return t;
}

// Closed-form rows: every quantity of the small examples at several p.
std::vector<Entry> table_entries() {
  std::vector<Entry> t;
  const auto add = [&](std::string id, std::string claim, std::function<Outcome(const Context&)> run) {
    t.push_back({std::move(id), std::move(claim), false, std::move(run)});
  };
  for (const char* ps : {"1/2", "1/3"}) {
    const Rational p = R(ps);
    const Rational q = 1 - p;
    const std::string suffix = std::string("p=") + ps;
    add("table.maj3." + suffix, "MAJ3 closed forms at " + suffix, [p, q](const Context& c) {
      const auto f = c.fn("MAJ(3)");
      const ProductMeasure m(p);
      const auto d = distributional_measures(f, m, c.pointwise());
      const Rational quadratic = 2 + 2 * p * q;
      return Comparison{}
          .value("s", 2 - 2 * pow(p, 3) - 2 * pow(q, 3), d.sensitivity)
          .value("b", 2 - pow(p, 3) - pow(q, 3), d.block_sensitivity)
          .value("w", Rational(2), d.witness)
          .value("sc", quadratic, sc_dist(f, m, c.subcube()))
          .value("a", quadratic, dist_cost(f, m, c.dtree()))
          .value("l", quadratic, local_witness_complexity(f, m, c.localwit()))
          .outcome();
    });
    add("table.aeq3." + suffix, "A-EQ3 closed forms at " + suffix, [p, q](const Context& c) {
      const auto f = c.fn("AEQ3");
      const ProductMeasure m(p);
      const auto d = distributional_measures(f, m, c.pointwise());
      const Rational cubic = 2 + pow(p, 3) + pow(q, 3);
      return Comparison{}
          .value("b", cubic, d.block_sensitivity)
          .value("w", cubic, d.witness)
          .value("l", cubic, local_witness_complexity(f, m, c.localwit()))
          .value("sc", cubic, sc_dist(f, m, c.subcube()))
          .value("a", 2 + p * p + q * q, dist_cost(f, m, c.dtree()))
          .outcome();
    });
  }
  add("table.g4.p=1/2", "G4 at p=1/2 as published", [](const Context& c) {
    const auto f = c.fn("G4");
    const ProductMeasure m(R("1/2"));
    const auto d = distributional_measures(f, m, c.pointwise());
    const Rational l = local_witness_complexity(f, m, c.localwit());
    return Comparison{}
        .value("s", R("3/2"), d.sensitivity)
        .value("b", R("9/4"), d.block_sensitivity)
        .value("w", R("37/16"), d.witness)
        .text("l", "in [37/16,21/8]", exact(l), l >= R("37/16") && l <= R("21/8"))
        .value("sc", R("11/4"), sc_dist(f, m, c.subcube()))
        .value("a", R("11/4"), dist_cost(f, m, c.dtree()))
        .outcome();
  });
  add("table.h4.p=1/2", "H4 at p=1/2", [](const Context& c) {
    const auto f = c.fn("H4");
    const ProductMeasure m(R("1/2"));
    return Comparison{}
        .value("sc", R("11/4"), sc_dist(f, m, c.subcube()))
        .value("a", R("3"), dist_cost(f, m, c.dtree()))
        .outcome();
  });
  for (int n = 1; n <= 5; ++n) {
    for (const char* ps : {"1/3", "1/2", "2/3"}) {
      const Rational p = R(ps);
      const std::string spec = "AND(" + std::to_string(n) + ")";
      add("table.and" + std::to_string(n) + ".p=" + ps, spec + " closed forms at p=" + ps, [p, spec, n](const Context& c) {
        const auto f = c.fn(spec);
        const ProductMeasure m(p);
        const auto d = distributional_measures(f, m, c.pointwise());
        const Rational pn = pow(p, static_cast<unsigned>(n));
        const Rational a = (1 - pn) / (1 - p);
        const Rational sc = sc_dist(f, m, c.subcube());
        Comparison cmp;
        cmp.value("s", n * pow(p, static_cast<unsigned>(n - 1)), d.sensitivity)
            .value("b", n * pn + (1 - pn), d.block_sensitivity)
            .value("w", n * pn + (1 - pn), d.witness)
            .value("a", a, dist_cost(f, m, c.dtree()));
        if (p <= R("1/2")) {
          cmp.value("sc", a, sc);
        } else {
          cmp.info("sc", exact(sc));
        }
        return cmp.outcome();
      });
    }
  }
  return t;
}

std::string group_of(const std::string& id) { return id.substr(0, id.find('.')); }

}  // namespace

std::vector<std::string> manifest_row_ids() {
  std::vector<std::string> ids;
  for (const auto& e : manifest_entries()) ids.push_back(e.id);
  return ids;
}

Report cmd_reproduce(const ReproduceOptions& options, const Config& config) {
  const auto start = Clock::now();
  std::vector<Entry> entries = manifest_entries();
  const int manifest_rows = static_cast<int>(entries.size());
  for (auto& e : table_entries()) entries.push_back(std::move(e));
  std::erase_if(entries, [&](const Entry& e) { return e.id.find(options.filter) == std::string::npos; });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });

  const Context context{options.overrides, config};
  std::vector<nlohmann::ordered_json> rows(entries.size());
  detail::parallel_for(entries.size(), 0, [&](std::size_t i) {
    const Entry& e = entries[i];
    const auto row_start = Clock::now();
    Outcome out;
    try {
      out = e.run(context);
    } catch (const std::exception& ex) {
      out = {"", std::string("error: ") + ex.what(), false};
    }
    rows[i] = {{"id", e.id},         {"group", group_of(e.id)},
               {"claim", e.claim},   {"expected", out.expected},
               {"computed", out.computed}, {"status", out.pass ? "PASS" : "FAIL"},
               {"seconds", seconds_since(row_start)}, {"manifest", e.manifest}};
  });

  Report report;
  report.command = "reproduce";
  report.columns = {"id", "group", "claim", "expected", "computed", "status", "seconds"};
  report.meta["caps"] = detail::caps_json(config.caps);
  report.meta["seed"] = config.seed;
  report.meta["filter"] = options.filter;
  report.meta["overrides"] = nlohmann::ordered_json::array();
  for (const auto& [name, f] : options.overrides) report.meta["overrides"].push_back(name);
  int passed = 0;
  std::vector<std::string> failed;
  for (auto& row : rows) {
    if (row["status"] == "PASS") {
      ++passed;
    } else {
      failed.push_back(row["id"].get<std::string>());
    }
    report.add_row(std::move(row));
  }
  const bool manifest_ok = manifest_rows == kManifestRowCount;
  report.summary["rows"] = rows.size();
  report.summary["passed"] = passed;
  report.summary["failed"] = failed.size();
  report.summary["failed_ids"] = failed;
  report.summary["manifest_rows"] = manifest_rows;
  report.summary["manifest_expected"] = kManifestRowCount;
  report.summary["manifest_ok"] = manifest_ok;
  report.summary["elapsed_seconds"] = seconds_since(start);
  report.exit_code = (failed.empty() && manifest_ok) ? kExitOk : kExitRegression;
  return report;
}

}  // namespace boolcx::cli
