// Acceptance suite: prints one PASS/FAIL line per criterion, with the failed checks beneath it.
// Usage: acceptance [criterion numbers...]   (all seven when none are given)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "boolcx/cli/commands.hpp"
#include "boolcx/dtree.hpp"
#include "boolcx/localwit.hpp"
#include "boolcx/partialinfo.hpp"
#include "boolcx/percolation.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/product_measure.hpp"
#include "boolcx/subcube.hpp"
#include "boolcx/zoo.hpp"

using namespace boolcx;

namespace {

Rational R(const char* text) { return Rational::parse(text); }
std::string str(const Rational& r) { return r.str(); }

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void equal(const Rational& computed, const Rational& expected, const std::string& what) {
    expect(computed == expected, what + ": computed " + str(computed) + ", expected " + str(expected));
  }
  [[nodiscard]] int checks() const { return checks_; }
  [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }

 private:
  int checks_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

const std::vector<Rational>& table_ps() {
  static const std::vector<Rational> ps{R("1/2"), R("1/3")};
  return ps;
}

// ------------------------------------------------------------------ 1

void check_maj3(Checker& c, const Rational& p) {
  const auto f = zoo::majority(3);
  const ProductMeasure m(p);
  const Rational q = 1 - p;
  const auto d = distributional_measures(f, m);
  const std::string at = " MAJ3 p=" + str(p);
  c.equal(d.sensitivity, 2 - 2 * pow(p, 3) - 2 * pow(q, 3), "s" + at);
  c.equal(d.block_sensitivity, 2 - pow(p, 3) - pow(q, 3), "b" + at);
  c.equal(d.witness, 2, "w" + at);
  c.equal(sc_dist(f, m), 2 + 2 * p * q, "sc" + at);
  c.equal(dist_cost(f, m), 2 + 2 * p * q, "a" + at);
  c.equal(local_witness_complexity(f, m), 2 + 2 * p * q, "l" + at);
}

void check_aeq3(Checker& c, const Rational& p) {
  const auto f = zoo::all_equal3();
  const ProductMeasure m(p);
  const Rational q = 1 - p;
  const Rational cube = 2 + pow(p, 3) + pow(q, 3);
  const auto d = distributional_measures(f, m);
  const std::string at = " A-EQ3 p=" + str(p);
  c.equal(d.block_sensitivity, cube, "b" + at);
  c.equal(d.witness, cube, "w" + at);
  c.equal(local_witness_complexity(f, m), cube, "l" + at);
  c.equal(sc_dist(f, m), cube, "sc" + at);
  c.equal(dist_cost(f, m), 2 + p * p + q * q, "a" + at);
}

void criterion_tables(Checker& c) {
  for (const auto& p : table_ps()) {
    check_maj3(c, p);
    check_aeq3(c, p);
  }

  const ProductMeasure half(R("1/2"));
  const auto g4 = zoo::g4();
  const auto d = distributional_measures(g4, half);
  c.equal(d.sensitivity, R("3/2"), "s G4");
  c.equal(d.block_sensitivity, R("9/4"), "b G4");
  c.equal(d.witness, R("37/16"), "w G4");
  const Rational l = local_witness_complexity(g4, half);
  c.expect(R("37/16") <= l && l <= R("21/8"), "l G4 = " + str(l) + " outside [37/16, 21/8]");
  c.equal(sc_dist(g4, half), R("11/4"), "sc G4");
  c.equal(dist_cost(g4, half), R("11/4"), "a G4");

  const auto h4 = zoo::h4();
  c.equal(sc_dist(h4, half), R("11/4"), "sc H4");
  c.equal(dist_cost(h4, half), 3, "a H4");

  for (int n = 1; n <= 5; ++n) {
    for (const char* text : {"1/3", "1/2", "2/3"}) {
      const Rational p = R(text);
      const ProductMeasure m(p);
      const auto f = zoo::and_n(n);
      const auto dn = distributional_measures(f, m);
      const Rational pn = pow(p, n);
      const std::string at = " AND" + std::to_string(n) + " p=" + text;
      c.equal(dn.sensitivity, n * pow(p, n - 1), "s" + at);
      c.equal(dn.block_sensitivity, n * pn + (1 - pn), "b" + at);
      c.equal(dn.witness, n * pn + (1 - pn), "w" + at);
      const Rational a = dist_cost(f, m);
      c.equal(a, (1 - pn) / (1 - p), "a" + at);
      if (p <= R("1/2")) c.equal(sc_dist(f, m), a, "sc" + at);
    }
  }

  const auto report = cli::cmd_reproduce();
  c.expect(report.exit_code == cli::kExitOk, "reproduce failed rows: " + report.summary.at("failed_ids").dump());
  c.expect(report.summary.at("manifest_ok").get<bool>(), "reproduce manifest count mismatch");
}

// ------------------------------------------------------------------ 2

void criterion_deterministic(Checker& c) {
  const auto nisan = zoo::nisan(8);
  const auto dn = deterministic_measures(nisan);
  c.equal(dn.sensitivity, 6, "s_D NISAN(8)");
  c.equal(dn.block_sensitivity, 6, "b_D NISAN(8)");
  c.equal(dn.witness, 7, "w_D NISAN(8)");
  c.equal(sc_det(nisan, SubcubeLimits{8}), 8, "sc_D NISAN(8)");
  c.equal(det_depth(nisan), 8, "a_D NISAN(8)");

  const auto maj4 = zoo::majority4();
  const auto dm = deterministic_measures(maj4);
  c.equal(dm.sensitivity, 3, "s_D MAJ4");
  c.equal(dm.block_sensitivity, 3, "b_D MAJ4");
  c.equal(dm.witness, 3, "w_D MAJ4");
  c.equal(sc_det(maj4), 3, "sc_D MAJ4");
  c.equal(det_depth(maj4), 4, "a_D MAJ4");
  const ProductMeasure half(R("1/2"));
  c.equal(sc_dist(maj4, half), dist_cost(maj4, half), "sc = a MAJ4");

  const auto tribes = zoo::tribes(2, 2);
  const auto dt = deterministic_measures(tribes);
  c.equal(det_depth(tribes), 4, "a_D TRIBES(2,2)");
  c.equal(sc_det(tribes), 4, "sc_D TRIBES(2,2)");
  c.equal(dt.sensitivity, 2, "s_D TRIBES(2,2)");
  c.equal(dt.block_sensitivity, 2, "b_D TRIBES(2,2)");
  c.equal(dt.witness, 2, "w_D TRIBES(2,2)");
  for (const char* text : {"1/10", "1/3", "1/2", "2/3", "9/10"}) {
    const auto d = distributional_measures(tribes, ProductMeasure(R(text)));
    c.equal(d.block_sensitivity, 2, std::string("b TRIBES(2,2) p=") + text);
    c.equal(d.witness, 2, std::string("w TRIBES(2,2) p=") + text);
  }

  const auto addr = zoo::address(2);
  c.equal(distributional_measures(addr, half).witness, 3, "w ADDRESS(2)");
  c.equal(dist_cost(addr, half), 3, "a ADDRESS(2)");
}

// ------------------------------------------------------------------ 3

struct Pair {
  std::string name;
  BooleanFunction f;
  BooleanFunction g;
};

void criterion_composition(Checker& c) {
  const auto and2 = zoo::and_n(2);
  const auto or2 = zoo::or_n(2);
  const auto par2 = zoo::parity(2);
  const auto maj3 = zoo::majority(3);
  const auto aeq3 = zoo::all_equal3();
  const std::vector<Pair> pairs{
      {"AND2 o OR2", and2, or2},   {"OR2 o AND2", or2, and2},   {"PAR2 o AND2", par2, and2},
      {"AND2 o PAR2", and2, par2}, {"MAJ3 o AND2", maj3, and2}, {"AND2 o MAJ3", and2, maj3},
      {"OR2 o MAJ3", or2, maj3},   {"MAJ3 o OR2", maj3, or2},   {"PAR2 o MAJ3", par2, maj3},
      {"AEQ3 o OR2", aeq3, or2},   {"G4 o AND2", zoo::g4(), and2}, {"MAJ3 o MAJ3", maj3, maj3},
  };
  const SubcubeLimits sc_limits{};
  const LocalWitnessLimits l_limits{};
  for (const auto& pr : pairs) {
    const auto fg = compose(pr.f, pr.g);
    for (const auto& p : table_ps()) {
      const ProductMeasure m(p);
      const ProductMeasure mg(output_probability(pr.g, m));
      const std::string at = " " + pr.name + " p=" + str(p);
      c.equal(expected_sensitivity(fg, m), expected_sensitivity(pr.f, mg) * expected_sensitivity(pr.g, m),
              "s composition" + at);
      const Rational a = dist_cost(fg, m);
      const Rational a_bound = dist_cost(pr.f, mg) * dist_cost(pr.g, m);
      c.expect(a <= a_bound, "a" + at + " = " + str(a) + " above " + str(a_bound));
      if (fg.arity() <= sc_limits.max_arity) {
        const Rational sc = sc_dist(fg, m);
        const Rational sc_bound = sc_dist(pr.f, mg) * sc_dist(pr.g, m);
        c.expect(sc <= sc_bound, "sc" + at + " = " + str(sc) + " above " + str(sc_bound));
      }
      if (fg.arity() <= l_limits.max_arity) {
        const Rational l = local_witness_complexity(fg, m);
        const Rational l_bound = local_witness_complexity(pr.f, mg) * local_witness_complexity(pr.g, m);
        c.expect(l <= l_bound, "l" + at + " = " + str(l) + " above " + str(l_bound));
      }
    }
  }

  const auto maj3_sq = iterate(maj3, 2);
  const ProductMeasure half(R("1/2"));
  const auto d = distributional_measures(maj3_sq, half);
  c.equal(d.sensitivity, R("9/4"), "s MAJ3^2");
  c.equal(d.witness, 4, "w MAJ3^2");
  const Rational a = dist_cost(maj3_sq, half);
  c.expect(R("81/16") <= a && a < R("25/4"), "a MAJ3^2 = " + str(a) + " outside [81/16, 25/4)");
}

// ------------------------------------------------------------------ 4

// True when every input agreeing with x on `bits` has the same value as x.
bool certifies(const BooleanFunction& f, Input x, Input bits) {
  for (Input y = 0; y < f.size(); ++y) {
    if (((y ^ x) & bits) == 0 && f(y) != f(x)) return false;
  }
  return true;
}

void criterion_local_witness(Checker& c) {
  for (const auto& p : table_ps()) {
    const ProductMeasure m(p);
    const Rational q = 1 - p;
    c.equal(local_witness_complexity(zoo::majority(3), m), 2 + 2 * p * q, "l MAJ3 p=" + str(p));
    c.equal(local_witness_complexity(zoo::all_equal3(), m), 2 + pow(p, 3) + pow(q, 3), "l A-EQ3 p=" + str(p));
  }
  const ProductMeasure half(R("1/2"));
  const auto g4 = zoo::g4();
  const Rational l = local_witness_complexity(g4, half);
  c.expect(R("37/16") <= l && l <= R("21/8"), "l G4 = " + str(l) + " outside [37/16, 21/8]");

  const auto s = RandomWitnessSet::read(std::string(BOOLCX_FIXTURE_DIR) + "/g4_witness.txt");
  c.expect(s.arity == 4, "fixture arity");
  Rational total_weight = 0;
  Rational size = 0;
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    total_weight += s.components[k].weight;
    for (Input x = 0; x < g4.size(); ++x) {
      const Input bits = s.set_at(k, x);
      c.expect(certifies(g4, x, bits), "fixture component " + std::to_string(k) + " does not certify x=" +
                                           std::to_string(x));
      size += s.components[k].weight * point_probability(half, x, g4.arity()) * weight(bits);
    }
  }
  c.equal(total_weight, 1, "fixture weights");
  c.equal(size, R("21/8"), "fixture expected size");
}

// ------------------------------------------------------------------ 5

std::vector<BooleanFunction> functions_on(int n) {
  std::vector<BooleanFunction> out;
  const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
  for (std::uint64_t index = 0; index < total; ++index) {
    out.push_back(BooleanFunction::from_predicate(n, [&](Input x) { return ((index >> x) & 1U) != 0; }));
  }
  return out;
}

void criterion_partial_information(Checker& c) {
  const auto and2 = zoo::and_n(2);
  const ProductMeasure half(R("1/2"));
  const std::vector<Rational> ps{R("2/3"), R("3/4")};
  for (const auto& p : ps) {
    const Rational edge = 2 * p - 1;
    c.equal(kappa_critical(and2, p), edge, "kappa_c AND2 p=" + str(p));
    for (const Rational& kappa : {Rational(0), edge / 4, edge / 2, edge - R("1/1000")}) {
      c.equal(pk_cost(and2, p, kappa), R("3/2") + (kappa - edge) / 4,
              "a_{p,kappa} AND2 p=" + str(p) + " kappa=" + str(kappa));
    }
  }

  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : functions_on(n)) {
      const Rational a = dist_cost(f, half);
      for (const auto& p : ps) {
        c.equal(pk_cost(f, p, 1), a, "a_{p,1} n=" + std::to_string(n) + " table " + to_text(f) + "p=" + str(p));
        if (n >= 2) {
          const Rational kappa = kappa0_bound(n, p) + R("1/1000");
          c.equal(pk_cost(f, p, kappa), a, "a at kappa0+1/1000 n=" + std::to_string(n) + " p=" + str(p));
        }
      }
    }
  }

  const Rational addr = pk_cost(zoo::address7(), R("9/10"), R("1/100"));
  c.expect(addr < 5, "address-7 value " + str(addr) + " not below 5");
}

// ------------------------------------------------------------------ 6

void criterion_percolation(Checker& c) {
  const auto grid = grid_graph(1);
  const auto f = perc_function(grid);
  c.equal(f.arity(), 7, "grid(1) edge count");
  for (Input x = 0; x < f.size(); ++x) {
    const auto omega = configuration_from_input(x, grid.edge_count());
    c.equal(witness_at(grid, omega), witness_size_at(f, x), "witness_at x=" + std::to_string(x));
    c.equal(pivotal_count(grid, omega), sensitivity_at(f, x), "pivotal_count x=" + std::to_string(x));
  }
  c.equal(output_probability(f, ProductMeasure(R("1/2"))), R("1/2"), "grid(1) crossing at 1/2");

  const auto grid3 = grid_graph(3);
  const auto crossing = mc_estimate(grid3, 0.5, PercQuantity::crossing, 100000, 7);
  c.expect(std::abs(crossing.mean - 0.5) <= 5 * crossing.standard_error,
           "grid(3) crossing mean " + std::to_string(crossing.mean) + " more than 5 standard errors from 1/2");
  const auto witness = mc_estimate(grid3, 0.5, PercQuantity::witness, 100000, 7);
  c.expect(witness.minimum >= 4, "grid(3) witness sample " + std::to_string(witness.minimum) + " below 4");

  const Multigraph two_paths{4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {0}, {3}};
  const Multigraph doubled_series{3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}}, {0}, {2}};
  for (const auto& [name, g] : std::vector<std::pair<std::string, Multigraph>>{
           {"two parallel paths", two_paths}, {"doubled series", doubled_series}, {"grid(1)", grid}}) {
    const auto h = perc_function(g);
    for (const auto& p : table_ps()) {
      const ProductMeasure m(p);
      const auto d = distributional_measures(h, m);
      const Rational sc = sc_dist(h, m, SubcubeLimits{7});
      c.expect(sc > d.witness && d.witness == d.block_sensitivity && d.block_sensitivity > d.sensitivity,
               name + " p=" + str(p) + ": sc=" + str(sc) + " w=" + str(d.witness) + " b=" +
                   str(d.block_sensitivity) + " s=" + str(d.sensitivity));
    }
  }
}

// ------------------------------------------------------------------ 7

void criterion_sweeps(Checker& c) {
  cli::InvariantOptions options;
  options.level = cli::InvariantLevel::full;
  const auto report = cli::cmd_invariants(options);
  const std::set<std::string> required{"pointwise.parity-characterization", "subcube.dictator-characterization",
                                       "pointwise.monotone-equality", "dtree.osss", "subcube.odonnell-servedio"};
  std::set<std::string> seen;
  for (const auto& row : report.rows) {
    const auto id = row.at("id").get<std::string>();
    const auto status = row.at("status").get<std::string>();
    if (required.contains(id)) {
      seen.insert(id);
      c.expect(status == "PASS", id + ": " + status + " " + row.at("detail").get<std::string>());
    } else {
      c.expect(status != "FAIL", id + ": " + row.at("detail").get<std::string>());
    }
  }
  c.expect(seen == required, "missing sweep checks in the invariant report");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "exact table reproduction", 300, criterion_tables},
      {2, "deterministic measures", 60, criterion_deterministic},
      {3, "composition", 120, criterion_composition},
      {4, "local witness program", 60, criterion_local_witness},
      {5, "partial information", 120, criterion_partial_information},
      {6, "percolation", 300, criterion_percolation},
      {7, "characterization sweeps", 1800, criterion_sweeps},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() && !selected.contains(criterion.number)) continue;
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checker.expect(seconds <= criterion.budget_seconds,
                   "took " + std::to_string(seconds) + " s, budget " + std::to_string(criterion.budget_seconds) + " s");
    const bool pass = checker.failures().empty();
    failed += pass ? 0 : 1;
    std::printf("CRITERION %d %s  %s  (%d checks, %.2f s of %.0f s)\n", criterion.number, pass ? "PASS" : "FAIL",
                criterion.title.c_str(), checker.checks(), seconds, criterion.budget_seconds);
    for (const auto& failure : checker.failures()) std::printf("    %s\n", failure.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
