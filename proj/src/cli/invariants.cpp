#include <algorithm>
#include <functional>
#include <random>
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
  std::string status;
  std::string detail;
};

// Counts checks and keeps the first counterexample.
class Verdict {
 public:
  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checked_;
    if (!ok && failed_++ == 0) first_ = describe();
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
  [[nodiscard]] Outcome outcome(const char* failure_status = "FAIL") const {
    std::string detail = std::to_string(checked_) + " checked";
    if (failed_ > 0) detail = std::to_string(failed_) + " of " + detail + "; first: " + first_;
    if (!notes_.empty()) detail += "; " + notes_;
    return {failed_ == 0 ? "PASS" : failure_status, detail};
  }

 private:
  long checked_ = 0;
  long failed_ = 0;
  std::string first_;
  std::string notes_;
};

struct Scope {
  bool full = false;
  std::uint64_t seed = 1;
  EngineCaps caps;
};

struct Check {
  std::string id;
  std::string description;
  std::function<Outcome(const Scope&)> run;
};

BooleanFunction from_index(int n, std::uint64_t index) {
  return BooleanFunction::from_predicate(n, [&](Input x) { return ((index >> x) & 1U) != 0; });
}

std::vector<BooleanFunction> all_functions(int n) {
  std::vector<BooleanFunction> out;
  const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(from_index(n, i));
  return out;
}

std::vector<BooleanFunction> all_up_to(int n_max) {
  std::vector<BooleanFunction> out;
  for (int n = 1; n <= n_max; ++n) {
    auto fs = all_functions(n);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

std::vector<BooleanFunction> monotone_up_to(int n_max) {
  std::vector<BooleanFunction> out;
  for (int n = 1; n <= n_max; ++n) {
    for (auto& f : all_functions(n)) {
      if (is_monotone(f)) out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<BooleanFunction> random_functions(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 1000003U + static_cast<std::uint64_t>(n));
  std::vector<BooleanFunction> out;
  for (int i = 0; i < count; ++i) out.push_back(BooleanFunction::from_predicate(n, [&](Input) { return (rng() & 1U) != 0; }));
  return out;
}

// Every function on at most three bits, plus a seeded sample on four bits at the full level.
std::vector<BooleanFunction> sweep(const Scope& scope, int sample4) {
  auto out = all_up_to(3);
  if (scope.full) {
    auto extra = random_functions(4, sample4, scope.seed);
    out.insert(out.end(), extra.begin(), extra.end());
  }
  return out;
}

std::vector<BooleanFunction> monotone_sweep(const Scope& scope) { return monotone_up_to(scope.full ? 4 : 3); }

bool is_dictator(const BooleanFunction& f) {
  for (int i = 0; i < f.arity(); ++i) {
    if (f == zoo::dictator(f.arity(), i)) return true;
  }
  return false;
}

bool is_parity_up_to_negation(const BooleanFunction& f) {
  const Input n_mask = full_mask(f.arity());
  for (Input subset = 0; subset <= n_mask; ++subset) {
    const auto par = BooleanFunction::from_predicate(f.arity(), [&](Input x) { return (weight(x & subset) & 1) != 0; });
    if (f == par || f == par.negated()) return true;
  }
  return false;
}

struct NamedFunction {
  std::string name;
  BooleanFunction f;
};

std::vector<NamedFunction> zoo_small() {
  std::vector<NamedFunction> out;
  for (const auto& [name, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"AND", {2}}, {"OR", {2}}, {"PAR", {2}}, {"MAJ", {3}}, {"AND", {3}}, {"AEQ3", {}},
           {"ADDRESS", {1}}, {"MAJ4", {}}, {"G4", {}}, {"H4", {}}, {"TRIBES", {2, 2}}, {"OR", {4}}}) {
    std::string label = name;
    if (!params.empty()) {
      label += "(";
      for (std::size_t i = 0; i < params.size(); ++i) label += (i ? "," : "") + std::to_string(params[i]);
      label += ")";
    }
    out.push_back({label, zoo::by_name(name, params)});
  }
  return out;
}

struct Pair {
  std::string name;
  BooleanFunction f;
  BooleanFunction g;
  BooleanFunction fg;
};

std::vector<Pair> zoo_pairs(int max_arity) {
  std::vector<Pair> out;
  const auto zoo = zoo_small();
  for (const auto& f : zoo) {
    for (const auto& g : zoo) {
      if (f.f.arity() * g.f.arity() > max_arity) continue;
      out.push_back({f.name + " o " + g.name, f.f, g.f, compose(f.f, g.f)});
    }
  }
  return out;
}

const std::vector<Rational>& two_ps() {
  static const std::vector<Rational> ps{Rational(1, 2), Rational(1, 3)};
  return ps;
}

std::string label(const BooleanFunction& f) { return to_text(f); }

// ---------------------------------------------------------------- core

Outcome mobius_round_trip(const Scope& s) {
  Verdict v;
  for (const auto& f : all_up_to(s.full ? 4 : 3)) {
    v.expect(from_multilinear(f.arity(), multilinear_coefficients(f)) == f, [&] { return label(f); });
  }
  for (int n = 5; n <= 10; ++n) {
    for (const auto& f : random_functions(n, s.full ? 1000 / 6 + 1 : 20, s.seed)) {
      v.expect(from_multilinear(n, multilinear_coefficients(f)) == f, [&] { return label(f); });
    }
  }
  return v.outcome();
}

Outcome composition_probability(const Scope& s) {
  Verdict v;
  for (const auto& pr : zoo_pairs(s.full ? 12 : 9)) {
    for (const auto& p : two_ps()) {
      const Rational gp = output_probability(pr.g, ProductMeasure(p));
      v.expect(output_probability(pr.fg, ProductMeasure(p)) == output_probability(pr.f, ProductMeasure(gp)),
               [&] { return pr.name + " at p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome xor_balance(const Scope& s) {
  Verdict v;
  for (const auto& f : all_up_to(s.full ? 3 : 2)) {
    for (int k = 1; k <= 2; ++k) {
      v.expect(output_probability(xor_parity(f, k), ProductMeasure(R("1/2"))) == R("1/2"),
               [&] { return label(f) + " k=" + std::to_string(k); });
    }
  }
  return v.outcome();
}

Outcome restrict_merge(const Scope& s) {
  Verdict v;
  for (const auto& f : all_up_to(s.full ? 3 : 2)) {
    const int n = f.arity();
    const Input mask = full_mask(n);
    for (Input assigned = 0; assigned <= mask; ++assigned) {
      for (Input values = assigned;; values = (values - 1) & assigned) {
        const Restriction r{assigned, values};
        const auto sub = restrict(f, r);
        for (Input y = 0; y < sub.size(); ++y) {
          v.expect(sub(y) == f(merge(r, y, n)), [&] { return label(f); });
        }
        if (values == 0) break;
      }
    }
  }
  return v.outcome();
}

// ---------------------------------------------------------------- pointwise

Outcome pointwise_chain(const Scope& s) {
  Verdict v;
  auto fs = s.full ? all_up_to(4) : all_up_to(3);
  for (int n = 5; n <= (s.full ? 10 : 8); ++n) {
    auto extra = random_functions(n, s.full ? 10 : 3, s.seed);
    fs.insert(fs.end(), extra.begin(), extra.end());
  }
  for (const auto& f : fs) {
    const auto prof = pointwise_profile(f);
    bool ok = true;
    for (std::size_t x = 0; x < f.size(); ++x) {
      ok = ok && prof.sensitivity[x] <= prof.block_sensitivity[x] && prof.block_sensitivity[x] <= prof.witness[x];
    }
    v.expect(ok, [&] { return label(f); });
  }
  return v.outcome();
}

Outcome dist_chain(const Scope& s) {
  Verdict v;
  for (const auto& f : sweep(s, 200)) {
    for (const auto& p : two_ps()) {
      const auto d = distributional_measures(f, ProductMeasure(p));
      v.expect(d.sensitivity <= d.block_sensitivity && d.block_sensitivity <= d.witness,
               [&] { return label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome parity_characterization(const Scope&) {
  Verdict v;
  const ProductMeasure m(R("1/3"));
  for (const auto& f : all_functions(3)) {
    const auto d = distributional_measures(f, m);
    v.expect((d.sensitivity == d.block_sensitivity) == is_parity_up_to_negation(f), [&] { return label(f); });
  }
  return v.outcome();
}

Outcome monotone_equality(const Scope&) {
  Verdict v;
  for (const auto& f : monotone_up_to(4)) {
    const auto d = deterministic_measures(f);
    v.expect(d.sensitivity == d.block_sensitivity && d.block_sensitivity == d.witness, [&] { return label(f); });
  }
  return v.outcome();
}

Outcome percolation_duality(const Scope&) {
  Verdict v;
  for (const auto& g : {grid_graph(1), Multigraph{3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}}, {0}, {2}}}) {
    const auto f = perc_function(g);
    const auto prof = pointwise_profile(f);
    for (std::size_t x = 0; x < f.size(); ++x) {
      v.expect(prof.block_sensitivity[x] == prof.witness[x], [&] { return label(f) + " x=" + std::to_string(x); });
    }
  }
  return v.outcome();
}

// ---------------------------------------------------------------- dtree

Outcome hierarchy(const Scope& s) {
  Verdict v;
  for (const auto& z : zoo_small()) {
    if (z.f.arity() > 4) continue;
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const Rational a = dist_cost(z.f, m);
      const Rational sc = sc_dist(z.f, m, SubcubeLimits{s.caps.subcube});
      const Rational l = local_witness_complexity(z.f, m, LocalWitnessLimits{s.caps.localwit});
      const Rational w = distributional_measures(z.f, m).witness;
      v.expect(a >= sc && sc >= l && l >= w, [&] {
        return z.name + " p=" + exact(p) + ": a=" + exact(a) + " sc=" + exact(sc) + " l=" + exact(l) + " w=" + exact(w);
      });
    }
  }
  return v.outcome();
}

Outcome det_composition(const Scope& s) {
  Verdict v;
  for (const auto& pr : zoo_pairs(s.full ? 12 : 9)) {
    v.expect(det_depth(pr.fg) == det_depth(pr.f) * det_depth(pr.g), [&] { return pr.name; });
  }
  return v.outcome();
}

Outcome dist_composition(const Scope& s) {
  Verdict v;
  for (const auto& pr : zoo_pairs(s.full ? 12 : 9)) {
    for (const auto& p : two_ps()) {
      const Rational gp = output_probability(pr.g, ProductMeasure(p));
      v.expect(dist_cost(pr.fg, ProductMeasure(p)) <= dist_cost(pr.f, ProductMeasure(gp)) * dist_cost(pr.g, ProductMeasure(p)),
               [&] { return pr.name + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome maj3_squared(const Scope&) {
  Verdict v;
  const auto f2 = iterate(zoo::majority(3), 2);
  const ProductMeasure m(R("1/2"));
  const Rational a = dist_cost(f2, m);
  const Rational s = expected_sensitivity(f2, m);
  v.expect(s * s <= a, [&] { return "a=" + exact(a) + " below s^2=" + exact(s * s); });
  v.expect(a < R("25/4"), [&] { return "a=" + exact(a) + " not below 25/4"; });
  v.note("a=" + exact(a));
  return v.outcome();
}

Outcome sensitivity_composition(const Scope& s) {
  Verdict v;
  for (const auto& pr : zoo_pairs(s.full ? 12 : 9)) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const ProductMeasure mg(output_probability(pr.g, m));
      const Rational sf = expected_sensitivity(pr.f, mg);
      v.expect(expected_sensitivity(pr.fg, m) == sf * expected_sensitivity(pr.g, m),
               [&] { return "s identity " + pr.name + " p=" + exact(p); });
      if (pr.fg.arity() <= 9) {
        const Rational bfg = distributional_measures(pr.fg, m).block_sensitivity;
        const Rational bg = distributional_measures(pr.g, m).block_sensitivity;
        v.expect(bfg >= sf * bg, [&] { return "b bound " + pr.name + " p=" + exact(p); });
      }
    }
  }
  return v.outcome();
}

Outcome osss(const Scope& s) {
  Verdict v;
  for (const auto& f : sweep(s, 200)) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      v.expect(osss_check(f, m, extract_tree(f, m)).holds, [&] { return label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

// ---------------------------------------------------------------- subcube

Outcome gamma_identity(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  for (const auto& f : all_up_to(s.full ? 3 : 2)) {
    if (f.is_constant()) continue;
    const Rational lhs = sc_dist(f, half) / expected_sensitivity(f, half);
    const Rational rhs(min_refining_boundary(f), edge_boundary(f));
    v.expect(lhs == rhs, [&] { return label(f) + ": " + exact(lhs) + " vs " + exact(rhs); });
  }
  return v.outcome();
}

Outcome dictator_characterization(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  for (const auto& f : monotone_sweep(s)) {
    if (f.is_constant()) continue;
    const bool equal = sc_dist(f, half) == distributional_measures(f, half).witness;
    v.expect(equal == is_dictator(f), [&] { return label(f); });
  }
  return v.outcome();
}

Outcome and_closure(const Scope&) {
  Verdict v;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : {R("1/4"), R("1/2")}) {
      const ProductMeasure m(p);
      const auto f = zoo::and_n(n);
      v.expect(sc_dist(f, m) == dist_cost(f, m), [&] { return "AND(" + std::to_string(n) + ") p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome odonnell_servedio(const Scope& s) {
  Verdict v;
  for (const auto& f : monotone_sweep(s)) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const Rational sens = expected_sensitivity(f, m);
      const Rational bound = 4 * p * (1 - p) * sens * sens;
      v.expect(sc_dist(f, m) >= bound, [&] { return "sc " + label(f) + " p=" + exact(p); });
      v.expect(local_witness_complexity(f, m) >= bound, [&] { return "l " + label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome sc_composition(const Scope& s) {
  Verdict v;
  for (const auto& pr : zoo_pairs(std::min(6, s.caps.subcube))) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const ProductMeasure mg(output_probability(pr.g, m));
      v.expect(sc_dist(pr.fg, m) <= sc_dist(pr.f, mg) * sc_dist(pr.g, m), [&] { return pr.name + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome monotone_a_equals_sc(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  for (const auto& f : monotone_sweep(s)) {
    const Rational a = dist_cost(f, half);
    const Rational sc = sc_dist(f, half);
    v.expect(a == sc, [&] { return label(f) + ": a=" + exact(a) + " sc=" + exact(sc); });
  }
  return v.outcome("FINDING");
}

// ---------------------------------------------------------------- localwit

Outcome sandwich(const Scope& s) {
  Verdict v;
  for (const auto& f : sweep(s, 40)) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const Rational l = local_witness_complexity(f, m);
      v.expect(distributional_measures(f, m).witness <= l && l <= sc_dist(f, m),
               [&] { return label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome localwit_composition(const Scope&) {
  Verdict v;
  for (const auto& pr : zoo_pairs(4)) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const ProductMeasure mg(output_probability(pr.g, m));
      v.expect(local_witness_complexity(pr.fg, m) <=
                   local_witness_complexity(pr.f, mg) * local_witness_complexity(pr.g, m),
               [&] { return pr.name + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome separation(const Scope&) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  const Rational l = local_witness_complexity(zoo::g4(), half);
  const Rational sc = sc_dist(zoo::g4(), half);
  v.expect(l < sc && sc == R("11/4"), [&] { return "l=" + exact(l) + " sc=" + exact(sc); });
  v.note("l(G4)=" + exact(l));
  return v.outcome();
}

Outcome duality(const Scope& s) {
  Verdict v;
  for (const auto& f : sweep(s, 20)) {
    if (f.arity() < 2) continue;
    for (const auto& p : two_ps()) {
      const auto program = build_program(f, ProductMeasure(p));
      const auto sol = solve(program);
      const auto& lp = program.lp;
      Rational primal_value = 0;
      for (std::size_t j = 0; j < lp.column_count(); ++j) primal_value += lp.cost[j] * sol.primal[j];
      Rational dual_value = 0;
      for (std::size_t i = 0; i < lp.row_count(); ++i) dual_value += lp.rhs[i] * sol.dual[i];
      bool dual_feasible = true;
      for (std::size_t j = 0; j < lp.column_count(); ++j) {
        Rational reduced = lp.cost[j];
        for (std::size_t i = 0; i < lp.row_count(); ++i) reduced -= lp.rows[i][j] * sol.dual[i];
        dual_feasible = dual_feasible && reduced >= 0;
      }
      v.expect(primal_value == sol.value && dual_value == sol.value && dual_feasible,
               [&] { return label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome l_equals_w_dictator_probe(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  for (const auto& f : monotone_sweep(s)) {
    if (f.is_constant()) continue;
    const bool equal = local_witness_complexity(f, half) == distributional_measures(f, half).witness;
    v.expect(equal == is_dictator(f), [&] { return label(f); });
  }
  return v.outcome("FINDING");
}

Outcome monotone_sc_above_l_probe(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  for (const auto& f : monotone_sweep(s)) {
    const Rational l = local_witness_complexity(f, half);
    const Rational sc = sc_dist(f, half);
    v.expect(sc == l, [&] { return label(f) + ": sc=" + exact(sc) + " l=" + exact(l); });
  }
  return v.outcome("FINDING");
}

// ---------------------------------------------------------------- partialinfo

const std::vector<Rational>& pk_ps() {
  static const std::vector<Rational> ps{Rational(2, 3), Rational(3, 4)};
  return ps;
}

std::vector<BooleanFunction> pk_sweep(const Scope& s) {
  auto out = all_functions(2);
  auto three = all_functions(3);
  if (!s.full) three.resize(64);
  out.insert(out.end(), three.begin(), three.end());
  return out;
}

Outcome threshold_bound(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  for (const auto& f : pk_sweep(s)) {
    const Rational a = dist_cost(f, half);
    for (const auto& p : pk_ps()) {
      const Rational kappa = kappa0_bound(f.arity(), p) + Rational(1, 1000);
      const auto line = pk_strategy_line(f, p, kappa);
      v.expect(line.at(kappa) == a, [&] { return label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome beta_zero(const Scope& s) {
  Verdict v;
  for (const auto& f : pk_sweep(s)) {
    for (const auto& p : pk_ps()) {
      const Rational kappa = kappa0_bound(f.arity(), p) + Rational(1, 1000);
      v.expect(pk_strategy_line(f, p, kappa).beta == 0, [&] { return label(f) + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome pk_monotone_concave(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  const std::vector<Rational> ps{Rational(2, 3), Rational(3, 4), Rational(9, 10)};
  std::vector<Rational> kappas;
  for (int i = 0; i <= 8; ++i) kappas.emplace_back(i, 8);
  for (const auto& f : pk_sweep(s)) {
    const Rational a = dist_cost(f, half);
    std::vector<std::vector<Rational>> cost(ps.size());
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      for (const auto& k : kappas) cost[pi].push_back(pk_cost(f, ps[pi], k));
      for (std::size_t k = 1; k < kappas.size(); ++k) {
        v.expect(cost[pi][k - 1] <= cost[pi][k], [&] { return "monotone " + label(f) + " p=" + exact(ps[pi]); });
      }
      for (std::size_t k = 1; k + 1 < kappas.size(); ++k) {
        v.expect(2 * cost[pi][k] >= cost[pi][k - 1] + cost[pi][k + 1],
                 [&] { return "concave " + label(f) + " p=" + exact(ps[pi]); });
      }
    }
    // a_{p,k} = a implies a_{p',k'} = a for p' <= p and k' >= k.
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      for (std::size_t k = 0; k < kappas.size(); ++k) {
        if (cost[pi][k] != a) continue;
        for (std::size_t pj = 0; pj <= pi; ++pj) {
          for (std::size_t kk = k; kk < kappas.size(); ++kk) {
            v.expect(cost[pj][kk] == a, [&] { return "upward closure " + label(f); });
          }
        }
      }
    }
  }
  return v.outcome();
}

Outcome pk_sandwich(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  auto fs = pk_sweep(s);
  if (s.full) {
    auto extra = random_functions(4, 30, s.seed);
    fs.insert(fs.end(), extra.begin(), extra.end());
  }
  for (const auto& f : fs) {
    const Rational a = dist_cost(f, half);
    const Rational w = distributional_measures(f, half).witness;
    for (const auto& p : pk_ps()) {
      for (const auto& k : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
        const Rational c = pk_cost(f, p, k);
        v.expect(w <= c && c <= a, [&] { return label(f) + " p=" + exact(p) + " k=" + exact(k); });
      }
    }
  }
  return v.outcome();
}

Outcome kappa_critical_probe(const Scope& s) {
  Verdict v;
  for (const auto& p : pk_ps()) {
    Rational best = 0;
    Rational best_symmetric = 0;
    for (const auto& f : s.full ? all_up_to(3) : all_up_to(2)) {
      const Rational k = kappa_critical(f, p);
      best = max(best, k);
      bool symmetric = true;
      for (Input x = 0; x < f.size(); ++x) {
        for (Input y = 0; y < f.size(); ++y) symmetric = symmetric && (weight(x) != weight(y) || f(x) == f(y));
      }
      if (symmetric) best_symmetric = max(best_symmetric, k);
      v.expect(k <= 2 * p - 1, [&] { return label(f) + " p=" + exact(p) + " k_c=" + exact(k); });
    }
    v.note("p=" + exact(p) + ": max k_c=" + exact(best) + ", symmetric max=" + exact(best_symmetric) +
           ", 2p-1=" + exact(2 * p - 1));
  }
  return v.outcome("FINDING");
}

// ---------------------------------------------------------------- percolation

Multigraph random_multigraph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vertex_count(2, 6);
  const int n = vertex_count(rng);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::uniform_int_distribution<int> edge_count(1, 10);
  Multigraph g{n, {}, {0}, {n - 1}};
  const int e = edge_count(rng);
  while (static_cast<int>(g.edges.size()) < e) {
    const int u = vertex(rng);
    const int w = vertex(rng);
    if (u != w) g.edges.emplace_back(u, w);
  }
  return g;
}

Outcome menger(const Scope& s) {
  Verdict v;
  std::mt19937_64 rng(s.seed);
  std::vector<Multigraph> graphs{grid_graph(1)};
  for (int i = 0; i < 20; ++i) graphs.push_back(random_multigraph(rng));
  for (const auto& g : graphs) {
    const auto f = perc_function(g);
    for (Input x = 0; x < f.size(); ++x) {
      v.expect(witness_at(g, configuration_from_input(x, g.edge_count())) == block_sensitivity_at(f, x),
               [&] { return multigraph_to_json(g) + " x=" + std::to_string(x); });
    }
  }
  return v.outcome();
}

Outcome perc_hierarchy(const Scope& s) {
  Verdict v;
  const SubcubeLimits limits{std::max(7, s.caps.subcube)};
  for (const auto& [name, f] : std::vector<std::pair<std::string, BooleanFunction>>{
           {"AND2 o OR2", compose(zoo::and_n(2), zoo::or_n(2))},
           {"TRIBES(2,2)", zoo::tribes(2, 2)},
           {"grid(1)", perc_function(grid_graph(1))}}) {
    for (const auto& p : two_ps()) {
      const ProductMeasure m(p);
      const auto d = distributional_measures(f, m);
      const Rational sc = sc_dist(f, m, limits);
      v.expect(sc > d.witness && d.witness == d.block_sensitivity && d.block_sensitivity > d.sensitivity,
               [&] { return name + " p=" + exact(p); });
    }
  }
  return v.outcome();
}

Outcome witness_lower_bound(const Scope& s) {
  Verdict v;
  for (int m = 1; m <= 5; ++m) {
    const auto e = mc_estimate(grid_graph(m), 0.5, PercQuantity::witness, s.full ? 20000 : 2000, s.seed);
    v.expect(e.minimum >= m + 1, [&] { return "m=" + std::to_string(m) + " min=" + std::to_string(e.minimum); });
  }
  return v.outcome();
}

Outcome determinism(const Scope& s) {
  Verdict v;
  const auto g = grid_graph(3);
  for (auto q : {PercQuantity::crossing, PercQuantity::witness, PercQuantity::exploration}) {
    const auto a = mc_estimate(g, 0.5, q, 3000, s.seed, 1);
    const auto b = mc_estimate(g, 0.5, q, 3000, s.seed, 1);
    const auto c = mc_estimate(g, 0.5, q, 3000, s.seed, 4);
    const auto same = [](const McEstimate& x, const McEstimate& y) {
      return x.mean == y.mean && x.standard_error == y.standard_error && x.minimum == y.minimum &&
             x.maximum == y.maximum && x.samples == y.samples;
    };
    v.expect(same(a, b) && same(a, c), [&] { return "quantity " + std::to_string(static_cast<int>(q)); });
  }
  return v.outcome();
}

// ---------------------------------------------------------------- ratios

std::string decimal(const Rational& r) {
  std::ostringstream out;
  out << r.to_double();
  return out.str();
}

Outcome ratio_l_over_w(const Scope&) {
  // l(f^k) >= s(f^k)^2 gives a lower bound on l/w when the program itself is over the cap.
  Verdict v;
  const ProductMeasure half(R("1/2"));
  std::vector<Rational> bounds;
  for (int k = 1; k <= 2; ++k) {
    const auto f = iterate(zoo::majority(3), k);
    const auto d = distributional_measures(f, half);
    bounds.push_back(d.sensitivity * d.sensitivity / d.witness);
    v.note("k=" + std::to_string(k) + ": s^2/w=" + exact(bounds.back()));
  }
  v.expect(bounds[1] > bounds[0], [] { return "bound did not grow"; });
  return v.outcome();
}

Outcome ratio_w_over_b(const Scope& s) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  Rational previous = 0;
  for (int n = 3; n <= (s.full ? 11 : 9); n += 2) {
    const auto d = distributional_measures(zoo::majority(n), half);
    const Rational ratio = d.witness / d.block_sensitivity;
    v.expect(ratio > previous, [&] { return "MAJ(" + std::to_string(n) + ") ratio " + exact(ratio); });
    v.note("n=" + std::to_string(n) + ": " + decimal(ratio));
    previous = ratio;
  }
  return v.outcome();
}

Outcome ratio_b_over_s(const Scope&) {
  Verdict v;
  const ProductMeasure half(R("1/2"));
  Rational previous = 0;
  for (int m = 1; m <= 2; ++m) {
    const auto d = distributional_measures(zoo::tribes(1 << m, m), half);
    const Rational ratio = d.block_sensitivity / d.sensitivity;
    v.expect(ratio > previous, [&] { return "m=" + std::to_string(m) + " ratio " + exact(ratio); });
    v.note("m=" + std::to_string(m) + ": " + decimal(ratio));
    previous = ratio;
  }
  return v.outcome();
}

std::vector<Check> all_checks() {
  return {
      {"core.mobius-round-trip", "multilinear coefficients reconstruct the truth table", mobius_round_trip},
      {"core.composition-probability", "P[f o g] = P_f at g(p)", composition_probability},
      {"core.xor-balance", "xor with parity bits is balanced", xor_balance},
      {"core.restrict-merge", "restriction agrees with merged evaluation", restrict_merge},
      {"pointwise.chain", "s(x) <= b(x) <= w(x)", pointwise_chain},
      {"pointwise.dist-chain", "s <= b <= w under product measures", dist_chain},
      {"pointwise.parity-characterization", "s = b at p=1/3 exactly for parities and their negations", parity_characterization},
      {"pointwise.monotone-equality", "monotone functions have sD = bD = wD", monotone_equality},
      {"pointwise.percolation-duality", "b(x) = w(x) for percolation functions", percolation_duality},
      {"dtree.hierarchy", "a >= sc >= l >= w on small zoo functions", hierarchy},
      {"dtree.det-composition", "aD(f o g) = aD(f) aD(g)", det_composition},
      {"dtree.dist-composition", "a(f o g) <= a(f, g(p)) a(g)", dist_composition},
      {"dtree.maj3-squared", "81/16 <= a(MAJ3 o MAJ3) < 25/4", maj3_squared},
      {"dtree.sensitivity-composition", "s(f o g) = s(f, g(p)) s(g) and b(f o g) >= s(f, g(p)) b(g)", sensitivity_composition},
      {"dtree.osss", "OSSS inequality for optimal trees", osss},
      {"subcube.gamma-identity", "sc/s equals the least refining boundary over the edge boundary", gamma_identity},
      {"subcube.dictator-characterization", "sc = w at p=1/2 exactly for dictators among monotone functions", dictator_characterization},
      {"subcube.and-closure", "sc(AND_n) = a(AND_n) for p <= 1/2", and_closure},
      {"subcube.odonnell-servedio", "sc and l are at least 4p(1-p) s^2 for monotone functions", odonnell_servedio},
      {"subcube.composition", "sc(f o g) <= sc(f, g(p)) sc(g)", sc_composition},
      {"subcube.monotone-a-equals-sc", "probe: a = sc for monotone functions", monotone_a_equals_sc},
      {"localwit.sandwich", "w <= l <= sc", sandwich},
      {"localwit.composition", "l(f o g) <= l(f, g(p)) l(g)", localwit_composition},
      {"localwit.separation", "l(G4) < sc(G4) = 11/4", separation},
      {"localwit.duality", "simplex primal and dual certificates agree", duality},
      {"localwit.l-equals-w-dictator", "probe: l = w exactly for dictators among monotone functions", l_equals_w_dictator_probe},
      {"localwit.monotone-sc-above-l", "probe: sc = l for monotone functions", monotone_sc_above_l_probe},
      {"partialinfo.threshold-bound", "cost at kappa0 + 1/1000 equals a", threshold_bound},
      {"partialinfo.beta-zero", "optimal line has no coarse term above kappa0", beta_zero},
      {"partialinfo.monotone-concave", "cost is nondecreasing and concave in kappa, with upward closure", pk_monotone_concave},
      {"partialinfo.sandwich", "w <= a_{p,k} <= a", pk_sandwich},
      {"partialinfo.kappa-critical", "probe: k_c <= 2p - 1", kappa_critical_probe},
      {"percolation.menger", "witness_at equals block sensitivity", menger},
      {"percolation.hierarchy", "sc > w = b > s for percolation functions", perc_hierarchy},
      {"percolation.witness-lower-bound", "every sampled grid witness is at least m+1", witness_lower_bound},
      {"percolation.determinism", "estimates repeat and do not depend on sharding", determinism},
      {"ratios.l-over-w", "l/w lower bound grows along iterated MAJ3", ratio_l_over_w},
      {"ratios.w-over-b", "w/b grows along MAJ_n", ratio_w_over_b},
      {"ratios.b-over-s", "b/s grows along TRIBES(2^m, m)", ratio_b_over_s},
  };
}

std::string suite_of(const std::string& id) { return id.substr(0, id.find('.')); }

}  // namespace

std::vector<std::string> invariant_suite_ids() {
  std::vector<std::string> ids;
  for (const auto& c : all_checks()) {
    const std::string suite = suite_of(c.id);
    if (std::find(ids.begin(), ids.end(), suite) == ids.end()) ids.push_back(suite);
  }
  return ids;
}

Report cmd_invariants(const InvariantOptions& options, const Config& config) {
  const auto start = Clock::now();
  const auto suites = invariant_suite_ids();
  for (const auto& s : options.only) {
    if (std::find(suites.begin(), suites.end(), s) == suites.end()) throw UsageError("unknown suite '" + s + "'");
  }
  auto checks = all_checks();
  if (!options.only.empty()) {
    std::erase_if(checks, [&](const Check& c) {
      return std::find(options.only.begin(), options.only.end(), suite_of(c.id)) == options.only.end();
    });
  }
  std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });

  const Scope scope{options.level == InvariantLevel::full, options.seed, config.caps};
  std::vector<nlohmann::ordered_json> rows(checks.size());
  detail::parallel_for(checks.size(), options.threads, [&](std::size_t i) {
    const auto check_start = Clock::now();
    Outcome out;
    try {
      out = checks[i].run(scope);
    } catch (const std::exception& e) {
      out = {"FAIL", std::string("error: ") + e.what()};
    }
    rows[i] = {{"id", checks[i].id},
               {"suite", suite_of(checks[i].id)},
               {"description", checks[i].description},
               {"status", out.status},
               {"detail", out.detail},
               {"seconds", seconds_since(check_start)}};
  });

  Report report;
  report.command = "invariants";
  report.columns = {"id", "suite", "status", "detail", "seconds"};
  report.meta["seed"] = options.seed;
  report.meta["level"] = scope.full ? "full" : "fast";
  report.meta["caps"] = detail::caps_json(config.caps);
  int failed = 0;
  int findings = 0;
  for (auto& row : rows) {
    failed += row["status"] == "FAIL";
    findings += row["status"] == "FINDING";
    report.add_row(std::move(row));
  }
  report.summary["checks"] = report.rows.size();
  report.summary["failed"] = failed;
  report.summary["findings"] = findings;
  report.summary["elapsed_seconds"] = seconds_since(start);
  report.exit_code = failed == 0 ? kExitOk : kExitRegression;
  return report;
}

}  // namespace boolcx::cli
