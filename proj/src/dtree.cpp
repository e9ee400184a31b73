#include "boolcx/dtree.hpp"

#include <bit>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "boolcx/errors.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/subcube_table.hpp"
#include "code_memo.hpp"
#include "wide_int.hpp"

namespace boolcx {

namespace {

Input lowest_bit(Input mask) { return mask & (~mask + 1); }
int bit_index(Input bit) { return std::countr_zero(bit); }

void check_arity(const BooleanFunction& f, const DtreeLimits& limits) {
  if (f.arity() > limits.max_arity) throw CapExceeded("decision tree arity", f.arity(), limits.max_arity);
}

// Expected cost scaled by b^k at a state with k free bits, where p = a/b:
//   U = b^k + min_i [ (b-a)·U(bit i -> 0) + a·U(bit i -> 1) ],  U = 0 on constant cells.
template <class Int>
class Expectimax {
 public:
  struct Entry {
    Int value{};
    int best = -1;
  };

  Expectimax(const SubcubeTable& table, const mpz_class& a, const mpz_class& b)
      : table_(table),
        a_(detail::from_mpz<Int>(a)),
        c_(detail::from_mpz<Int>(b - a)),
        memo_(table.size()) {
    mpz_class power = 1;
    for (int k = 0; k <= table.arity(); ++k) {
      scale_.push_back(detail::from_mpz<Int>(power));
      power *= b;
    }
  }

  Int solve(std::uint32_t code, Input free) {
    if (table_.constant(code)) return Int(0);
    if (const Entry* hit = memo_.find(code)) return hit->value;
    Entry entry;
    bool have = false;
    Int best_sum{};
    for (Input rest = free; rest != 0; rest &= rest - 1) {
      const Input bit = lowest_bit(rest);
      const int i = bit_index(bit);
      const Int zero = solve(code - 2 * table_.pow3(i), free ^ bit);
      const Int one = solve(code - table_.pow3(i), free ^ bit);
      Int sum = c_ * zero + a_ * one;
      if (!have || sum < best_sum) {
        best_sum = std::move(sum);
        entry.best = i;
        have = true;
      }
    }
    entry.value = scale_[static_cast<std::size_t>(std::popcount(free))] + best_sum;
    memo_.store(code, entry);
    return entry.value;
  }

  int best_query(std::uint32_t code) const {
    const Entry* hit = memo_.find(code);
    return hit == nullptr ? -1 : hit->best;
  }

 private:
  const SubcubeTable& table_;
  Int a_;
  Int c_;
  std::vector<Int> scale_;
  detail::CodeMemo<Entry> memo_;
};

template <class Int>
DecisionTree build_tree(const SubcubeTable& table, Expectimax<Int>& solver) {
  DecisionTree tree = DecisionTree::builder();
  const std::function<int(std::uint32_t, Input)> emit = [&](std::uint32_t code, Input free) -> int {
    if (table.constant(code)) return tree.add_leaf(table.status(code) == SubcubeTable::Status::one);
    const int i = solver.best_query(code);
    const Input bit = Input{1} << i;
    const int zero = emit(code - 2 * table.pow3(i), free ^ bit);
    const int one = emit(code - table.pow3(i), free ^ bit);
    return tree.add_query(i, zero, one);
  };
  tree.set_root(emit(table.full_code(), full_mask(table.arity())));
  return tree;
}

struct DistOutcome {
  Rational cost;
  DecisionTree tree;
};

template <class Int>
DistOutcome run_expectimax(const SubcubeTable& table, const ProductMeasure& m, bool want_tree) {
  const mpz_class a = m.p().numerator();
  const mpz_class b = m.p().denominator();
  Expectimax<Int> solver(table, a, b);
  const Int scaled = solver.solve(table.full_code(), full_mask(table.arity()));
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(table.arity()));
  DistOutcome out{Rational(detail::as_mpz(scaled), denominator), DecisionTree::leaf(false)};
  if (want_tree) out.tree = build_tree(table, solver);
  return out;
}

DistOutcome expectimax(const BooleanFunction& f, const ProductMeasure& m, const DtreeLimits& limits,
                       bool want_tree) {
  check_arity(f, limits);
  const SubcubeTable table(f, limits.max_arity);
  // Scaled values never exceed 2·n·b^n.
  mpz_class bound;
  mpz_pow_ui(bound.get_mpz_t(), m.p().denominator().get_mpz_t(), static_cast<unsigned long>(f.arity()));
  bound *= 2 * (f.arity() + 1);
  bound *= m.p().denominator();
  if (detail::fits_int128(bound)) return run_expectimax<detail::Int128>(table, m, want_tree);
  return run_expectimax<mpz_class>(table, m, want_tree);
}

struct Walker {
  const DecisionTree& tree;
  const BooleanFunction& f;

  // Calls visit(node, fixed, values) for every node reached, after validating bit use.
  template <class Visit>
  void walk(int at, Input fixed, Input values, Visit&& visit) const {
    const auto& node = tree.node(at);
    visit(node, fixed, values);
    if (node.is_leaf()) return;
    const Input bit = Input{1} << node.bit;
    if (node.bit >= f.arity()) throw std::invalid_argument("tree queries a bit beyond the arity");
    if (fixed & bit) throw std::invalid_argument("tree queries bit " + std::to_string(node.bit + 1) + " twice");
    walk(node.zero, fixed | bit, values, visit);
    walk(node.one, fixed | bit, values | bit, visit);
  }
};

// Enumerates the points of the subcube fixing `values` on `fixed`.
template <class Visit>
void for_each_point(int n, Input fixed, Input values, Visit&& visit) {
  const Input free = full_mask(n) & ~fixed;
  Input sub = 0;
  do {
    visit(values | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
}

struct WeightedNode {
  int index;
  Rational reach;
};

// Reach probability of every internal node.
std::vector<std::pair<int, Rational>> internal_reach(const DecisionTree& t, const ProductMeasure& m) {
  std::vector<std::pair<int, Rational>> out;
  const Rational q = Rational(1) - m.p();
  std::vector<WeightedNode> stack{{t.root(), Rational(1)}};
  while (!stack.empty()) {
    WeightedNode current = std::move(stack.back());
    stack.pop_back();
    const auto& node = t.node(current.index);
    if (node.is_leaf() || current.reach == 0) continue;
    stack.push_back({node.zero, current.reach * q});
    stack.push_back({node.one, current.reach * m.p()});
    out.emplace_back(node.bit, std::move(current.reach));
  }
  return out;
}

}  // namespace

int det_depth(const BooleanFunction& f, const DtreeLimits& limits) {
  check_arity(f, limits);
  const SubcubeTable table(f, limits.max_arity);
  std::vector<std::int8_t> memo(table.size(), -1);
  const std::function<int(std::uint32_t, Input)> solve = [&](std::uint32_t code, Input free) -> int {
    if (table.constant(code)) return 0;
    if (memo[code] >= 0) return memo[code];
    int best = std::popcount(free);
    for (Input rest = free; rest != 0 && best > 1; rest &= rest - 1) {
      const Input bit = lowest_bit(rest);
      const int i = bit_index(bit);
      const int zero = solve(code - 2 * table.pow3(i), free ^ bit);
      if (1 + zero >= best) continue;
      const int one = solve(code - table.pow3(i), free ^ bit);
      best = std::min(best, 1 + std::max(zero, one));
    }
    memo[code] = static_cast<std::int8_t>(best);
    return best;
  };
  return solve(table.full_code(), full_mask(f.arity()));
}

Rational dist_cost(const BooleanFunction& f, const ProductMeasure& m, const DtreeLimits& limits) {
  return expectimax(f, m, limits, false).cost;
}

DecisionTree extract_tree(const BooleanFunction& f, const ProductMeasure& m, const DtreeLimits& limits) {
  return expectimax(f, m, limits, true).tree;
}

DecisionTree in_order_tree(const BooleanFunction& f) {
  const SubcubeTable table(f, kHardArityLimit);
  DecisionTree tree = DecisionTree::builder();
  const std::function<int(std::uint32_t, int)> emit = [&](std::uint32_t code, int next) -> int {
    if (table.constant(code)) return tree.add_leaf(table.status(code) == SubcubeTable::Status::one);
    const int zero = emit(code - 2 * table.pow3(next), next + 1);
    const int one = emit(code - table.pow3(next), next + 1);
    return tree.add_query(next, zero, one);
  };
  tree.set_root(emit(table.full_code(), 0));
  return tree;
}

void validate_tree(const DecisionTree& t, const BooleanFunction& f) {
  const int n = f.arity();
  Walker{t, f}.walk(t.root(), 0, 0, [&](const DecisionTree::Node& node, Input fixed, Input values) {
    if (!node.is_leaf()) return;
    for_each_point(n, fixed, values, [&](Input x) {
      if (f(x) != node.value) {
        throw std::invalid_argument("tree leaf " + std::string(node.value ? "=1" : "=0") +
                                    " disagrees with the function at input " + std::to_string(x));
      }
    });
  });
}

bool stops_at_determination(const DecisionTree& t, const BooleanFunction& f) {
  validate_tree(t, f);
  bool ok = true;
  Walker{t, f}.walk(t.root(), 0, 0, [&](const DecisionTree::Node& node, Input fixed, Input values) {
    if (node.is_leaf() || !ok) return;
    bool seen_zero = false;
    bool seen_one = false;
    for_each_point(f.arity(), fixed, values, [&](Input x) { (f(x) ? seen_one : seen_zero) = true; });
    if (!(seen_zero && seen_one)) ok = false;
  });
  return ok;
}

Rational tree_cost(const DecisionTree& t, const BooleanFunction& f, const ProductMeasure& m) {
  validate_tree(t, f);
  Rational total = 0;
  for (const auto& [bit, reach] : internal_reach(t, m)) total += reach;
  return total;
}

std::vector<Rational> revealment(const DecisionTree& t, const BooleanFunction& f, const ProductMeasure& m) {
  validate_tree(t, f);
  std::vector<Rational> result(static_cast<std::size_t>(f.arity()), Rational(0));
  for (const auto& [bit, reach] : internal_reach(t, m)) result[static_cast<std::size_t>(bit)] += reach;
  return result;
}

OsssCheck osss_check(const BooleanFunction& f, const ProductMeasure& m, const DecisionTree& t) {
  const auto reveal = revealment(t, f, m);
  const auto pivotal = pivotal_probabilities(f, m);
  Rational sum = 0;
  for (std::size_t i = 0; i < reveal.size(); ++i) sum += reveal[i] * pivotal[i];
  OsssCheck check;
  check.variance = variance(f, m);
  check.bound = Rational(4) * m.p() * (Rational(1) - m.p()) * sum;
  check.holds = check.variance <= check.bound;
  return check;
}

}  // namespace boolcx
