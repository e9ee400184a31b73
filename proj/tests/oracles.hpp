#pragma once

// Slow reference implementations used only to cross-check the engines.

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/product_measure.hpp"
#include "boolcx/rational.hpp"

namespace oracle {

using boolcx::BooleanFunction;
using boolcx::Input;
using boolcx::Rational;

// f is constant on the subcube through x that fixes the bits in `fixed`.
inline bool constant_on(const BooleanFunction& f, Input x, Input fixed) {
  const bool v = f(x);
  for (Input y = 0; y < f.size(); ++y) {
    if (((y ^ x) & fixed) == 0 && f(y) != v) return false;
  }
  return true;
}

inline int witness(const BooleanFunction& f, Input x) {
  int best = f.arity();
  for (Input w = 0; w < f.size(); ++w) {
    if (std::popcount(w) < best && constant_on(f, x, w)) best = std::popcount(w);
  }
  return best;
}

// Maximum number of disjoint sensitive sets, searching every sensitive set (not only minimal ones).
inline int block_sensitivity(const BooleanFunction& f, Input x) {
  const bool v = f(x);
  const Input all = f.size() - 1;
  std::vector<int> memo(f.size(), -1);
  const std::function<int(Input)> best_from = [&](Input used) {
    if (memo[used] >= 0) return memo[used];
    int best = 0;
    const Input unused = all & ~used;
    for (Input b = unused; b != 0; b = (b - 1) & unused) {
      if (f(x ^ b) != v) best = std::max(best, 1 + best_from(used | b));
    }
    memo[used] = best;
    return best;
  };
  return best_from(0);
}

inline Rational expectation(const std::vector<int>& values, const Rational& p, int n) {
  Rational total = 0;
  const boolcx::ProductMeasure m(p);
  for (Input x = 0; x < values.size(); ++x) total += Rational(values[x]) * boolcx::point_probability(m, x, n);
  return total;
}

// Optimal expected query count by recursion on explicit subfunctions.
inline Rational dist_cost(const BooleanFunction& f, const Rational& p) {
  std::map<std::pair<int, std::vector<bool>>, Rational> memo;
  const std::function<Rational(const BooleanFunction&)> solve = [&](const BooleanFunction& g) -> Rational {
    if (g.is_constant()) return Rational(0);
    std::pair<int, std::vector<bool>> key{g.arity(), {}};
    for (Input x = 0; x < g.size(); ++x) key.second.push_back(g(x));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Rational best = Rational(g.arity() + 1);
    for (int i = 0; i < g.arity(); ++i) {
      const Input bit = Input{1} << i;
      const Rational v = (Rational(1) - p) * solve(boolcx::restrict(g, {bit, 0})) + p * solve(boolcx::restrict(g, {bit, bit}));
      best = boolcx::min(best, v);
    }
    best += 1;
    memo.emplace(std::move(key), best);
    return best;
  };
  return solve(f);
}

inline int det_depth(const BooleanFunction& f) {
  if (f.is_constant()) return 0;
  int best = f.arity();
  for (int i = 0; i < f.arity(); ++i) {
    const Input bit = Input{1} << i;
    best = std::min(best, 1 + std::max(oracle::det_depth(boolcx::restrict(f, {bit, 0})),
                                       oracle::det_depth(boolcx::restrict(f, {bit, bit}))));
  }
  return best;
}

inline BooleanFunction random_function(int n, std::mt19937_64& rng) {
  return BooleanFunction::from_predicate(n, [&](Input) { return (rng() & 1U) != 0; });
}

inline BooleanFunction function_from_index(int n, std::uint64_t index) {
  return BooleanFunction::from_predicate(n, [&](Input x) { return ((index >> x) & 1U) != 0; });
}

// Every monotone function on n bits (n <= 4), by filtering all truth tables.
inline std::vector<BooleanFunction> monotone_functions(int n) {
  std::vector<BooleanFunction> out;
  const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
  for (std::uint64_t index = 0; index < total; ++index) {
    auto f = function_from_index(n, index);
    if (boolcx::is_monotone(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace oracle
