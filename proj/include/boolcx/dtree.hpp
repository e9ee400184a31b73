#pragma once

#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/decision_tree.hpp"
#include "boolcx/product_measure.hpp"
#include "boolcx/rational.hpp"

namespace boolcx {

struct DtreeLimits {
  // The dynamic programs visit up to 3^n restrictions.
  int max_arity = 16;
};

// Smallest worst-case number of queries of a tree deciding f.
[[nodiscard]] int det_depth(const BooleanFunction& f, const DtreeLimits& limits = {});
// Smallest expected number of queries under the product measure.
[[nodiscard]] Rational dist_cost(const BooleanFunction& f, const ProductMeasure& m, const DtreeLimits& limits = {});
// A tree attaining dist_cost; among optimal queries the lowest bit index wins.
[[nodiscard]] DecisionTree extract_tree(const BooleanFunction& f, const ProductMeasure& m,
                                        const DtreeLimits& limits = {});
// Queries the lowest unqueried bit until f is fixed.
[[nodiscard]] DecisionTree in_order_tree(const BooleanFunction& f);

// Throws std::invalid_argument unless t decides f without repeating a bit on any path.
void validate_tree(const DecisionTree& t, const BooleanFunction& f);
// True when every leaf is reached exactly when the restriction first fixes f.
[[nodiscard]] bool stops_at_determination(const DecisionTree& t, const BooleanFunction& f);

[[nodiscard]] Rational tree_cost(const DecisionTree& t, const BooleanFunction& f, const ProductMeasure& m);
// P[bit i is queried] for every bit.
[[nodiscard]] std::vector<Rational> revealment(const DecisionTree& t, const BooleanFunction& f,
                                               const ProductMeasure& m);

struct OsssCheck {
  bool holds = false;
  Rational variance;
  // 4p(1-p) · sum_i revealment_i · P[i pivotal]
  Rational bound;
};

[[nodiscard]] OsssCheck osss_check(const BooleanFunction& f, const ProductMeasure& m, const DecisionTree& t);

}  // namespace boolcx
