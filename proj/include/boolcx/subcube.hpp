#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/decision_tree.hpp"
#include "boolcx/product_measure.hpp"
#include "boolcx/rational.hpp"

namespace boolcx {

// A subcube of {0,1}^n: bits in `fixed` take the matching bit of `values`, the rest are free.
// Text form is one character per bit, x_1 first, over {0,1,*}.
struct SubcubePattern {
  int arity = 0;
  Input fixed = 0;
  Input values = 0;

  static SubcubePattern parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] bool contains(Input x) const { return ((x ^ values) & fixed) == 0; }
  [[nodiscard]] int codimension() const { return weight(fixed); }
  [[nodiscard]] bool disjoint_from(const SubcubePattern& o) const {
    return ((values ^ o.values) & fixed & o.fixed) != 0;
  }
  friend bool operator==(const SubcubePattern&, const SubcubePattern&) = default;
};

struct SubcubePartition {
  int arity = 0;
  std::vector<SubcubePattern> cells;

  // One pattern per non-empty line; '#' starts a comment.
  static SubcubePartition parse(std::string_view text);
  static SubcubePartition read(const std::string& path);
  [[nodiscard]] std::string to_text() const;
};

struct PartitionDiagnostic {
  enum class Problem { none, arity, overlap, gap, nonconstant };
  Problem problem = Problem::none;
  std::string detail;

  [[nodiscard]] bool ok() const { return problem == Problem::none; }
};

// Checks that the cells tile the cube exactly.
[[nodiscard]] PartitionDiagnostic check_partition(const SubcubePartition& p);
// Checks that the cells tile the cube and f is constant on each of them.
[[nodiscard]] PartitionDiagnostic diagnose_partition(const SubcubePartition& p, const BooleanFunction& f);
[[nodiscard]] bool verify_partition(const SubcubePartition& p, const BooleanFunction& f);

// Largest codimension; throws std::invalid_argument unless p is a partition.
[[nodiscard]] int partition_cost_det(const SubcubePartition& p);
// Expected codimension of the cell containing a random input.
[[nodiscard]] Rational partition_cost(const SubcubePartition& p, const ProductMeasure& m);

// Leaves of a tree as a partition of {0,1}^n.
[[nodiscard]] SubcubePartition tree_partition(const DecisionTree& t, int n);

// True iff the partition arises as the leaves of a decision tree.
[[nodiscard]] bool is_algorithm_induced(const SubcubePartition& p);
// Number of cube edges joining different cells.
[[nodiscard]] std::int64_t partition_boundary(const SubcubePartition& p);

struct SubcubeLimits {
  int max_arity = 6;
};

// Which inputs a partition search has to cover.
enum class LevelSet { all, zeros, ones };

[[nodiscard]] int sc_det(const BooleanFunction& f, const SubcubeLimits& limits = {});
[[nodiscard]] Rational sc_dist(const BooleanFunction& f, const ProductMeasure& m, const SubcubeLimits& limits = {});

struct PartitionOptimum {
  // Sum over covered inputs of probability times codimension.
  Rational cost;
  SubcubePartition partition;
};

// Optimal partition of the chosen level set of f (or of the whole cube) into f-constant cells.
[[nodiscard]] PartitionOptimum optimal_partition(const BooleanFunction& f, const ProductMeasure& m,
                                                 LevelSet level = LevelSet::all, const SubcubeLimits& limits = {});
// Cost of the optimal partition of one level set, divided by the probability of that level.
[[nodiscard]] Rational sc_conditional(const BooleanFunction& f, const ProductMeasure& m, bool level,
                                      const SubcubeLimits& limits = {});

// Calls visit on every partition of the cube into f-constant subcubes. Exhaustive, so the arity
// is capped at max_arity (default 3).
void for_each_refining_partition(const BooleanFunction& f, const std::function<void(const SubcubePartition&)>& visit,
                                 int max_arity = 3);
// Fewest cube edges cut by any partition into f-constant subcubes, found by exhaustive enumeration.
[[nodiscard]] std::int64_t min_refining_boundary(const BooleanFunction& f, int max_arity = 3);

}  // namespace boolcx
