#pragma once

#include <vector>

#include "boolcx/rational.hpp"

namespace boolcx {

// minimize cost·x subject to rows·x = rhs, x >= 0, held densely.
struct StandardFormLp {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;

  [[nodiscard]] std::size_t row_count() const { return rows.size(); }
  [[nodiscard]] std::size_t column_count() const { return cost.size(); }
};

struct LpSolution {
  Rational value;
  std::vector<Rational> primal;
  // Optimal dual vector y with rows^T y <= cost and rhs·y = value.
  std::vector<Rational> dual;
  std::vector<int> basis;
  int pivots = 0;
};

// Exact primal simplex with Bland's rule. `initial_basis[k]` must name a column equal to the
// k-th unit vector and rhs must be nonnegative, so the start is feasible without a first phase.
// The returned primal and dual solutions are re-checked exactly; a failed check throws
// std::logic_error.
[[nodiscard]] LpSolution solve_from_basis(const StandardFormLp& lp, const std::vector<int>& initial_basis);

}  // namespace boolcx
