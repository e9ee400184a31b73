#include "boolcx/simplex.hpp"

#include <stdexcept>
#include <string>

namespace boolcx {

namespace {

constexpr int kDegenerateRunLimit = 16;

void check_shape(const StandardFormLp& lp, const std::vector<int>& basis) {
  const std::size_t m = lp.row_count();
  const std::size_t n = lp.column_count();
  if (lp.rhs.size() != m || basis.size() != m) throw std::invalid_argument("LP dimensions disagree");
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].size() != n) throw std::invalid_argument("LP row has the wrong length");
    if (lp.rhs[i] < 0) throw std::invalid_argument("LP right-hand side must be nonnegative");
  }
  for (std::size_t k = 0; k < m; ++k) {
    const int col = basis[k];
    if (col < 0 || static_cast<std::size_t>(col) >= n) throw std::invalid_argument("basis column out of range");
    for (std::size_t i = 0; i < m; ++i) {
      if (lp.rows[i][static_cast<std::size_t>(col)] != (i == k ? 1 : 0)) {
        throw std::invalid_argument("initial basis column " + std::to_string(col) + " is not a unit vector");
      }
    }
  }
}

void verify(const StandardFormLp& lp, const LpSolution& s) {
  const std::size_t m = lp.row_count();
  const std::size_t n = lp.column_count();
  Rational primal_value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (s.primal[j] < 0) throw std::logic_error("simplex produced a negative variable");
    primal_value += lp.cost[j] * s.primal[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (s.primal[j] != 0) lhs += lp.rows[i][j] * s.primal[j];
    }
    if (lhs != lp.rhs[i]) throw std::logic_error("simplex primal solution violates row " + std::to_string(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (lp.rows[i][j] != 0) lhs += lp.rows[i][j] * s.dual[i];
    }
    if (lhs > lp.cost[j]) throw std::logic_error("simplex dual solution violates column " + std::to_string(j));
  }
  Rational dual_value = 0;
  for (std::size_t i = 0; i < m; ++i) dual_value += lp.rhs[i] * s.dual[i];
  if (primal_value != s.value || dual_value != s.value) throw std::logic_error("simplex duality gap is nonzero");
}

}  // namespace

LpSolution solve_from_basis(const StandardFormLp& lp, const std::vector<int>& initial_basis) {
  check_shape(lp, initial_basis);
  const std::size_t m = lp.row_count();
  const std::size_t n = lp.column_count();
  // Since the initial basis is the identity, the starting tableau is the constraint matrix.
  std::vector<std::vector<Rational>> tableau = lp.rows;
  std::vector<Rational> rhs = lp.rhs;
  std::vector<int> basis = initial_basis;
  std::vector<Rational> reduced = lp.cost;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational& cb = lp.cost[static_cast<std::size_t>(basis[i])];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (tableau[i][j] != 0) reduced[j] -= cb * tableau[i][j];
    }
  }
  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) objective += lp.cost[static_cast<std::size_t>(basis[i])] * rhs[i];

  int pivots = 0;
  int degenerate_run = 0;
  bool bland = false;
  while (true) {
    // Most negative reduced cost first; Bland's rule once degenerate pivots pile up, which
    // rules out cycling.
    std::size_t entering = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (reduced[j] < 0 && (entering == n || (!bland && reduced[j] < reduced[entering]))) {
        entering = j;
        if (bland) break;
      }
    }
    if (entering == n) break;
    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tableau[i][entering] <= 0) continue;
      Rational ratio = rhs[i] / tableau[i][entering];
      if (leaving == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leaving == m) throw std::logic_error("linear program is unbounded");
    degenerate_run = best_ratio == 0 ? degenerate_run + 1 : 0;
    if (degenerate_run > kDegenerateRunLimit) bland = true;

    const Rational pivot = tableau[leaving][entering];
    for (std::size_t j = 0; j < n; ++j) {
      if (tableau[leaving][j] != 0) tableau[leaving][j] /= pivot;
    }
    rhs[leaving] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || tableau[i][entering] == 0) continue;
      const Rational factor = tableau[i][entering];
      for (std::size_t j = 0; j < n; ++j) {
        if (tableau[leaving][j] != 0) tableau[i][j] -= factor * tableau[leaving][j];
      }
      rhs[i] -= factor * rhs[leaving];
    }
    const Rational factor = reduced[entering];
    for (std::size_t j = 0; j < n; ++j) {
      if (tableau[leaving][j] != 0) reduced[j] -= factor * tableau[leaving][j];
    }
    objective += factor * rhs[leaving];
    basis[leaving] = static_cast<int>(entering);
    ++pivots;
  }

  LpSolution s;
  s.value = objective;
  s.primal.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) s.primal[static_cast<std::size_t>(basis[i])] = rhs[i];
  s.dual.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto col = static_cast<std::size_t>(initial_basis[k]);
    s.dual[k] = lp.cost[col] - reduced[col];
  }
  s.basis = std::move(basis);
  s.pivots = pivots;
  verify(lp, s);
  return s;
}

}  // namespace boolcx
