#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/product_measure.hpp"
#include "boolcx/rational.hpp"
#include "boolcx/simplex.hpp"
#include "boolcx/subcube.hpp"

namespace boolcx {

// Linear program for the cheapest local witness set.
//
// A random set I of bits is local when, given I = J and the values z on J, the bits outside J
// are still independent with marginal p. Writing q(J, x) = P[I = J, input = x], locality says
// q(J, z·w) = t(J, z)·π(w) with t(J, z) = P[I = J, x|_J = z] and π the product measure on the
// complement. So the joint law is determined by t, and it is a valid joint law of (I, x) exactly
// when summing over J recovers the measure of each input y:
//
//     sum over J of t(J, y|_J)·π(y|_{J^c}) = π(y).
//
// I is a witness when x|_I fixes f, which restricts t to pairs (J, z) whose subcube is
// f-constant. The expected size is sum of |J|·t(J, z). The program has one variable per
// constant subcube and one equality per input. The single-point cells give an identity
// basis that is feasible with t = π.
struct LocalWitnessProgram {
  int arity = 0;
  Rational p;
  // Column j is the subcube fixing z on J, listed in increasing base-3 code order.
  std::vector<SubcubePattern> variables;
  StandardFormLp lp;
  // Column of the single-point cell for each input (row).
  std::vector<int> point_columns;
};

struct LocalWitnessLimits {
  int max_arity = 5;
};

[[nodiscard]] LocalWitnessProgram build_program(const BooleanFunction& f, const ProductMeasure& m,
                                                const LocalWitnessLimits& limits = {});
[[nodiscard]] LpSolution solve(const LocalWitnessProgram& program);
// Zero when f is constant on the support of the measure, otherwise the program optimum.
[[nodiscard]] Rational local_witness_complexity(const BooleanFunction& f, const ProductMeasure& m,
                                                const LocalWitnessLimits& limits = {});
// Plain-text listing of variables, equality constraints and objective.
[[nodiscard]] std::string dump_program(const LocalWitnessProgram& program);

// A finite mixture of deterministic set-valued maps x -> I(x), each given by rules
// "pattern : bits" whose patterns partition the cube.
//
// Text form:
//   n=4
//   component 1/2
//   11** : 1 2
//   ...
struct RandomWitnessSet {
  struct Rule {
    SubcubePattern when;
    Input bits = 0;
  };
  struct Component {
    Rational weight;
    std::vector<Rule> rules;
  };

  int arity = 0;
  std::vector<Component> components;

  static RandomWitnessSet parse(std::string_view text);
  static RandomWitnessSet read(const std::string& path);

  // The set chosen by component c at input x; throws unless exactly one rule matches.
  [[nodiscard]] Input set_at(std::size_t component, Input x) const;
};

// Weights sum to one and each component's rules cover every input exactly once.
[[nodiscard]] bool is_well_formed(const RandomWitnessSet& s);
// Every component's set at every input fixes f.
[[nodiscard]] bool is_witness_set(const RandomWitnessSet& s, const BooleanFunction& f);
// q(J, z·w) = t(J, z)·π(w) for all J, z, w.
[[nodiscard]] bool is_local(const RandomWitnessSet& s, const ProductMeasure& m);
[[nodiscard]] Rational expected_size(const RandomWitnessSet& s, const ProductMeasure& m);

}  // namespace boolcx
