#pragma once

#include <span>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/product_measure.hpp"
#include "boolcx/rational.hpp"

namespace boolcx {

// All inclusion-minimal sets B of bits with f(x^B) != f(x), ordered by size then mask.
struct SensitiveBlockFamily {
  Input base = 0;
  std::vector<Input> blocks;
};

[[nodiscard]] int sensitivity_at(const BooleanFunction& f, Input x);
[[nodiscard]] SensitiveBlockFamily minimal_sensitive_blocks(const BooleanFunction& f, Input x);
[[nodiscard]] int block_sensitivity_at(const BooleanFunction& f, Input x);
[[nodiscard]] int witness_size_at(const BooleanFunction& f, Input x);

// Largest number of pairwise disjoint sets among `blocks`.
[[nodiscard]] int max_disjoint_blocks(std::span<const Input> blocks);
// Smallest set of bits meeting every one of `blocks`.
[[nodiscard]] int min_hitting_set(std::span<const Input> blocks);

struct PointwiseLimits {
  int max_arity = 16;
};

// Per-input sensitivity, block sensitivity and witness size, indexed by input.
struct PointwiseProfile {
  std::vector<int> sensitivity;
  std::vector<int> block_sensitivity;
  std::vector<int> witness;
};

[[nodiscard]] PointwiseProfile pointwise_profile(const BooleanFunction& f, const PointwiseLimits& limits = {});
[[nodiscard]] std::vector<int> sensitivity_profile(const BooleanFunction& f);

struct DeterministicMeasures {
  int sensitivity = 0;
  int block_sensitivity = 0;
  int witness = 0;
};

struct DistributionalMeasures {
  Rational sensitivity;
  Rational block_sensitivity;
  Rational witness;
};

[[nodiscard]] DeterministicMeasures deterministic_measures(const PointwiseProfile& profile);
[[nodiscard]] DeterministicMeasures deterministic_measures(const BooleanFunction& f,
                                                           const PointwiseLimits& limits = {});
[[nodiscard]] DistributionalMeasures distributional_measures(const PointwiseProfile& profile,
                                                             const ProductMeasure& m, int n);
[[nodiscard]] DistributionalMeasures distributional_measures(const BooleanFunction& f, const ProductMeasure& m,
                                                             const PointwiseLimits& limits = {});
[[nodiscard]] Rational expected_sensitivity(const BooleanFunction& f, const ProductMeasure& m);

// P[f(x) != f(x^i)] for every bit i.
[[nodiscard]] std::vector<Rational> pivotal_probabilities(const BooleanFunction& f, const ProductMeasure& m);

}  // namespace boolcx
