#include "boolcx/pointwise.hpp"

#include <algorithm>
#include <bit>

#include "boolcx/errors.hpp"

namespace boolcx {

namespace {

Input lowest_bit(Input mask) { return mask & (~mask + 1); }

struct Packer {
  std::span<const Input> blocks;
  int best = 0;

  void search(Input free, int count) {
    int min_size = 64;
    int available = 0;
    Input touched = 0;
    for (Input b : blocks) {
      if ((b & ~free) != 0) continue;
      ++available;
      touched |= b;
      min_size = std::min(min_size, std::popcount(b));
    }
    if (available == 0) {
      best = std::max(best, count);
      return;
    }
    const int bound = count + std::min(available, std::popcount(touched) / min_size);
    if (bound <= best) return;
    // Every packing either uses a block through the lowest touched bit or avoids that bit.
    const Input pivot = lowest_bit(touched);
    for (Input b : blocks) {
      if ((b & ~free) == 0 && (b & pivot) != 0) search(free & ~b, count + 1);
    }
    search(free & ~pivot, count);
  }
};

struct HittingSearch {
  std::span<const Input> blocks;
  int best = 0;

  // Disjoint packing of the blocks not yet hit, restricted to allowed bits; a valid lower bound.
  int packing_bound(Input chosen, Input allowed) const {
    Input used = 0;
    int count = 0;
    for (Input b : blocks) {
      if ((b & chosen) != 0) continue;
      const Input usable = b & allowed;
      if ((usable & used) == 0) {
        used |= usable;
        ++count;
      }
    }
    return count;
  }

  void search(Input chosen, Input allowed) {
    const int size = std::popcount(chosen);
    if (size >= best) return;
    Input pivot_block = 0;
    int pivot_size = 64;
    for (Input b : blocks) {
      if ((b & chosen) != 0) continue;
      const int options = std::popcount(b & allowed);
      if (options == 0) return;
      if (options < pivot_size) {
        pivot_size = options;
        pivot_block = b & allowed;
      }
    }
    if (pivot_block == 0) {
      best = size;
      return;
    }
    if (size + packing_bound(chosen, allowed) >= best) return;
    // Branch j takes the j-th bit of the pivot block and excludes the earlier ones.
    Input rest = pivot_block;
    Input excluded = 0;
    while (rest != 0) {
      const Input bit = lowest_bit(rest);
      rest ^= bit;
      search(chosen | bit, allowed & ~excluded);
      excluded |= bit;
    }
  }
};

}  // namespace

int sensitivity_at(const BooleanFunction& f, Input x) {
  int s = 0;
  const bool value = f(x);
  for (int i = 0; i < f.arity(); ++i) {
    if (f(x ^ (Input{1} << i)) != value) ++s;
  }
  return s;
}

SensitiveBlockFamily minimal_sensitive_blocks(const BooleanFunction& f, Input x) {
  const int n = f.arity();
  const bool value = f(x);
  const Input subsets = Input{1} << n;
  // reach[B]: some subset of B (possibly B itself) is a sensitive block.
  std::vector<std::uint8_t> reach(subsets, 0);
  SensitiveBlockFamily family{x, {}};
  for (Input b = 1; b < subsets; ++b) {
    bool below = false;
    for (Input rest = b; rest != 0 && !below; rest &= rest - 1) {
      below = reach[b ^ lowest_bit(rest)] != 0;
    }
    const bool sensitive = f(x ^ b) != value;
    reach[b] = (below || sensitive) ? 1 : 0;
    if (sensitive && !below) family.blocks.push_back(b);
  }
  std::stable_sort(family.blocks.begin(), family.blocks.end(),
                   [](Input a, Input b) { return std::popcount(a) < std::popcount(b); });
  return family;
}

int max_disjoint_blocks(std::span<const Input> blocks) {
  Packer packer{blocks, 0};
  Input all = 0;
  for (Input b : blocks) all |= b;
  packer.search(all, 0);
  return packer.best;
}

int min_hitting_set(std::span<const Input> blocks) {
  Input all = 0;
  for (Input b : blocks) all |= b;
  HittingSearch search{blocks, std::popcount(all) + 1};
  search.search(0, all);
  return search.best;
}

// A largest disjoint family of sensitive blocks can always be shrunk to minimal blocks,
// so packing over the minimal family gives b_f(x).
int block_sensitivity_at(const BooleanFunction& f, Input x) {
  return max_disjoint_blocks(minimal_sensitive_blocks(f, x).blocks);
}

// W fixes f on the subcube through x exactly when W meets every sensitive block, and it
// suffices to meet the minimal ones.
int witness_size_at(const BooleanFunction& f, Input x) {
  return min_hitting_set(minimal_sensitive_blocks(f, x).blocks);
}

PointwiseProfile pointwise_profile(const BooleanFunction& f, const PointwiseLimits& limits) {
  if (f.arity() > limits.max_arity) throw CapExceeded("pointwise arity", f.arity(), limits.max_arity);
  PointwiseProfile profile;
  profile.sensitivity = sensitivity_profile(f);
  profile.block_sensitivity.resize(f.size());
  profile.witness.resize(f.size());
  for (Input x = 0; x < f.size(); ++x) {
    const auto family = minimal_sensitive_blocks(f, x);
    profile.block_sensitivity[x] = max_disjoint_blocks(family.blocks);
    profile.witness[x] = min_hitting_set(family.blocks);
  }
  return profile;
}

std::vector<int> sensitivity_profile(const BooleanFunction& f) {
  std::vector<int> s(f.size());
  for (Input x = 0; x < f.size(); ++x) s[x] = sensitivity_at(f, x);
  return s;
}

DeterministicMeasures deterministic_measures(const PointwiseProfile& profile) {
  const auto top = [](const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); };
  return {top(profile.sensitivity), top(profile.block_sensitivity), top(profile.witness)};
}

DeterministicMeasures deterministic_measures(const BooleanFunction& f, const PointwiseLimits& limits) {
  return deterministic_measures(pointwise_profile(f, limits));
}

DistributionalMeasures distributional_measures(const PointwiseProfile& profile, const ProductMeasure& m, int n) {
  const ScaledMeasure scaled(m, n);
  return {scaled.expectation(profile.sensitivity), scaled.expectation(profile.block_sensitivity),
          scaled.expectation(profile.witness)};
}

DistributionalMeasures distributional_measures(const BooleanFunction& f, const ProductMeasure& m,
                                               const PointwiseLimits& limits) {
  return distributional_measures(pointwise_profile(f, limits), m, f.arity());
}

Rational expected_sensitivity(const BooleanFunction& f, const ProductMeasure& m) {
  return ScaledMeasure(m, f.arity()).expectation(sensitivity_profile(f));
}

std::vector<Rational> pivotal_probabilities(const BooleanFunction& f, const ProductMeasure& m) {
  const ScaledMeasure scaled(m, f.arity());
  std::vector<Rational> result;
  std::vector<int> pivotal(f.size());
  for (int i = 0; i < f.arity(); ++i) {
    for (Input x = 0; x < f.size(); ++x) pivotal[x] = f(x) != f(x ^ (Input{1} << i)) ? 1 : 0;
    result.push_back(scaled.expectation(pivotal));
  }
  return result;
}

}  // namespace boolcx
