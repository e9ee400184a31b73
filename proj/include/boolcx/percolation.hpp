#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/decision_tree.hpp"

namespace boolcx {

// Finite multigraph with terminal sets. Parallel edges and self-loops are allowed.
struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> sources;  // A
  std::vector<int> sinks;    // B

  [[nodiscard]] int edge_count() const { return static_cast<int>(edges.size()); }
};

// Throws std::invalid_argument on out-of-range endpoints or empty terminal sets.
void validate(const Multigraph& g);

// Open (true) or closed state of every edge, in edge-list order.
using Configuration = std::vector<bool>;

[[nodiscard]] Configuration configuration_from_input(Input omega, int edge_count);

// f(ω) = 1 iff some source reaches some sink through open edges; edge i is bit i.
[[nodiscard]] BooleanFunction perc_function(const Multigraph& g, int cap = kDefaultArityCap);

// Square crossing on [0, m+1] x [0, m]: vertex (x, y) has id y(m+2) + x. Horizontal edges come
// first, row by row from y = 0, then vertical edges from y = 0. Sources are the column x = 0 and
// sinks the column x = m+1.
[[nodiscard]] Multigraph grid_graph(int m);

[[nodiscard]] bool connected(const Multigraph& g, const Configuration& omega);

// Size of the smallest certificate for the value at ω: the shortest open source-sink path when
// connected, otherwise the minimum number of closed edges separating sources from sinks.
[[nodiscard]] int witness_at(const Multigraph& g, const Configuration& omega);

// Number of edges whose flip changes connectivity.
[[nodiscard]] int pivotal_count(const Multigraph& g, const Configuration& omega);

// Exploration from the sources: clusters grow in breadth-first order and each step reveals the
// lowest-index unrevealed edge at the first cluster vertex that has one. Stops as soon as the
// revealed edges determine connectivity.
struct ExplorationStep {
  bool done = false;
  bool value = false;  // meaningful when done
  int edge = -1;       // next edge to reveal otherwise
};

// revealed[i] is -1 for unrevealed edges, else 0 or 1.
[[nodiscard]] ExplorationStep exploration_step(const Multigraph& g, const std::vector<std::int8_t>& revealed);
// Number of edges the exploration reveals on ω.
[[nodiscard]] int explore_count(const Multigraph& g, const Configuration& omega);
// The exploration written out as a decision tree over the edge bits.
[[nodiscard]] DecisionTree exploration_tree(const Multigraph& g, int cap = kDefaultArityCap);

enum class PercQuantity { crossing, sensitivity, witness, exploration };

struct McEstimate {
  double mean = 0;
  double standard_error = 0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t minimum = 0;
  std::int64_t maximum = 0;
};

// Configuration of sample j: std::seed_seq over the 32-bit halves of (seed, j) generates two words,
// which joined low word first seed an std::mt19937_64; edge i is open when its i-th draw is below
// p·2^64. Estimates therefore depend on (seed, samples) only, whatever the shard count.
[[nodiscard]] Configuration sample_configuration(int edge_count, double p, std::uint64_t seed, std::uint64_t sample);

[[nodiscard]] McEstimate mc_estimate(const Multigraph& g, double p, PercQuantity quantity, std::uint64_t samples,
                                     std::uint64_t seed, unsigned shards = 1);
[[nodiscard]] McEstimate explore_cost(const Multigraph& g, double p, std::uint64_t samples, std::uint64_t seed,
                                      unsigned shards = 1);

}  // namespace boolcx
