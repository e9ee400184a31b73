#include "boolcx/percolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "boolcx/errors.hpp"

namespace boolcx {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& up = parent_[static_cast<std::size_t>(v)];
      up = parent_[static_cast<std::size_t>(up)];
      v = up;
    }
    return v;
  }

  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

void check_length(const Multigraph& g, std::size_t length) {
  if (length != g.edges.size()) {
    throw std::invalid_argument("configuration has " + std::to_string(length) + " entries for " +
                                std::to_string(g.edges.size()) + " edges");
  }
}

template <class IsOpen>
bool terminals_joined(const Multigraph& g, IsOpen&& is_open) {
  UnionFind uf(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (is_open(i)) uf.unite(g.edges[i].first, g.edges[i].second);
  }
  std::vector<char> source_root(static_cast<std::size_t>(g.vertex_count), 0);
  for (int a : g.sources) source_root[static_cast<std::size_t>(uf.find(a))] = 1;
  return std::any_of(g.sinks.begin(), g.sinks.end(),
                     [&](int b) { return source_root[static_cast<std::size_t>(uf.find(b))] != 0; });
}

// Incident edge lists, each in increasing edge order; a self-loop appears once.
std::vector<std::vector<int>> incidence(const Multigraph& g) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(g.vertex_count));
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(u)].push_back(i);
    if (v != u) out[static_cast<std::size_t>(v)].push_back(i);
  }
  return out;
}

int other_end(const std::pair<int, int>& e, int v) { return e.first == v ? e.second : e.first; }

int shortest_open_path(const Multigraph& g, const Configuration& omega) {
  const auto adjacent = incidence(g);
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count), -1);
  std::deque<int> queue;
  for (int a : g.sources) {
    if (dist[static_cast<std::size_t>(a)] < 0) {
      dist[static_cast<std::size_t>(a)] = 0;
      queue.push_back(a);
    }
  }
  std::vector<char> is_sink(static_cast<std::size_t>(g.vertex_count), 0);
  for (int b : g.sinks) is_sink[static_cast<std::size_t>(b)] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (is_sink[static_cast<std::size_t>(v)]) return dist[static_cast<std::size_t>(v)];
    for (int e : adjacent[static_cast<std::size_t>(v)]) {
      if (!omega[static_cast<std::size_t>(e)]) continue;
      const int w = other_end(g.edges[static_cast<std::size_t>(e)], v);
      if (dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
      queue.push_back(w);
    }
  }
  throw std::logic_error("no open path although the terminals are connected");
}

// Maximum flow by shortest augmenting paths.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adjacent_(static_cast<std::size_t>(nodes)) {}

  void add_arc_pair(int u, int v, int forward, int backward) {
    adjacent_[static_cast<std::size_t>(u)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, forward});
    adjacent_[static_cast<std::size_t>(v)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, backward});
  }

  int max_flow(int source, int sink) {
    int total = 0;
    while (true) {
      std::vector<int> via(adjacent_.size(), -1);
      std::deque<int> queue{source};
      std::vector<char> seen(adjacent_.size(), 0);
      seen[static_cast<std::size_t>(source)] = 1;
      while (!queue.empty() && !seen[static_cast<std::size_t>(sink)]) {
        const int v = queue.front();
        queue.pop_front();
        for (int a : adjacent_[static_cast<std::size_t>(v)]) {
          const auto& arc = arcs_[static_cast<std::size_t>(a)];
          if (arc.capacity <= 0 || seen[static_cast<std::size_t>(arc.to)]) continue;
          seen[static_cast<std::size_t>(arc.to)] = 1;
          via[static_cast<std::size_t>(arc.to)] = a;
          queue.push_back(arc.to);
        }
      }
      if (!seen[static_cast<std::size_t>(sink)]) return total;
      int push = std::numeric_limits<int>::max();
      for (int v = sink; v != source; v = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)] ^ 1)].to) {
        push = std::min(push, arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])].capacity);
      }
      for (int v = sink; v != source; v = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)] ^ 1)].to) {
        const int a = via[static_cast<std::size_t>(v)];
        arcs_[static_cast<std::size_t>(a)].capacity -= push;
        arcs_[static_cast<std::size_t>(a ^ 1)].capacity += push;
      }
      total += push;
    }
  }

 private:
  struct Arc {
    int to;
    int capacity;
  };
  std::vector<std::vector<int>> adjacent_;
  std::vector<Arc> arcs_;
};

// Contract open edges; the closed edges between distinct components carry unit capacity.
int closed_min_cut(const Multigraph& g, const Configuration& omega) {
  UnionFind uf(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (omega[i]) uf.unite(g.edges[i].first, g.edges[i].second);
  }
  const int source = g.vertex_count;
  const int sink = g.vertex_count + 1;
  const int unbounded = g.edge_count() + 1;
  FlowNetwork net(g.vertex_count + 2);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (omega[i]) continue;
    const int u = uf.find(g.edges[i].first);
    const int v = uf.find(g.edges[i].second);
    if (u != v) net.add_arc_pair(u, v, 1, 1);
  }
  for (int a : g.sources) net.add_arc_pair(source, uf.find(a), unbounded, 0);
  for (int b : g.sinks) net.add_arc_pair(uf.find(b), sink, unbounded, 0);
  return net.max_flow(source, sink);
}

std::uint64_t open_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  if (p >= 1.0) return std::numeric_limits<std::uint64_t>::max();
  const double scaled = std::ldexp(p, 64);
  if (scaled >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(scaled);
}

// The all-open case needs every draw to count as open, including the maximum value.
bool draw_open(std::uint64_t draw, std::uint64_t threshold, double p) {
  return p >= 1.0 || draw < threshold;
}

template <class PerSample>
McEstimate run_estimate(std::uint64_t samples, std::uint64_t seed, unsigned shards, PerSample&& per_sample) {
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
  shards = std::max(1U, std::min<unsigned>(shards, static_cast<unsigned>(std::min<std::uint64_t>(samples, 1024))));
  // Integer tallies per shard keep the totals independent of how samples are split.
  struct ExactTally {
    std::uint64_t sum = 0;
    std::uint64_t sum_squares = 0;
    std::int64_t minimum = std::numeric_limits<std::int64_t>::max();
    std::int64_t maximum = std::numeric_limits<std::int64_t>::min();
  };
  std::vector<ExactTally> tallies(shards);
  {
    std::vector<std::jthread> workers;
    for (unsigned s = 0; s < shards; ++s) {
      workers.emplace_back([&, s] {
        ExactTally& t = tallies[s];
        for (std::uint64_t j = s; j < samples; j += shards) {
          const std::int64_t v = per_sample(j);
          t.sum += static_cast<std::uint64_t>(v);
          t.sum_squares += static_cast<std::uint64_t>(v * v);
          t.minimum = std::min(t.minimum, v);
          t.maximum = std::max(t.maximum, v);
        }
      });
    }
  }
  ExactTally total;
  for (const auto& t : tallies) {
    total.sum += t.sum;
    total.sum_squares += t.sum_squares;
    total.minimum = std::min(total.minimum, t.minimum);
    total.maximum = std::max(total.maximum, t.maximum);
  }
  McEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.minimum = total.minimum;
  out.maximum = total.maximum;
  const auto n = static_cast<long double>(samples);
  const long double mean = static_cast<long double>(total.sum) / n;
  out.mean = static_cast<double>(mean);
  if (samples > 1) {
    const long double spread = static_cast<long double>(total.sum_squares) - n * mean * mean;
    const long double sample_variance = std::max<long double>(0, spread / (n - 1));
    out.standard_error = static_cast<double>(std::sqrt(sample_variance / n));
  }
  return out;
}

}  // namespace

void validate(const Multigraph& g) {
  if (g.vertex_count < 1) throw std::invalid_argument("multigraph needs at least one vertex");
  const auto in_range = [&](int v) { return v >= 0 && v < g.vertex_count; };
  for (const auto& [u, v] : g.edges) {
    if (!in_range(u) || !in_range(v)) throw std::invalid_argument("edge endpoint out of range");
  }
  if (g.sources.empty() || g.sinks.empty()) throw std::invalid_argument("terminal sets must be nonempty");
  for (int v : g.sources) {
    if (!in_range(v)) throw std::invalid_argument("source vertex out of range");
  }
  for (int v : g.sinks) {
    if (!in_range(v)) throw std::invalid_argument("sink vertex out of range");
  }
}

Configuration configuration_from_input(Input omega, int edge_count) {
  Configuration c(static_cast<std::size_t>(edge_count));
  for (int i = 0; i < edge_count; ++i) c[static_cast<std::size_t>(i)] = ((omega >> i) & 1U) != 0;
  return c;
}

BooleanFunction perc_function(const Multigraph& g, int cap) {
  validate(g);
  if (g.edge_count() > cap) throw CapExceeded("percolation truth table edges", g.edge_count(), cap);
  return BooleanFunction::from_predicate(
      g.edge_count(), [&](Input x) { return terminals_joined(g, [&](std::size_t i) { return ((x >> i) & 1U) != 0; }); },
      cap);
}

Multigraph grid_graph(int m) {
  if (m < 1) throw std::invalid_argument("grid size must be at least 1");
  const int width = m + 2;
  Multigraph g;
  g.vertex_count = width * (m + 1);
  const auto id = [&](int x, int y) { return y * width + x; };
  for (int y = 0; y <= m; ++y) {
    for (int x = 0; x <= m; ++x) g.edges.emplace_back(id(x, y), id(x + 1, y));
  }
  for (int y = 0; y < m; ++y) {
    for (int x = 0; x <= m + 1; ++x) g.edges.emplace_back(id(x, y), id(x, y + 1));
  }
  for (int y = 0; y <= m; ++y) {
    g.sources.push_back(id(0, y));
    g.sinks.push_back(id(m + 1, y));
  }
  return g;
}

bool connected(const Multigraph& g, const Configuration& omega) {
  check_length(g, omega.size());
  return terminals_joined(g, [&](std::size_t i) { return omega[i]; });
}

int witness_at(const Multigraph& g, const Configuration& omega) {
  if (connected(g, omega)) return shortest_open_path(g, omega);
  return closed_min_cut(g, omega);
}

int pivotal_count(const Multigraph& g, const Configuration& omega) {
  const bool base = connected(g, omega);
  Configuration flipped = omega;
  int count = 0;
  for (std::size_t i = 0; i < flipped.size(); ++i) {
    flipped[i] = !flipped[i];
    if (connected(g, flipped) != base) ++count;
    flipped[i] = !flipped[i];
  }
  return count;
}

ExplorationStep exploration_step(const Multigraph& g, const std::vector<std::int8_t>& revealed) {
  check_length(g, revealed.size());
  if (terminals_joined(g, [&](std::size_t i) { return revealed[i] == 1; })) return {true, true, -1};
  if (!terminals_joined(g, [&](std::size_t i) { return revealed[i] != 0; })) return {true, false, -1};
  const auto adjacent = incidence(g);
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count), 0);
  std::deque<int> queue;
  for (int a : g.sources) {
    if (!seen[static_cast<std::size_t>(a)]) {
      seen[static_cast<std::size_t>(a)] = 1;
      queue.push_back(a);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : adjacent[static_cast<std::size_t>(v)]) {
      if (revealed[static_cast<std::size_t>(e)] < 0) return {false, false, e};
    }
    for (int e : adjacent[static_cast<std::size_t>(v)]) {
      if (revealed[static_cast<std::size_t>(e)] != 1) continue;
      const int w = other_end(g.edges[static_cast<std::size_t>(e)], v);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      queue.push_back(w);
    }
  }
  throw std::logic_error("exploration found no edge to reveal before the value was determined");
}

int explore_count(const Multigraph& g, const Configuration& omega) {
  check_length(g, omega.size());
  std::vector<std::int8_t> revealed(omega.size(), -1);
  int count = 0;
  while (true) {
    const auto step = exploration_step(g, revealed);
    if (step.done) return count;
    revealed[static_cast<std::size_t>(step.edge)] = omega[static_cast<std::size_t>(step.edge)] ? 1 : 0;
    ++count;
  }
}

DecisionTree exploration_tree(const Multigraph& g, int cap) {
  validate(g);
  if (g.edge_count() > cap) throw CapExceeded("exploration tree edges", g.edge_count(), cap);
  DecisionTree tree = DecisionTree::builder();
  std::vector<std::int8_t> revealed(g.edges.size(), -1);
  const std::function<int()> emit = [&]() -> int {
    const auto step = exploration_step(g, revealed);
    if (step.done) return tree.add_leaf(step.value);
    auto& slot = revealed[static_cast<std::size_t>(step.edge)];
    slot = 0;
    const int zero = emit();
    slot = 1;
    const int one = emit();
    slot = -1;
    return tree.add_query(step.edge, zero, one);
  };
  tree.set_root(emit());
  return tree;
}

Configuration sample_configuration(int edge_count, double p, std::uint64_t seed, std::uint64_t sample) {
  const auto low = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto high = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{low(seed), high(seed), low(sample), high(sample)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  std::mt19937_64 engine(static_cast<std::uint64_t>(words[0]) | (static_cast<std::uint64_t>(words[1]) << 32));
  const std::uint64_t threshold = open_threshold(p);
  Configuration c(static_cast<std::size_t>(edge_count));
  for (int i = 0; i < edge_count; ++i) c[static_cast<std::size_t>(i)] = draw_open(engine(), threshold, p);
  return c;
}

McEstimate mc_estimate(const Multigraph& g, double p, PercQuantity quantity, std::uint64_t samples,
                       std::uint64_t seed, unsigned shards) {
  validate(g);
  (void)open_threshold(p);
  return run_estimate(samples, seed, shards, [&](std::uint64_t j) -> std::int64_t {
    const Configuration omega = sample_configuration(g.edge_count(), p, seed, j);
    switch (quantity) {
      case PercQuantity::crossing:
        return connected(g, omega) ? 1 : 0;
      case PercQuantity::sensitivity:
        return pivotal_count(g, omega);
      case PercQuantity::witness:
        return witness_at(g, omega);
      case PercQuantity::exploration:
        return explore_count(g, omega);
    }
    throw std::logic_error("unknown percolation quantity");
  });
}

McEstimate explore_cost(const Multigraph& g, double p, std::uint64_t samples, std::uint64_t seed, unsigned shards) {
  return mc_estimate(g, p, PercQuantity::exploration, samples, seed, shards);
}

}  // namespace boolcx
