#include "boolcx/subcube.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <limits>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "boolcx/dtree.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/simplex.hpp"
#include "boolcx/subcube_table.hpp"
#include "wide_int.hpp"

namespace boolcx {

// ---------------------------------------------------------------------------
// Patterns and partitions

SubcubePattern SubcubePattern::parse(std::string_view text) {
  SubcubePattern p;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == ',' || c == '(' || c == ')') continue;
    if (p.arity >= kHardArityLimit) throw std::invalid_argument("pattern too long");
    const Input bit = Input{1} << p.arity;
    if (c == '0') {
      p.fixed |= bit;
    } else if (c == '1') {
      p.fixed |= bit;
      p.values |= bit;
    } else if (c != '*') {
      throw std::invalid_argument(std::string("pattern character must be 0, 1 or *, got '") + c + "'");
    }
    ++p.arity;
  }
  return p;
}

std::string SubcubePattern::to_string() const {
  std::string s;
  for (int i = 0; i < arity; ++i) {
    const Input bit = Input{1} << i;
    s += (fixed & bit) ? ((values & bit) ? '1' : '0') : '*';
  }
  return s;
}

SubcubePartition SubcubePartition::parse(std::string_view text) {
  SubcubePartition p;
  p.arity = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cell = SubcubePattern::parse(line);
    if (p.arity < 0) p.arity = cell.arity;
    if (cell.arity != p.arity) throw std::invalid_argument("patterns of different lengths: " + line);
    p.cells.push_back(cell);
  }
  if (p.arity < 0) throw std::invalid_argument("partition has no cells");
  return p;
}

SubcubePartition SubcubePartition::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open partition file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string SubcubePartition::to_text() const {
  std::string out;
  for (const auto& c : cells) out += c.to_string() + "\n";
  return out;
}

PartitionDiagnostic check_partition(const SubcubePartition& p) {
  using Problem = PartitionDiagnostic::Problem;
  if (p.arity < 0 || p.arity > kHardArityLimit) return {Problem::arity, "invalid arity"};
  for (const auto& c : p.cells) {
    if (c.arity != p.arity) return {Problem::arity, "cell " + c.to_string() + " has the wrong length"};
  }
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < p.cells.size(); ++j) {
      if (!p.cells[i].disjoint_from(p.cells[j])) {
        return {Problem::overlap, "cells " + p.cells[i].to_string() + " and " + p.cells[j].to_string() + " overlap"};
      }
    }
  }
  // Pairwise disjoint cells cover the cube exactly when their sizes add up to 2^n.
  std::uint64_t covered = 0;
  for (const auto& c : p.cells) covered += std::uint64_t{1} << (p.arity - c.codimension());
  if (covered != (std::uint64_t{1} << p.arity)) {
    return {Problem::gap, std::to_string((std::uint64_t{1} << p.arity) - covered) + " inputs are not covered"};
  }
  return {};
}

PartitionDiagnostic diagnose_partition(const SubcubePartition& p, const BooleanFunction& f) {
  using Problem = PartitionDiagnostic::Problem;
  if (p.arity != f.arity()) return {Problem::arity, "partition arity differs from the function arity"};
  auto d = check_partition(p);
  if (!d.ok()) return d;
  for (const auto& c : p.cells) {
    const Input free = full_mask(p.arity) & ~c.fixed;
    const bool v = f(c.values);
    Input sub = 0;
    do {
      if (f(c.values | sub) != v) return {Problem::nonconstant, "function is not constant on " + c.to_string()};
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  return {};
}

bool verify_partition(const SubcubePartition& p, const BooleanFunction& f) { return diagnose_partition(p, f).ok(); }

namespace {

void require_partition(const SubcubePartition& p) {
  const auto d = check_partition(p);
  if (!d.ok()) throw std::invalid_argument("not a partition: " + d.detail);
}

}  // namespace

int partition_cost_det(const SubcubePartition& p) {
  require_partition(p);
  int worst = 0;
  for (const auto& c : p.cells) worst = std::max(worst, c.codimension());
  return worst;
}

Rational partition_cost(const SubcubePartition& p, const ProductMeasure& m) {
  require_partition(p);
  const Rational q = Rational(1) - m.p();
  Rational total = 0;
  for (const auto& c : p.cells) {
    const int ones = weight(c.values);
    const int zeros = c.codimension() - ones;
    total += Rational(c.codimension()) * pow(m.p(), static_cast<unsigned>(ones)) * pow(q, static_cast<unsigned>(zeros));
  }
  return total;
}

SubcubePartition tree_partition(const DecisionTree& t, int n) {
  SubcubePartition p{n, {}};
  const std::function<void(int, Input, Input)> walk = [&](int at, Input fixed, Input values) {
    const auto& node = t.node(at);
    if (node.is_leaf()) {
      p.cells.push_back({n, fixed, values});
      return;
    }
    const Input bit = Input{1} << node.bit;
    walk(node.zero, fixed | bit, values);
    walk(node.one, fixed | bit, values | bit);
  };
  walk(t.root(), 0, 0);
  return p;
}

namespace {

bool induced(const std::vector<SubcubePattern>& cells, Input remaining) {
  if (cells.size() == 1) return (cells.front().fixed & remaining) == 0;
  for (Input rest = remaining; rest != 0; rest &= rest - 1) {
    const Input bit = rest & (~rest + 1);
    const bool split = std::all_of(cells.begin(), cells.end(), [bit](const auto& c) { return (c.fixed & bit) != 0; });
    if (!split) continue;
    std::vector<SubcubePattern> zero;
    std::vector<SubcubePattern> one;
    for (const auto& c : cells) ((c.values & bit) ? one : zero).push_back(c);
    if (!zero.empty() && !one.empty() && induced(zero, remaining & ~bit) && induced(one, remaining & ~bit)) return true;
  }
  return false;
}

}  // namespace

bool is_algorithm_induced(const SubcubePartition& p) {
  require_partition(p);
  return induced(p.cells, full_mask(p.arity));
}

std::int64_t partition_boundary(const SubcubePartition& p) {
  require_partition(p);
  std::vector<std::uint32_t> owner(std::size_t{1} << p.arity);
  for (std::uint32_t id = 0; id < p.cells.size(); ++id) {
    const auto& c = p.cells[id];
    const Input free = full_mask(p.arity) & ~c.fixed;
    Input sub = 0;
    do {
      owner[c.values | sub] = id;
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  std::int64_t edges = 0;
  for (Input x = 0; x < owner.size(); ++x) {
    for (int i = 0; i < p.arity; ++i) {
      const Input y = x | (Input{1} << i);
      if (y != x && owner[x] != owner[y]) ++edges;
    }
  }
  return edges;
}

// ---------------------------------------------------------------------------
// Exact partition search

namespace {

constexpr int kSearchArityLimit = 8;
constexpr std::size_t kMemoEntryLimit = std::size_t{1} << 22;
// Level sets whose linear relaxation is solved before the search.
constexpr std::size_t kRelaxationMinPoints = 12;
constexpr std::size_t kRelaxationMaxPoints = 160;

// Set of points of a cube with at most 256 points.
struct PointSet {
  std::array<std::uint64_t, 4> words{};

  void add(Input x) { words[x >> 6] |= std::uint64_t{1} << (x & 63); }
  [[nodiscard]] bool intersects(const PointSet& o) const {
    for (std::size_t i = 0; i < 4; ++i) {
      if (words[i] & o.words[i]) return true;
    }
    return false;
  }
  PointSet& operator|=(const PointSet& o) {
    for (std::size_t i = 0; i < 4; ++i) words[i] |= o.words[i];
    return *this;
  }
  // Lowest point in `universe` not in this set, or -1.
  [[nodiscard]] int first_missing(const PointSet& universe) const {
    for (std::size_t i = 0; i < 4; ++i) {
      const std::uint64_t open = universe.words[i] & ~words[i];
      if (open) return static_cast<int>(i * 64) + std::countr_zero(open);
    }
    return -1;
  }
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : s.words) h = (h ^ w) * 0xbf58476d1ce4e5b9ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

struct Cell {
  SubcubePattern pattern;
  PointSet points;
};

// All f-constant cells with value `level`, indexed by the points they contain.
struct CellCatalog {
  std::vector<Cell> cells;
  std::vector<std::vector<int>> through;  // cells containing each point
  PointSet universe;                      // points of the level set
};

CellCatalog catalog_cells(const BooleanFunction& f, bool level) {
  const int n = f.arity();
  const SubcubeTable table(f, kSearchArityLimit);
  const auto wanted = level ? SubcubeTable::Status::one : SubcubeTable::Status::zero;
  CellCatalog cat;
  cat.through.resize(f.size());
  for (Input x = 0; x < f.size(); ++x) {
    if (f(x) == level) cat.universe.add(x);
  }
  // Enumerate every (fixed, values) pair once.
  for (Input fixed = 0; fixed < f.size(); ++fixed) {
    for (Input values = fixed;; values = (values - 1) & fixed) {
      if (table.status(table.encode(fixed, values)) == wanted) {
        Cell cell{{n, fixed, values}, {}};
        const Input free = full_mask(n) & ~fixed;
        Input sub = 0;
        do {
          cell.points.add(values | sub);
          sub = (sub - free) & free;
        } while (sub != 0);
        cat.cells.push_back(cell);
      }
      if (values == 0) break;
    }
  }
  for (int id = 0; id < static_cast<int>(cat.cells.size()); ++id) {
    const auto& c = cat.cells[static_cast<std::size_t>(id)].pattern;
    const Input free = full_mask(n) & ~c.fixed;
    Input sub = 0;
    do {
      cat.through[c.values | sub].push_back(id);
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  return cat;
}

// Is there a cover of the level set by disjoint catalog cells of codimension <= depth?
class DepthCover {
 public:
  DepthCover(const CellCatalog& cat, int depth) : cat_(cat), depth_(depth) {}

  bool run() { return search(PointSet{}); }

 private:
  bool search(const PointSet& covered) {
    const int pivot = covered.first_missing(cat_.universe);
    if (pivot < 0) return true;
    if (dead_.count(covered)) return false;
    for (int id : cat_.through[static_cast<std::size_t>(pivot)]) {
      const auto& cell = cat_.cells[static_cast<std::size_t>(id)];
      if (cell.pattern.codimension() > depth_ || cell.points.intersects(covered)) continue;
      PointSet next = covered;
      next |= cell.points;
      if (search(next)) return true;
    }
    if (dead_.size() < kMemoEntryLimit) dead_.insert(covered);
    return false;
  }

  const CellCatalog& cat_;
  int depth_;
  std::unordered_set<PointSet, PointSetHash> dead_;
};

// Minimum of sum over cells of codim · mass(cell), scaled so that a point of weight k has
// integer mass a^k (b-a)^(n-k). Branches on the uncovered point with the fewest cells still
// disjoint from the cover; the cheapest such cell of every uncovered point bounds the rest.
template <class Int>
class WeightedCover {
 public:
  WeightedCover(const CellCatalog& cat, const ScaledMeasure& measure, int n) : cat_(cat), n_(n) {
    point_mass_.resize(std::size_t{1} << n);
    for (Input x = 0; x < point_mass_.size(); ++x) point_mass_[x] = detail::from_mpz<Int>(measure.mass(x));
    dual_.assign(point_mass_.size(), Int(0));
    slack_.assign(cat.cells.size(), Int(0));
    slack_stamp_.assign(cat.cells.size(), 0);
    cell_cost_.resize(cat.cells.size());
    for (std::size_t id = 0; id < cat.cells.size(); ++id) {
      const auto& c = cat.cells[id].pattern;
      Int mass(0);
      const Input free = full_mask(n) & ~c.fixed;
      Input sub = 0;
      do {
        mass += point_mass_[c.values | sub];
        sub = (sub - free) & free;
      } while (sub != 0);
      cell_cost_[id] = mass * Int(c.codimension());
    }
    through_sorted_ = cat.through;
    for (auto& list : through_sorted_) {
      std::stable_sort(list.begin(), list.end(), [this](int a, int b) {
        return cell_cost_[static_cast<std::size_t>(a)] < cell_cost_[static_cast<std::size_t>(b)];
      });
    }
  }

  // `incumbent` must be a valid cover; it is returned if nothing cheaper exists.
  std::pair<Int, std::vector<int>> run(std::vector<int> incumbent) {
    best_cells_ = std::move(incumbent);
    best_ = Int(0);
    for (int id : best_cells_) best_ += cell_cost_[static_cast<std::size_t>(id)];
    if (solve_relaxation()) return {best_, best_cells_};
    search(PointSet{}, Int(0));
    return {best_, best_cells_};
  }

 private:
  void search(const PointSet& covered, const Int& cost) {
    // Dual values y start at mass · cheapest codimension, which no cell violates, and are then
    // raised greedily while every feasible cell keeps sum of y over its points <= its cost.
    open_.clear();
    int pivot = -1;
    std::size_t pivot_options = 0;
    for (std::size_t w = 0; w < covered.words.size(); ++w) {
      for (std::uint64_t open = cat_.universe.words[w] & ~covered.words[w]; open != 0; open &= open - 1) {
        const auto x = static_cast<Input>(w * 64 + static_cast<std::size_t>(std::countr_zero(open)));
        std::size_t options = 0;
        int lightest = n_ + 1;
        for (int id : through_sorted_[x]) {
          const auto& cell = cat_.cells[static_cast<std::size_t>(id)];
          if (cell.points.intersects(covered)) continue;
          ++options;
          lightest = std::min(lightest, cell.pattern.codimension());
        }
        if (options == 0) return;
        dual_[x] = point_mass_[x] * Int(lightest);
        open_.push_back(x);
        if (pivot < 0 || options < pivot_options) {
          pivot = static_cast<int>(x);
          pivot_options = options;
        }
      }
    }
    if (pivot < 0) {
      if (cost < best_) {
        best_ = cost;
        best_cells_ = chosen_;
      }
      return;
    }
    Int bound(0);
    for (Input x : open_) bound += dual_[x];
    if (!(cost + bound < best_)) return;
    if (!relaxed_dual_.empty()) {
      bound = Int(0);
      for (Input x : open_) {
        dual_[x] = relaxed_dual_[x];
        bound += dual_[x];
      }
    }
    bound += dual_ascent(covered);
    if (!(cost + bound < best_)) return;
    if (seen_.size() < kMemoEntryLimit || seen_.count(covered)) {
      auto [it, inserted] = seen_.try_emplace(covered, cost);
      if (!inserted) {
        if (!(cost < it->second)) return;
        it->second = cost;
      }
    }
    for (int id : through_sorted_[static_cast<std::size_t>(pivot)]) {
      const auto& cell = cat_.cells[static_cast<std::size_t>(id)];
      if (cell.points.intersects(covered)) continue;
      PointSet next = covered;
      next |= cell.points;
      chosen_.push_back(id);
      search(next, cost + cell_cost_[static_cast<std::size_t>(id)]);
      chosen_.pop_back();
    }
  }

  // Solves the linear relaxation once, by column generation over the catalog. Returns true when
  // its value already matches the incumbent; otherwise keeps its dual, rounded down, as the
  // starting point of every bound.
  bool solve_relaxation() {
    std::vector<Input> points;
    for (Input x = 0; x < point_mass_.size(); ++x) {
      if (cat_.universe.words[x >> 6] >> (x & 63) & 1U) points.push_back(x);
    }
    if (points.size() < kRelaxationMinPoints || points.size() > kRelaxationMaxPoints) return false;
    std::vector<int> row_of(point_mass_.size(), -1);
    for (std::size_t i = 0; i < points.size(); ++i) row_of[points[i]] = static_cast<int>(i);

    std::vector<int> columns;
    std::vector<char> in_lp(cat_.cells.size(), 0);
    const auto include = [&](int id) {
      if (!in_lp[static_cast<std::size_t>(id)]) {
        in_lp[static_cast<std::size_t>(id)] = 1;
        columns.push_back(id);
      }
    };
    for (std::size_t id = 0; id < cat_.cells.size(); ++id) {
      if (cat_.cells[id].pattern.codimension() == n_) include(static_cast<int>(id));
    }
    for (int id : best_cells_) include(id);

    std::vector<Rational> cost(cat_.cells.size());
    for (std::size_t id = 0; id < cat_.cells.size(); ++id) cost[id] = Rational(detail::as_mpz(cell_cost_[id]));
    const auto cell_points = [&](std::size_t id, auto&& visit) {
      const auto& c = cat_.cells[id].pattern;
      const Input free = full_mask(n_) & ~c.fixed;
      Input sub = 0;
      do {
        visit(static_cast<std::size_t>(row_of[c.values | sub]));
        sub = (sub - free) & free;
      } while (sub != 0);
    };

    while (true) {
      StandardFormLp lp;
      lp.rows.assign(points.size(), std::vector<Rational>(columns.size(), Rational(0)));
      lp.rhs.assign(points.size(), Rational(1));
      std::vector<int> basis(points.size(), -1);
      for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto id = static_cast<std::size_t>(columns[j]);
        lp.cost.push_back(cost[id]);
        cell_points(id, [&](std::size_t row) { lp.rows[row][j] = 1; });
        if (cat_.cells[id].pattern.codimension() == n_) basis[static_cast<std::size_t>(row_of[cat_.cells[id].pattern.values])] = static_cast<int>(j);
      }
      const auto solution = solve_from_basis(lp, basis);
      // Add the cells the current dual undercharges, most negative reduced cost first.
      std::vector<std::pair<Rational, int>> entering;
      for (std::size_t id = 0; id < cat_.cells.size(); ++id) {
        if (in_lp[id]) continue;
        Rational reduced = cost[id];
        cell_points(id, [&](std::size_t row) { reduced -= solution.dual[row]; });
        if (reduced < 0) entering.emplace_back(reduced, static_cast<int>(id));
      }
      if (entering.empty()) {
        if (solution.value >= Rational(detail::as_mpz(best_))) return true;
        relaxed_dual_.assign(point_mass_.size(), Int(0));
        for (std::size_t i = 0; i < points.size(); ++i) {
          mpz_class floor_value;
          mpz_fdiv_q(floor_value.get_mpz_t(), solution.dual[i].numerator().get_mpz_t(),
                     solution.dual[i].denominator().get_mpz_t());
          relaxed_dual_[points[i]] = detail::from_mpz<Int>(floor_value);
        }
        return false;
      }
      std::sort(entering.begin(), entering.end());
      const std::size_t batch = std::max<std::size_t>(8, points.size() / 2);
      for (std::size_t k = 0; k < entering.size() && k < batch; ++k) include(entering[k].second);
    }
  }

  // Raises dual_ over open_ and returns the total increase.
  Int dual_ascent(const PointSet& covered) {
    for (Input x : open_) {
      for (int id : through_sorted_[x]) {
        const auto uid = static_cast<std::size_t>(id);
        if (slack_stamp_[uid] == stamp_ || cat_.cells[uid].points.intersects(covered)) continue;
        slack_stamp_[uid] = stamp_;
        Int used(0);
        const auto& c = cat_.cells[uid].pattern;
        const Input free = full_mask(n_) & ~c.fixed;
        Input sub = 0;
        do {
          used += dual_[c.values | sub];
          sub = (sub - free) & free;
        } while (sub != 0);
        slack_[uid] = cell_cost_[uid] - used;
      }
    }
    Int gained(0);
    for (Input x : open_) {
      bool first = true;
      Int room(0);
      for (int id : through_sorted_[x]) {
        const auto uid = static_cast<std::size_t>(id);
        if (slack_stamp_[uid] != stamp_) continue;
        if (first || slack_[uid] < room) room = slack_[uid];
        first = false;
      }
      if (!(Int(0) < room)) continue;
      gained += room;
      for (int id : through_sorted_[x]) {
        const auto uid = static_cast<std::size_t>(id);
        if (slack_stamp_[uid] == stamp_) slack_[uid] -= room;
      }
    }
    ++stamp_;
    return gained;
  }

  const CellCatalog& cat_;
  int n_;
  std::vector<Int> point_mass_;
  std::vector<Int> dual_;
  std::vector<Int> relaxed_dual_;
  std::vector<Input> open_;
  std::vector<Int> slack_;
  std::vector<std::uint64_t> slack_stamp_;
  std::uint64_t stamp_ = 1;
  std::vector<Int> cell_cost_;
  std::vector<std::vector<int>> through_sorted_;
  std::unordered_map<PointSet, Int, PointSetHash> seen_;
  std::vector<int> chosen_;
  std::vector<int> best_cells_;
  Int best_{};
};

void check_search_arity(const BooleanFunction& f, const SubcubeLimits& limits) {
  const int cap = std::min(limits.max_arity, kSearchArityLimit);
  if (f.arity() > cap) throw CapExceeded("subcube partition arity", f.arity(), cap);
}

// Ids of catalog cells matching the leaves with the given value of the optimal tree.
std::vector<int> tree_cover(const BooleanFunction& f, const ProductMeasure& m, const CellCatalog& cat, bool level) {
  const auto leaves = tree_partition(extract_tree(f, m), f.arity());
  std::vector<int> ids;
  for (const auto& leaf : leaves.cells) {
    if (f(leaf.values) != level) continue;
    for (int id : cat.through[leaf.values]) {
      if (cat.cells[static_cast<std::size_t>(id)].pattern == leaf) {
        ids.push_back(id);
        break;
      }
    }
  }
  return ids;
}

struct LevelOptimum {
  mpz_class scaled_cost;
  std::vector<SubcubePattern> cells;
};

template <class Int>
LevelOptimum optimize_level(const BooleanFunction& f, const ProductMeasure& m, const ScaledMeasure& scaled, bool level) {
  const CellCatalog cat = catalog_cells(f, level);
  WeightedCover<Int> search(cat, scaled, f.arity());
  auto [cost, ids] = search.run(tree_cover(f, m, cat, level));
  LevelOptimum out{detail::as_mpz(cost), {}};
  for (int id : ids) out.cells.push_back(cat.cells[static_cast<std::size_t>(id)].pattern);
  return out;
}

LevelOptimum optimize_level(const BooleanFunction& f, const ProductMeasure& m, bool level) {
  const ScaledMeasure scaled(m, f.arity());
  mpz_class bound = scaled.denominator * (f.arity() + 1) * 4;
  if (detail::fits_int128(bound)) return optimize_level<detail::Int128>(f, m, scaled, level);
  return optimize_level<mpz_class>(f, m, scaled, level);
}

}  // namespace

int sc_det(const BooleanFunction& f, const SubcubeLimits& limits) {
  const int n = f.arity();
  if (f.is_constant()) return 0;
  // A cell with a free bit has even size, so an odd number of ones forces a single-point cell.
  if (f.count_ones() % 2 == 1) return n;
  // Every cell through x fixes a witness for x, and f is the sum of the indicators of its
  // one-cells, each a product of codimension-many literals.
  int lower = degree(f);
  if (n <= PointwiseLimits{}.max_arity) lower = std::max(lower, deterministic_measures(f).witness);
  if (lower >= n) return n;
  check_search_arity(f, limits);
  const CellCatalog zeros = catalog_cells(f, false);
  const CellCatalog ones = catalog_cells(f, true);
  for (int depth = lower; depth < n; ++depth) {
    if (DepthCover(zeros, depth).run() && DepthCover(ones, depth).run()) return depth;
  }
  return n;
}

PartitionOptimum optimal_partition(const BooleanFunction& f, const ProductMeasure& m, LevelSet level,
                                   const SubcubeLimits& limits) {
  check_search_arity(f, limits);
  const ScaledMeasure scaled(m, f.arity());
  PartitionOptimum out{Rational(0), SubcubePartition{f.arity(), {}}};
  mpz_class total = 0;
  for (bool value : {false, true}) {
    if (level == LevelSet::zeros && value) continue;
    if (level == LevelSet::ones && !value) continue;
    auto part = optimize_level(f, m, value);
    total += part.scaled_cost;
    for (auto& c : part.cells) out.partition.cells.push_back(c);
  }
  out.cost = Rational(total, scaled.denominator);
  return out;
}

Rational sc_dist(const BooleanFunction& f, const ProductMeasure& m, const SubcubeLimits& limits) {
  if (f.is_constant()) return Rational(0);
  return optimal_partition(f, m, LevelSet::all, limits).cost;
}

Rational sc_conditional(const BooleanFunction& f, const ProductMeasure& m, bool level, const SubcubeLimits& limits) {
  const Rational mass = level ? output_probability(f, m) : Rational(1) - output_probability(f, m);
  if (mass == 0) throw std::domain_error("level set has probability zero");
  return optimal_partition(f, m, level ? LevelSet::ones : LevelSet::zeros, limits).cost / mass;
}

void for_each_refining_partition(const BooleanFunction& f, const std::function<void(const SubcubePartition&)>& visit,
                                 int max_arity) {
  const int n = f.arity();
  if (n > max_arity) throw CapExceeded("partition enumeration arity", n, max_arity);
  const Input size = f.size();
  // Constant cells listed by the lowest point they contain.
  std::vector<std::vector<SubcubePattern>> starting_at(size);
  for (Input fixed = 0; fixed < size; ++fixed) {
    for (Input values = fixed;; values = (values - 1) & fixed) {
      SubcubePattern cell{n, fixed, values};
      const Input free = full_mask(n) & ~fixed;
      bool constant = true;
      Input sub = 0;
      do {
        constant = f(values | sub) == f(values);
        sub = (sub - free) & free;
      } while (constant && sub != 0);
      if (constant) starting_at[values].push_back(cell);
      if (values == 0) break;
    }
  }
  std::vector<char> covered(size, 0);
  SubcubePartition current{n, {}};
  const std::function<void(Input)> extend = [&](Input from) {
    while (from < size && covered[from]) ++from;
    if (from == size) {
      visit(current);
      return;
    }
    for (const auto& cell : starting_at[from]) {
      const Input free = full_mask(n) & ~cell.fixed;
      bool open = true;
      Input sub = 0;
      do {
        open = !covered[cell.values | sub];
        sub = (sub - free) & free;
      } while (open && sub != 0);
      if (!open) continue;
      const auto mark = [&](char v) {
        Input s = 0;
        do {
          covered[cell.values | s] = v;
          s = (s - free) & free;
        } while (s != 0);
      };
      mark(1);
      current.cells.push_back(cell);
      extend(from + 1);
      current.cells.pop_back();
      mark(0);
    }
  };
  extend(0);
}

std::int64_t min_refining_boundary(const BooleanFunction& f, int max_arity) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for_each_refining_partition(
      f, [&](const SubcubePartition& p) { best = std::min(best, partition_boundary(p)); }, max_arity);
  return best;
}

}  // namespace boolcx
