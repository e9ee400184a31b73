#include <functional>
#include <random>

#include "boolcx/dtree.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/subcube.hpp"
#include "boolcx/zoo.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace boolcx;

namespace {

Rational R(const char* s) { return Rational::parse(s); }
ProductMeasure P(const char* s) { return ProductMeasure(R(s)); }
SubcubePartition fixture(const char* name) { return SubcubePartition::read(std::string(BOOLCX_FIXTURE_DIR) + "/" + name); }

// Every partition of the cube into f-constant cells, by plain recursion (n <= 3).
void all_partitions(const BooleanFunction& f, const std::function<void(const SubcubePartition&)>& visit) {
  const int n = f.arity();
  std::vector<SubcubePattern> constant_cells;
  for (Input fixed = 0; fixed < f.size(); ++fixed) {
    for (Input values = 0; values < f.size(); ++values) {
      if ((values & ~fixed) != 0) continue;
      if (oracle::constant_on(f, values, fixed)) constant_cells.push_back({n, fixed, values});
    }
  }
  SubcubePartition current{n, {}};
  std::vector<bool> covered(f.size(), false);
  const std::function<void()> rec = [&]() {
    Input pivot = 0;
    while (pivot < f.size() && covered[pivot]) ++pivot;
    if (pivot == f.size()) {
      visit(current);
      return;
    }
    for (const auto& c : constant_cells) {
      if (!c.contains(pivot)) continue;
      bool free = true;
      for (Input x = 0; x < f.size() && free; ++x) free = !(c.contains(x) && covered[x]);
      if (!free) continue;
      for (Input x = 0; x < f.size(); ++x) if (c.contains(x)) covered[x] = true;
      current.cells.push_back(c);
      rec();
      current.cells.pop_back();
      for (Input x = 0; x < f.size(); ++x) if (c.contains(x)) covered[x] = false;
    }
  };
  rec();
}

}  // namespace

TEST_CASE("pattern text form") {
  const auto c = SubcubePattern::parse("1*0");
  CHECK(c.arity == 3);
  CHECK(c.codimension() == 2);
  CHECK(c.contains(pack_input(std::vector{1, 1, 0})));
  CHECK_FALSE(c.contains(pack_input(std::vector{0, 1, 0})));
  CHECK(c.to_string() == "1*0");
  CHECK(SubcubePattern::parse("(1, *, 0)") == c);
  CHECK_THROWS(SubcubePattern::parse("1x0"));
  const auto p = fixture("maj4.partition");
  CHECK(SubcubePartition::parse(p.to_text()).cells == p.cells);
}

TEST_CASE("partition verification") {
  CHECK(verify_partition(fixture("maj4.partition"), zoo::majority4()));
  CHECK(verify_partition(fixture("aeq3.partition"), zoo::all_equal3()));
  const auto overlap = SubcubePartition::parse("0*\n*1\n10\n");
  CHECK(check_partition(overlap).problem == PartitionDiagnostic::Problem::overlap);
  const auto gap = SubcubePartition::parse("0*\n10\n");
  CHECK(check_partition(gap).problem == PartitionDiagnostic::Problem::gap);
  const auto halves = SubcubePartition::parse("0*\n1*\n");
  CHECK(diagnose_partition(halves, zoo::and_n(2)).problem == PartitionDiagnostic::Problem::nonconstant);
  CHECK(diagnose_partition(halves, zoo::and_n(3)).problem == PartitionDiagnostic::Problem::arity);
  CHECK_THROWS(partition_cost_det(overlap));
}

TEST_CASE("partition costs") {
  CHECK(partition_cost(fixture("aeq3.partition"), P("1/2")) == R("9/4"));
  CHECK(partition_cost_det(fixture("maj4.partition")) == 3);
  SubcubePartition points{3, {}};
  for (Input x = 0; x < 8; ++x) points.cells.push_back({3, 7, x});
  CHECK(partition_cost_det(points) == 3);
  CHECK(partition_cost(points, P("1/3")) == 3);
  for (const char* p : {"1/2", "1/3"}) {
    const Rational pr = R(p);
    CHECK(partition_cost(fixture("aeq3.partition"), ProductMeasure(pr)) ==
          Rational(2) + pow(pr, 3) + pow(Rational(1) - pr, 3));
  }
}

TEST_CASE("deterministic subcube partition complexity") {
  CHECK(sc_det(zoo::nisan(8)) == 8);
  CHECK(sc_det(zoo::majority4()) == 3);
  for (int n = 1; n <= 5; ++n) CHECK(sc_det(zoo::parity(n)) == n);
  CHECK(sc_det(zoo::tribes(2, 2)) == 4);
  CHECK(sc_det(zoo::constant(3, true)) == 0);
  CHECK(sc_det(zoo::all_equal3()) == 3);
  // 31 ones: decided by the parity count without any search.
  CHECK(sc_det(zoo::tribes(2, 4)) == 8);
  CHECK_THROWS_AS((void)sc_det(zoo::address7()), CapExceeded);
}

TEST_CASE("distributional subcube partition complexity") {
  CHECK(sc_dist(zoo::majority(3), P("1/2")) == R("5/2"));
  CHECK(sc_dist(zoo::g4(), P("1/2")) == R("11/4"));
  CHECK(sc_dist(zoo::h4(), P("1/2")) == R("11/4"));
  CHECK(sc_dist(zoo::majority4(), P("1/2")) == dist_cost(zoo::majority4(), P("1/2")));
  for (const char* p : {"1/2", "1/3"}) {
    const Rational pr = R(p);
    CHECK(sc_dist(zoo::all_equal3(), ProductMeasure(pr)) == Rational(2) + pow(pr, 3) + pow(Rational(1) - pr, 3));
    CHECK(sc_dist(zoo::majority(3), ProductMeasure(pr)) == Rational(2) + Rational(2) * pr * (Rational(1) - pr));
  }
  for (const char* p : {"1/4", "1/2"}) {
    for (int n = 1; n <= 5; ++n) CHECK(sc_dist(zoo::and_n(n), P(p)) == dist_cost(zoo::and_n(n), P(p)));
  }
  const auto opt = optimal_partition(zoo::g4(), P("1/2"));
  CHECK(verify_partition(opt.partition, zoo::g4()));
  CHECK(partition_cost(opt.partition, P("1/2")) == R("11/4"));
  CHECK_THROWS_AS((void)sc_dist(zoo::address7(), P("1/2")), CapExceeded);
}

TEST_CASE("conditional level-set costs") {
  CHECK(sc_conditional(zoo::g4(), P("1/2"), true) == R("7/2"));
  CHECK(sc_conditional(zoo::g4(), P("1/2"), false) == R("5/2"));
  CHECK_THROWS((void)sc_conditional(zoo::constant(2, false), P("1/2"), true));
}

TEST_CASE("subcube search matches exhaustive enumeration on three bits") {
  for (std::uint64_t index = 0; index < 256; ++index) {
    const auto f = oracle::function_from_index(3, index);
    int best_det = 99;
    Rational best_half = 99;
    Rational best_third = 99;
    std::int64_t best_boundary = 1 << 20;
    all_partitions(f, [&](const SubcubePartition& p) {
      best_det = std::min(best_det, partition_cost_det(p));
      best_half = min(best_half, partition_cost(p, P("1/2")));
      best_third = min(best_third, partition_cost(p, P("1/3")));
      best_boundary = std::min(best_boundary, partition_boundary(p));
    });
    REQUIRE(sc_det(f) == best_det);
    REQUIRE(sc_dist(f, P("1/2")) == best_half);
    REQUIRE(sc_dist(f, P("1/3")) == best_third);
    if (!f.is_constant()) {
      const Rational s = expected_sensitivity(f, P("1/2"));
      REQUIRE(best_half / s == Rational(best_boundary, edge_boundary(f)));
    }
  }
}

TEST_CASE("library partition enumeration matches the test enumerator") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = oracle::random_function(trial < 20 ? 2 : 3, rng);
    std::size_t expected = 0;
    std::int64_t best = 1 << 20;
    all_partitions(f, [&](const SubcubePartition& p) {
      ++expected;
      best = std::min(best, partition_boundary(p));
    });
    std::size_t seen = 0;
    for_each_refining_partition(f, [&](const SubcubePartition& p) {
      REQUIRE(verify_partition(p, f));
      ++seen;
    });
    CHECK(seen == expected);
    CHECK(min_refining_boundary(f) == best);
  }
  CHECK_THROWS_AS((void)min_refining_boundary(zoo::g4()), CapExceeded);
}

TEST_CASE("algorithm-induced partitions") {
  CHECK_FALSE(is_algorithm_induced(fixture("aeq3.partition")));
  CHECK(is_algorithm_induced(SubcubePartition::parse("0*\n1*\n")));
  CHECK(is_algorithm_induced(SubcubePartition::parse("**\n")));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const auto f = oracle::random_function(n, rng);
    const auto t = extract_tree(f, P("1/3"));
    const auto part = tree_partition(t, n);
    REQUIRE(verify_partition(part, f));
    REQUIRE(is_algorithm_induced(part));
  }
  // The optimal partition of h is not induced by any tree.
  const auto h_opt = optimal_partition(zoo::h4(), P("1/2"));
  CHECK(partition_cost(h_opt.partition, P("1/2")) < dist_cost(zoo::h4(), P("1/2")));
  CHECK_FALSE(is_algorithm_induced(h_opt.partition));
}

TEST_CASE("partition boundary") {
  SubcubePartition points{4, {}};
  for (Input x = 0; x < 16; ++x) points.cells.push_back({4, 15, x});
  CHECK(partition_boundary(points) == 4 * 8);
  CHECK(partition_boundary(SubcubePartition::parse("***\n")) == 0);
  for (const auto& p : {fixture("maj4.partition"), fixture("aeq3.partition")}) {
    std::int64_t total_codim = 0;
    for (const auto& c : p.cells) total_codim += static_cast<std::int64_t>(c.codimension()) << (p.arity - c.codimension());
    CHECK(total_codim == 2 * partition_boundary(p));
  }
}
