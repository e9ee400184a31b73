#include <random>

#include "boolcx/errors.hpp"
#include "boolcx/localwit.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/subcube.hpp"
#include "boolcx/zoo.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace boolcx;

namespace {
Rational R(const char* s) { return Rational::parse(s); }
ProductMeasure P(const char* s) { return ProductMeasure(R(s)); }
}  // namespace

TEST_CASE("simplex on a small program with a known optimum") {
  // minimize -x1 - x2 with x1 + s1 = 1, x2 + s2 = 2, x1 + x2 + s3 = 5/2
  StandardFormLp lp;
  lp.rows = {{1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {1, 1, 0, 0, 1}};
  lp.rhs = {1, 2, R("5/2")};
  lp.cost = {-1, -1, 0, 0, 0};
  const auto s = solve_from_basis(lp, {2, 3, 4});
  CHECK(s.value == R("-5/2"));
  CHECK(s.primal[0] + s.primal[1] == R("5/2"));
  Rational dual_value = 0;
  for (std::size_t i = 0; i < 3; ++i) dual_value += lp.rhs[i] * s.dual[i];
  CHECK(dual_value == s.value);
  CHECK_THROWS(solve_from_basis(lp, {0, 3, 4}));
}

TEST_CASE("program shape") {
  const auto f = zoo::majority(3);
  const auto prog = build_program(f, P("1/2"));
  CHECK(prog.lp.row_count() == 8);
  int constant_cells = 0;
  for (Input fixed = 0; fixed < 8; ++fixed) {
    for (Input values = 0; values < 8; ++values) {
      if ((values & ~fixed) == 0 && oracle::constant_on(f, values, fixed)) ++constant_cells;
    }
  }
  CHECK(prog.variables.size() == static_cast<std::size_t>(constant_cells));
  CHECK(prog.variables.size() < 27);
  for (int col : prog.point_columns) CHECK(col >= 0);
  const auto text = dump_program(prog);
  CHECK(text.find("constraints 8") != std::string::npos);
  CHECK_THROWS_AS((void)build_program(zoo::majority(7), P("1/2")), CapExceeded);
}

TEST_CASE("local witness complexity values") {
  CHECK(local_witness_complexity(zoo::majority(3), P("1/2")) == R("5/2"));
  CHECK(local_witness_complexity(zoo::majority(3), P("1/3")) == R("22/9"));
  CHECK(local_witness_complexity(zoo::all_equal3(), P("1/2")) == R("9/4"));
  CHECK(local_witness_complexity(zoo::constant(3, true), P("1/2")) == 0);
  for (int n = 1; n <= 4; ++n) CHECK(local_witness_complexity(zoo::parity(n), P("1/3")) == n);
  CHECK(local_witness_complexity(zoo::g4(), P("1/2")) == R("21/8"));
  CHECK(local_witness_complexity(zoo::h4(), P("1/2")) == R("11/4"));
  CHECK(local_witness_complexity(zoo::tribes(2, 2), P("1/2")) == R("21/8"));
  CHECK(local_witness_complexity(zoo::tribes(2, 2), P("1/3")) == R("68/27"));
  CHECK(local_witness_complexity(zoo::majority(3), P("1")) == 0);
  CHECK(local_witness_complexity(zoo::majority(3), P("0")) == 0);
  CHECK_THROWS_AS((void)local_witness_complexity(iterate(zoo::majority(3), 2), P("1/2")), CapExceeded);
  for (const char* p : {"1/2", "1/3", "2/3"}) {
    const Rational pr = R(p);
    CHECK(local_witness_complexity(zoo::majority(3), ProductMeasure(pr)) == Rational(2) + Rational(2) * pr * (Rational(1) - pr));
  }
}

TEST_CASE("program solution is primal and dual feasible") {
  const auto prog = build_program(zoo::g4(), P("1/3"));
  const auto s = solve(prog);
  for (const auto& v : s.primal) CHECK(v >= 0);
  Rational dual_value = 0;
  for (std::size_t i = 0; i < prog.lp.row_count(); ++i) dual_value += prog.lp.rhs[i] * s.dual[i];
  CHECK(dual_value == s.value);
  Rational objective = 0;
  for (std::size_t j = 0; j < prog.lp.column_count(); ++j) objective += prog.lp.cost[j] * s.primal[j];
  CHECK(objective == s.value);
}

TEST_CASE("local witness complexity lies between witness and subcube costs") {
  std::mt19937_64 rng(12);
  for (const char* p : {"1/2", "1/3"}) {
    for (std::uint64_t index = 0; index < 256; ++index) {
      const auto f = oracle::function_from_index(3, index);
      const Rational l = local_witness_complexity(f, P(p));
      REQUIRE(distributional_measures(f, P(p)).witness <= l);
      REQUIRE(l <= sc_dist(f, P(p)));
    }
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = oracle::random_function(4, rng);
      const Rational l = local_witness_complexity(f, P(p));
      REQUIRE(distributional_measures(f, P(p)).witness <= l);
      REQUIRE(l <= sc_dist(f, P(p)));
    }
  }
}

TEST_CASE("mixed witness construction for the four-bit separation example") {
  const auto s = RandomWitnessSet::read(std::string(BOOLCX_FIXTURE_DIR) + "/g4_witness.txt");
  CHECK(s.components.size() == 2);
  CHECK(is_well_formed(s));
  CHECK(is_witness_set(s, zoo::g4()));
  CHECK(is_local(s, P("1/2")));
  CHECK(expected_size(s, P("1/2")) == R("21/8"));
  for (std::size_t c = 0; c < 2; ++c) {
    RandomWitnessSet single{s.arity, {{Rational(1), s.components[c].rules}}};
    CHECK(is_witness_set(single, zoo::g4()));
    CHECK(expected_size(single, P("1/2")) == R("21/8"));
    CHECK_FALSE(is_local(single, P("1/2")));
  }
}

TEST_CASE("witness set text errors") {
  CHECK_THROWS(RandomWitnessSet::parse("component 1\n** : 1\n"));
  CHECK_THROWS(RandomWitnessSet::parse("n=2\n** : 1\n"));
  CHECK_THROWS(RandomWitnessSet::parse("n=2\ncomponent 1\n*** : 1\n"));
  CHECK_THROWS(RandomWitnessSet::parse("n=2\ncomponent 1\n** : 3\n"));
  const auto gap = RandomWitnessSet::parse("n=2\ncomponent 1\n0* : 1\n");
  CHECK_FALSE(is_well_formed(gap));
}
