#include <fstream>
#include <random>
#include <sstream>

#include "boolcx/dtree.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/partialinfo.hpp"
#include "boolcx/pointwise.hpp"
#include "boolcx/zoo.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace boolcx;

namespace {
Rational R(const char* s) { return Rational::parse(s); }
const ProductMeasure kUniform{Rational(1, 2)};
}  // namespace

TEST_CASE("information states pack base 5") {
  const InfoState s{{BitTag::coarse1, BitTag::unknown, BitTag::full0}};
  CHECK(s.encode() == 2 + 0 * 5 + 3 * 25);
  CHECK(InfoState::decode(s.encode(), 3) == s);
  CHECK(InfoState::initial(4).encode() == 0);
  CHECK_THROWS(InfoState::decode(125, 3));
}

TEST_CASE("kappa0 closed form") {
  CHECK(kappa0_bound(2, R("3/4")) == R("128/129"));
  for (const char* p : {"2/3", "3/4", "9/10"}) {
    const Rational pr = R(p);
    CHECK(kappa0_bound(1, pr) == Rational(1) / (Rational(1) + (Rational(1) - pr) / Rational(2)));
    for (int n = 1; n < 6; ++n) CHECK(kappa0_bound(n, pr) < kappa0_bound(n + 1, pr));
  }
  CHECK(kappa0_bound(3, R("2/3")) < kappa0_bound(3, R("3/4")));
  CHECK_THROWS(kappa0_bound(0, R("3/4")));
}

TEST_CASE("two-bit AND") {
  const auto f = zoo::and_n(2);
  for (const char* p : {"2/3", "3/4", "9/10"}) {
    const Rational pr = R(p);
    CHECK(pk_cost(f, pr, 1) == R("3/2"));
    CHECK(kappa_critical(f, pr) == Rational(2) * pr - Rational(1));
    for (const char* k : {"0", "1/100", "1/7", "3/10"}) {
      const Rational kappa = R(k);
      REQUIRE(kappa < Rational(2) * pr - Rational(1));
      CHECK(pk_cost(f, pr, kappa) == R("3/2") + (kappa - Rational(2) * pr + Rational(1)) / Rational(4));
    }
  }
  CHECK(pk_strategy_line(f, R("3/4"), 1).beta == 0);
  const auto free_coarse = pk_strategy_line(f, R("3/4"), 0);
  CHECK(free_coarse.beta > 0);
  CHECK(free_coarse.at(0) == R("11/8"));
  // A denominator this large forces the multiple-precision path.
  const Rational close_to_half = Rational::parse("100000000000000000000000000001/200000000000000000000000000000");
  const Rational kappa = R("1/10000000000000000000000000000000");
  CHECK(kappa < Rational(2) * close_to_half - Rational(1));
  CHECK(pk_cost(f, close_to_half, kappa) ==
        R("3/2") + (kappa - Rational(2) * close_to_half + Rational(1)) / Rational(4));
}

TEST_CASE("parity never gains from coarse answers") {
  for (int n = 1; n <= 4; ++n) {
    for (const char* k : {"0", "1/3", "1"}) {
      const auto line = pk_strategy_line(zoo::parity(n), R("3/4"), R(k));
      CHECK(line.alpha == n);
      CHECK(line.beta == 0);
    }
    CHECK(kappa_critical(zoo::parity(n), R("2/3")) == 0);
  }
}

TEST_CASE("three-bit majority against the envelope oracle") {
  const auto f = zoo::majority(3);
  CHECK(kappa_critical(f, R("3/4")) == R("1/2"));
  CHECK(kappa_critical(f, R("2/3")) == R("1/3"));
  CHECK(kappa_critical(f, R("9/10")) == R("4/5"));
  CHECK(pk_cost(f, R("3/4"), 0) == R("73/32"));
  CHECK(pk_cost(f, R("3/4"), R("1/4")) == R("153/64"));
  CHECK(pk_cost(f, R("3/4"), R("1/2")) == R("5/2"));
}

TEST_CASE("critical cost of every three-bit function matches the fixture") {
  std::ifstream in(std::string(BOOLCX_FIXTURE_DIR) + "/kappa_critical_n3.txt");
  REQUIRE(in);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::uint64_t index = 0;
    std::string two_thirds;
    std::string three_quarters;
    words >> index >> two_thirds >> three_quarters;
    const auto f = oracle::function_from_index(3, index);
    INFO("function index " << index);
    CHECK(kappa_critical(f, R("2/3")) == Rational::parse(two_thirds));
    CHECK(kappa_critical(f, R("3/4")) == Rational::parse(three_quarters));
    ++rows;
  }
  CHECK(rows == 256);
}

TEST_CASE("full cost at kappa one equals classical querying") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t index = 0; index < (std::uint64_t{1} << (1U << n)); ++index) {
      const auto f = oracle::function_from_index(n, index);
      REQUIRE(pk_cost(f, R("3/4"), 1) == dist_cost(f, kUniform));
    }
  }
}

TEST_CASE("threshold bound on small arities") {
  for (int n = 2; n <= 3; ++n) {
    for (const char* p : {"2/3", "3/4"}) {
      const Rational kappa = kappa0_bound(n, R(p)) + R("1/1000");
      for (std::uint64_t index = 0; index < (std::uint64_t{1} << (1U << n)); ++index) {
        const auto f = oracle::function_from_index(n, index);
        const auto line = pk_strategy_line(f, R(p), kappa);
        REQUIRE(line.at(kappa) == dist_cost(f, kUniform));
        REQUIRE(line.beta == 0);
        REQUIRE(kappa_critical(f, R(p)) <= kappa0_bound(n, R(p)));
      }
    }
  }
}

TEST_CASE("cost is nondecreasing and concave in kappa and sandwiched") {
  std::mt19937_64 rng(2024);
  std::vector<BooleanFunction> sample;
  for (std::uint64_t index = 0; index < 256; index += 7) sample.push_back(oracle::function_from_index(3, index));
  for (int i = 0; i < 12; ++i) sample.push_back(oracle::random_function(4, rng));
  sample.push_back(zoo::g4());
  sample.push_back(zoo::h4());
  const std::vector<Rational> grid{R("0"), R("1/8"), R("1/4"), R("3/8"), R("1/2"), R("5/8"), R("3/4"), R("7/8"), R("1")};
  for (const auto& f : sample) {
    const Rational classical = dist_cost(f, kUniform);
    const Rational witness = distributional_measures(f, kUniform).witness;
    for (const char* p : {"2/3", "3/4"}) {
      std::vector<Rational> values;
      for (const auto& kappa : grid) values.push_back(pk_cost(f, R(p), kappa));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        REQUIRE(witness <= values[i]);
        REQUIRE(values[i] <= classical);
        if (i > 0) REQUIRE(values[i - 1] <= values[i]);
        if (i > 0 && i + 1 < grid.size()) REQUIRE(Rational(2) * values[i] >= values[i - 1] + values[i + 1]);
      }
    }
    // Matching the classical cost persists toward smaller p and larger kappa.
    for (const auto& kappa : grid) {
      if (pk_cost(f, R("3/4"), kappa) != classical) continue;
      for (const auto& larger : grid) {
        if (larger < kappa) continue;
        REQUIRE(pk_cost(f, R("2/3"), larger) == classical);
      }
    }
  }
}

TEST_CASE("seven-bit address variant") {
  const auto f = zoo::address7();
  const Rational p = R("9/10");
  const Rational kappa = R("1/100");
  const Rational one_minus = Rational(1) - p;
  const Rational strategy = R("9/2") + kappa + Rational(6) * p * one_minus * (p * p + one_minus * one_minus);
  CHECK(dist_cost(f, kUniform) == 5);
  const Rational value = pk_cost(f, p, kappa);
  CHECK(value <= strategy);
  CHECK(value < 5);
}

TEST_CASE("argument checks") {
  const auto f = zoo::and_n(2);
  CHECK_THROWS_AS((void)pk_cost(f, R("1/2"), 0), std::invalid_argument);
  CHECK_THROWS_AS((void)pk_cost(f, R("1"), 0), std::invalid_argument);
  CHECK_THROWS_AS((void)pk_cost(f, R("3/4"), R("-1/10")), std::invalid_argument);
  CHECK_THROWS_AS((void)pk_cost(zoo::parity(11), R("3/4"), 0), CapExceeded);
  CHECK_THROWS_AS((void)kappa_critical(zoo::parity(5), R("3/4"), PartialInfoLimits{4}), CapExceeded);
  CHECK(pk_cost(f, R("3/4"), 2) == R("3/2"));
}
