#include "boolcx/zoo.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>

namespace boolcx::zoo {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

Input bits(std::initializer_list<int> values) {
  std::vector<int> v(values);
  return pack_input(v);
}

}  // namespace

BooleanFunction and_n(int n) {
  require(n >= 0, "AND needs n >= 0");
  return BooleanFunction::from_predicate(n, [n](Input x) { return x == full_mask(n); });
}

BooleanFunction or_n(int n) {
  require(n >= 0, "OR needs n >= 0");
  return BooleanFunction::from_predicate(n, [](Input x) { return x != 0; });
}

BooleanFunction parity(int n) {
  require(n >= 0, "PAR needs n >= 0");
  return BooleanFunction::from_predicate(n, [](Input x) { return (weight(x) & 1) == 1; });
}

BooleanFunction majority(int n) {
  require(n >= 1 && n % 2 == 1, "MAJ needs odd n");
  return BooleanFunction::from_predicate(n, [n](Input x) { return 2 * weight(x) > n; });
}

BooleanFunction majority4() {
  return BooleanFunction::from_predicate(4, [](Input x) { return weight(x) + static_cast<int>(x & 1U) >= 3; });
}

BooleanFunction tribes(int tribes, int width) {
  require(tribes >= 1 && width >= 1, "TRIBES needs positive parameters");
  const long n = static_cast<long>(tribes) * width;
  require(n <= kDefaultArityCap, "TRIBES arity too large");
  const Input block = full_mask(width);
  return BooleanFunction::from_predicate(static_cast<int>(n), [=](Input x) {
    for (int t = 0; t < tribes; ++t) {
      if (((x >> (t * width)) & block) == block) return true;
    }
    return false;
  });
}

BooleanFunction address(int m) {
  require(m >= 0 && m <= 4, "ADDRESS needs 0 <= m <= 4");
  const int n = m + (1 << m);
  return BooleanFunction::from_predicate(n, [m](Input x) {
    const Input target = x & full_mask(m);
    return ((x >> (m + static_cast<int>(target))) & 1U) == 1;
  });
}

BooleanFunction all_equal3() {
  return BooleanFunction::from_predicate(3, [](Input x) { return x == 0 || x == 7; });
}

BooleanFunction nisan(int n) {
  require(n >= 4 && n % 4 == 0, "NISAN needs n divisible by 4");
  return BooleanFunction::from_predicate(n, [n](Input x) {
    const int w = weight(x);
    return w == n / 2 || w == n / 2 + 1;
  });
}

BooleanFunction g4() {
  const std::array<Input, 4> ones = {bits({1, 0, 0, 1}), bits({0, 0, 0, 1}), bits({0, 1, 0, 1}),
                                     bits({0, 1, 1, 0})};
  return BooleanFunction::from_ones(4, ones);
}

BooleanFunction h4() {
  // (*,*,0,1), (1,1,1,*), (1,0,0,0), (0,0,1,1)
  return BooleanFunction::from_predicate(4, [](Input x) {
    const auto b = [x](int i) { return static_cast<int>((x >> (i - 1)) & 1U); };
    if (b(3) == 0 && b(4) == 1) return true;
    if (b(1) == 1 && b(2) == 1 && b(3) == 1) return true;
    return x == bits({1, 0, 0, 0}) || x == bits({0, 0, 1, 1});
  });
}

BooleanFunction address7() {
  return BooleanFunction::from_predicate(7, [](Input x) {
    const auto b = [x](int i) { return (x >> (i - 1)) & 1U; };
    const bool selector = (b(5) ^ b(6) ^ b(7)) == 1;
    return selector ? (b(1) ^ b(2)) == 1 : (b(3) ^ b(4)) == 1;
  });
}

BooleanFunction constant(int n, bool value) { return BooleanFunction::constant(n, value); }

BooleanFunction dictator(int n, int index) {
  require(index >= 0 && index < n, "dictator index out of range");
  return BooleanFunction::from_predicate(n, [index](Input x) { return ((x >> index) & 1U) == 1; });
}

std::vector<std::string_view> family_names() {
  return {"AND", "OR", "PAR", "MAJ", "MAJ4", "TRIBES", "ADDRESS", "AEQ3", "NISAN",
          "G4",  "H4", "ADDR7", "CONST0", "CONST1", "DICT", "ID"};
}

namespace {

std::string family_key(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::toupper(c); });
  if (key == "ADDR") return "ADDRESS";
  if (key == "A-EQ3") return "AEQ3";
  return key;
}

void expect_params(const std::string& key, std::span<const int> params, std::size_t want) {
  require(params.size() == want,
          key + " expects " + std::to_string(want) + " parameter(s), got " + std::to_string(params.size()));
}

}  // namespace

std::int64_t family_arity(std::string_view name, std::span<const int> params) {
  const std::string key = family_key(name);
  const auto arg_count = [&](std::size_t want) { expect_params(key, params, want); };
  for (int v : params) require(v >= 0, key + " parameters must be nonnegative");
  if (key == "AND" || key == "OR" || key == "PAR" || key == "MAJ" || key == "NISAN" || key == "CONST0" ||
      key == "CONST1") {
    arg_count(1);
    return params[0];
  }
  if (key == "TRIBES") {
    arg_count(2);
    return std::int64_t{params[0]} * params[1];
  }
  if (key == "ADDRESS") {
    arg_count(1);
    require(params[0] < 31, "ADDRESS size out of range");
    return params[0] + (std::int64_t{1} << params[0]);
  }
  if (key == "DICT") {
    arg_count(2);
    return params[0];
  }
  if (key == "MAJ4" || key == "G4" || key == "H4") {
    arg_count(0);
    return 4;
  }
  if (key == "AEQ3") {
    arg_count(0);
    return 3;
  }
  if (key == "ADDR7") {
    arg_count(0);
    return 7;
  }
  if (key == "ID") {
    arg_count(0);
    return 1;
  }
  throw std::invalid_argument("unknown function family: " + std::string(name));
}

BooleanFunction by_name(std::string_view name, std::span<const int> params) {
  const std::string key = family_key(name);
  const auto arg_count = [&](std::size_t want) { expect_params(key, params, want); };
  if (key == "AND") { arg_count(1); return and_n(params[0]); }
  if (key == "OR") { arg_count(1); return or_n(params[0]); }
  if (key == "PAR") { arg_count(1); return parity(params[0]); }
  if (key == "MAJ") { arg_count(1); return majority(params[0]); }
  if (key == "MAJ4") { arg_count(0); return majority4(); }
  if (key == "TRIBES") { arg_count(2); return tribes(params[0], params[1]); }
  if (key == "ADDRESS") { arg_count(1); return address(params[0]); }
  if (key == "AEQ3") { arg_count(0); return all_equal3(); }
  if (key == "NISAN") { arg_count(1); return nisan(params[0]); }
  if (key == "G4") { arg_count(0); return g4(); }
  if (key == "H4") { arg_count(0); return h4(); }
  if (key == "ADDR7") { arg_count(0); return address7(); }
  if (key == "CONST0") { arg_count(1); return constant(params[0], false); }
  if (key == "CONST1") { arg_count(1); return constant(params[0], true); }
  if (key == "DICT") { arg_count(2); return dictator(params[0], params[1] - 1); }
  if (key == "ID") { arg_count(0); return dictator(1, 0); }
  throw std::invalid_argument("unknown function family: " + std::string(name));
}

}  // namespace boolcx::zoo
