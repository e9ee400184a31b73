#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "boolcx/boolean_function.hpp"

namespace boolcx::zoo {

[[nodiscard]] BooleanFunction and_n(int n);
[[nodiscard]] BooleanFunction or_n(int n);
[[nodiscard]] BooleanFunction parity(int n);
// Strict majority; n must be odd.
[[nodiscard]] BooleanFunction majority(int n);
// Majority on four bits with the tie broken by counting the first bit twice.
[[nodiscard]] BooleanFunction majority4();
// OR of `tribes` disjoint ANDs of `width` consecutive bits each.
[[nodiscard]] BooleanFunction tribes(int tribes, int width);
// m address bits (x_1 least significant) followed by 2^m data bits.
[[nodiscard]] BooleanFunction address(int m);
// 1 iff x_1 = x_2 = x_3.
[[nodiscard]] BooleanFunction all_equal3();
// 1 iff the weight is n/2 or n/2+1; n must be a positive multiple of 4.
[[nodiscard]] BooleanFunction nisan(int n);
// Four-bit function separating local witness and subcube partition costs.
[[nodiscard]] BooleanFunction g4();
// Four-bit function with an optimal subcube partition that no tree induces.
[[nodiscard]] BooleanFunction h4();
// x1^x2 when x5^x6^x7 = 1, else x3^x4.
[[nodiscard]] BooleanFunction address7();
[[nodiscard]] BooleanFunction constant(int n, bool value);
// x_{index+1} on n bits (index is 0-based).
[[nodiscard]] BooleanFunction dictator(int n, int index);

// Lookup by family name (case-insensitive), e.g. ("MAJ", {3}) or ("TRIBES", {2, 2}).
[[nodiscard]] BooleanFunction by_name(std::string_view name, std::span<const int> params);
[[nodiscard]] std::vector<std::string_view> family_names();
// Arity that by_name would produce, computed without building the table.
[[nodiscard]] std::int64_t family_arity(std::string_view name, std::span<const int> params);

}  // namespace boolcx::zoo
