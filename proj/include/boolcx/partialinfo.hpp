#pragma once

#include <cstdint>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/rational.hpp"

namespace boolcx {

// Partial-information query model under the uniform measure. Each bit starts unknown. A coarse
// question Z_i costs κ and reveals a fair coin Z_i. A full question X_i on a bit with known Z_i
// costs 1 - κ and reveals X_i, which equals Z_i with probability p. Only full answers count toward
// determining f. A classical query is a coarse question followed by a full one, at total cost 1.

enum class BitTag : std::uint8_t { unknown = 0, coarse0 = 1, coarse1 = 2, full0 = 3, full1 = 4 };

// Per-bit tags packed base 5, bit 1 in the lowest digit.
struct InfoState {
  std::vector<BitTag> tags;

  static InfoState initial(int n) { return InfoState{std::vector<BitTag>(static_cast<std::size_t>(n), BitTag::unknown)}; }
  static InfoState decode(std::uint32_t code, int n);
  [[nodiscard]] std::uint32_t encode() const;
  friend bool operator==(const InfoState&, const InfoState&) = default;
};

// Expected cost alpha + beta·κ of one strategy: alpha counts bits that end with a full answer,
// beta counts bits that end with only a coarse answer.
struct KappaCostLine {
  Rational alpha;
  Rational beta;

  [[nodiscard]] Rational at(const Rational& kappa) const { return alpha + beta * kappa; }
  friend bool operator==(const KappaCostLine&, const KappaCostLine&) = default;
};

struct PartialInfoLimits {
  int max_arity = 10;
};

// p must lie strictly between 1/2 and 1. κ must be nonnegative; values above 1 are accepted
// because the threshold bound can exceed 1 after a small offset.
[[nodiscard]] Rational pk_cost(const BooleanFunction& f, const Rational& p, const Rational& kappa,
                               const PartialInfoLimits& limits = {});
// Optimal strategy at κ, ties broken toward smaller beta and then toward the lower bit.
[[nodiscard]] KappaCostLine pk_strategy_line(const BooleanFunction& f, const Rational& p, const Rational& kappa,
                                             const PartialInfoLimits& limits = {});
// Least κ at which the model costs as much as ordinary querying under the uniform measure.
[[nodiscard]] Rational kappa_critical(const BooleanFunction& f, const Rational& p, const PartialInfoLimits& limits = {});
// 1 / (1 + (1/n)((1-p)/2)^n)
[[nodiscard]] Rational kappa0_bound(int n, const Rational& p);

}  // namespace boolcx
