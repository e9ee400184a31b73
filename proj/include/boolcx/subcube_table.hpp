#pragma once

#include <cstdint>
#include <vector>

#include "boolcx/boolean_function.hpp"

namespace boolcx {

// Constancy status of f on every subcube of {0,1}^n.
//
// A subcube is coded in base 3 with digit i equal to 0 or 1 when bit i is fixed to
// that value and 2 when bit i is free. Fixing a free digit i of code t to 0 gives
// t - 2·3^i and fixing it to 1 gives t - 3^i, so children always have smaller codes
// and the table fills in one increasing pass.
class SubcubeTable {
 public:
  enum class Status : std::uint8_t { zero = 0, one = 1, mixed = 2 };

  static constexpr int kDefaultCap = 16;

  explicit SubcubeTable(const BooleanFunction& f, int cap = kDefaultCap);

  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] std::uint32_t size() const { return static_cast<std::uint32_t>(status_.size()); }
  [[nodiscard]] Status status(std::uint32_t code) const { return static_cast<Status>(status_[code]); }
  [[nodiscard]] bool constant(std::uint32_t code) const { return status_[code] != 2; }
  [[nodiscard]] std::uint32_t pow3(int i) const { return pow3_[static_cast<std::size_t>(i)]; }

  // Code of the whole cube (every digit free).
  [[nodiscard]] std::uint32_t full_code() const { return size() - 1; }
  [[nodiscard]] std::uint32_t encode(Input fixed, Input values) const;
  [[nodiscard]] std::uint32_t point_code(Input x) const { return encode(full_mask(arity_), x); }

 private:
  int arity_;
  std::vector<std::uint32_t> pow3_;
  std::vector<std::uint8_t> status_;
};

}  // namespace boolcx
