#include "boolcx/subcube_table.hpp"

#include "boolcx/errors.hpp"

namespace boolcx {

SubcubeTable::SubcubeTable(const BooleanFunction& f, int cap) : arity_(f.arity()) {
  if (arity_ > cap) throw CapExceeded("subcube table arity", arity_, cap);
  pow3_.assign(static_cast<std::size_t>(arity_) + 1, 1);
  for (int i = 1; i <= arity_; ++i) pow3_[static_cast<std::size_t>(i)] = 3 * pow3_[static_cast<std::size_t>(i - 1)];
  const std::uint32_t total = pow3_[static_cast<std::size_t>(arity_)];
  status_.assign(total, 0);

  // Odometer over base-3 digits, tracking the fixed-point value for digit-free codes.
  std::vector<std::uint8_t> digit(static_cast<std::size_t>(arity_) + 1, 0);
  for (std::uint32_t t = 0; t < total; ++t) {
    int free_digit = -1;
    Input point = 0;
    for (int i = 0; i < arity_; ++i) {
      const auto d = digit[static_cast<std::size_t>(i)];
      if (d == 2) {
        free_digit = i;
        break;
      }
      if (d == 1) point |= Input{1} << i;
    }
    if (free_digit < 0) {
      status_[t] = f(point) ? 1 : 0;
    } else {
      const std::uint8_t lo = status_[t - 2 * pow3_[static_cast<std::size_t>(free_digit)]];
      const std::uint8_t hi = status_[t - pow3_[static_cast<std::size_t>(free_digit)]];
      status_[t] = lo == hi ? lo : 2;
    }
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < 3) break;
      digit[i] = 0;
    }
  }
}

std::uint32_t SubcubeTable::encode(Input fixed, Input values) const {
  std::uint32_t code = 0;
  for (int i = 0; i < arity_; ++i) {
    const std::uint32_t d = ((fixed >> i) & 1U) ? ((values >> i) & 1U) : 2U;
    code += d * pow3_[static_cast<std::size_t>(i)];
  }
  return code;
}

}  // namespace boolcx
