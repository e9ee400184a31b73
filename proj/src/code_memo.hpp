#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace boolcx::detail {

inline constexpr std::uint32_t kDenseMemoLimit = 531441;  // 3^12

// Memo keyed by a packed state code: a flat array for small state spaces, a hash map otherwise.
template <class Entry>
class CodeMemo {
 public:
  explicit CodeMemo(std::uint32_t size, std::uint32_t dense_limit = kDenseMemoLimit) : dense_(size <= dense_limit) {
    if (dense_) {
      entries_.resize(size);
      seen_.assign(size, 0);
    }
  }

  const Entry* find(std::uint32_t code) const {
    if (dense_) return seen_[code] ? &entries_[code] : nullptr;
    auto it = map_.find(code);
    return it == map_.end() ? nullptr : &it->second;
  }

  void store(std::uint32_t code, Entry e) {
    if (dense_) {
      entries_[code] = std::move(e);
      seen_[code] = 1;
    } else {
      map_.insert_or_assign(code, std::move(e));
    }
  }

 private:
  bool dense_;
  std::vector<Entry> entries_;
  std::vector<std::uint8_t> seen_;
  std::unordered_map<std::uint32_t, Entry> map_;
};

}  // namespace boolcx::detail
