#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boolcx {

// An input x in {0,1}^n packed so that bit i-1 of the word holds x_i.
// The same word is the truth-table index of x.
using Input = std::uint32_t;

inline constexpr int kDefaultArityCap = 24;
inline constexpr int kHardArityLimit = 30;

[[nodiscard]] inline int weight(Input x) { return std::popcount(x); }
[[nodiscard]] inline Input full_mask(int n) { return n >= 32 ? ~Input{0} : (Input{1} << n) - 1; }

// Packs an explicit 0/1 vector (x_1 first).
[[nodiscard]] Input pack_input(std::span<const int> bits);
[[nodiscard]] std::vector<int> unpack_input(Input x, int n);

class BooleanFunction {
 public:
  // The constant-0 function on zero bits.
  BooleanFunction() : BooleanFunction(0) {}
  // The constant-0 function on `arity` bits; arities above `cap` are rejected.
  explicit BooleanFunction(int arity, int cap = kDefaultArityCap);

  template <class Predicate>
  static BooleanFunction from_predicate(int arity, Predicate&& pred, int cap = kDefaultArityCap) {
    BooleanFunction f(arity, cap);
    const Input end = static_cast<Input>(f.size());
    for (Input x = 0; x < end; ++x) {
      if (pred(x)) f.set(x, true);
    }
    return f;
  }

  static BooleanFunction constant(int arity, bool value, int cap = kDefaultArityCap);
  static BooleanFunction from_ones(int arity, std::span<const Input> ones, int cap = kDefaultArityCap);

  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] std::size_t size() const { return std::size_t{1} << arity_; }

  [[nodiscard]] bool operator()(Input x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  // Checked evaluation on an explicit vector of length arity().
  [[nodiscard]] bool evaluate(std::span<const int> x) const;

  void set(Input x, bool value);

  [[nodiscard]] std::size_t count_ones() const;
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] BooleanFunction negated() const;

  friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) = default;

 private:
  int arity_ = 0;
  std::vector<std::uint64_t> words_;
};

// A partial assignment: bits in `assigned` are fixed to the matching bits of `values`.
struct Restriction {
  Input assigned = 0;
  Input values = 0;

  [[nodiscard]] bool valid() const { return (values & ~assigned) == 0; }
  friend bool operator==(const Restriction&, const Restriction&) = default;
};

// Subfunction on the unassigned bits, kept in increasing index order.
[[nodiscard]] BooleanFunction restrict(const BooleanFunction& f, const Restriction& r);
// Places the free-bit input `free_input` into the unassigned positions of r.
[[nodiscard]] Input merge(const Restriction& r, Input free_input, int n);

// f∘g on n·m bits: block i (bits i·m .. i·m+m-1) of the input feeds input i of f through g.
[[nodiscard]] BooleanFunction compose(const BooleanFunction& f, const BooleanFunction& g,
                                      int cap = kDefaultArityCap);
// f(x) XOR y_1 XOR ... XOR y_k, with the k parity bits placed after the bits of f.
[[nodiscard]] BooleanFunction xor_parity(const BooleanFunction& f, int k, int cap = kDefaultArityCap);
// k-fold composition of f with itself.
[[nodiscard]] BooleanFunction iterate(const BooleanFunction& f, int k, int cap = kDefaultArityCap);

[[nodiscard]] bool is_monotone(const BooleanFunction& f);

// Coefficients c_S of the multilinear polynomial, indexed by the subset mask S.
[[nodiscard]] std::vector<std::int64_t> multilinear_coefficients(const BooleanFunction& f);
// Inverse of multilinear_coefficients; the values must be 0/1 on the cube.
[[nodiscard]] BooleanFunction from_multilinear(int arity, std::span<const std::int64_t> coefficients);
[[nodiscard]] int degree(const BooleanFunction& f);

// Number of hypercube edges whose endpoints get different values.
[[nodiscard]] std::int64_t edge_boundary(const BooleanFunction& f);

// Text form: "n=<arity>\n<hex>\n", least significant bit of the hex number is index 0.
[[nodiscard]] std::string to_text(const BooleanFunction& f);
[[nodiscard]] BooleanFunction from_text(std::string_view text, int cap = kDefaultArityCap);
[[nodiscard]] BooleanFunction read_truth_table(const std::string& path, int cap = kDefaultArityCap);
void write_truth_table(const std::string& path, const BooleanFunction& f);

}  // namespace boolcx
