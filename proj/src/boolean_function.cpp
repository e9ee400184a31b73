#include "boolcx/boolean_function.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "boolcx/errors.hpp"

namespace boolcx {

Input pack_input(std::span<const int> bits) {
  if (bits.size() > static_cast<std::size_t>(kHardArityLimit)) {
    throw std::invalid_argument("input vector too long");
  }
  Input x = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("input entries must be 0 or 1");
    if (bits[i] == 1) x |= Input{1} << i;
  }
  return x;
}

std::vector<int> unpack_input(Input x, int n) {
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = static_cast<int>((x >> i) & 1U);
  return bits;
}

BooleanFunction::BooleanFunction(int arity, int cap) : arity_(arity) {
  if (arity < 0) throw std::invalid_argument("negative arity");
  const int limit = cap < kHardArityLimit ? cap : kHardArityLimit;
  if (arity > limit) throw CapExceeded("truth-table arity", arity, limit);
  words_.assign((size() + 63) / 64, 0);
}

BooleanFunction BooleanFunction::constant(int arity, bool value, int cap) {
  BooleanFunction f(arity, cap);
  if (value) {
    for (Input x = 0; x < f.size(); ++x) f.set(x, true);
  }
  return f;
}

BooleanFunction BooleanFunction::from_ones(int arity, std::span<const Input> ones, int cap) {
  BooleanFunction f(arity, cap);
  for (Input x : ones) {
    if (x >= f.size()) throw std::invalid_argument("input outside the cube");
    f.set(x, true);
  }
  return f;
}

bool BooleanFunction::evaluate(std::span<const int> x) const {
  if (x.size() != static_cast<std::size_t>(arity_)) {
    throw std::invalid_argument("input length " + std::to_string(x.size()) + " does not match arity " +
                                std::to_string(arity_));
  }
  return (*this)(pack_input(x));
}

void BooleanFunction::set(Input x, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (value) {
    words_[x >> 6] |= bit;
  } else {
    words_[x >> 6] &= ~bit;
  }
}

std::size_t BooleanFunction::count_ones() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BooleanFunction::is_constant() const {
  const std::size_t ones = count_ones();
  return ones == 0 || ones == size();
}

BooleanFunction BooleanFunction::negated() const {
  BooleanFunction g = *this;
  for (Input x = 0; x < size(); ++x) g.set(x, !(*this)(x));
  return g;
}

Input merge(const Restriction& r, Input free_input, int n) {
  Input x = r.values;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if ((r.assigned >> i) & 1U) continue;
    if ((free_input >> k) & 1U) x |= Input{1} << i;
    ++k;
  }
  return x;
}

BooleanFunction restrict(const BooleanFunction& f, const Restriction& r) {
  const int n = f.arity();
  if (!r.valid() || (r.assigned & ~full_mask(n)) != 0) {
    throw std::invalid_argument("restriction does not fit the function");
  }
  const int free_bits = n - weight(r.assigned);
  return BooleanFunction::from_predicate(free_bits, [&](Input y) { return f(merge(r, y, n)); },
                                         kHardArityLimit);
}

BooleanFunction compose(const BooleanFunction& f, const BooleanFunction& g, int cap) {
  const int n = f.arity();
  const int m = g.arity();
  const long total = static_cast<long>(n) * m;
  if (total > cap) throw CapExceeded("composed arity", total, cap);
  const Input block = full_mask(m);
  return BooleanFunction::from_predicate(
      static_cast<int>(total),
      [&](Input x) {
        Input y = 0;
        for (int i = 0; i < n; ++i) {
          if (g((x >> (i * m)) & block)) y |= Input{1} << i;
        }
        return f(y);
      },
      cap);
}

BooleanFunction xor_parity(const BooleanFunction& f, int k, int cap) {
  if (k < 0) throw std::invalid_argument("negative parity width");
  const int n = f.arity();
  const long total = static_cast<long>(n) + k;
  if (total > cap) throw CapExceeded("xor arity", total, cap);
  const Input low = full_mask(n);
  return BooleanFunction::from_predicate(
      static_cast<int>(total), [&](Input x) { return f(x & low) != ((weight(x >> n) & 1) == 1); }, cap);
}

BooleanFunction iterate(const BooleanFunction& f, int k, int cap) {
  if (k < 1) throw std::invalid_argument("iteration count must be at least 1");
  long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= f.arity();
    if (total > cap) throw CapExceeded("iterated arity", total, cap);
  }
  BooleanFunction result = f;
  for (int i = 1; i < k; ++i) result = compose(f, result, cap);
  return result;
}

bool is_monotone(const BooleanFunction& f) {
  const int n = f.arity();
  for (Input x = 0; x < f.size(); ++x) {
    if (!f(x)) continue;
    for (int i = 0; i < n; ++i) {
      const Input up = x | (Input{1} << i);
      if (up != x && !f(up)) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> multilinear_coefficients(const BooleanFunction& f) {
  std::vector<std::int64_t> c(f.size());
  for (Input x = 0; x < f.size(); ++x) c[x] = f(x) ? 1 : 0;
  for (int i = 0; i < f.arity(); ++i) {
    const Input bit = Input{1} << i;
    for (Input s = 0; s < f.size(); ++s) {
      if (s & bit) c[s] -= c[s ^ bit];
    }
  }
  return c;
}

BooleanFunction from_multilinear(int arity, std::span<const std::int64_t> coefficients) {
  BooleanFunction f(arity, kHardArityLimit);
  if (coefficients.size() != f.size()) throw std::invalid_argument("coefficient count mismatch");
  std::vector<std::int64_t> v(coefficients.begin(), coefficients.end());
  for (int i = 0; i < arity; ++i) {
    const Input bit = Input{1} << i;
    for (Input s = 0; s < f.size(); ++s) {
      if (s & bit) v[s] += v[s ^ bit];
    }
  }
  for (Input x = 0; x < f.size(); ++x) {
    if (v[x] != 0 && v[x] != 1) throw std::invalid_argument("polynomial is not Boolean on the cube");
    f.set(x, v[x] == 1);
  }
  return f;
}

int degree(const BooleanFunction& f) {
  const auto c = multilinear_coefficients(f);
  int d = 0;
  for (Input s = 0; s < c.size(); ++s) {
    if (c[s] != 0 && weight(s) > d) d = weight(s);
  }
  return d;
}

std::int64_t edge_boundary(const BooleanFunction& f) {
  std::int64_t count = 0;
  for (Input x = 0; x < f.size(); ++x) {
    for (int i = 0; i < f.arity(); ++i) {
      const Input y = x | (Input{1} << i);
      if (y != x && f(x) != f(y)) ++count;
    }
  }
  return count;
}

std::string to_text(const BooleanFunction& f) {
  static constexpr char kHex[] = "0123456789abcdef";
  const std::size_t digits = f.size() < 4 ? 1 : f.size() / 4;
  std::string hex(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t x = d * 4 + b;
      if (x < f.size() && f(static_cast<Input>(x))) nibble |= 1U << b;
    }
    hex[digits - 1 - d] = kHex[nibble];
  }
  return "n=" + std::to_string(f.arity()) + "\n" + hex + "\n";
}

BooleanFunction from_text(std::string_view text, int cap) {
  std::istringstream in{std::string(text)};
  std::string header;
  std::string hex;
  if (!std::getline(in, header) || header.rfind("n=", 0) != 0) {
    throw std::invalid_argument("truth table must start with a line n=<arity>");
  }
  int arity = 0;
  try {
    std::size_t used = 0;
    arity = std::stoi(header.substr(2), &used);
    if (2 + used != header.size() && header.find_first_not_of(" \t\r", 2 + used) != std::string::npos) {
      throw std::invalid_argument("trailing characters");
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed arity line: " + header);
  }
  if (!(in >> hex)) throw std::invalid_argument("truth table is missing its hex line");
  BooleanFunction f(arity, cap);
  const std::size_t n_digits = hex.size();
  for (std::size_t d = 0; d < n_digits; ++d) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[n_digits - 1 - d])));
    unsigned nibble = 0;
    if (ch >= '0' && ch <= '9') {
      nibble = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = static_cast<unsigned>(ch - 'a' + 10);
    } else {
      throw std::invalid_argument("invalid hex digit in truth table");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if (!((nibble >> b) & 1U)) continue;
      const std::size_t x = d * 4 + b;
      if (x >= f.size()) throw std::invalid_argument("truth table has bits beyond 2^n entries");
      f.set(static_cast<Input>(x), true);
    }
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("unexpected trailing content in truth table");
  return f;
}

BooleanFunction read_truth_table(const std::string& path, int cap) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open truth table file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str(), cap);
}

void write_truth_table(const std::string& path, const BooleanFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write truth table file " + path);
  out << to_text(f);
}

}  // namespace boolcx
