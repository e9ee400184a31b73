#include "boolcx/partialinfo.hpp"

#include <stdexcept>

#include "boolcx/dtree.hpp"
#include "boolcx/errors.hpp"
#include "boolcx/subcube_table.hpp"
#include "code_memo.hpp"
#include "wide_int.hpp"

namespace boolcx {

namespace {

constexpr std::uint32_t kDenseStateLimit = 390625;  // 5^8

void check_inputs(const BooleanFunction& f, const Rational& p, const Rational& kappa, const PartialInfoLimits& limits) {
  if (f.arity() > limits.max_arity) throw CapExceeded("partial-information arity", f.arity(), limits.max_arity);
  if (p <= Rational(1, 2) || p >= 1) throw std::invalid_argument("p must lie strictly between 1/2 and 1, got " + p.str());
  if (kappa < 0) throw std::invalid_argument("kappa must be nonnegative, got " + kappa.str());
}

// Expected numbers of coarse and full questions, both scaled by 2^u·b^(u+z) at a state with
// u unknown and z coarse-only bits, where p = a/b.
template <class Int>
class PkSolver {
 public:
  struct Counts {
    Int coarse{};
    Int full{};
  };

  // kappa = c/d
  PkSolver(const SubcubeTable& table, const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d)
      : table_(table),
        n_(table.arity()),
        a_(detail::from_mpz<Int>(a)),
        flip_(detail::from_mpz<Int>(b - a)),
        c_(detail::from_mpz<Int>(c)),
        d_minus_c_(detail::from_mpz<Int>(d - c)),
        memo_(pow5(n_), kDenseStateLimit) {
    for (int i = 0; i <= n_; ++i) pow5_.push_back(pow5(i));
    // scale_[u][k] = 2^u · b^k
    for (int u = 0; u <= n_; ++u) {
      std::vector<Int> row;
      for (int k = 0; k <= n_; ++k) {
        mpz_class v;
        mpz_pow_ui(v.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k));
        v <<= static_cast<mp_bitcnt_t>(u);
        row.push_back(detail::from_mpz<Int>(v));
      }
      scale_.push_back(std::move(row));
    }
  }

  Counts root() {
    return solve(0, table_.full_code(), n_, 0);
  }

 private:
  struct Entry {
    Counts counts;
  };

  static std::uint32_t pow5(int k) {
    std::uint32_t v = 1;
    for (int i = 0; i < k; ++i) v *= 5;
    return v;
  }

  Int value(const Counts& x) const { return c_ * x.coarse + d_minus_c_ * x.full; }

  // state: base-5 tags; xcode: subcube code of the full answers; u, z: counts of unknown and coarse-only bits.
  Counts solve(std::uint32_t state, std::uint32_t xcode, int u, int z) {
    if (table_.constant(xcode)) return {};
    if (const Entry* hit = memo_.find(state)) return hit->counts;
    const Int& scale = scale_[static_cast<std::size_t>(u)][static_cast<std::size_t>(u + z)];
    Counts best;
    Int best_value{};
    bool have = false;
    std::uint32_t rest = state;
    for (int i = 0; i < n_; ++i, rest /= 5) {
      const auto tag = static_cast<BitTag>(rest % 5);
      const std::uint32_t p5 = pow5_[static_cast<std::size_t>(i)];
      const std::uint32_t p3 = table_.pow3(i);
      Counts option;
      if (tag == BitTag::unknown) {
        const Counts zero = solve(state + p5, xcode, u - 1, z + 1);
        const Counts one = solve(state + 2 * p5, xcode, u - 1, z + 1);
        option.coarse = scale + zero.coarse + one.coarse;
        option.full = zero.full + one.full;
      } else if (tag == BitTag::coarse0 || tag == BitTag::coarse1) {
        const bool seen_one = tag == BitTag::coarse1;
        // Full answer 0 moves the digit from 2 to 0, full answer 1 from 2 to 1.
        const std::uint32_t to_zero = xcode - 2 * p3;
        const std::uint32_t to_one = xcode - p3;
        const Counts same = solve(state + 2 * p5, seen_one ? to_one : to_zero, u, z - 1);
        const Counts flip = solve(state + (seen_one ? 1 : 3) * p5, seen_one ? to_zero : to_one, u, z - 1);
        option.coarse = a_ * same.coarse + flip_ * flip.coarse;
        option.full = scale + a_ * same.full + flip_ * flip.full;
      } else {
        continue;
      }
      Int v = value(option);
      if (have) {
        if (v > best_value) continue;
        if (v == best_value && option.coarse - option.full >= best.coarse - best.full) continue;
      }
      best = std::move(option);
      best_value = std::move(v);
      have = true;
    }
    memo_.store(state, Entry{best});
    return best;
  }

  const SubcubeTable& table_;
  int n_;
  Int a_;
  Int flip_;
  Int c_;
  Int d_minus_c_;
  std::vector<std::uint32_t> pow5_;
  std::vector<std::vector<Int>> scale_;
  detail::CodeMemo<Entry> memo_;
};

template <class Int>
KappaCostLine run_solver(const SubcubeTable& table, const Rational& p, const Rational& kappa) {
  const int n = table.arity();
  const mpz_class b = p.denominator();
  PkSolver<Int> solver(table, p.numerator(), b, kappa.numerator(), kappa.denominator());
  const auto counts = solver.root();
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n));
  scale <<= static_cast<mp_bitcnt_t>(n);
  const mpz_class coarse = detail::as_mpz(counts.coarse);
  const mpz_class full = detail::as_mpz(counts.full);
  return KappaCostLine{Rational(full, scale), Rational(mpz_class(coarse - full), scale)};
}

}  // namespace

InfoState InfoState::decode(std::uint32_t code, int n) {
  InfoState s;
  for (int i = 0; i < n; ++i, code /= 5) s.tags.push_back(static_cast<BitTag>(code % 5));
  if (code != 0) throw std::invalid_argument("state code has more digits than bits");
  return s;
}

std::uint32_t InfoState::encode() const {
  std::uint32_t code = 0;
  for (auto it = tags.rbegin(); it != tags.rend(); ++it) code = code * 5 + static_cast<std::uint32_t>(*it);
  return code;
}

KappaCostLine pk_strategy_line(const BooleanFunction& f, const Rational& p, const Rational& kappa,
                               const PartialInfoLimits& limits) {
  check_inputs(f, p, kappa, limits);
  const int n = f.arity();
  const SubcubeTable table(f, limits.max_arity);
  // Counts stay below 2(n+1)·2^n·b^(n+1); the objective multiplies by |c| + |d - c|.
  mpz_class bound;
  mpz_pow_ui(bound.get_mpz_t(), p.denominator().get_mpz_t(), static_cast<unsigned long>(n + 1));
  bound <<= static_cast<mp_bitcnt_t>(n + 1);
  bound *= n + 1;
  bound *= mpz_class(abs(kappa.numerator()) + abs(mpz_class(kappa.denominator() - kappa.numerator())));
  if (detail::fits_int128(bound)) return run_solver<detail::Int128>(table, p, kappa);
  return run_solver<mpz_class>(table, p, kappa);
}

Rational pk_cost(const BooleanFunction& f, const Rational& p, const Rational& kappa, const PartialInfoLimits& limits) {
  return pk_strategy_line(f, p, kappa, limits).at(kappa);
}

Rational kappa_critical(const BooleanFunction& f, const Rational& p, const PartialInfoLimits& limits) {
  check_inputs(f, p, Rational(0), limits);
  const Rational classical = dist_cost(f, ProductMeasure(Rational(1, 2)), DtreeLimits{limits.max_arity});
  // Walk up the lower envelope: each optimal line below the classical cost stays below it
  // until it crosses, so the crossing point is a lower bound for the answer.
  Rational kappa = 0;
  while (true) {
    const KappaCostLine line = pk_strategy_line(f, p, kappa, limits);
    if (line.at(kappa) == classical) return kappa;
    if (line.beta == 0) throw std::logic_error("partial-information cost stays below the classical cost");
    kappa = (classical - line.alpha) / line.beta;
  }
}

Rational kappa0_bound(int n, const Rational& p) {
  if (n < 1) throw std::invalid_argument("kappa0 bound needs n >= 1");
  const Rational term = pow((Rational(1) - p) / Rational(2), static_cast<unsigned>(n)) / Rational(n);
  return Rational(1) / (Rational(1) + term);
}

}  // namespace boolcx
