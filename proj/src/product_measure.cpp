#include "boolcx/product_measure.hpp"

#include <stdexcept>

namespace boolcx {

ProductMeasure::ProductMeasure(Rational p) : p_(std::move(p)) {
  if (p_ < 0 || p_ > 1) throw std::invalid_argument("p must lie in [0,1], got " + p_.str());
}

ScaledMeasure::ScaledMeasure(const ProductMeasure& m, int n)
    : numerator_p(m.p().numerator()), denominator_p(m.p().denominator()) {
  const mpz_class complement = denominator_p - numerator_p;
  by_weight.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
  std::vector<mpz_class> a_pow(static_cast<std::size_t>(n) + 1, mpz_class(1));
  std::vector<mpz_class> c_pow(static_cast<std::size_t>(n) + 1, mpz_class(1));
  for (int k = 1; k <= n; ++k) {
    a_pow[static_cast<std::size_t>(k)] = a_pow[static_cast<std::size_t>(k - 1)] * numerator_p;
    c_pow[static_cast<std::size_t>(k)] = c_pow[static_cast<std::size_t>(k - 1)] * complement;
  }
  for (int k = 0; k <= n; ++k) {
    by_weight[static_cast<std::size_t>(k)] =
        a_pow[static_cast<std::size_t>(k)] * c_pow[static_cast<std::size_t>(n - k)];
  }
  mpz_pow_ui(denominator.get_mpz_t(), denominator_p.get_mpz_t(), static_cast<unsigned long>(n));
}

Rational ScaledMeasure::expectation(std::span<const int> values) const {
  // Group by Hamming weight first so that the big-number work is O(n) multiplications.
  const std::size_t n = by_weight.size() - 1;
  std::vector<long long> per_weight(n + 1, 0);
  for (Input x = 0; x < values.size(); ++x) per_weight[static_cast<std::size_t>(weight(x))] += values[x];
  mpz_class total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    total += mpz_class(static_cast<long>(per_weight[k])) * by_weight[k];
  }
  return Rational(total, denominator);
}

Rational point_probability(const ProductMeasure& m, Input x, int n) {
  const int ones = weight(x & full_mask(n));
  return pow(m.p(), static_cast<unsigned>(ones)) * pow(Rational(1) - m.p(), static_cast<unsigned>(n - ones));
}

Rational point_probability(const ProductMeasure& m, std::span<const int> x) {
  return point_probability(m, pack_input(x), static_cast<int>(x.size()));
}

Rational output_probability(const BooleanFunction& f, const ProductMeasure& m) {
  std::vector<int> indicator(f.size());
  for (Input x = 0; x < f.size(); ++x) indicator[x] = f(x) ? 1 : 0;
  return ScaledMeasure(m, f.arity()).expectation(indicator);
}

Rational variance(const BooleanFunction& f, const ProductMeasure& m) {
  const Rational g = output_probability(f, m);
  return g * (Rational(1) - g);
}

}  // namespace boolcx
