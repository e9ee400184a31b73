#pragma once

#include <span>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/rational.hpp"

namespace boolcx {

// The product measure on {0,1}^n where every bit is 1 with probability p.
class ProductMeasure {
 public:
  explicit ProductMeasure(Rational p);

  [[nodiscard]] const Rational& p() const { return p_; }
  [[nodiscard]] bool degenerate() const { return p_ == 0 || p_ == 1; }

  friend bool operator==(const ProductMeasure&, const ProductMeasure&) = default;

 private:
  Rational p_;
};

// Integer weights for the measure on n bits: with p = a/b, the point x has
// probability by_weight[|x|] / denominator where by_weight[k] = a^k (b-a)^(n-k)
// and denominator = b^n.
struct ScaledMeasure {
  mpz_class numerator_p;    // a
  mpz_class denominator_p;  // b
  mpz_class denominator;    // b^n
  std::vector<mpz_class> by_weight;

  ScaledMeasure(const ProductMeasure& m, int n);
  [[nodiscard]] const mpz_class& mass(Input x) const { return by_weight[static_cast<std::size_t>(weight(x))]; }
  // Exact sum of values[x]·mass(x) divided by the denominator.
  [[nodiscard]] Rational expectation(std::span<const int> values) const;
};

[[nodiscard]] Rational point_probability(const ProductMeasure& m, Input x, int n);
[[nodiscard]] Rational point_probability(const ProductMeasure& m, std::span<const int> x);
[[nodiscard]] Rational output_probability(const BooleanFunction& f, const ProductMeasure& m);
[[nodiscard]] Rational variance(const BooleanFunction& f, const ProductMeasure& m);

}  // namespace boolcx
