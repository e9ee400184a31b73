#pragma once

#include <gmpxx.h>

#include <cstdint>

// Conversions between GMP integers and the compiler's 128-bit integer, used by the
// dynamic programs that run in fixed width whenever their values provably fit.
namespace boolcx::detail {

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

inline Int128 to_int128(const mpz_class& v) {
  const mpz_class magnitude = abs(v);
  const mpz_class low_mask = (mpz_class(1) << 64) - 1;
  const mpz_class low = magnitude & low_mask;
  const mpz_class high = magnitude >> 64;
  const auto lo = static_cast<UInt128>(mpz_get_ui(low.get_mpz_t()));
  const auto hi = static_cast<UInt128>(mpz_get_ui(high.get_mpz_t()));
  const auto u = (hi << 64) | lo;
  return sgn(v) < 0 ? -static_cast<Int128>(u) : static_cast<Int128>(u);
}

inline mpz_class to_mpz(Int128 v) {
  const bool negative = v < 0;
  const auto u = negative ? static_cast<UInt128>(-v) : static_cast<UInt128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class result = (hi << 64) + lo;
  return negative ? mpz_class(-result) : result;
}

template <class Int>
Int from_mpz(const mpz_class& v) {
  if constexpr (std::is_same_v<Int, mpz_class>) {
    return v;
  } else {
    return to_int128(v);
  }
}

template <class Int>
mpz_class as_mpz(const Int& v) {
  if constexpr (std::is_same_v<Int, mpz_class>) {
    return v;
  } else {
    return to_mpz(v);
  }
}

// Values under 2^120 leave headroom in Int128 for a few additions.
inline bool fits_int128(const mpz_class& bound) { return mpz_sizeinbase(bound.get_mpz_t(), 2) < 120; }

}  // namespace boolcx::detail
