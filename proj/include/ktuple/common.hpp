#pragma once
// Shared basics: error taxonomy, big-rational alias, a few constants.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace ktuple {

using u8  = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Exact rational / integer types (GMP-backed).
using Rat = mpq_class;
using Int = mpz_class;

// Precondition / argument-contract violations. CLI maps these to exit code 2.
struct ContractError : std::runtime_error {
  explicit ContractError(const std::string& m) : std::runtime_error(m) {}
};

// Work or memory beyond the configured budget. Exit code 2.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

inline double to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

inline Rat rat(long num, long den = 1) { Rat r(num, den); r.canonicalize(); return r; }

// Euler-Mascheroni constant, beyond double precision.
inline constexpr long double EULER_GAMMA =
    0.57721566490153286060651209008240243104L;

inline Int factorial(unsigned n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace ktuple
