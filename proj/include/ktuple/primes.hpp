#pragma once
// Segmented prime sieve over odd numbers with an on-disk cache, plus the
// Chebyshev sums theta(x) and theta(x; q, a) that back all empirical counts.

#include <cmath>
#include <string>
#include <vector>

#include "ktuple/common.hpp"
#include "ktuple/kernels.hpp"

namespace ktuple {

struct SieveOptions {
  std::string cache_dir;              // empty = no cache
  u64 memory_budget = u64(2) << 30;   // bytes
  unsigned threads = 0;               // 0 = hardware_concurrency
  u32 block_bits = u32(1) << 20;      // sieve segment size, in odd-number bits
};

// Bit j of the table stands for the odd number 2j+1; a set bit means
// composite (bit 0, the number 1, is always set). 2 is handled separately.
class PrimeTable {
 public:
  static PrimeTable sieve(u64 limit, const SieveOptions& opts = {});

  u64 limit() const { return limit_; }
  u32 block_bits() const { return block_bits_; }
  const std::vector<u64>& words() const { return words_; }

  bool is_prime(u64 n) const {
    require_range(n);
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    const u64 j = (n - 1) / 2;
    return !((words_[j >> 6] >> (j & 63)) & 1ULL);
  }

  // pi(x); x <= limit.
  u64 count_primes(u64 x) const;

  // Calls f(p) for every prime p in [lo, hi], increasing. hi <= limit.
  template <class F>
  void for_each_prime(u64 lo, u64 hi, F&& f) const {
    require_range(hi);
    if (lo <= 2 && hi >= 2) f(u64(2));
    if (hi < 3) return;
    u64 jlo = lo <= 3 ? 1 : (lo + (lo % 2 == 0 ? 1 : 0) - 1) / 2;
    const u64 jhi = (hi - 1) / 2;  // hi even -> hi-1 is the last odd
    u64 w = jlo >> 6;
    u64 mask = ~0ULL << (jlo & 63);
    const u64 wlast = jhi >> 6;
    for (; w <= wlast; ++w, mask = ~0ULL) {
      u64 bits = ~words_[w] & mask;
      if (w == wlast) bits &= (jhi & 63) == 63 ? ~0ULL : ((1ULL << ((jhi & 63) + 1)) - 1);
      while (bits) {
        const unsigned b = __builtin_ctzll(bits);
        bits &= bits - 1;
        f(((w << 6) + b) * 2 + 1);
      }
    }
  }

  std::vector<u64> primes_upto(u64 x) const {
    std::vector<u64> v;
    for_each_prime(2, x, [&](u64 p) { v.push_back(p); });
    return v;
  }

  // Sum of log p over p <= x, accumulated in increasing order with
  // Neumaier compensation (reproducible to ~1e-9 relative).
  double theta(u64 x) const;

  // Sum of log p over p <= x, p = a (mod q).
  double theta_progression(u64 x, u64 q, u64 a) const;

  void save_cache(const std::string& dir) const;

 private:
  PrimeTable() = default;
  void require_range(u64 x) const {
    if (x > limit_)
      throw ContractError("prime table query " + std::to_string(x) +
                          " exceeds sieved limit " + std::to_string(limit_));
  }
  void sieve_blocks(u64 first_bit, unsigned threads);

  u64 limit_ = 0;
  u32 block_bits_ = 0;
  std::vector<u64> words_;
  static bool load_cache_file(const std::string& path, u32 block_bits,
                              PrimeTable& out);
};

struct ChebyshevSum {
  u64 x = 0;
  double value = 0.0;
};

inline ChebyshevSum chebyshev(const PrimeTable& t, u64 x) {
  return ChebyshevSum{x, t.theta(x)};
}

// Neumaier-compensated accumulator; shared by every module that sums logs.
struct CompensatedSum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

}  // namespace ktuple
