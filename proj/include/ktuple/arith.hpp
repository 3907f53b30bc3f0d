#pragma once
// Multiplicative-function sequences over an initial segment 1..N, Dirichlet
// convolution, and exact verification of the identity toolkit:
// Lambda = mu*L, Lambda_k support, Vaughan, Heath-Brown, and Dirichlet's
// hyperbola method. Identity checks run in exact LogPrimeExpr arithmetic.

#include <cstdlib>
#include <string>
#include <vector>

#include "ktuple/common.hpp"
#include "ktuple/logprime.hpp"

namespace ktuple {

enum class ValueKind { Integer, Rational, Real, LogVector };

template <class T> struct ValueKindOf;
template <> struct ValueKindOf<long long> { static constexpr ValueKind value = ValueKind::Integer; };
template <> struct ValueKindOf<Rat> { static constexpr ValueKind value = ValueKind::Rational; };
template <> struct ValueKindOf<double> { static constexpr ValueKind value = ValueKind::Real; };
template <> struct ValueKindOf<LogPrimeExpr> { static constexpr ValueKind value = ValueKind::LogVector; };

// Dense sequence indexed 1..limit; index 0 unused.
template <class T>
class ArithSeq {
 public:
  explicit ArithSeq(u64 limit) : v_(limit + 1) {}
  u64 limit() const { return u64(v_.size()) - 1; }
  T& operator[](u64 n) { return v_[n]; }
  const T& operator[](u64 n) const { return v_[n]; }
  static constexpr ValueKind kind = ValueKindOf<T>::value;

 private:
  std::vector<T> v_;
};

namespace detail {
inline bool nonzero(long long v) { return v != 0; }
inline bool nonzero(const Rat& v) { return v != 0; }
inline bool nonzero(double v) { return v != 0.0; }
inline bool nonzero(const LogPrimeExpr& v) { return !v.is_zero(); }
inline void accumulate(long long& acc, long long a, long long b) { acc += a * b; }
inline void accumulate(Rat& acc, const Rat& a, const Rat& b) { acc += a * b; }
inline void accumulate(Rat& acc, long long a, const Rat& b) { acc += Rat(long(a)) * b; }
inline void accumulate(LogPrimeExpr& acc, long long a, const LogPrimeExpr& b) {
  LogPrimeExpr t = b;
  t *= Rat(long(a));
  acc += t;
}
inline void accumulate(LogPrimeExpr& acc, const Rat& a, const LogPrimeExpr& b) {
  LogPrimeExpr t = b;
  t *= a;
  acc += t;
}
inline void accumulate(LogPrimeExpr& acc, const LogPrimeExpr& a, const LogPrimeExpr& b) {
  acc += a * b;
}
template <class A, class B> struct ConvResult { using type = B; };
template <> struct ConvResult<long long, long long> { using type = long long; };
template <> struct ConvResult<Rat, long long> { using type = Rat; };
template <> struct ConvResult<LogPrimeExpr, long long> { using type = LogPrimeExpr; };
template <> struct ConvResult<LogPrimeExpr, Rat> { using type = LogPrimeExpr; };
}  // namespace detail

// (f*g)(n) = sum_{ab=n} f(a)g(b), exact, by divisor-pair enumeration.
template <class A, class B>
auto dirichlet_convolve(const ArithSeq<A>& f, const ArithSeq<B>& g)
    -> ArithSeq<typename detail::ConvResult<A, B>::type> {
  if (f.limit() != g.limit())
    throw ContractError("dirichlet_convolve: mismatched limits " +
                        std::to_string(f.limit()) + " vs " + std::to_string(g.limit()));
  const u64 n = f.limit();
  ArithSeq<typename detail::ConvResult<A, B>::type> out(n);
  for (u64 a = 1; a <= n; ++a) {
    if (!detail::nonzero(f[a])) continue;
    for (u64 b = 1; a * b <= n; ++b) {
      if (!detail::nonzero(g[b])) continue;
      detail::accumulate(out[a * b], f[a], g[b]);
    }
  }
  return out;
}

// Smallest-prime-factor table (linear sieve); backs factorization, mu, Lambda.
class FactorTable {
 public:
  explicit FactorTable(u64 limit);
  u64 limit() const { return spf_.size() - 1; }
  u32 spf(u64 n) const { return spf_[n]; }
  u32 largest_prime_factor(u64 n) const;
  int mobius(u64 n) const { return mu_[n]; }
  bool squarefree(u64 n) const;
  u64 euler_phi(u64 n) const;
  unsigned nu(u64 n) const;  // number of distinct prime factors
  std::vector<std::pair<u32, u32>> factor(u64 n) const;
  const std::vector<u32>& primes() const { return primes_; }

 private:
  std::vector<u32> spf_;
  std::vector<signed char> mu_;
  std::vector<u32> primes_;
};

// Threshold record for the truncated identities (both thresholds >= 1).
struct TruncationSpec {
  u64 U = 1;
  u64 V = 1;
};

// Sequence generators on 1..N.
ArithSeq<long long> one_seq(u64 n);
ArithSeq<long long> mobius_seq(const FactorTable& ft, u64 n);
ArithSeq<LogPrimeExpr> log_seq(const FactorTable& ft, u64 n);       // L(n) = log n
ArithSeq<LogPrimeExpr> lambda_seq(const FactorTable& ft, u64 n);    // von Mangoldt
ArithSeq<long long> tau_seq(u64 n);                                 // 1*1

// Keep entries with n < W (below) or n >= W (at_or_above); zero elsewhere.
template <class T>
ArithSeq<T> seq_below(const ArithSeq<T>& s, u64 w) {
  ArithSeq<T> out(s.limit());
  for (u64 i = 1; i <= s.limit() && i < w; ++i) out[i] = s[i];
  return out;
}
template <class T>
ArithSeq<T> seq_at_or_above(const ArithSeq<T>& s, u64 w) {
  ArithSeq<T> out(s.limit());
  for (u64 i = w; i <= s.limit(); ++i) out[i] = s[i];
  return out;
}

// Lambda_k(n) = sum_{d|n} mu(d) (log n/d)^k, exact degree-k polynomial.
LogPrimeExpr lambda_k(const FactorTable& ft, u64 n, unsigned k);

// The four Vaughan components; the identity is
//   Lambda_{>=V} = mu_{<U}*L - mu_{<U}*Lambda_{<V}*1 + mu_{>=U}*Lambda_{>=V}*1,
// and lambda_below completes Lambda = Lambda_{>=V} + Lambda_{<V}.
struct VaughanParts {
  ArithSeq<LogPrimeExpr> mu_lo_L;            // mu_{<U} * L
  ArithSeq<LogPrimeExpr> mu_lo_lambda_one;   // mu_{<U} * Lambda_{<V} * 1
  ArithSeq<LogPrimeExpr> mu_hi_lambda_one;   // mu_{>=U} * Lambda_{>=V} * 1
  ArithSeq<LogPrimeExpr> lambda_below;       // Lambda_{<V}
  VaughanParts(u64 n) : mu_lo_L(n), mu_lo_lambda_one(n), mu_hi_lambda_one(n), lambda_below(n) {}
};
VaughanParts vaughan_decompose(const FactorTable& ft, u64 n_range, const TruncationSpec& uv);

// Heath-Brown: for n <= U^k,
//   Lambda(n) = sum_{j=1}^{k} (-1)^{j-1} C(k,j) (mu_{<=U}^{*j} * L * 1^{*(j-1)})(n).
// Returns the right-hand side; contract error when n_range > U^k.
ArithSeq<LogPrimeExpr> heathbrown_decompose(const FactorTable& ft, u64 n_range,
                                            u64 U, unsigned k);

struct HyperbolaResult {
  Int divisor_sum;     // sum_{n<=x} tau(n), exact
  double average;      // divisor_sum / x
  double model_error;  // average - (log x + 2*gamma - 1)
};
// Dirichlet's hyperbola split at sqrt(x); x >= 4.
HyperbolaResult hyperbola_tau_average(u64 x);

// Uniform report for the CLI identity checks: which n failed, if any.
struct CheckReport {
  u64 checked = 0;
  std::vector<u64> failures;
  bool ok() const { return failures.empty(); }
};

CheckReport check_vaughan(const FactorTable& ft, u64 n_range, const TruncationSpec& uv);
CheckReport check_heathbrown(const FactorTable& ft, u64 n_range, u64 U, unsigned k);
CheckReport check_mu_log_is_lambda(const FactorTable& ft, u64 n_range);
CheckReport check_lambda_k_support(const FactorTable& ft, u64 n_range, unsigned k_max);

}  // namespace ktuple
