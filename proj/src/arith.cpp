#include "ktuple/arith.hpp"

#include <algorithm>
#include <cmath>

namespace ktuple {

FactorTable::FactorTable(u64 limit) {
  spf_.assign(limit + 1, 0);
  mu_.assign(limit + 1, 0);
  if (limit >= 1) mu_[1] = 1;
  primes_.reserve(limit > 10 ? size_t(double(limit) / std::log(double(limit)) * 1.2) : 8);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = u32(i);
      mu_[i] = -1;
      primes_.push_back(u32(i));
    }
    for (u32 p : primes_) {
      const u64 v = u64(p) * i;
      if (p > spf_[i] || v > limit) break;
      spf_[v] = p;
      mu_[v] = (p == spf_[i]) ? 0 : -mu_[i];
    }
  }
}

u32 FactorTable::largest_prime_factor(u64 n) const {
  u32 best = 1;
  while (n > 1) {
    const u32 p = spf_[n];
    best = std::max(best, p);
    while (n % p == 0) n /= p;
  }
  return best;
}

bool FactorTable::squarefree(u64 n) const { return n >= 1 && mu_[n] != 0; }

u64 FactorTable::euler_phi(u64 n) const {
  u64 phi = 1;
  while (n > 1) {
    const u32 p = spf_[n];
    u64 pe = 1;
    while (n % p == 0) { n /= p; pe *= p; }
    phi *= pe - pe / p;
  }
  return phi;
}

unsigned FactorTable::nu(u64 n) const {
  unsigned c = 0;
  while (n > 1) {
    const u32 p = spf_[n];
    ++c;
    while (n % p == 0) n /= p;
  }
  return c;
}

std::vector<std::pair<u32, u32>> FactorTable::factor(u64 n) const {
  std::vector<std::pair<u32, u32>> f;
  while (n > 1) {
    const u32 p = spf_[n];
    u32 e = 0;
    while (n % p == 0) { n /= p; ++e; }
    f.emplace_back(p, e);
  }
  return f;
}

ArithSeq<long long> one_seq(u64 n) {
  ArithSeq<long long> s(n);
  for (u64 i = 1; i <= n; ++i) s[i] = 1;
  return s;
}

ArithSeq<long long> mobius_seq(const FactorTable& ft, u64 n) {
  ArithSeq<long long> s(n);
  for (u64 i = 1; i <= n; ++i) s[i] = ft.mobius(i);
  return s;
}

ArithSeq<LogPrimeExpr> log_seq(const FactorTable& ft, u64 n) {
  ArithSeq<LogPrimeExpr> s(n);
  for (u64 i = 2; i <= n; ++i) s[i] = log_of(i, ft.factor(i));
  return s;
}

ArithSeq<LogPrimeExpr> lambda_seq(const FactorTable& ft, u64 n) {
  ArithSeq<LogPrimeExpr> s(n);
  for (u32 p : ft.primes()) {
    for (u64 pe = p; pe <= n; pe *= p) {
      s[pe] = LogPrimeExpr::log_prime(p);
      if (pe > n / p) break;
    }
  }
  return s;
}

ArithSeq<long long> tau_seq(u64 n) {
  auto one = one_seq(n);
  return dirichlet_convolve(one, one);
}

LogPrimeExpr lambda_k(const FactorTable& ft, u64 n, unsigned k) {
  if (n < 1 || k < 1) throw ContractError("lambda_k: need n >= 1, k >= 1");
  const auto fact = ft.factor(n);
  const unsigned r = unsigned(fact.size());
  const LogPrimeExpr log_n = log_of(n, fact);
  LogPrimeExpr acc;
  // Only squarefree divisors d contribute; enumerate subsets of the primes.
  for (u32 mask = 0; mask < (1u << r); ++mask) {
    LogPrimeExpr term = log_n;
    int mu = 1;
    for (unsigned i = 0; i < r; ++i)
      if (mask & (1u << i)) {
        term -= LogPrimeExpr::log_prime(fact[i].first);
        mu = -mu;
      }
    LogPrimeExpr powed = term.pow(k);
    powed *= Rat(mu);
    acc += powed;
  }
  return acc;
}

VaughanParts vaughan_decompose(const FactorTable& ft, u64 n_range,
                               const TruncationSpec& uv) {
  if (uv.U < 1 || uv.V < 1) throw ContractError("vaughan: U,V must be >= 1");
  const u64 n = n_range;
  const auto mu = mobius_seq(ft, n);
  const auto mu_lo = seq_below(mu, uv.U);
  const auto mu_hi = seq_at_or_above(mu, uv.U);
  const auto L = log_seq(ft, n);
  const auto lam = lambda_seq(ft, n);
  const auto lam_lo = seq_below(lam, uv.V);
  const auto lam_hi = seq_at_or_above(lam, uv.V);
  const auto one = one_seq(n);

  VaughanParts parts(n);
  parts.mu_lo_L = dirichlet_convolve(mu_lo, L);
  parts.mu_lo_lambda_one = dirichlet_convolve(mu_lo, dirichlet_convolve(lam_lo, one));
  parts.mu_hi_lambda_one = dirichlet_convolve(mu_hi, dirichlet_convolve(lam_hi, one));
  parts.lambda_below = lam_lo;
  return parts;
}

ArithSeq<LogPrimeExpr> heathbrown_decompose(const FactorTable& ft, u64 n_range,
                                            u64 U, unsigned k) {
  if (k < 1) throw ContractError("heathbrown: k must be >= 1");
  long double cap = 1;  // overflow-safe U^k
  for (unsigned i = 0; i < k; ++i) cap *= (long double)U;
  if ((long double)n_range > cap)
    throw ContractError("heathbrown: n_range exceeds U^k");

  const u64 n = n_range;
  const auto mu = mobius_seq(ft, n);
  ArithSeq<long long> mu_le(n);
  for (u64 i = 1; i <= n && i <= U; ++i) mu_le[i] = mu[i];
  const auto L = log_seq(ft, n);
  const auto one = one_seq(n);

  ArithSeq<LogPrimeExpr> total(n);
  ArithSeq<long long> mu_pow = mu_le;   // mu_{<=U}^{*j}
  ArithSeq<LogPrimeExpr> ones_log = L;  // L * 1^{*(j-1)}
  for (unsigned j = 1; j <= k; ++j) {
    if (j > 1) {
      mu_pow = dirichlet_convolve(mu_pow, mu_le);
      ones_log = dirichlet_convolve(ones_log, one);
    }
    auto term = dirichlet_convolve(mu_pow, ones_log);
    Rat sign = Rat(binomial(k, j)) * ((j % 2 == 1) ? 1 : -1);
    for (u64 i = 1; i <= n; ++i) {
      if (term[i].is_zero()) continue;
      term[i] *= sign;
      total[i] += term[i];
    }
  }
  return total;
}

HyperbolaResult hyperbola_tau_average(u64 x) {
  if (x < 4) throw ContractError("hyperbola_tau_average: x must be >= 4");
  u64 s = u64(std::sqrt((double)x));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  Int sum = 0;
  for (u64 d = 1; d <= s; ++d) sum += Int(u64(x / d));
  sum *= 2;
  sum -= Int(s) * Int(s);

  HyperbolaResult r;
  r.divisor_sum = sum;
  r.average = mpz_get_d(sum.get_mpz_t()) / double(x);
  const long double model = std::log((long double)x) + 2 * EULER_GAMMA - 1;
  r.model_error = double((long double)r.average - model);
  return r;
}

namespace {
// Exact Lambda(n): log p on prime powers, 0 elsewhere.
LogPrimeExpr lambda_at(const FactorTable& ft, u64 n) {
  const auto f = ft.factor(n);
  if (f.size() == 1) return LogPrimeExpr::log_prime(f[0].first);
  return LogPrimeExpr();
}
}  // namespace

CheckReport check_vaughan(const FactorTable& ft, u64 n_range, const TruncationSpec& uv) {
  auto parts = vaughan_decompose(ft, n_range, uv);
  CheckReport rep;
  rep.checked = n_range;
  for (u64 n = 1; n <= n_range; ++n) {
    LogPrimeExpr lhs = lambda_at(ft, n);
    if (n < uv.V) lhs = LogPrimeExpr();  // Lambda_{>=V}
    LogPrimeExpr rhs = parts.mu_lo_L[n];
    rhs -= parts.mu_lo_lambda_one[n];
    rhs += parts.mu_hi_lambda_one[n];
    if (!(lhs == rhs)) rep.failures.push_back(n);
  }
  return rep;
}

CheckReport check_heathbrown(const FactorTable& ft, u64 n_range, u64 U, unsigned k) {
  auto rhs = heathbrown_decompose(ft, n_range, U, k);
  CheckReport rep;
  rep.checked = n_range;
  for (u64 n = 1; n <= n_range; ++n)
    if (!(lambda_at(ft, n) == rhs[n])) rep.failures.push_back(n);
  return rep;
}

CheckReport check_mu_log_is_lambda(const FactorTable& ft, u64 n_range) {
  const auto mu = mobius_seq(ft, n_range);
  const auto L = log_seq(ft, n_range);
  auto conv = dirichlet_convolve(mu, L);
  CheckReport rep;
  rep.checked = n_range;
  for (u64 n = 1; n <= n_range; ++n)
    if (!(conv[n] == lambda_at(ft, n))) rep.failures.push_back(n);
  return rep;
}

CheckReport check_lambda_k_support(const FactorTable& ft, u64 n_range, unsigned k_max) {
  CheckReport rep;
  for (unsigned k = 1; k <= k_max; ++k) {
    for (u64 n = 1; n <= n_range; ++n) {
      if (ft.nu(n) <= k) continue;
      ++rep.checked;
      if (!lambda_k(ft, n, k).is_zero()) rep.failures.push_back(n);
    }
  }
  return rep;
}

}  // namespace ktuple
