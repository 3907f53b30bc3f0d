#pragma once
// Exact formal polynomials in { log p : p prime } with rational coefficients.
// A monomial is a multiset of primes (sorted vector); the empty monomial is
// the rational constant 1. Degree-1 elements are the "log-prime vectors"
// that make Lambda = mu * L and its relatives exactly checkable; higher
// degrees carry Lambda_k and the k-fold convolution identities.

#include <cmath>
#include <map>
#include <vector>

#include "ktuple/common.hpp"

namespace ktuple {

class LogPrimeExpr {
 public:
  using Mono = std::vector<u32>;  // primes, ascending, with multiplicity

  LogPrimeExpr() = default;
  explicit LogPrimeExpr(const Rat& constant) {
    if (constant != 0) terms_[{}] = constant;
  }
  static LogPrimeExpr log_prime(u32 p, const Rat& coeff = 1) {
    LogPrimeExpr e;
    if (coeff != 0) e.terms_[{p}] = coeff;
    return e;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Mono, Rat>& terms() const { return terms_; }

  // Coefficient of log p in the degree-1 part.
  Rat coeff_of(u32 p) const {
    auto it = terms_.find(Mono{p});
    return it == terms_.end() ? Rat(0) : it->second;
  }

  LogPrimeExpr& operator+=(const LogPrimeExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LogPrimeExpr& operator-=(const LogPrimeExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  LogPrimeExpr& operator*=(const Rat& s) {
    if (s == 0) { terms_.clear(); return *this; }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend LogPrimeExpr operator+(LogPrimeExpr a, const LogPrimeExpr& b) { return a += b; }
  friend LogPrimeExpr operator-(LogPrimeExpr a, const LogPrimeExpr& b) { return a -= b; }
  friend LogPrimeExpr operator*(LogPrimeExpr a, const Rat& s) { return a *= s; }
  friend LogPrimeExpr operator*(const Rat& s, LogPrimeExpr a) { return a *= s; }

  friend LogPrimeExpr operator*(const LogPrimeExpr& a, const LogPrimeExpr& b);
  LogPrimeExpr pow(unsigned k) const;

  bool operator==(const LogPrimeExpr& o) const { return terms_ == o.terms_; }

  // Float evaluation; each log p in double, monomials multiplied out.
  double eval() const {
    double s = 0;
    for (const auto& [m, c] : terms_) {
      double prod = to_double(c);
      for (u32 p : m) prod *= std::log(double(p));
      s += prod;
    }
    return s;
  }

  void add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  std::map<Mono, Rat> terms_;
};

// log n as an exact integer combination of log p (prime factorization given).
LogPrimeExpr log_of(u64 n, const std::vector<std::pair<u32, u32>>& factorization);

}  // namespace ktuple
