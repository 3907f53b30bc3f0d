#include "ktuple/logprime.hpp"

#include <algorithm>
#include <iterator>

namespace ktuple {

LogPrimeExpr operator*(const LogPrimeExpr& a, const LogPrimeExpr& b) {
  LogPrimeExpr out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      LogPrimeExpr::Mono m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

LogPrimeExpr LogPrimeExpr::pow(unsigned k) const {
  LogPrimeExpr acc(Rat(1));
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

LogPrimeExpr log_of(u64 n, const std::vector<std::pair<u32, u32>>& factorization) {
  LogPrimeExpr e;
  (void)n;
  for (auto [p, mult] : factorization)
    e += LogPrimeExpr::log_prime(p, Rat(long(mult)));
  return e;
}

}  // namespace ktuple
