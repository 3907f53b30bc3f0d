#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ktuple/kernels.hpp"

using namespace ktuple;
namespace kd = ktuple::kernels::detail;

TEST_CASE("popcount scalar vs avx2 on random buffers") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = rng() % 500;
    std::vector<uint64_t> w(n);
    for (auto& x : w) x = rng();
    CHECK(kd::popcount_words_scalar(w.data(), n) ==
          kd::popcount_words_avx2(w.data(), n));
  }
}

TEST_CASE("and_shift_popcount matches a direct bit loop, scalar and avx2") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t nbits = 64 + rng() % 4000;
    std::vector<uint64_t> bits((nbits + 63) / 64, 0);
    for (auto& x : bits) x = rng();
    std::vector<uint32_t> shifts = {0};
    const size_t k = 2 + rng() % 4;
    uint32_t s = 0;
    for (size_t j = 1; j < k; ++j) shifts.push_back(s += 1 + rng() % 9);
    if (shifts.back() >= nbits) continue;

    uint64_t expect = 0;
    for (size_t pos = 0; pos + shifts.back() < nbits; ++pos) {
      bool all = true;
      for (uint32_t sh : shifts) {
        const size_t b = pos + sh;
        if (!((bits[b / 64] >> (b % 64)) & 1ULL)) { all = false; break; }
      }
      expect += all;
    }
    CHECK(kd::and_shift_popcount_scalar(bits.data(), nbits, shifts.data(), k) == expect);
    CHECK(kd::and_shift_popcount_avx2(bits.data(), nbits, shifts.data(), k) == expect);
  }
}

TEST_CASE("phase_gather_sum scalar vs avx2 within 1e-12") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const uint32_t q = 3 + rng() % 997;
    std::vector<double> re(q), im(q);
    for (uint32_t j = 0; j < q; ++j) {
      const double ang = 2.0 * std::numbers::pi * j / q;
      re[j] = std::cos(ang);
      im[j] = std::sin(ang);
    }
    const uint32_t base = rng() % q, step = rng() % q;
    const uint32_t count = 1 + rng() % (3 * q);
    double r1 = 0, i1 = 0, r2 = 0, i2 = 0;
    kd::phase_gather_sum_scalar(re.data(), im.data(), q, base, step, count, &r1, &i1);
    kd::phase_gather_sum_avx2(re.data(), im.data(), q, base, step, count, &r2, &i2);
    CHECK(std::abs(r1 - r2) <= 1e-12 * (1.0 + std::abs(r1)));
    CHECK(std::abs(i1 - i2) <= 1e-12 * (1.0 + std::abs(i1)));
  }
}

TEST_CASE("runtime dispatch reports a backend and can be forced to scalar") {
  CHECK((kernels::backend_name() == std::string("avx2") ||
         kernels::backend_name() == std::string("scalar")));
  kernels::force_backend(kernels::Backend::Scalar);
  CHECK(kernels::backend_name() == std::string("scalar"));
  std::vector<uint64_t> w = {0xffffULL, 0x1ULL};
  CHECK(kernels::popcount_words(w.data(), 2) == 17);
  kernels::reset_backend();
}
