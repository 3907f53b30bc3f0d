#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "ktuple/primes.hpp"

using namespace ktuple;

namespace {

// Independent oracle: trial division.
bool trial_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string fresh_dir(const char* tag) {
  auto d = std::filesystem::temp_directory_path() /
           (std::string("ktuple-test-") + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d.string();
}

}  // namespace

TEST_CASE("sieve(30) yields the hand-checked prime list") {
  auto t = PrimeTable::sieve(30);
  CHECK(t.primes_upto(30) ==
        std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("sieve agrees with trial division up to 1e5; pi(1e5) = 9592") {
  auto t = PrimeTable::sieve(100000);
  for (u64 n = 0; n <= 1000; ++n)
    if (n >= 2) CHECK(t.is_prime(n) == trial_is_prime(n));
  // spot-check the rest on a fixed random sample
  std::mt19937_64 rng(42);
  for (int i = 0; i < 3000; ++i) {
    const u64 n = 2 + rng() % 99999;
    CHECK(t.is_prime(n) == trial_is_prime(n));
  }
  CHECK(t.count_primes(100000) == 9592);
}

TEST_CASE("randomized primality oracle at 1e6") {
  auto t = PrimeTable::sieve(1000000);
  CHECK(t.count_primes(1000000) == 78498);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const u64 n = 2 + rng() % 999999;
    CHECK(t.is_prime(n) == trial_is_prime(n));
  }
}

TEST_CASE("theta basics") {
  auto t = PrimeTable::sieve(1000000);
  CHECK(t.theta(1) == 0.0);
  const double four_terms = std::log(2.) + std::log(3.) + std::log(5.) + std::log(7.);
  CHECK(t.theta(10) == doctest::Approx(four_terms).epsilon(1e-15));
  // PNT sanity band measured from the computed value
  const double v = t.theta(1000000);
  CHECK(std::abs(v / 1e6 - 1.0) < 0.01);
  CHECK_THROWS_AS((void)t.theta(2000000), ContractError);
}

TEST_CASE("theta(x)/x approaches 1 monotonically over decades") {
  auto t = PrimeTable::sieve(10000000);
  double prev = 10;
  for (u64 x : {u64(10000), u64(100000), u64(1000000), u64(10000000)}) {
    const double dev = std::abs(t.theta(x) / double(x) - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("theta_progression examples and partition identity") {
  auto t = PrimeTable::sieve(100000);
  // q = 1 reduces to theta
  CHECK(t.theta_progression(5000, 1, 0) == doctest::Approx(t.theta(5000)).epsilon(1e-15));
  // enumerate primes <= 100 congruent to 1 mod 4
  double expect = 0;
  for (u64 p : {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}) expect += std::log(double(p));
  CHECK(t.theta_progression(100, 4, 1) == doctest::Approx(expect).epsilon(1e-14));
  // partition over residues
  for (u64 q : {2, 3, 7, 12}) {
    double s = 0;
    for (u64 a = 0; a < q; ++a) s += t.theta_progression(100000, q, a);
    const double th = t.theta(100000);
    CHECK(std::abs(s - th) <= 1e-9 * th);
  }
}

TEST_CASE("cache round-trip and monotone extension") {
  const auto dir = fresh_dir("primes");
  SieveOptions o;
  o.cache_dir = dir;
  o.block_bits = 1u << 14;  // small blocks so extension crosses several
  auto t1 = PrimeTable::sieve(200000, o);
  auto t2 = PrimeTable::sieve(200000, o);  // reload from cache
  CHECK(t1.words() == t2.words());
  CHECK(t1.primes_upto(200000) == t2.primes_upto(200000));

  auto t3 = PrimeTable::sieve(500000, o);  // extends the cached table
  for (u64 n = 2; n <= 5000; ++n) CHECK(t3.is_prime(n) == t1.is_prime(n));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = 2 + rng() % 199999;
    CHECK(t3.is_prime(n) == t1.is_prime(n));
  }
  CHECK(t3.count_primes(500000) == 41538);

  auto t4 = PrimeTable::sieve(100000, o);  // prefix reuse of the larger cache
  CHECK(t4.count_primes(100000) == 9592);
  std::filesystem::remove_all(dir);
}

TEST_CASE("memory budget produces a resource error naming the budget") {
  SieveOptions o;
  o.memory_budget = 1024;
  try {
    (void)PrimeTable::sieve(10000000, o);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("1024") != std::string::npos);
  }
}

TEST_CASE("parallel sieve equals single-threaded sieve") {
  SieveOptions one, many;
  one.threads = 1;
  many.threads = 4;
  one.block_bits = many.block_bits = 1u << 14;
  auto a = PrimeTable::sieve(300000, one);
  auto b = PrimeTable::sieve(300000, many);
  CHECK(a.words() == b.words());
}
