#include "ktuple/primes.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <thread>

namespace ktuple {

namespace {

constexpr char kMagic[8] = {'K', 'T', 'L', 'P', 'R', 'I', 'M', 'E'};
constexpr u32 kVersion = 1;

void put_u32(std::ostream& os, u32 v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 4);
}
void put_u64(std::ostream& os, u64 v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 8);
}
bool get_u32(std::istream& is, u32& v) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
  v = 0;
  for (int i = 0; i < 4; ++i) v |= u32(b[i]) << (8 * i);
  return true;
}
bool get_u64(std::istream& is, u64& v) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
  return true;
}

std::string cache_path(const std::string& dir, u32 block_bits) {
  return dir + "/ktuple-primes.v" + std::to_string(kVersion) + ".b" +
         std::to_string(block_bits) + ".cache";
}

// Simple odd sieve for the base primes (p <= sqrt(limit)).
std::vector<u64> base_primes(u64 up_to) {
  std::vector<u64> ps;
  if (up_to < 3) return ps;
  const u64 n = (up_to - 1) / 2;  // bits for odds 3..up_to
  std::vector<u8> comp(n + 1, 0);
  for (u64 j = 1; j <= n; ++j) {
    const u64 p = 2 * j + 1;
    if (comp[j]) continue;
    ps.push_back(p);
    if (p * p > up_to) continue;
    for (u64 m = (p * p - 1) / 2; m <= n; m += p) comp[m] = 1;
  }
  return ps;
}

}  // namespace

void PrimeTable::sieve_blocks(u64 first_bit, unsigned threads) {
  const u64 nbits = (limit_ + 1) / 2;
  const auto bases = base_primes(static_cast<u64>(std::sqrt(double(limit_))) + 2);

  const u64 first_block = first_bit / block_bits_;
  const u64 nblocks = (nbits + block_bits_ - 1) / block_bits_;
  if (first_block >= nblocks) return;

  auto do_block = [&](u64 b) {
    const u64 lo = b * u64(block_bits_);
    const u64 hi = std::min(nbits, lo + block_bits_);
    if (b == 0) words_[0] |= 1ULL;  // 1 is not prime
    for (u64 p : bases) {
      // first odd multiple of p that is >= max(p^2, 2*lo+1)
      u64 m = p * p;
      const u64 n_lo = 2 * lo + 1;
      if (m < n_lo) {
        u64 q = (n_lo + p - 1) / p;
        if (q % 2 == 0) ++q;
        m = q * p;
      }
      if (m > limit_) continue;
      for (u64 j = (m - 1) / 2; j < hi; j += p) {
        words_[j >> 6] |= 1ULL << (j & 63);
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || nblocks - first_block <= 1) {
    for (u64 b = first_block; b < nblocks; ++b) do_block(b);
    return;
  }
  // Blocks never share words when block_bits is a multiple of 64, so the
  // block partition is race-free.
  std::vector<std::thread> pool;
  std::atomic<u64> next{first_block};
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const u64 b = next.fetch_add(1);
        if (b >= nblocks) return;
        do_block(b);
      }
    });
  for (auto& th : pool) th.join();
}

bool PrimeTable::load_cache_file(const std::string& path, u32 block_bits,
                                 PrimeTable& out) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) return false;
  u32 ver = 0, bb = 0;
  u64 lim = 0;
  if (!get_u32(is, ver) || ver != kVersion) return false;
  if (!get_u64(is, lim)) return false;
  if (!get_u32(is, bb) || bb != block_bits) return false;
  const u64 nbits = (lim + 1) / 2;
  const u64 nwords = (nbits + 63) / 64;
  out.limit_ = lim;
  out.block_bits_ = bb;
  out.words_.assign(nwords, 0);
  for (u64 i = 0; i < nwords; ++i)
    if (!get_u64(is, out.words_[i])) return false;
  return true;
}

void PrimeTable::save_cache(const std::string& dir) const {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string path = cache_path(dir, block_bits_);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write prime cache: " + tmp);
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u64(os, limit_);
    put_u32(os, block_bits_);
    for (u64 w : words_) put_u64(os, w);
    if (!os) throw IoError("short write on prime cache: " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot finalize prime cache: " + ec.message());
}

PrimeTable PrimeTable::sieve(u64 limit, const SieveOptions& opts) {
  if (limit < 2) throw ContractError("sieve limit must be >= 2");
  if (opts.block_bits == 0 || opts.block_bits % 64 != 0)
    throw ContractError("block_bits must be a positive multiple of 64");
  const u64 nbits = (limit + 1) / 2;
  const u64 bytes = ((nbits + 63) / 64) * 8;
  if (bytes > opts.memory_budget)
    throw ResourceError("sieve to " + std::to_string(limit) + " needs " +
                        std::to_string(bytes) + " bytes, over the budget of " +
                        std::to_string(opts.memory_budget) + " bytes");

  PrimeTable t;
  t.limit_ = limit;
  t.block_bits_ = opts.block_bits;
  const u64 nwords = (nbits + 63) / 64;

  u64 resume_bit = 0;
  if (!opts.cache_dir.empty()) {
    PrimeTable cached;
    if (load_cache_file(cache_path(opts.cache_dir, opts.block_bits), opts.block_bits,
                        cached)) {
      if (cached.limit_ >= limit) {
        // Prefix reuse: truncate to the requested limit.
        cached.limit_ = limit;
        cached.words_.resize(nwords);
        const u64 used = nbits & 63;
        if (used) cached.words_.back() &= (1ULL << used) - 1;
        return cached;
      }
      // Extend: keep every complete cached block, sieve the rest. Block
      // content depends only on the base primes, so the prefix is unchanged.
      const u64 old_bits = (cached.limit_ + 1) / 2;
      const u64 keep_blocks = old_bits / opts.block_bits;
      resume_bit = keep_blocks * u64(opts.block_bits);
      t.words_.assign(nwords, 0);
      std::copy(cached.words_.begin(), cached.words_.begin() + resume_bit / 64,
                t.words_.begin());
    }
  }

  if (t.words_.empty()) t.words_.assign(nwords, 0);
  t.sieve_blocks(resume_bit, opts.threads);
  if (!opts.cache_dir.empty()) t.save_cache(opts.cache_dir);
  return t;
}

u64 PrimeTable::count_primes(u64 x) const {
  require_range(x);
  if (x < 2) return 0;
  if (x == 2) return 1;
  const u64 jhi = (x - 1) / 2;
  const u64 wlast = jhi >> 6;
  u64 set = kernels::popcount_words(words_.data(), wlast);
  u64 tail = words_[wlast];
  const unsigned used = unsigned(jhi & 63) + 1;
  if (used < 64) tail &= (1ULL << used) - 1;
  set += std::popcount(tail);
  return 1 + (jhi + 1 - set);  // +1 for p = 2; clear bits among odds 1..2jhi+1
}

double PrimeTable::theta(u64 x) const {
  require_range(x);
  CompensatedSum acc;
  for_each_prime(2, x, [&](u64 p) { acc.add(std::log(double(p))); });
  return acc.value();
}

double PrimeTable::theta_progression(u64 x, u64 q, u64 a) const {
  require_range(x);
  if (q < 1) throw ContractError("theta_progression: q must be >= 1");
  const u64 res = a % q;
  CompensatedSum acc;
  for_each_prime(2, x, [&](u64 p) {
    if (p % q == res) acc.add(std::log(double(p)));
  });
  return acc.value();
}

}  // namespace ktuple
