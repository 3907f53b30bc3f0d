#include "ktuple/kernels.hpp"

#include <atomic>
#include <bit>
#include "ktuple/common.hpp"

namespace ktuple::kernels {

namespace {

Backend detect() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
  return Backend::Scalar;
}

std::atomic<int> g_forced{-1};  // -1 = auto

}  // namespace

Backend active_backend() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Backend>(f);
  static const Backend auto_detected = detect();
  return auto_detected;
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && detect() != Backend::Avx2)
    throw ContractError("force_backend: AVX2 not available on this CPU");
  g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { g_forced.store(-1, std::memory_order_relaxed); }

const char* backend_name() {
  return active_backend() == Backend::Avx2 ? "avx2" : "scalar";
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
  if (active_backend() == Backend::Avx2) return detail::popcount_words_avx2(w, n);
  return detail::popcount_words_scalar(w, n);
}

std::uint64_t and_shift_popcount(const std::uint64_t* bits, std::size_t nbits,
                                 const std::uint32_t* shifts, std::size_t k) {
  if (k == 0 || nbits == 0) return 0;
  if (active_backend() == Backend::Avx2)
    return detail::and_shift_popcount_avx2(bits, nbits, shifts, k);
  return detail::and_shift_popcount_scalar(bits, nbits, shifts, k);
}

void phase_gather_sum(const double* re, const double* im, std::uint32_t q,
                      std::uint32_t base, std::uint32_t step,
                      std::uint32_t count, double* out_re, double* out_im) {
  if (active_backend() == Backend::Avx2)
    detail::phase_gather_sum_avx2(re, im, q, base, step, count, out_re, out_im);
  else
    detail::phase_gather_sum_scalar(re, im, q, base, step, count, out_re, out_im);
}

namespace detail {

std::uint64_t popcount_words_scalar(const std::uint64_t* w, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(w[i]);
  return c;
}

// Fetch 64 bits starting at bit offset `off` (off may cross a word edge).
// Caller guarantees the underlying buffer extends one word past the last
// bit actually inspected.
static inline std::uint64_t load_shifted(const std::uint64_t* bits,
                                         std::size_t word, unsigned r) {
  if (r == 0) return bits[word];
  return (bits[word] >> r) | (bits[word + 1] << (64 - r));
}

std::uint64_t and_shift_popcount_scalar(const std::uint64_t* bits,
                                        std::size_t nbits,
                                        const std::uint32_t* shifts,
                                        std::size_t k) {
  const std::uint32_t smax = shifts[k - 1];
  if (nbits <= smax) return 0;
  const std::size_t n = nbits - smax;  // candidate positions
  const std::size_t full = n / 64;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> padded;
  // The shifted loads may touch one word past the highest valid bit; copy
  // into a padded buffer once so all loads are in-bounds.
  const std::size_t words_needed = (nbits + 63) / 64 + 1;
  padded.assign(words_needed, 0);
  for (std::size_t i = 0; i < (nbits + 63) / 64; ++i) padded[i] = bits[i];

  for (std::size_t w = 0; w < full; ++w) {
    std::uint64_t acc = ~0ULL;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t s = shifts[j];
      acc &= load_shifted(padded.data(), w + s / 64, s % 64);
      if (!acc) break;
    }
    count += std::popcount(acc);
  }
  for (std::size_t pos = full * 64; pos < n; ++pos) {
    bool all = true;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t b = pos + shifts[j];
      if (!((bits[b / 64] >> (b % 64)) & 1ULL)) { all = false; break; }
    }
    count += all;
  }
  return count;
}

void phase_gather_sum_scalar(const double* re, const double* im,
                             std::uint32_t q, std::uint32_t base,
                             std::uint32_t step, std::uint32_t count,
                             double* out_re, double* out_im) {
  double sr = 0.0, si = 0.0;
  std::uint32_t idx = base;
  for (std::uint32_t j = 0; j < count; ++j) {
    sr += re[idx];
    si += im[idx];
    idx += step;
    if (idx >= q) idx -= q;
  }
  *out_re += sr;
  *out_im += si;
}

}  // namespace detail
}  // namespace ktuple::kernels
