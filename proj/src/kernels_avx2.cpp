// AVX2 kernel variants. This translation unit is built with -mavx2 and must
// only be entered behind the runtime cpuid check in kernels.cpp.

#include <cstring>
#include <vector>

#include "ktuple/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace ktuple::kernels::detail {

// Nibble-LUT popcount of a 256-bit lane, accumulated as 4 x u64.
static inline __m256i popcount256(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

std::uint64_t popcount_words_avx2(const std::uint64_t* w, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    acc = _mm256_add_epi64(acc, popcount256(v));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) c += __builtin_popcountll(w[i]);
  return c;
}

std::uint64_t and_shift_popcount_avx2(const std::uint64_t* bits,
                                      std::size_t nbits,
                                      const std::uint32_t* shifts,
                                      std::size_t k) {
  const std::uint32_t smax = shifts[k - 1];
  if (nbits <= smax) return 0;
  const std::size_t n = nbits - smax;
  const std::size_t words = (nbits + 63) / 64;
  // Padding: vector loads reach 4 words + 1 carry word past the block start.
  std::vector<std::uint64_t> padded(words + 5, 0);
  std::memcpy(padded.data(), bits, words * sizeof(std::uint64_t));
  const std::uint64_t* p = padded.data();

  const std::size_t full = n / 64;
  __m256i acc_pc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= full; w += 4) {
    __m256i acc = _mm256_set1_epi64x(-1);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t wq = shifts[j] / 64;
      const unsigned r = shifts[j] % 64;
      __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + w + wq));
      if (r == 0) {
        acc = _mm256_and_si256(acc, lo);
      } else {
        __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + w + wq + 1));
        __m256i v = _mm256_or_si256(_mm256_srli_epi64(lo, r),
                                    _mm256_slli_epi64(hi, 64 - r));
        acc = _mm256_and_si256(acc, v);
      }
    }
    acc_pc = _mm256_add_epi64(acc_pc, popcount256(acc));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc_pc);
  std::uint64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];

  // Tail words + tail bits via the scalar path on the remaining range.
  for (std::size_t ww = w; ww < full; ++ww) {
    std::uint64_t acc = ~0ULL;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t s = shifts[j];
      const std::size_t word = ww + s / 64;
      const unsigned r = s % 64;
      std::uint64_t v = r == 0 ? p[word] : (p[word] >> r) | (p[word + 1] << (64 - r));
      acc &= v;
      if (!acc) break;
    }
    count += __builtin_popcountll(acc);
  }
  for (std::size_t pos = full * 64; pos < n; ++pos) {
    bool all = true;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t b = pos + shifts[j];
      if (!((p[b / 64] >> (b % 64)) & 1ULL)) { all = false; break; }
    }
    count += all;
  }
  return count;
}

void phase_gather_sum_avx2(const double* re, const double* im, std::uint32_t q,
                           std::uint32_t base, std::uint32_t step,
                           std::uint32_t count, double* out_re, double* out_im) {
  if (count < 8) {
    phase_gather_sum_scalar(re, im, q, base, step, count, out_re, out_im);
    return;
  }
  // Four index lanes stepping by 4*step (mod q); conditional subtract keeps
  // them in range without division.
  const std::uint64_t q64 = q;
  std::uint64_t i0 = base;
  std::uint64_t i1 = (base + (std::uint64_t)step) % q64;
  std::uint64_t i2 = (base + 2 * (std::uint64_t)step) % q64;
  std::uint64_t i3 = (base + 3 * (std::uint64_t)step) % q64;
  __m256i idx = _mm256_set_epi64x((long long)i3, (long long)i2, (long long)i1, (long long)i0);
  const __m256i vstep = _mm256_set1_epi64x((long long)((4 * (std::uint64_t)step) % q64));
  const __m256i vq = _mm256_set1_epi64x((long long)q64);
  const __m256i vqm1 = _mm256_set1_epi64x((long long)(q64 - 1));
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();

  std::uint32_t j = 0;
  const std::uint32_t vec_iters = count / 4;
  for (std::uint32_t it = 0; it < vec_iters; ++it, j += 4) {
    __m256d vr = _mm256_i64gather_pd(re, idx, 8);
    __m256d vi = _mm256_i64gather_pd(im, idx, 8);
    sr = _mm256_add_pd(sr, vr);
    si = _mm256_add_pd(si, vi);
    idx = _mm256_add_epi64(idx, vstep);
    // idx >= q  ->  idx -= q   (values stay < 2q after the add)
    __m256i ge = _mm256_cmpgt_epi64(idx, vqm1);
    idx = _mm256_sub_epi64(idx, _mm256_and_si256(ge, vq));
  }
  alignas(32) double r4[4], s4[4];
  _mm256_store_pd(r4, sr);
  _mm256_store_pd(s4, si);
  double tr = (r4[0] + r4[1]) + (r4[2] + r4[3]);
  double ti = (s4[0] + s4[1]) + (s4[2] + s4[3]);
  // Scalar tail continues from lane-0's next index.
  std::uint64_t idx_tail = (base + (std::uint64_t)j * step) % q64;
  for (; j < count; ++j) {
    tr += re[idx_tail];
    ti += im[idx_tail];
    idx_tail += step;
    if (idx_tail >= q64) idx_tail -= q64;
  }
  *out_re += tr;
  *out_im += ti;
}

}  // namespace ktuple::kernels::detail

#else  // non-x86: AVX2 entry points forward to scalar.

namespace ktuple::kernels::detail {
std::uint64_t popcount_words_avx2(const std::uint64_t* w, std::size_t n) {
  return popcount_words_scalar(w, n);
}
std::uint64_t and_shift_popcount_avx2(const std::uint64_t* b, std::size_t n,
                                      const std::uint32_t* s, std::size_t k) {
  return and_shift_popcount_scalar(b, n, s, k);
}
void phase_gather_sum_avx2(const double* re, const double* im, std::uint32_t q,
                           std::uint32_t base, std::uint32_t step,
                           std::uint32_t count, double* or_, double* oi_) {
  phase_gather_sum_scalar(re, im, q, base, step, count, or_, oi_);
}
}  // namespace ktuple::kernels::detail

#endif
