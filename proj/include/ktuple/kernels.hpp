#pragma once
// Data-parallel inner-loop kernels: scalar reference implementations plus
// AVX2 variants selected at runtime. Every variant is equivalence-tested
// against the scalar reference (exact for bit kernels, 1e-12 relative for
// the float accumulators, which may reassociate).

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ktuple::kernels {

enum class Backend { Scalar, Avx2 };

// Backend chosen by cpuid at first use; force_backend overrides (tests).
Backend active_backend();
void force_backend(Backend b);   // throws ContractError if unsupported
void reset_backend();            // back to auto-detection
const char* backend_name();

// Population count over a word range.
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n);

// Count positions n in [0, nbits - max(shift)) such that for every shift s
// bit (n + s) of the stream is set. Shifts must be sorted ascending and
// start at 0. This is the k-tuple sliding-window counter on a bitset.
std::uint64_t and_shift_popcount(const std::uint64_t* bits, std::size_t nbits,
                                 const std::uint32_t* shifts, std::size_t k);

// acc += sum_{j<count} table[(base + j*step) mod q], table = q complex roots
// split into re[]/im[]. Requires 0 <= base,step < q.
void phase_gather_sum(const double* re, const double* im, std::uint32_t q,
                      std::uint32_t base, std::uint32_t step,
                      std::uint32_t count, double* out_re, double* out_im);

namespace detail {
std::uint64_t popcount_words_scalar(const std::uint64_t*, std::size_t);
std::uint64_t popcount_words_avx2(const std::uint64_t*, std::size_t);
std::uint64_t and_shift_popcount_scalar(const std::uint64_t*, std::size_t,
                                        const std::uint32_t*, std::size_t);
std::uint64_t and_shift_popcount_avx2(const std::uint64_t*, std::size_t,
                                      const std::uint32_t*, std::size_t);
void phase_gather_sum_scalar(const double*, const double*, std::uint32_t,
                             std::uint32_t, std::uint32_t, std::uint32_t,
                             double*, double*);
void phase_gather_sum_avx2(const double*, const double*, std::uint32_t,
                           std::uint32_t, std::uint32_t, std::uint32_t,
                           double*, double*);
}  // namespace detail

}  // namespace ktuple::kernels
