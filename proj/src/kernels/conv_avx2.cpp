#include <algorithm>

#include "bkhopf/kernels/conv.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BKHOPF_HAVE_AVX2_KERNEL 1
#endif

namespace bkhopf::kernels::avx2 {

#ifdef BKHOPF_HAVE_AVX2_KERNEL

// _mm256_mul_epu32 multiplies the low 32 bits of each 64-bit lane, which is
// exact under the < 2^32 operand contract.
__attribute__((target("avx2"))) void conv_accumulate(std::span<const std::uint64_t> a,
                                                     std::span<const std::uint64_t> b,
                                                     std::span<std::uint64_t> out) {
  const std::size_t n_out = out.size();
  for (std::size_t i = 0; i < a.size() && i < n_out; ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    const std::size_t len = std::min(b.size(), n_out - i);
    std::uint64_t* dst = out.data() + i;
    const std::uint64_t* src = b.data();
    const __m256i av = _mm256_set1_epi64x(static_cast<long long>(ai));
    std::size_t j = 0;
    for (; j + 8 <= len; j += 8) {
      __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
      __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j + 4));
      __m256i o0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      __m256i o1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j + 4));
      o0 = _mm256_add_epi64(o0, _mm256_mul_epu32(av, b0));
      o1 = _mm256_add_epi64(o1, _mm256_mul_epu32(av, b1));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), o0);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j + 4), o1);
    }
    for (; j + 4 <= len; j += 4) {
      __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
      __m256i ov = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      ov = _mm256_add_epi64(ov, _mm256_mul_epu32(av, bv));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), ov);
    }
    for (; j < len; ++j) dst[j] += ai * src[j];
  }
}

#else

void conv_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out) {
  scalar::conv_accumulate(a, b, out);
}

#endif

}  // namespace bkhopf::kernels::avx2
