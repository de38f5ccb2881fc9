#include <immintrin.h>

#include "swiftagg/simd/kernels.hpp"

namespace swiftagg::simd::avx2 {
namespace {

// Products of two residues below 2^26 are exact in a double, so the
// quotient can be estimated in floating point and corrected by one step.
constexpr std::uint32_t kDoublePathLimit = 1u << 26;

void add(Element* acc, const Element* x, std::size_t n, std::uint32_t p) {
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    auto* pa = reinterpret_cast<__m256i*>(acc + i);
    const __m256i a = _mm256_loadu_si256(pa);
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const __m256i s = _mm256_add_epi32(a, b);
    // s < p makes s - p wrap above 2^31, so the unsigned min picks s
    _mm256_storeu_si256(pa, _mm256_min_epu32(s, _mm256_sub_epi32(s, vp)));
  }
  scalar::table().add(acc + i, x + i, n - i, p);
}

// r = (a * s + c) mod p for four lanes held as doubles.
inline __m256d mod_mul_add(__m256d a, __m256d s, __m256d c, __m256d vp, __m256d vinv) {
  const __m256d prod = _mm256_add_pd(_mm256_mul_pd(a, s), c);
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, vinv));
  __m256d r = _mm256_sub_pd(prod, _mm256_mul_pd(q, vp));
  const __m256d zero = _mm256_setzero_pd();
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
  return r;
}

inline __m256d load4(const Element* src) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(src)));
}

inline void store4(Element* dst, __m256d v) {
  _mm_storeu_si128(reinterpret_cast<__m128i*>(dst), _mm256_cvttpd_epi32(v));
}

void mul_add(Element* acc, Element s, const Element* x, std::size_t n, std::uint32_t p) {
  if (p >= kDoublePathLimit) {
    scalar::table().mul_add(acc, s, x, n, p);
    return;
  }
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vinv = _mm256_set1_pd(1.0 / p);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store4(acc + i, mod_mul_add(load4(acc + i), vs, load4(x + i), vp, vinv));
  }
  scalar::table().mul_add(acc + i, s, x + i, n - i, p);
}

void axpy(Element* acc, Element s, const Element* x, std::size_t n, std::uint32_t p) {
  if (p >= kDoublePathLimit) {
    scalar::table().axpy(acc, s, x, n, p);
    return;
  }
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vinv = _mm256_set1_pd(1.0 / p);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store4(acc + i, mod_mul_add(load4(x + i), vs, load4(acc + i), vp, vinv));
  }
  scalar::table().axpy(acc + i, s, x + i, n - i, p);
}

constexpr KernelTable kTable{add, mul_add, axpy};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace swiftagg::simd::avx2
