#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "tsc/kernels.hpp"

// AVX2 variants. Elementwise kernels are lane-parallel copies of the scalar
// expressions; reductions keep the scalar reference's lane mapping
// (lane = i mod 4) and combine order, so results are bit-exact equal.

namespace tsc::kernels {
namespace {

void gibbs_weights_avx2(const int32_t* doc, const int32_t* word,
                        const int32_t* topic, double alpha, double beta,
                        double vbeta, double* w, size_t k) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vv = _mm256_set1_pd(vbeta);
  size_t i = 0;
  const size_t k4 = k & ~size_t(3);
  for (; i < k4; i += 4) {
    __m256d d = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(doc + i)));
    __m256d t = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(word + i)));
    __m256d z = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(topic + i)));
    __m256d num = _mm256_mul_pd(_mm256_add_pd(d, va), _mm256_add_pd(t, vb));
    _mm256_storeu_pd(w + i, _mm256_div_pd(num, _mm256_add_pd(z, vv)));
  }
  for (; i < k; ++i) {
    w[i] = (double(doc[i]) + alpha) * (double(word[i]) + beta) /
           (double(topic[i]) + vbeta);
  }
}

void shift_scale_avx2(const int32_t* counts, double shift, double scale,
                      double* out, size_t n) {
  const __m256d vs = _mm256_set1_pd(shift);
  const __m256d vm = _mm256_set1_pd(scale);
  size_t i = 0;
  const size_t n4 = n & ~size_t(3);
  for (; i < n4; i += 4) {
    __m256d c = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(counts + i)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_add_pd(c, vs), vm));
  }
  for (; i < n; ++i) out[i] = (double(counts[i]) + shift) * scale;
}

double dot_avx2(const double* a, const double* b, size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  size_t i = 0;
  const size_t n4 = n & ~size_t(3);
  for (; i < n4; i += 4) {
    vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double acc[4];
  _mm256_store_pd(acc, vacc);
  for (; i < n; ++i) acc[i & 3] += a[i] * b[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double sum_avx2(const double* a, size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  size_t i = 0;
  const size_t n4 = n & ~size_t(3);
  for (; i < n4; i += 4) vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(a + i));
  alignas(32) double acc[4];
  _mm256_store_pd(acc, vacc);
  for (; i < n; ++i) acc[i & 3] += a[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

}  // namespace

const Variant& avx2_variant() {
  static const Variant v{"avx2", gibbs_weights_avx2, shift_scale_avx2,
                         dot_avx2, sum_avx2};
  return v;
}

}  // namespace tsc::kernels

#endif  // x86_64
