#if defined(__aarch64__)

#include <arm_neon.h>

#include "tsc/kernels.hpp"

// NEON variants. 128-bit vectors hold two doubles, so each step processes
// two vector pairs to keep the scalar reference's four-lane accumulation
// pattern: v01 carries lanes 0..1, v23 lanes 2..3. vmulq+vaddq (two
// roundings) is used instead of fused multiply-add on purpose.

namespace tsc::kernels {
namespace {

inline float64x2_t cvt_lo(int32x4_t v) {
  return vcvtq_f64_s64(vmovl_s32(vget_low_s32(v)));
}
inline float64x2_t cvt_hi(int32x4_t v) {
  return vcvtq_f64_s64(vmovl_s32(vget_high_s32(v)));
}

void gibbs_weights_neon(const int32_t* doc, const int32_t* word,
                        const int32_t* topic, double alpha, double beta,
                        double vbeta, double* w, size_t k) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  const float64x2_t vv = vdupq_n_f64(vbeta);
  size_t i = 0;
  const size_t k4 = k & ~size_t(3);
  for (; i < k4; i += 4) {
    int32x4_t d = vld1q_s32(doc + i);
    int32x4_t t = vld1q_s32(word + i);
    int32x4_t z = vld1q_s32(topic + i);
    float64x2_t n01 = vmulq_f64(vaddq_f64(cvt_lo(d), va), vaddq_f64(cvt_lo(t), vb));
    float64x2_t n23 = vmulq_f64(vaddq_f64(cvt_hi(d), va), vaddq_f64(cvt_hi(t), vb));
    vst1q_f64(w + i, vdivq_f64(n01, vaddq_f64(cvt_lo(z), vv)));
    vst1q_f64(w + i + 2, vdivq_f64(n23, vaddq_f64(cvt_hi(z), vv)));
  }
  for (; i < k; ++i) {
    w[i] = (double(doc[i]) + alpha) * (double(word[i]) + beta) /
           (double(topic[i]) + vbeta);
  }
}

void shift_scale_neon(const int32_t* counts, double shift, double scale,
                      double* out, size_t n) {
  const float64x2_t vs = vdupq_n_f64(shift);
  const float64x2_t vm = vdupq_n_f64(scale);
  size_t i = 0;
  const size_t n4 = n & ~size_t(3);
  for (; i < n4; i += 4) {
    int32x4_t c = vld1q_s32(counts + i);
    vst1q_f64(out + i, vmulq_f64(vaddq_f64(cvt_lo(c), vs), vm));
    vst1q_f64(out + i + 2, vmulq_f64(vaddq_f64(cvt_hi(c), vs), vm));
  }
  for (; i < n; ++i) out[i] = (double(counts[i]) + shift) * scale;
}

double dot_neon(const double* a, const double* b, size_t n) {
  float64x2_t v01 = vdupq_n_f64(0.0);
  float64x2_t v23 = vdupq_n_f64(0.0);
  size_t i = 0;
  const size_t n4 = n & ~size_t(3);
  for (; i < n4; i += 4) {
    v01 = vaddq_f64(v01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    v23 = vaddq_f64(v23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double acc[4] = {vgetq_lane_f64(v01, 0), vgetq_lane_f64(v01, 1),
                   vgetq_lane_f64(v23, 0), vgetq_lane_f64(v23, 1)};
  for (; i < n; ++i) acc[i & 3] += a[i] * b[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double sum_neon(const double* a, size_t n) {
  float64x2_t v01 = vdupq_n_f64(0.0);
  float64x2_t v23 = vdupq_n_f64(0.0);
  size_t i = 0;
  const size_t n4 = n & ~size_t(3);
  for (; i < n4; i += 4) {
    v01 = vaddq_f64(v01, vld1q_f64(a + i));
    v23 = vaddq_f64(v23, vld1q_f64(a + i + 2));
  }
  double acc[4] = {vgetq_lane_f64(v01, 0), vgetq_lane_f64(v01, 1),
                   vgetq_lane_f64(v23, 0), vgetq_lane_f64(v23, 1)};
  for (; i < n; ++i) acc[i & 3] += a[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

}  // namespace

const Variant& neon_variant() {
  static const Variant v{"neon", gibbs_weights_neon, shift_scale_neon,
                         dot_neon, sum_neon};
  return v;
}

}  // namespace tsc::kernels

#endif  // __aarch64__
