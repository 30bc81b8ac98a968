#include "tsc/kernels.hpp"

// Reference kernels. The lane-striped accumulation pattern is the contract
// the vector variants reproduce exactly; do not "simplify" it to a single
// accumulator.

namespace tsc::kernels {
namespace {

void gibbs_weights_scalar(const int32_t* doc, const int32_t* word,
                          const int32_t* topic, double alpha, double beta,
                          double vbeta, double* w, size_t k) {
  for (size_t i = 0; i < k; ++i) {
    w[i] = (double(doc[i]) + alpha) * (double(word[i]) + beta) /
           (double(topic[i]) + vbeta);
  }
}

void shift_scale_scalar(const int32_t* counts, double shift, double scale,
                        double* out, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = (double(counts[i]) + shift) * scale;
}

double dot_scalar(const double* a, const double* b, size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < n; ++i) acc[i & 3] += a[i] * b[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double sum_scalar(const double* a, size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < n; ++i) acc[i & 3] += a[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

}  // namespace

const Variant& scalar_variant() {
  static const Variant v{"scalar", gibbs_weights_scalar, shift_scale_scalar,
                         dot_scalar, sum_scalar};
  return v;
}

}  // namespace tsc::kernels
