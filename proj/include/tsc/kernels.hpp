#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace tsc::kernels {

// Collapsed-Gibbs topic weights for one token:
//   w[k] = (doc[k] + alpha) * (word[k] + beta) / (topic[k] + vbeta)
// Purely elementwise, so every variant is bit-exact equal to the scalar
// reference (kernel TUs are built with -ffp-contract=off).
using GibbsWeightsFn = void (*)(const int32_t* doc, const int32_t* word,
                                const int32_t* topic, double alpha, double beta,
                                double vbeta, double* w, size_t k);

// out[i] = (counts[i] + shift) * scale
using ShiftScaleFn = void (*)(const int32_t* counts, double shift, double scale,
                              double* out, size_t n);

// Reductions use four lane accumulators (lane = i mod 4) combined as
// (acc0+acc2)+(acc1+acc3); the scalar reference follows the same order, so
// vector variants match it bit for bit.
using DotFn = double (*)(const double* a, const double* b, size_t n);
using SumFn = double (*)(const double* a, size_t n);

struct Variant {
  const char* name;
  GibbsWeightsFn gibbs_weights;
  ShiftScaleFn shift_scale;
  DotFn dot;
  SumFn sum;
};

const Variant& scalar_variant();

// Variants compiled in and usable on this CPU; scalar always first.
std::vector<const Variant*> available();

// Runtime-selected variant. Picked once: the TSC_KERNELS env var if set,
// else the widest supported vector variant.
const Variant& active();

// Force a variant by name ("scalar", "avx2", "neon"). Returns false if the
// name is unknown or unsupported on this CPU.
bool force(std::string_view name);

}  // namespace tsc::kernels
