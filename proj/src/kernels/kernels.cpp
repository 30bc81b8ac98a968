#include "tsc/kernels.hpp"

#include <cstdlib>
#include <string>

namespace tsc::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Variant& avx2_variant();
#endif
#if defined(__aarch64__)
const Variant& neon_variant();
#endif

std::vector<const Variant*> available() {
  std::vector<const Variant*> out;
  out.push_back(&scalar_variant());
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) out.push_back(&avx2_variant());
#endif
#if defined(__aarch64__)
  out.push_back(&neon_variant());
#endif
  return out;
}

namespace {

const Variant* select_default() {
  auto all = available();
  const Variant* chosen = all.back();
  if (const char* env = std::getenv("TSC_KERNELS")) {
    for (const Variant* v : all)
      if (std::string_view(v->name) == env) return v;
  }
  return chosen;
}

const Variant*& active_slot() {
  static const Variant* v = select_default();
  return v;
}

}  // namespace

const Variant& active() { return *active_slot(); }

bool force(std::string_view name) {
  for (const Variant* v : available()) {
    if (name == v->name) {
      active_slot() = v;
      return true;
    }
  }
  return false;
}

}  // namespace tsc::kernels
