#pragma once

#include <cstdint>
#include <random>

namespace tsc {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive an independent stream seed from a base seed and a stream index.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform in [0,1). Avoids std::uniform_real_distribution so draws are
// pinned to the mt19937_64 bit stream.
inline double uniform_double(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0,n). Multiply-shift; slight bias is irrelevant for
// n << 2^64 and keeps the draw a single generator call.
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
  return uint64_t((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace tsc
