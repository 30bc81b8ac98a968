#include "tsc/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "tsc/kernels.hpp"
#include "tsc/util.hpp"

namespace tsc::numerics {

std::vector<double> symmetric_eigenvalues(std::vector<double> a, size_t n) {
  if (a.size() != n * n) throw Error("symmetric_eigenvalues: bad dimensions");
  auto at = [&](size_t r, size_t c) -> double& { return a[r * n + c]; };
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (size_t r = 0; r < n; ++r)
      for (size_t c = r + 1; c < n; ++c) off += at(r, c) * at(r, c);
    if (off < 1e-26) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (size_t i = 0; i < n; ++i) {
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (size_t i = 0; i < n; ++i) {
          double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

std::vector<double> singular_values_gram(const std::vector<double>& a, size_t k, size_t v) {
  if (a.size() != k * v || k > v) throw Error("singular_values_gram: bad dimensions");
  std::vector<double> gram(k * k);
  const auto& kr = kernels::active();
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i; j < k; ++j) {
      double g = kr.dot(a.data() + i * v, a.data() + j * v, v);
      gram[i * k + j] = g;
      gram[j * k + i] = g;
    }
  }
  auto eig = symmetric_eigenvalues(std::move(gram), k);
  for (auto& e : eig) e = std::sqrt(std::max(e, 0.0));
  return eig;
}

}  // namespace tsc::numerics
