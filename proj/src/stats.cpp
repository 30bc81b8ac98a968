#include "tsc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tsc/kernels.hpp"
#include "tsc/rng.hpp"
#include "tsc/util.hpp"

namespace tsc::stats {

std::vector<double> average_ranks(std::span<const double> x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t(0));
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return x[a] < x[b] || (x[a] == x[b] && a < b); });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    double mean_rank = (double(i + 1) + double(j + 1)) / 2.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

double beta_cf(double a, double b, double x) {
  // Lentz's continued fraction for the incomplete beta, as in standard
  // numerical references.
  const double eps = 1e-15, tiny = 1e-300;
  const int max_iter = 500;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_two_sided_p(double t, double df) {
  if (df <= 0.0) return 1.0;
  if (!std::isfinite(t)) return 0.0;
  double x = df / (df + t * t);
  return incomplete_beta(df / 2.0, 0.5, x);
}

namespace {

CorrelationResult correlate(std::span<const double> x, std::span<const double> y,
                            const char* method) {
  if (x.size() != y.size()) throw StatsError("correlation inputs differ in length");
  const size_t n = x.size();
  if (n < 3) throw StatsError("correlation needs at least 3 points");
  const auto& k = kernels::active();
  double mx = k.sum(x.data(), n) / double(n);
  double my = k.sum(y.data(), n) / double(n);
  std::vector<double> dx(n), dy(n);
  for (size_t i = 0; i < n; ++i) {
    dx[i] = x[i] - mx;
    dy[i] = y[i] - my;
  }
  double sxy = k.dot(dx.data(), dy.data(), n);
  double sxx = k.dot(dx.data(), dx.data(), n);
  double syy = k.dot(dy.data(), dy.data(), n);
  if (sxx == 0.0 || syy == 0.0) throw StatsError("correlation undefined for constant input");
  double r = sxy / std::sqrt(sxx * syy);
  r = std::clamp(r, -1.0, 1.0);
  CorrelationResult res;
  res.coefficient = r;
  res.n = int(n);
  res.method = method;
  double df = double(n) - 2.0;
  if (std::fabs(r) >= 1.0) {
    res.p_value = 0.0;
  } else {
    double t = r * std::sqrt(df / (1.0 - r * r));
    res.p_value = t_two_sided_p(t, df);
  }
  return res;
}

}  // namespace

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  return correlate(x, y, "pearson");
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("correlation inputs differ in length");
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  auto res = correlate(rx, ry, "spearman");
  return res;
}

namespace {

template <typename F>
CorrelationResult permutation_p(std::span<const double> x, std::span<const double> y,
                                int permutations, uint64_t seed, F corr) {
  CorrelationResult base = corr(x, y);
  if (permutations <= 0) return base;
  std::mt19937_64 rng(seed);
  std::vector<double> yp(y.begin(), y.end());
  int hits = 0;
  for (int p = 0; p < permutations; ++p) {
    for (size_t i = yp.size() - 1; i > 0; --i) {
      size_t j = size_t(uniform_below(rng, i + 1));
      std::swap(yp[i], yp[j]);
    }
    double r;
    try {
      r = corr(x, yp).coefficient;
    } catch (const StatsError&) {
      continue;  // degenerate permutation of tied data
    }
    if (std::fabs(r) >= std::fabs(base.coefficient) - 1e-15) ++hits;
  }
  base.p_value = double(hits + 1) / double(permutations + 1);
  return base;
}

}  // namespace

CorrelationResult permutation_pearson(std::span<const double> x, std::span<const double> y,
                                      int permutations, uint64_t seed) {
  return permutation_p(x, y, permutations, seed,
                       [](auto a, auto b) { return pearson(a, b); });
}

CorrelationResult permutation_spearman(std::span<const double> x, std::span<const double> y,
                                       int permutations, uint64_t seed) {
  return permutation_p(x, y, permutations, seed,
                       [](auto a, auto b) { return spearman(a, b); });
}

}  // namespace tsc::stats
