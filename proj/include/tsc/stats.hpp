#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tsc::stats {

struct CorrelationResult {
  double coefficient = 0.0;
  double p_value = 1.0;
  int n = 0;
  std::string method;  // "pearson" or "spearman"
};

// Average ranks, ties get the mean rank (1-based).
std::vector<double> average_ranks(std::span<const double> x);

// Two-sided p-value for Student's t with df degrees of freedom.
double t_two_sided_p(double t, double df);

// Product-moment correlation with two-sided p via the t approximation.
// Throws StatsError for n < 3 or a constant input.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Rank correlation: pearson over average ranks.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

// Seeded two-sided permutation p-value (shuffles y). Coefficient matches the
// analytic result; only the p-value is replaced.
CorrelationResult permutation_pearson(std::span<const double> x, std::span<const double> y,
                                      int permutations, uint64_t seed);
CorrelationResult permutation_spearman(std::span<const double> x, std::span<const double> y,
                                       int permutations, uint64_t seed);

// Regularized incomplete beta function I_x(a,b).
double incomplete_beta(double a, double b, double x);

}  // namespace tsc::stats
