#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tsc/stats.hpp"
#include "tsc/util.hpp"

using namespace tsc;

namespace {

// Brute-force mid-rank: rank(i) = #{x[j] < x[i]} + 1 + (#{j != i : x[j] == x[i]}) / 2.
// O(n^2), deliberately different from the library's sort-based ranking.
std::vector<double> brute_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    size_t less = 0, equal = 0;
    for (size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) ++less;
      else if (x[j] == x[i] && j != i) ++equal;
    }
    r[i] = double(less) + 1.0 + double(equal) / 2.0;
  }
  return r;
}

// Textbook product-moment coefficient, naive left-to-right accumulation.
double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double t_log_norm(double df) {
  return std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
         0.5 * std::log(df * M_PI);
}

double t_pdf(double u, double df, double ln_c) {
  return std::exp(ln_c - 0.5 * (df + 1.0) * std::log1p(u * u / df));
}

// Composite Simpson over [0, T]; p = 1 - 2 * integral, so no tail truncation.
double simpson_two_sided_p(double t, double df) {
  const int n = 200000;  // even
  double T = std::fabs(t);
  if (T == 0.0) return 1.0;
  double ln_c = t_log_norm(df);
  double h = T / n;
  double s = t_pdf(0.0, df, ln_c) + t_pdf(T, df, ln_c);
  for (int i = 1; i < n; ++i) s += t_pdf(i * h, df, ln_c) * ((i & 1) ? 4.0 : 2.0);
  return 1.0 - 2.0 * (s * h / 3.0);
}

}  // namespace

TEST_CASE("average ranks: hand cases with ties") {
  auto eq = [](const std::vector<double>& got, const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  };
  eq(stats::average_ranks(std::vector<double>{10.0}), {1.0});
  eq(stats::average_ranks(std::vector<double>{3.0, 1.0, 2.0}), {3.0, 1.0, 2.0});
  eq(stats::average_ranks(std::vector<double>{1.0, 2.0, 2.0, 3.0}), {1.0, 2.5, 2.5, 4.0});
  eq(stats::average_ranks(std::vector<double>{5.0, 1.0, 1.0, 3.0, 5.0, 5.0}),
     {5.0, 1.5, 1.5, 3.0, 5.0, 5.0});
  eq(stats::average_ranks(std::vector<double>{2.0, 2.0, 2.0}), {2.0, 2.0, 2.0});
}

TEST_CASE("pearson hand cases") {
  std::vector<double> a{1, 2, 3}, b{2, 4, 6};
  auto perfect = stats::pearson(a, b);
  CHECK(perfect.coefficient == 1.0);
  CHECK(perfect.p_value == 0.0);
  CHECK(perfect.n == 3);
  CHECK(perfect.method == "pearson");

  std::vector<double> x{1, 2, 3, 4}, y{1, 3, 2, 4};
  auto r = stats::pearson(x, y);
  // Deviations are exact quarters, so the arithmetic is exact: r = 4/5.
  CHECK(r.coefficient == 0.8);
  // With n = 4 the t CDF has a closed form and p = 1 - |r| exactly.
  CHECK(r.p_value == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.n == 4);

  std::vector<double> anti{4, 3, 2, 1};
  auto neg = stats::pearson(x, anti);
  CHECK(neg.coefficient == -1.0);
  CHECK(neg.p_value == 0.0);
}

TEST_CASE("spearman hand cases") {
  std::vector<double> x{1, 2, 3, 4}, y{1, 3, 2, 4};
  auto rho = stats::spearman(x, y);
  // d^2 sums to 2: rho = 1 - 6*2/(4*15) = 0.8.
  CHECK(rho.coefficient == 0.8);
  CHECK(rho.p_value == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(rho.method == "spearman");

  std::vector<double> up{10, 20, 30, 40, 50};
  std::vector<double> curved{1, 8, 27, 64, 125};  // strictly increasing transform
  CHECK(stats::spearman(up, curved).coefficient == 1.0);

  std::vector<double> down{50, 40, 30, 20, 10};
  auto neg = stats::spearman(up, down);
  CHECK(neg.coefficient == -1.0);
  CHECK(neg.p_value == 0.0);
}

TEST_CASE("definitional oracle on 1000 random vectors") {
  std::mt19937_64 rng(20260816);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int iter = 0; iter < 1000; ++iter) {
    size_t n = 3 + size_t(iter % 49);  // 3..51
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    auto p = stats::pearson(x, y);
    CHECK(std::fabs(p.coefficient - naive_pearson(x, y)) <= 1e-12);
    auto s = stats::spearman(x, y);
    double want = naive_pearson(brute_ranks(x), brute_ranks(y));
    CHECK(std::fabs(s.coefficient - want) <= 1e-12);
    CHECK(p.p_value >= 0.0);
    CHECK(p.p_value <= 1.0);
  }
}

TEST_CASE("spearman invariant under strictly monotone transforms") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto transforms = std::vector<double (*)(double)>{
      [](double v) { return std::exp(v); },
      [](double v) { return v * v * v; },
      [](double v) { return 3.0 * v + 7.0; },
      [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
  };
  for (int iter = 0; iter < 50; ++iter) {
    size_t n = 5 + size_t(iter % 30);
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    auto base = stats::spearman(x, y);
    for (auto f : transforms) {
      std::vector<double> ty(n);
      for (size_t i = 0; i < n; ++i) ty[i] = f(y[i]);
      auto got = stats::spearman(x, ty);
      // Ranks are identical, so the result is bit-identical.
      CHECK(got.coefficient == base.coefficient);
      CHECK(got.p_value == base.p_value);
    }
    // Strictly decreasing transform flips the sign.
    std::vector<double> ny(n);
    for (size_t i = 0; i < n; ++i) ny[i] = -y[i];
    CHECK(stats::spearman(x, ny).coefficient ==
          doctest::Approx(-base.coefficient).epsilon(1e-14));
  }
}

TEST_CASE("t-distribution p-values against closed forms and quadrature") {
  // df = 1 is Cauchy: p = 1 - (2/pi) atan|t|.
  for (double t : {0.3, 1.0, 2.5, 10.0}) {
    CHECK(stats::t_two_sided_p(t, 1.0) ==
          doctest::Approx(1.0 - 2.0 / M_PI * std::atan(t)).epsilon(1e-12));
  }
  // df = 2 has the algebraic form p = 1 - |t| / sqrt(t^2 + 2).
  for (double t : {0.5, 1.0, 1.8856180831641267, 4.0}) {
    CHECK(stats::t_two_sided_p(t, 2.0) ==
          doctest::Approx(1.0 - t / std::sqrt(t * t + 2.0)).epsilon(1e-12));
  }
  // General df: composite Simpson over [0, |t|].
  for (double df : {1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 49.0}) {
    for (double t : {0.5, 1.3, 2.0, 3.7}) {
      CAPTURE(df);
      CAPTURE(t);
      CHECK(std::fabs(stats::t_two_sided_p(t, df) - simpson_two_sided_p(t, df)) <= 1e-10);
    }
  }
  CHECK(stats::t_two_sided_p(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats::t_two_sided_p(-2.0, 5.0) == stats::t_two_sided_p(2.0, 5.0));
}

TEST_CASE("incomplete beta identities") {
  // I_x(1,b) = 1 - (1-x)^b and I_x(a,1) = x^a.
  for (double x : {0.1, 0.4, 0.7, 0.95}) {
    for (double b : {0.5, 1.0, 2.5, 9.0}) {
      CHECK(stats::incomplete_beta(1.0, b, x) ==
            doctest::Approx(1.0 - std::pow(1.0 - x, b)).epsilon(1e-12));
      CHECK(stats::incomplete_beta(b, 1.0, x) ==
            doctest::Approx(std::pow(x, b)).epsilon(1e-12));
    }
  }
  // Symmetry I_x(a,b) = 1 - I_{1-x}(b,a); midpoint I_{1/2}(a,a) = 1/2.
  for (double a : {0.5, 1.0, 2.0, 7.5}) {
    for (double b : {0.5, 1.7, 6.0}) {
      for (double x : {0.2, 0.5, 0.8}) {
        CHECK(stats::incomplete_beta(a, b, x) ==
              doctest::Approx(1.0 - stats::incomplete_beta(b, a, 1.0 - x)).epsilon(1e-11));
      }
    }
    CHECK(stats::incomplete_beta(a, a, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(stats::incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(stats::incomplete_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("error handling") {
  std::vector<double> two{1, 2}, three{1, 2, 3}, constant{5, 5, 5};
  CHECK_THROWS_AS(stats::pearson(two, two), StatsError);
  CHECK_THROWS_AS(stats::pearson(three, constant), StatsError);
  CHECK_THROWS_AS(stats::pearson(constant, three), StatsError);
  CHECK_THROWS_AS(stats::spearman(three, constant), StatsError);
  std::vector<double> four{1, 2, 3, 4};
  CHECK_THROWS_AS(stats::pearson(three, four), StatsError);
  CHECK_THROWS_AS(stats::spearman(three, four), StatsError);
}

TEST_CASE("permutation p-values: deterministic, sane, near the t approximation") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(20), y(20);
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = g(rng);
    y[i] = 2.0 * x[i] + 0.05 * g(rng);  // strong signal
  }
  auto a = stats::permutation_pearson(x, y, 10000, 42);
  auto b = stats::permutation_pearson(x, y, 10000, 42);
  CHECK(a.p_value == b.p_value);  // seeded determinism
  CHECK(a.coefficient == stats::pearson(x, y).coefficient);
  CHECK(a.p_value <= 0.001);  // no permutation beats the real alignment
  CHECK(a.p_value >= 1.0 / 10001.0);

  // Independent data: permutation p stays far from the signal regime and the
  // analytic approximation tracks it.
  std::vector<double> z(30), w(30);
  for (size_t i = 0; i < z.size(); ++i) {
    z[i] = g(rng);
    w[i] = g(rng);
  }
  auto perm = stats::permutation_spearman(z, w, 10000, 7);
  auto approx = stats::spearman(z, w);
  CHECK(perm.coefficient == approx.coefficient);
  CHECK(perm.p_value > 0.01);
  CHECK(std::fabs(perm.p_value - approx.p_value) < 0.05);
}
