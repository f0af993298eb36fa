#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "eestat/asymptotics.hpp"
#include "eestat/closedform.hpp"
#include "eestat/specfun.hpp"

using namespace eestat;

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

double neg_binary_entropy(double n) { return n * std::log(n) + (1 - n) * std::log1p(-n); }

}  // namespace

TEST(PageThermo, SubstitutedValues) {
  const auto half = page_thermo(20, 0.5);
  EXPECT_NEAR(half.mean, 10 * kLn2 - 0.5, 1e-14);
  EXPECT_NEAR(half.variance, 0.25 * std::exp2(-20.0), 1e-20);
  EXPECT_NEAR(page_thermo(30, 0.3).mean, page_thermo(30, 0.7).mean, 1e-13);
}

TEST(PageThermo, VarianceMatchesExactDimensions) {
  for (int V : {16, 20}) {
    const double exact = page_variance(std::exp2(V / 4), std::exp2(V - V / 4));
    EXPECT_NEAR(exact / page_thermo(V, 0.25).variance, 1.0, 0.01) << V;
    const double half = page_variance(std::exp2(V / 2), std::exp2(V / 2));
    EXPECT_NEAR(half / page_thermo(V, 0.5).variance, 1.0, 1e-4) << V;
  }
}

TEST(FixedNThermo, AgreesWithExactAwayFromKinks) {
  // (f, n) = (0.3, 0.2): O(1/V) corrections.
  EXPECT_NEAR(fixedN_thermo(400, 0.3, 0.2), fixedN_average(400, 120, 80), 2e-4);
  EXPECT_NEAR(fixedN_thermo(800, 0.3, 0.2), fixedN_average(800, 240, 160), 1e-4);
  // f = n = 1/2
  for (int V : {200, 400, 800}) EXPECT_LT(std::fabs(fixedN_thermo(V, 0.5, 0.5) - fixedN_average(V, V / 2, V / 2)) * V, 0.2);
  EXPECT_NEAR(fixedN_thermo(100, 0.5, 0.5), 50 * kLn2 + 0.25 + 0.5 * std::log(0.5) - 0.5, 1e-12);
}

TEST(FixedNThermo, VarianceRatioApproachesOne) {
  double prev = 1.0;
  for (int V : {40, 160, 640}) {
    const int N = static_cast<int>(std::lround(0.3 * V));
    const double ratio = fixedN_variance(V, V / 4, N) / fixedN_variance_thermo(V, 0.25, static_cast<double>(N) / V);
    EXPECT_LT(std::fabs(ratio - 1.0), prev);
    prev = std::fabs(ratio - 1.0);
  }
  EXPECT_LT(prev, 0.005);
}

TEST(PageWeightedThermo, MatchesExactSum) {
  EXPECT_NEAR(page_weighted_thermo(100, 0.3, 0.5), 30 * kLn2 + 0.5 * std::log(0.7), 1e-12);
  const double w = std::log((1 - 0.269) / 0.269);
  double prev = 1e9;
  for (int V = 20; V <= 60; V += 8) {
    const double err = std::fabs(weighted_average(V, V / 4, w, false) - page_weighted_thermo(V, V / 4 / double(V), 0.269));
    EXPECT_LT(err, prev) << V;
    prev = err;
  }
  EXPECT_NEAR(weighted_average(800, 200, std::log(4.0), false), page_weighted_thermo(800, 0.25, 0.2), 3e-4);
}

TEST(PageWeightedThermo, VarianceRatioApproachesOne) {
  for (auto [f, nbar] : {std::pair{0.4, 0.2}, std::pair{0.3, 0.4}, std::pair{0.25, 0.25}}) {
    const int V = 800;
    const double w = std::log((1 - nbar) / nbar);
    const double ratio = weighted_variance(V, static_cast<int>(std::lround(f * V)), w, false) / page_weighted_variance_thermo(V, f, nbar);
    EXPECT_NEAR(ratio, 1.0, 0.03) << f << " " << nbar;
  }
}

TEST(GaussianThermo, LeadingCoefficients) {
  EXPECT_NEAR(gaussian_thermo(1000, 0.5) / 1000, kLn2 - 0.5 + (0.25 + 0.25 * std::log(0.5)) / 1000, 1e-14);
  for (int V : {200, 800, 3200}) EXPECT_LT(std::fabs(gaussian_thermo(V, 0.3) - gaussian_average(V, 3 * V / 10)) * V, 0.05) << V;
}

TEST(GaussianThermo, FixedNErrorIsCubic) {
  std::vector<double> vs, errs;
  for (int V = 64; V <= 1024; V *= 2) {
    vs.push_back(V);
    errs.push_back(std::fabs(gaussian_fixedN_average(V, V / 4, V / 2) - gaussian_fixedN_thermo(V, 0.25, 0.5)));
  }
  // least-squares slope of log err against log V
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    mx += std::log(vs[i]) / vs.size();
    my += std::log(errs[i]) / vs.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    sxy += (std::log(vs[i]) - mx) * (std::log(errs[i]) - my);
    sxx += (std::log(vs[i]) - mx) * (std::log(vs[i]) - mx);
  }
  EXPECT_NEAR(sxy / sxx, -3.0, 0.3);
}

TEST(GaussianWeightedThermo, AllFourCasesTrackExactSums) {
  struct Case {
    double f, nbar;
  };
  for (const Case c : {Case{0.2, 0.4}, Case{0.4, 0.2}, Case{0.25, 0.25}, Case{0.5, 0.5}}) {
    const int V = 800;
    const double w = std::log((1 - c.nbar) / c.nbar);
    const double exact = weighted_average(V, static_cast<int>(std::lround(c.f * V)), w, true);
    EXPECT_NEAR(gaussian_weighted_thermo(V, c.f, c.nbar), exact, 2e-5) << c.f << " " << c.nbar;
  }
  const double V = 1e6;
  EXPECT_NEAR(gaussian_weighted_thermo(V, 0.5, 0.5) - (kLn2 - 0.5) * V + 0.25, 1.0 / (3 * std::sqrt(2 * kPi * V)) + 0.125 / V, 1e-9);
}

TEST(GaussianWeightedThermo, VarianceRatioApproachesOne) {
  for (auto [f, nbar] : {std::pair{0.4, 0.2}, std::pair{0.25, 0.25}, std::pair{0.2, 0.35}}) {
    const int V = 800;
    const double w = std::log((1 - nbar) / nbar);
    const double ratio = weighted_variance(V, static_cast<int>(std::lround(f * V)), w, true) / gaussian_weighted_variance_thermo(V, f, nbar);
    EXPECT_NEAR(ratio, 1.0, 0.03) << f << " " << nbar;
  }
}

TEST(PageResolved, TracksExactAcrossRegimes) {
  for (int V : {400, 800}) {
    // Kink line f = 1/2, n fixed: next correction is O(V^{-1/2}).
    EXPECT_LT(std::fabs(page_resolved(V, 0.5, 0.2) - fixedN_average(V, V / 2, V / 5)) * std::sqrt(V), 0.3);
    // Near the kink, at the multicritical point and away from both: O(1/V).
    EXPECT_LT(std::fabs(page_resolved(V, 0.45, 0.2) - fixedN_average(V, 9 * V / 20, V / 5)) * V, 1.0);
    EXPECT_LT(std::fabs(page_resolved(V, 0.5, 0.5) - fixedN_average(V, V / 2, V / 2)) * V, 0.2);
    EXPECT_LT(std::fabs(page_resolved(V, 0.3, 0.2) - fixedN_average(V, 3 * V / 10, V / 5)) * V, 0.1);
  }
}

TEST(PageResolved, SquareRootCoefficientIsPageB) {
  const double V = 1e4, lambda_f = -1.0, n = 0.25;
  const double f = 0.5 + lambda_f / std::sqrt(V);
  const double L = neg_binary_entropy(n);
  const double smooth = -V * f * L + 0.5 * f + 0.5 * std::log1p(-f);
  // The two kink terms, O(V^{-1/2}) in this scaling.
  const double g = 1 - 2 * n, a = kLn2 * (1 - 2 * f);
  const double base = V * g * g / 2 - 2 * kLn2;
  const double kink = std::exp(-V * a + base + log_erfc(std::sqrt(V) * (g * g - a) / (std::sqrt(2.0) * g))) +
                      std::exp(V * a + base + log_erfc(std::sqrt(V) * (g * g + a) / (std::sqrt(2.0) * g)));
  const double coefficient = (page_resolved(V, f, n) - smooth + kink) / std::sqrt(V);
  EXPECT_NEAR(coefficient, -page_b(lambda_f, n), 1e-8);
}

TEST(PageB, Limits) {
  for (double n : {0.1, 0.25, 0.4, 0.8}) {
    const double q = n * (1 - n);
    EXPECT_NEAR(page_b(0.0, n), std::sqrt(q / (2 * kPi)) * std::fabs(std::log((1 - n) / n)), 1e-15);
    EXPECT_NEAR(page_b(30.0, n), 0.0, 1e-12) << n;
    EXPECT_NEAR(page_b(-30.0, n), 0.0, 1e-12) << n;
  }
  EXPECT_EQ(page_b(1.0, 0.5), 0.0);
}

TEST(PageC, LimitsAndExactConvergence) {
  EXPECT_NEAR(page_c(0.0, 1000.0), (2 * kLn2 - 1) / 4, 1e-3);
  EXPECT_NEAR(page_c(50.0, 1.0), (2 * kLn2 - 1) / 4, 1e-12);
  EXPECT_NEAR(page_c(0.0, 1e-8), (2 * kLn2 + 1) / 4, 1e-6);
  EXPECT_THROW(page_c(1.0, 0.0), std::domain_error);

  // f = 1/2 + lambda_f / V, n = 1/2 + lambda_n / sqrt(V): exact minus the scaling terms tends to -c.
  const int V = 25600;
  const double root = std::sqrt(static_cast<double>(V));
  for (auto [lambda_f, step] : {std::pair{0, 80}, std::pair{2, 80}, std::pair{-3, 160}, std::pair{1, -112}}) {
    const int N = V / 2 + step;
    const double ln = (static_cast<double>(N) / V - 0.5) * root;
    const double af = std::fabs(lambda_f) * kLn2, an = std::fabs(ln);
    const double scaling = kLn2 * V / 2 - ln * ln - std::sqrt(2 / kPi) * an * std::exp(-af * af / (2 * an * an)) -
                           af * std::erf(af / (std::sqrt(2.0) * an));
    EXPECT_NEAR(fixedN_average(V, V / 2 + lambda_f, N) - scaling, -page_c(lambda_f, ln), 5e-4) << lambda_f << " " << ln;
  }
}

TEST(PageWeightedResolved, HalfSystemAtZeroChemicalPotential) {
  const auto t = page_weighted_resolved_terms(60, 0.5, 0.0);
  EXPECT_NEAR(t.band_integral, 1 / kPi, 1e-10);
  EXPECT_NEAR(t.erfc_lower, 1 / (2 * kPi), 1e-10);
  EXPECT_NEAR(t.erfc_upper, 1 / (2 * kPi), 1e-10);
  EXPECT_EQ(t.crossing, 0.0);
  EXPECT_NEAR(t.total, 30 * kLn2 - 0.5 * kLn2 - 2 / kPi, 1e-9);
}

TEST(PageWeightedResolved, TracksExactSums) {
  for (int V : {400, 1600}) {
    const double root = std::sqrt(static_cast<double>(V));
    for (auto [lambda_f, lambda_n] : {std::pair{0, 0.5}, std::pair{2, 0.5}, std::pair{-3, 1.0}, std::pair{1, -0.7}}) {
      const int VA = V / 2 + lambda_f;
      const double nbar = 0.5 + lambda_n / root;
      const double w = std::log((1 - nbar) / nbar);
      const double exact = weighted_average(V, VA, w, false);
      EXPECT_LT(std::fabs(page_weighted_resolved(V, static_cast<double>(VA) / V, w) - exact) * V, 3.0)
          << V << " " << lambda_f << " " << lambda_n;
    }
  }
}

TEST(GaussianWeightedResolved, LineAndCenterCoefficients) {
  const double f = 0.25;
  EXPECT_NEAR(gaussian_weighted_line(f, 0.0), std::sqrt(f * (1 - f) / (18 * kPi)), 1e-15);
  EXPECT_NEAR(gaussian_weighted_center(0.0, 0.0), 1 / (3 * std::sqrt(2 * kPi)), 1e-15);
  EXPECT_NEAR(gaussian_weighted_line(f, 8.0), 0.0, 1e-10);
  EXPECT_NEAR(gaussian_weighted_center(5.0, 0.0), 0.0, 1e-10);
  EXPECT_NEAR(gaussian_weighted_line(f, 0.3), gaussian_weighted_line(f, -0.3), 1e-15);
  EXPECT_THROW(gaussian_weighted_line(0.5, 0.0), std::domain_error);

  // sqrt(V) coefficient of exact minus the O(V) and O(1) terms at f = nbar = 1/4.
  const int V = 3200;
  const double w = std::log(3.0);
  const double full = gaussian_weighted_thermo(V, f, 0.25);
  const double lead = full - std::sqrt(f * (1 - f) / (18 * kPi)) / std::sqrt(V) - (1 + f) / (24 * (1 - f)) / V;
  EXPECT_NEAR((weighted_average(V, V / 4, w, true) - lead) * std::sqrt(V), gaussian_weighted_line(f, 0.0), 2e-3);
}

TEST(Bosonic, ThermoTracksExact) {
  double prev = 1e9;
  for (int V : {20, 40, 80}) {
    const double err = std::fabs(bosonic_fixedN_thermo(V, 0.25, 0.5) - bosonic_fixedN_exact(V, V / 4, V / 2));
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 3e-3);
}

TEST(Thermo, RejectsFractionsOutsideUnitInterval) {
  EXPECT_THROW(page_thermo(10, 0.0), std::domain_error);
  EXPECT_THROW(fixedN_thermo(10, 0.5, 1.0), std::domain_error);
  EXPECT_THROW(gaussian_weighted_thermo(10, 1.2, 0.5), std::domain_error);
}
