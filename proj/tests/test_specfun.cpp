#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "eestat/specfun.hpp"

using namespace eestat;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::max(1e-300, std::fabs(want)); }

}  // namespace

// Reference values from 50-digit evaluations.
TEST(Digamma, MatchesHighPrecisionValues) {
  EXPECT_LT(rel(digamma(0.5), -1.9635100260214234794), 1e-14);
  EXPECT_LT(rel(digamma(7.3), 1.9178203356379860984), 1e-14);
  EXPECT_LT(rel(digamma(0.01), -100.5608854578686745), 1e-14);
  EXPECT_LT(rel(digamma(1.0), -0.57721566490153286061), 1e-14);
}

TEST(Trigamma, MatchesHighPrecisionValues) {
  EXPECT_LT(rel(trigamma(0.5), 4.9348022005446793094), 1e-14);
  EXPECT_LT(rel(trigamma(7.3), 0.14679576813142709816), 1e-14);
}

TEST(Digamma, RecurrenceHolds) {
  for (double x : {0.3, 1.7, 9.99, 10.01, 123.4}) {
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-13 * std::max(1.0, 1.0 / x));
    EXPECT_NEAR(trigamma(x) - trigamma(x + 1.0), 1.0 / (x * x), 1e-13 * std::max(1.0, 1.0 / (x * x)));
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), std::domain_error);
  EXPECT_THROW(log_gamma(-1.0), std::domain_error);
}

TEST(DigammaExp, OffsetAndScaledTrigamma) {
  struct Row {
    double L, offset, scaled;
  };
  const Row rows[] = {{3.0, 0.024687022644032885005, 0.97551938673313452887},
                      {20.0, 1.0305768108652493927e-9, 0.99999999896942318949},
                      {50.0, 9.6437492398195889148e-23, 1.0}};
  for (const auto& r : rows) {
    EXPECT_LT(rel(static_cast<double>(digamma_exp_offset(r.L)), r.offset), 1e-10) << r.L;
    EXPECT_LT(rel(static_cast<double>(scaled_trigamma_exp(r.L)), r.scaled), 1e-14) << r.L;
  }
  // e^L overflows a double here; the offset is below every representable scale.
  EXPECT_EQ(static_cast<double>(scaled_trigamma_exp(2000.0L)), 1.0);
  EXPECT_GE(static_cast<double>(digamma_exp_offset(2000.0L)), 0.0);
}

TEST(LogErfc, DeepTail) {
  const double xs[] = {1.0, 5.0, 26.0, 30.0, 100.0};
  const double want[] = {-1.8496055099332482486, -27.200889545537434422, -679.83119976319423026,
                         -903.97411711064387808, -10005.177585122664333};
  for (int i = 0; i < 5; ++i) EXPECT_LT(rel(log_erfc(xs[i]), want[i]), 1e-13) << xs[i];
  EXPECT_NEAR(log_erfc(-3.0), std::log(std::erfc(-3.0)), 1e-15);
  EXPECT_NEAR(log_erfc(0.0), 0.0, 1e-16);
}

TEST(LogBinomial, Values) {
  EXPECT_LT(rel(log_binomial(100, 50), 66.783841652017426009), 1e-14);
  EXPECT_LT(rel(log_binomial(1000, 300), 607.27149626437476491), 1e-14);
  EXPECT_EQ(log_binomial(7, 0), 0.0);
  EXPECT_NEAR(log_binomial(10, 3), std::log(120.0), 1e-14);
  EXPECT_EQ(log_binomial(5, 6), kNegInf);
  EXPECT_EQ(log_binomial(5, -1), kNegInf);
}

TEST(Jacobi, PolynomialValues) {
  EXPECT_NEAR(jacobi_poly(3, 2.0, 5.0, 0.3), -0.33725, 1e-14);
  EXPECT_NEAR(jacobi_poly(7, 0.5, 1.5, -0.6), -0.15098565625, 1e-14);
  EXPECT_LT(rel(jacobi_poly(10, 20.0, 3.0, 0.1), 237.87855038046708984), 1e-13);
  EXPECT_EQ(jacobi_poly(0, 3.0, 4.0, 0.2), 1.0);
  // P_n^{(0,0)} is the Legendre polynomial.
  EXPECT_NEAR(jacobi_poly(2, 0.0, 0.0, 0.4), 0.5 * (3 * 0.16 - 1), 1e-15);
}

TEST(Jacobi, NormMatchesQuadrature) {
  using boost::math::quadrature::gauss_kronrod;
  for (int n : {0, 1, 4, 9})
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{2.0, 5.0}, std::pair{0.5, 1.5}, std::pair{6.0, 1.0}}) {
      auto integrand = [&](double x) {
        const double p = jacobi_poly(n, a, b, x);
        return std::pow(1 - x, a) * std::pow(1 + x, b) * p * p;
      };
      const double q = gauss_kronrod<double, 61>::integrate(integrand, -1.0, 1.0, 15, 1e-14);
      EXPECT_LT(rel(std::exp(log_jacobi_norm(n, a, b)), q), 1e-10) << n << " " << a << " " << b;
    }
}

TEST(Jacobi, WeightedSquaresAreOrthonormal) {
  using boost::math::quadrature::gauss_kronrod;
  const int n_max = 6;
  for (auto [a, b] : {std::pair{3.0, 8.0}, std::pair{40.0, 2.0}}) {
    std::vector<double> buf(n_max + 1);
    for (int k = 0; k <= n_max; ++k) {
      auto integrand = [&](double x) {
        jacobi_weighted_squares(n_max, a, b, x, buf.data());
        return buf[static_cast<std::size_t>(k)];
      };
      const double q = gauss_kronrod<double, 61>::integrate(integrand, -1.0, 1.0, 15, 1e-13);
      EXPECT_NEAR(q, 1.0, 1e-10) << k << " " << a << " " << b;
    }
  }
}

TEST(Jacobi, WeightedSquaresStayFiniteForHugeParameters) {
  std::vector<double> buf(51);
  jacobi_weighted_squares(50, 4000.0, 3500.0, 0.02, buf.data());
  for (double v : buf) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
}
