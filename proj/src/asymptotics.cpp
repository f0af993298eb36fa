#include "eestat/asymptotics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "eestat/specfun.hpp"

namespace eestat {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

void check_fraction(double x, const char* who) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error(std::string(who) + ": fraction must lie in (0,1)");
}

double fold(double x) { return std::min(x, 1.0 - x); }

// n ln n + (1-n) ln(1-n)
double neg_binary_entropy(double n) { return n * std::log(n) + (1.0 - n) * std::log1p(-n); }

double delta(bool c) { return c ? 1.0 : 0.0; }

template <typename F>
double integrate_0_10(F&& g) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 10.0, 20, 1e-12, &err);
  if (!std::isfinite(v) || err > 1e-10 * std::max(1.0, std::fabs(v)))
    throw std::runtime_error("page_weighted_resolved: quadrature did not converge");
  return v;
}

}  // namespace

MeanVariance page_thermo(double V, double f) {
  check_fraction(f, "page_thermo");
  const double g = std::fabs(1.0 - 2.0 * f);
  const double mean = fold(f) * V * kLn2 - std::exp2(-g * V - 1.0);
  const double var = (0.5 - 0.25 * delta(f == 0.5)) * std::exp2(-(1.0 + g) * V);
  return {mean, var};
}

double fixedN_thermo(double V, double f, double n) {
  check_fraction(f, "fixedN_thermo");
  check_fraction(n, "fixedN_thermo");
  f = fold(f);
  n = fold(n);
  const double lead = -neg_binary_entropy(n) * f * V;
  const double root = std::sqrt(n * (1.0 - n) / (2.0 * kPi)) * std::fabs(std::log((1.0 - n) / n)) * delta(f == 0.5) * std::sqrt(V);
  return lead - root + 0.5 * (f + std::log1p(-f)) - 0.5 * delta(f == 0.5) * delta(n == 0.5);
}

double fixedN_variance_thermo(double V, double f, double n) {
  check_fraction(f, "fixedN_variance_thermo");
  check_fraction(n, "fixedN_variance_thermo");
  f = fold(f);
  n = fold(n);
  const double logit = std::log(n / (1.0 - n));
  const double amp = std::sqrt(2.0 * kPi) * (f * (1.0 - f) - delta(f == 0.5) / (2.0 * kPi)) * logit * logit *
                     std::pow(n * (1.0 - n), 1.5);
  const double rate = -neg_binary_entropy(n);
  return amp * std::pow(V, 1.5) * std::exp(-rate * V);
}

double page_weighted_thermo(double V, double f, double nbar) {
  check_fraction(f, "page_weighted_thermo");
  check_fraction(nbar, "page_weighted_thermo");
  f = fold(f);
  nbar = fold(nbar);
  const double lead = -neg_binary_entropy(nbar) * f * V;
  const double root =
      std::sqrt(nbar * (1.0 - nbar) / (2.0 * kPi)) * std::fabs(std::log((1.0 - nbar) / nbar)) * delta(f == 0.5) * std::sqrt(V);
  return lead - root + 0.5 * std::log1p(-f) - (2.0 / kPi) * delta(f == 0.5) * delta(nbar == 0.5);
}

double page_weighted_variance_thermo(double V, double f, double nbar) {
  check_fraction(f, "page_weighted_variance_thermo");
  check_fraction(nbar, "page_weighted_variance_thermo");
  f = fold(f);
  const double logit = std::log(nbar / (1.0 - nbar));
  // Sector fluctuations: d<S>_N/dN = f logit, Var N = nbar (1 - nbar) V.
  return nbar * (1.0 - nbar) * logit * logit * f * f * V;
}

double gaussian_thermo(double V, double f) {
  check_fraction(f, "gaussian_thermo");
  f = fold(f);
  return V * ((kLn2 - 1.0) * f + (f - 1.0) * std::log1p(-f)) + 0.5 * f + 0.25 * std::log1p(-f);
}

double gaussian_fixedN_thermo(double V, double f, double n) {
  check_fraction(f, "gaussian_fixedN_thermo");
  check_fraction(n, "gaussian_fixedN_thermo");
  f = fold(f);
  n = fold(n);
  if (f > n) std::swap(f, n);
  const double lead = (f - 1.0) * std::log1p(-f) + f * ((n - 1.0) * std::log1p(-n) - n * std::log(n) - 1.0);
  return lead * V + f * (1.0 - f + n * (1.0 - n)) / (12.0 * (1.0 - f) * (1.0 - n) * n) / V;
}

double gaussian_weighted_thermo(double V, double f, double nbar) {
  check_fraction(f, "gaussian_weighted_thermo");
  check_fraction(nbar, "gaussian_weighted_thermo");
  f = fold(f);
  const double nb = fold(nbar);
  if (f < nb) {
    const double lead = (f - 1.0) * std::log1p(-f) + f * ((nb - 1.0) * std::log1p(-nb) - 1.0 - nb * std::log(nb));
    return lead * V - 0.5 * f + (f - 2.0) * f / (12.0 * (f - 1.0)) / V;
  }
  if (nb < f) {
    const double lead = (f - 1.0) * nb * std::log1p(-f) - nb * (1.0 + f * std::log(f)) + (nb - 1.0) * std::log1p(-nb);
    return lead * V - 0.5 * nb + nb * (1.0 - f + f * f) / (12.0 * f * (1.0 - f)) / V;
  }
  if (f < 0.5) {
    const double lead = (f * f - 1.0) * std::log1p(-f) - f * (1.0 + f * std::log(f));
    return lead * V - 0.5 * f + std::sqrt((1.0 - f) * f / (18.0 * kPi)) / std::sqrt(V) + (1.0 + f) / (24.0 * (1.0 - f)) / V;
  }
  return (kLn2 - 0.5) * V - 0.25 + 1.0 / (3.0 * std::sqrt(2.0 * kPi)) / std::sqrt(V) + 0.125 / V;
}

double gaussian_weighted_variance_thermo(double V, double f, double nbar) {
  check_fraction(f, "gaussian_weighted_variance_thermo");
  check_fraction(nbar, "gaussian_weighted_variance_thermo");
  f = fold(f);
  const double nb = fold(nbar);
  const double spread = nb * (1.0 - nb);
  if (f <= nb) {
    const double logit = std::log(nb / (1.0 - nb));
    return spread * logit * logit * f * f * V;
  }
  // Derivative of the n < f mean coefficient with respect to the filling.
  const double bracket = std::log1p(-nb) - (1.0 - f) * std::log1p(-f) - f * std::log(f);
  return spread * bracket * bracket * V;
}

double page_resolved(double V, double f, double n) {
  check_fraction(f, "page_resolved");
  check_fraction(n, "page_resolved");
  f = fold(f);
  n = fold(n);
  const double L = neg_binary_entropy(n);
  const double K = std::log((1.0 - n) / n);
  const double q = n * (1.0 - n);
  double s = -V * f * L + 0.5 * f + 0.5 * std::log1p(-f);
  if (K > 0.0) {
    const double dn = -V * (1.0 - 2.0 * f) * L / (2.0 * K);
    if (f < 0.5) s -= 0.5 * V * (1.0 - 2.0 * f) * L * std::erfc(std::sqrt(2.0 / (q * V)) * dn);
    s -= std::sqrt(q * V / (2.0 * kPi)) * K * std::exp(-2.0 * dn * dn / (q * V));
    const double g = 1.0 - 2.0 * n;
    const double a = kLn2 * (1.0 - 2.0 * f);
    const double base = V * g * g / 2.0 - 2.0 * kLn2;
    const double z_lo = std::sqrt(V) * (g * g - a) / (std::sqrt(2.0) * g);
    const double z_hi = std::sqrt(V) * (g * g + a) / (std::sqrt(2.0) * g);
    s -= std::exp(-V * a + base + log_erfc(z_lo));
    s -= std::exp(V * a + base + log_erfc(z_hi));
  } else {
    // n = 1/2: the two kink terms combine to 2^{V(2f-1)-1}.
    s -= std::exp2(V * (2.0 * f - 1.0) - 1.0);
  }
  return s;
}

double page_b(double lambda_f, double n) {
  check_fraction(n, "page_b");
  const double K = std::fabs(std::log((1.0 - n) / n));
  if (K == 0.0) return 0.0;
  const double L = neg_binary_entropy(n);
  const double q = n * (1.0 - n);
  const double lf = std::fabs(lambda_f);
  return lf * L * std::erfc(-std::sqrt(2.0) * lf * L / (std::sqrt(q) * K)) +
         std::sqrt(q / (2.0 * kPi)) * K * std::exp(-2.0 * lambda_f * lambda_f * L * L / (q * K * K));
}

double page_c(double lambda_f, double lambda_n) {
  if (lambda_n == 0.0) throw std::domain_error("page_c: lambda_n must be nonzero");
  const double ln2 = lambda_n * lambda_n;
  const double den = std::sqrt(2.0) * std::fabs(lambda_n);
  const double e1 = std::exp(2.0 * ln2 + lambda_f * 2.0 * kLn2 + log_erfc((2.0 * ln2 + lambda_f * kLn2) / den));
  const double e2 = std::exp(2.0 * ln2 - lambda_f * 2.0 * kLn2 + log_erfc((2.0 * ln2 - lambda_f * kLn2) / den));
  return 0.25 * (2.0 * kLn2 - 1.0 + e1 + e2);
}

WeightedResolvedTerms page_weighted_resolved_terms(double V, double f, double w) {
  check_fraction(f, "page_weighted_resolved");
  if (!std::isfinite(w)) throw std::domain_error("page_weighted_resolved: w must be finite");
  f = fold(f);
  const double nbar = 1.0 / (1.0 + std::exp(w));
  const double rv = std::sqrt(V);
  const double x = kLn2 * V * (1.0 - 2.0 * f);
  const double damp = std::exp(-V * w * w / 8.0);

  WeightedResolvedTerms t{};
  const double drift = (1.0 - 2.0 * nbar) * (1.0 - 2.0 * nbar);
  t.smooth = kLn2 * V * f - 0.5 * V * f * drift - 2.0 * f * nbar * (1.0 - nbar) + 0.5 * f + 0.5 * std::log1p(-f);
  t.band_integral = (4.0 / kPi) * integrate_0_10([&](double d) {
    return std::exp(-2.0 * d * d - x * x / (8.0 * d * d)) * std::cosh(rv * w * d) * d;
  });
  t.erfc_lower = integrate_0_10([&](double d) {
    return std::cosh(rv * w * d) * std::erfc((4.0 * d * d - x) / (std::sqrt(8.0) * d)) / std::sqrt(2.0 * kPi);
  });
  t.erfc_upper = integrate_0_10([&](double d) {
    return std::cosh(rv * w * d) * std::erfc((4.0 * d * d + x) / (std::sqrt(8.0) * d)) / std::sqrt(2.0 * kPi);
  });
  if (x > 0.0) {
    const double avg = integrate_0_10([&](double d) {
      return std::exp(-2.0 * d * d) * std::cosh(rv * w * d) * std::erfc(x / (std::sqrt(8.0) * d));
    });
    t.crossing = 0.5 * x * 4.0 / std::sqrt(2.0 * kPi) * damp * avg;
  }
  t.total = t.smooth - damp * t.band_integral - std::exp2(V * (2.0 * f - 1.0)) * damp * t.erfc_lower -
            std::exp2(V * (1.0 - 2.0 * f)) * damp * t.erfc_upper + t.crossing;
  return t;
}

double page_weighted_resolved(double V, double f, double w) { return page_weighted_resolved_terms(V, f, w).total; }

double gaussian_weighted_center(double lambda_f, double lambda_n) {
  const double u = std::fabs(lambda_f) - std::fabs(lambda_n);
  const double v = std::fabs(lambda_f) + std::fabs(lambda_n);
  const double au = std::fabs(u);
  return (std::sqrt(2.0 / kPi) * (std::exp(-2.0 * u * u) * (1.0 + 2.0 * u * u) + std::exp(-2.0 * v * v) * (1.0 + 2.0 * v * v)) -
          v * (3.0 + 4.0 * v * v) * std::erfc(std::sqrt(2.0) * v) - au * (3.0 + 4.0 * u * u) * std::erfc(std::sqrt(2.0) * au)) /
         12.0;
}

double gaussian_weighted_line(double f, double lambda_n) {
  if (!(f > 0.0 && f < 0.5)) throw std::domain_error("gaussian_weighted_line: f must lie in (0, 1/2)");
  const double q = f * (1.0 - f);
  const double l2 = lambda_n * lambda_n;
  const double gauss = std::exp(-l2 / (2.0 * q)) * (2.0 * std::pow(f, 1.5) - 2.0 * std::pow(f, 2.5) + std::sqrt(f) * l2) /
                       (6.0 * std::sqrt(1.0 - f) * f * std::sqrt(2.0 * kPi));
  const double tail = std::fabs(lambda_n) * (3.0 * q + l2) * std::erfc(std::fabs(lambda_n) / std::sqrt(2.0 * q)) / (12.0 * q);
  return gauss - tail;
}

double bosonic_fixedN_thermo(double V, double f, double n) {
  check_fraction(f, "bosonic_fixedN_thermo");
  if (!(n > 0.0)) throw std::domain_error("bosonic_fixedN_thermo: n must be positive");
  f = fold(f);
  const double l = std::log1p(1.0 / n);
  return f * V * (n * l + std::log1p(n)) + std::sqrt(V) * std::sqrt((n + n * n) / (8.0 * kPi)) * l * delta(f == 0.5) +
         0.5 * (f + std::log1p(-f));
}

}  // namespace eestat
