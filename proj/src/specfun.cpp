#include "eestat/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eestat {

namespace {

constexpr long double kShift = 10.0L;

// Asymptotic tail of ψ(x) - ln x for x >= kShift, through the x^-18 term.
long double digamma_tail(long double x) {
  const long double r = 1.0L / (x * x);
  // Bernoulli B_{2k} / (2k)
  static const long double c[] = {
      1.0L / 12.0L,         -1.0L / 120.0L,     1.0L / 252.0L,
      -1.0L / 240.0L,       1.0L / 132.0L,      -691.0L / 32760.0L,
      1.0L / 12.0L,         -3617.0L / 8160.0L, 43867.0L / 14364.0L};
  long double s = 0.0L;
  for (int k = 8; k >= 0; --k) s = s * r + c[k];
  return -0.5L / x - s * r;
}

long double trigamma_tail(long double x) {
  const long double r = 1.0L / (x * x);
  // Bernoulli B_{2k}
  static const long double c[] = {
      1.0L / 6.0L,  -1.0L / 30.0L,     1.0L / 42.0L,   -1.0L / 30.0L,
      5.0L / 66.0L, -691.0L / 2730.0L, 7.0L / 6.0L,    -3617.0L / 510.0L,
      43867.0L / 798.0L};
  long double s = 0.0L;
  for (int k = 8; k >= 0; --k) s = s * r + c[k];
  return 1.0L / x + 0.5L * r + s * r / x;
}

void require_positive(long double x, const char* name) {
  if (!(x > 0.0L)) throw std::domain_error(std::string(name) + ": argument must be positive");
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return std::lgamma(x);
}

long double digamma_l(long double x) {
  require_positive(x, "digamma");
  long double acc = 0.0L;
  while (x < kShift) {
    acc -= 1.0L / x;
    x += 1.0L;
  }
  return acc + std::log(x) + digamma_tail(x);
}

double digamma(double x) { return static_cast<double>(digamma_l(x)); }

long double trigamma_l(long double x) {
  require_positive(x, "trigamma");
  long double acc = 0.0L;
  while (x < kShift) {
    acc += 1.0L / (x * x);
    x += 1.0L;
  }
  return acc + trigamma_tail(x);
}

double trigamma(double x) { return static_cast<double>(trigamma_l(x)); }

long double digamma_exp_offset(long double log_d) {
  if (log_d < 16.0L) {
    const long double d = std::exp(log_d);
    return digamma_l(d + 1.0L) - log_d;
  }
  const long double e = std::exp(-log_d);
  return 0.5L * e - e * e / 12.0L + e * e * e * e / 120.0L;
}

long double scaled_trigamma_exp(long double log_d) {
  if (std::isinf(log_d) && log_d < 0) return 0.0L;
  if (log_d < 16.0L) {
    const long double d = std::exp(log_d);
    return d * trigamma_l(d + 1.0L);
  }
  const long double e = std::exp(-log_d);
  return 1.0L - 0.5L * e + e * e / 6.0L - e * e * e * e / 30.0L;
}

double erfc(double x) { return std::erfc(x); }

double log_erfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  const double r = 1.0 / (2.0 * x * x);
  const double series = 1.0 - r + 3.0 * r * r - 15.0 * r * r * r;
  return -x * x - std::log(x * std::sqrt(M_PI)) + std::log(series);
}

long double log_binomial_l(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<long double>::infinity();
  if (k == 0 || k == n) return 0.0L;
  return std::lgamma(static_cast<long double>(n) + 1.0L) - std::lgamma(static_cast<long double>(k) + 1.0L) -
         std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

double log_binomial(long long n, long long k) { return static_cast<double>(log_binomial_l(n, k)); }

double jacobi_poly(int n, double a, double b, double x) {
  if (n < 0) throw std::domain_error("jacobi_poly: negative degree");
  const long double al = a, bl = b, xl = x;
  long double p_prev = 1.0L;
  if (n == 0) return 1.0;
  long double p = (al + 1.0L) + (al + bl + 2.0L) * (xl - 1.0L) / 2.0L;
  const long double diff = (al - bl) * (al + bl);
  for (int k = 2; k <= n; ++k) {
    const long double s = 2.0L * k + al + bl;
    const long double c1 = 2.0L * k * (k + al + bl) * (s - 2.0L);
    const long double c2 = (s - 1.0L) * (s * (s - 2.0L) * xl + diff);
    const long double c3 = 2.0L * (k + al - 1.0L) * (k + bl - 1.0L) * s;
    const long double next = (c2 * p - c3 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return static_cast<double>(p);
}

double log_jacobi_norm(int n, double a, double b) {
  const long double al = a, bl = b;
  const long double s = 2.0L * n + al + bl + 1.0L;
  return static_cast<double>((al + bl + 1.0L) * std::log(2.0L) - std::log(s) + std::lgamma(n + al + 1.0L) +
                             std::lgamma(n + bl + 1.0L) - std::lgamma(n + al + bl + 1.0L) -
                             std::lgamma(n + 1.0L));
}

void jacobi_weighted_squares(int n_max, double a, double b, double x, double* out) {
  if (n_max < 0) return;
  if (!(x > -1.0 && x < 1.0)) {
    for (int k = 0; k <= n_max; ++k) out[k] = 0.0;
    return;
  }
  const long double al = a, bl = b, xl = x;
  const long double diff = (bl - al) * (bl + al);
  auto mean_coef = [&](int k) -> long double {
    const long double s = 2.0L * k + al + bl;
    if (k == 0) return (bl - al) / (al + bl + 2.0L);
    return diff / (s * (s + 2.0L));
  };
  // Squared off-diagonal of the monic recurrence, k >= 1.
  auto offdiag_sq = [&](int k) -> long double {
    const long double s = 2.0L * k + al + bl;
    return 4.0L * k * (k + al) * (k + bl) * (k + al + bl) / (s * s * (s + 1.0L) * (s - 1.0L));
  };
  long double log_scale = 0.5L * (al * std::log1p(-xl) + bl * std::log1p(xl) - log_jacobi_norm(0, a, b));
  long double q_prev = 0.0L, q = 1.0L, off_prev = 0.0L;
  for (int k = 0; k <= n_max; ++k) {
    out[k] = static_cast<double>(std::exp(2.0L * (std::log(std::fabs(q)) + log_scale)));
    if (q == 0.0L) out[k] = 0.0;
    if (k == n_max) break;
    const long double off = std::sqrt(offdiag_sq(k + 1));
    const long double next = ((xl - mean_coef(k)) * q - off_prev * q_prev) / off;
    q_prev = q;
    q = next;
    off_prev = off;
    const long double m = std::fabs(q);
    if (m > 1e100L || (m < 1e-100L && m > 0.0L)) {
      const long double sc = std::log(m);
      q /= m;
      q_prev /= m;
      log_scale += sc;
    }
  }
}

}  // namespace eestat
