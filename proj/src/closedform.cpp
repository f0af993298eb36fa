#include "eestat/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "eestat/entropy.hpp"
#include "eestat/specfun.hpp"

namespace eestat {

namespace {

constexpr long double kInfL = std::numeric_limits<long double>::infinity();

void check_sector(int V, int VA, int N, const char* who) {
  if (V <= 0 || VA < 0 || VA > V || N < 0 || N > V)
    throw std::invalid_argument(std::string(who) + ": require V > 0, 0 <= VA <= V, 0 <= N <= V");
}

// φ for one block: ψ(d_N+1) - ψ(max+1) - min((dA-1)/(2dB), (dB-1)/(2dA)).
long double block_phi(long double LA, long double LB, long double LN) {
  const long double Lmax = std::max(LA, LB), Lmin = std::min(LA, LB);
  const long double ratio_term = 0.5L * (std::exp(Lmin - Lmax) - std::exp(-Lmax));
  return (LN - Lmax) + digamma_exp_offset(LN) - digamma_exp_offset(Lmax) - ratio_term;
}

// χ for one block, with s(L) = d ψ'(d+1).
long double block_chi(long double LA, long double LB, long double LN) {
  const long double Lmax = std::max(LA, LB), Lmin = std::min(LA, LB);
  const long double r = std::exp(Lmin - Lmax);
  const long double inv_max = std::exp(-Lmax), inv_N = std::exp(-LN);
  const long double first = (1.0L + r) * scaled_trigamma_exp(Lmax);
  const long double second = (1.0L + inv_N) * scaled_trigamma_exp(LN);
  const long double third = 0.25L * (r - inv_max) * (r + 2.0L - inv_max);
  return first - second - third;
}

struct Block {
  long double rho;
  long double phi;
  long double chi;
};

// Generic sector sum; log_dims(NA) returns (ln dA, ln dB).
template <typename LogDims>
std::vector<Block> sector_blocks(int NA_max, long double LN, LogDims log_dims) {
  std::vector<Block> out;
  for (int NA = 0; NA <= NA_max; ++NA) {
    const auto [LA, LB] = log_dims(NA);
    if (std::isinf(LA) || std::isinf(LB)) continue;
    out.push_back({std::exp(LA + LB - LN), block_phi(LA, LB, LN), block_chi(LA, LB, LN)});
  }
  return out;
}

long double blocks_mean(const std::vector<Block>& blocks) {
  long double m = 0.0L;
  for (const auto& b : blocks) m += b.rho * b.phi;
  return m;
}

long double blocks_variance(const std::vector<Block>& blocks, long double LN) {
  const long double m = blocks_mean(blocks);
  long double acc = 0.0L;
  for (const auto& b : blocks) acc += b.rho * ((b.phi - m) * (b.phi - m) + b.chi);
  const long double inv = std::exp(-LN) / (1.0L + std::exp(-LN));
  return acc * inv;
}

std::vector<Block> fermion_blocks(int V, int VA, int N) {
  const long double LN = log_binomial_l(V, N);
  return sector_blocks(std::min(N, VA), LN, [&](int NA) {
    return std::pair<long double, long double>(log_binomial_l(VA, NA), log_binomial_l(V - VA, N - NA));
  });
}

// ln P_N for the binomial sector weights.
long double log_sector_weight(int V, int N, double w) {
  const long double wl = w;
  const long double softplus = std::max(-wl, 0.0L) + std::log1p(std::exp(-std::fabs(wl)));
  return log_binomial_l(V, N) - wl * N - V * softplus;
}

// Canonical wedge VA <= N <= V/2 for the Gaussian fixed-N formula.
void canonical_gaussian(int V, int& VA, int& N) {
  N = std::min(N, V - N);
  VA = std::min(VA, V - VA);
  if (VA > N) std::swap(VA, N);
}

void canonical_fractions(double& f, double& n) {
  f = std::min(f, 1.0 - f);
  n = std::min(n, 1.0 - n);
  if (f > n) std::swap(f, n);
}

// Fourier-cosine coefficients c_d, d = 0..d_max, of θ -> s(b + 2a cos θ) by the
// trapezoid rule on the periodic integrand.
std::vector<double> band_cosine_coefficients(double f, double n, int d_max) {
  const double a = 2.0 * std::sqrt(f * (1.0 - f) * n * (1.0 - n));
  const double b = (2.0 * n - 1.0) * (1.0 - 2.0 * f);
  const int M = std::max(8192, 8 * d_max);
  std::vector<double> g(M + 1);
  for (int k = 0; k <= M; ++k) g[k] = s_binary(b + 2.0 * a * std::cos(M_PI * k / M));
  std::vector<double> c(d_max + 1, 0.0);
  for (int d = 0; d <= d_max; ++d) {
    long double acc = 0.5L * (g[0] + g[M] * ((d % 2) ? -1.0L : 1.0L));
    for (int k = 1; k < M; ++k) acc += g[k] * std::cos(static_cast<long double>(M_PI) * d * k / M);
    c[d] = static_cast<double>(acc / M);
  }
  return c;
}

}  // namespace

double page_average_log(long double LA, long double LB) {
  return static_cast<double>(block_phi(LA, LB, LA + LB));
}

double page_average(double dA, double dB) {
  if (!(dA >= 1.0 && dB >= 1.0)) throw std::invalid_argument("page_average: dimensions must be >= 1");
  return page_average_log(std::log(static_cast<long double>(dA)), std::log(static_cast<long double>(dB)));
}

double page_variance(double dA, double dB) {
  if (!(dA >= 1.0 && dB >= 1.0)) throw std::invalid_argument("page_variance: dimensions must be >= 1");
  long double a = std::min(dA, dB), b = std::max(dA, dB);
  const long double prod = a * b + 1.0L;
  const long double v = (a + b) / prod * trigamma_l(b + 1.0L) - trigamma_l(prod) -
                        (a - 1.0L) * (a + 2.0L * b - 1.0L) / (4.0L * b * b * prod);
  return static_cast<double>(std::max(v, 0.0L));
}

double fixedN_average(int V, int VA, int N) {
  check_sector(V, VA, N, "fixedN_average");
  return static_cast<double>(blocks_mean(fermion_blocks(V, VA, N)));
}

double fixedN_variance(int V, int VA, int N) {
  check_sector(V, VA, N, "fixedN_variance");
  return static_cast<double>(blocks_variance(fermion_blocks(V, VA, N), log_binomial_l(V, N)));
}

double mean_filling(double w) { return 1.0 / (1.0 + std::exp(w)); }

double weighted_average(int V, int VA, double w, bool gaussian) {
  check_sector(V, VA, 0, "weighted_average");
  if (!std::isfinite(w)) throw std::invalid_argument("weighted_average: w must be finite");
  long double acc = 0.0L;
  for (int N = 0; N <= V; ++N) {
    const long double lp = log_sector_weight(V, N, w);
    if (lp < -745.0L) continue;
    acc += std::exp(lp) * (gaussian ? gaussian_fixedN_average(V, VA, N) : fixedN_average(V, VA, N));
  }
  return static_cast<double>(acc);
}

double weighted_variance(int V, int VA, double w, bool gaussian) {
  check_sector(V, VA, 0, "weighted_variance");
  if (!std::isfinite(w)) throw std::invalid_argument("weighted_variance: w must be finite");
  std::vector<long double> p, mean, var;
  for (int N = 0; N <= V; ++N) {
    const long double lp = log_sector_weight(V, N, w);
    if (lp < -745.0L) continue;
    p.push_back(std::exp(lp));
    if (gaussian) {
      mean.push_back(gaussian_fixedN_average(V, VA, N));
      const double f = static_cast<double>(VA) / V, n = static_cast<double>(N) / V;
      const bool trivial = VA == 0 || VA == V || N == 0 || N == V;
      var.push_back(trivial ? 0.0 : gaussian_fixedN_variance_asymptotic(f, n));
    } else {
      mean.push_back(fixedN_average(V, VA, N));
      var.push_back(fixedN_variance(V, VA, N));
    }
  }
  long double m = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) m += p[i] * mean[i];
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * ((mean[i] - m) * (mean[i] - m) + var[i]);
  return static_cast<double>(acc);
}

double gaussian_average(int V, int VA) {
  check_sector(V, VA, 0, "gaussian_average");
  VA = std::min(VA, V - VA);
  if (VA == 0) return 0.0;
  const long double Vl = V, VAl = VA;
  const long double r = (Vl - 0.5L) * digamma_l(2.0L * Vl) + (0.5L + VAl - Vl) * digamma_l(2.0L * Vl - 2.0L * VAl) +
                        (0.25L - VAl) * digamma_l(Vl) - 0.25L * digamma_l(Vl - VAl) - VAl;
  return static_cast<double>(r);
}

double gaussian_variance_asymptotic(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("gaussian_variance_asymptotic: f outside [0,1]");
  f = std::min(f, 1.0 - f);
  return 0.5 * (f + f * f + std::log1p(-f));
}

double gaussian_variance_element_sq(int i, int j, int delta) {
  if (!(0 <= i && i < j) || delta < 0) throw std::invalid_argument("gaussian_variance_element_sq: require 0 <= i < j");
  const long double I = i, J = j, D = delta;
  const long double poly = (1.0L + D - 2.0L * D * D) * I - 2.0L * (D - 1.0L) * I * I + (D + 1.0L) * (2.0L * J + 1.0L) * (D + J);
  if (poly == 0.0L) return 0.0;
  const long double num = std::lgamma(2.0L * J + 1.0L) + std::log(2.0L * D + 4.0L * I + 1.0L) + std::log(D + J + 1.0L) +
                          std::log(2.0L * D + 2.0L * J + 1.0L) + std::log(2.0L * D + 4.0L * J + 1.0L) +
                          std::lgamma(2.0L * D + 2.0L * I + 1.0L) + 2.0L * std::log(std::fabs(poly));
  const long double den = std::log(2.0L) + std::lgamma(2.0L * I + 1.0L) + 2.0L * std::log(2.0L * (J - I) - 1.0L) +
                          2.0L * std::log(J - I) + 2.0L * std::log(2.0L * (J - I) + 1.0L) +
                          std::lgamma(2.0L * D + 2.0L * J + 3.0L) + 2.0L * std::log(D + I + J) +
                          2.0L * std::log(D + I + J + 1.0L) + 2.0L * std::log(2.0L * D + 2.0L * I + 2.0L * J + 1.0L);
  return static_cast<double>(std::exp(num - den));
}

double gaussian_variance(int V, int VA, VarianceMode mode) {
  check_sector(V, VA, 0, "gaussian_variance");
  VA = std::min(VA, V - VA);
  if (mode == VarianceMode::Asymptotic) return gaussian_variance_asymptotic(static_cast<double>(VA) / V);
  if (VA == 0) return 0.0;
  const int delta = V - 2 * VA;
  const long double tail_tol = 1e-12L / VA;
  long double total = 0.0L;
  for (int i = 0; i < VA; ++i) {
    long double prev = 0.0L;
    for (int j = VA;; ++j) {
      const long double t = gaussian_variance_element_sq(i, j, delta);
      total += t;
      if (j > VA + 2 && prev > 0.0L && t < prev) {
        const long double r = t / prev;
        const long double bound = 10.0L * t * r / (1.0L - r);
        if (bound < tail_tol) break;
      }
      if (j > VA + 2000000) break;
      prev = t;
    }
  }
  return static_cast<double>(total);
}

double gaussian_variance_limit_summand(double f, int k, int l) {
  if (!(f > 0.0 && f <= 0.5)) throw std::domain_error("gaussian_variance_limit_summand: f must lie in (0, 1/2]");
  const long double m = k + l, F = f;
  const long double lead = -2.0L * (m + 1.0L) * std::log(1.0L / F - 1.0L);
  const long double p = 2.0L * m + 3.0L - 4.0L * F * (m + 1.0L);
  const long double den = 4.0L * (m + 1.0L) * (m + 1.0L) * (2.0L * m + 1.0L) * (2.0L * m + 1.0L) * (2.0L * m + 3.0L) *
                          (2.0L * m + 3.0L);
  return static_cast<double>(std::exp(lead) * p * p / den);
}

double gaussian_variance_limit_sum(double f, int max_order) {
  long double acc = 0.0L;
  for (int m = 0; m <= max_order; ++m) acc += (m + 1.0L) * gaussian_variance_limit_summand(f, m, 0);
  return static_cast<double>(acc);
}

double gaussian_fixedN_average(int V, int VA, int N) {
  check_sector(V, VA, N, "gaussian_fixedN_average");
  canonical_gaussian(V, VA, N);
  if (VA == 0) return 0.0;
  const long double Vl = V, A = VA, Nl = N;
  const long double r = 1.0L - A / Vl * (1.0L + Vl) - Nl * A / Vl * digamma_l(Nl) + Vl * digamma_l(Vl) +
                        A * (Nl - Vl) / Vl * digamma_l(Vl - Nl) + (A - Vl) * digamma_l(Vl - A + 1.0L);
  return static_cast<double>(r);
}

double gaussian_fixedN_variance_asymptotic(double f, double n) {
  if (!(f > 0.0 && f < 1.0 && n > 0.0 && n < 1.0))
    throw std::domain_error("gaussian_fixedN_variance_asymptotic: (f, n) must lie in (0,1)^2");
  canonical_fractions(f, n);
  const double L = std::log(1.0 / n - 1.0);
  return std::log1p(-f) + f + f * f + f * f * (2.0 * n - 1.0) * L + f * (f - 1.0) * (n - 1.0) * n * L * L;
}

double gaussian_fixedN_variance_limit_summand(double f, double n, int k, int l) {
  if (!(f > 0.0 && f < 1.0 && n > 0.0 && n < 1.0))
    throw std::domain_error("gaussian_fixedN_variance_limit_summand: (f, n) must lie in (0,1)^2");
  const int d = k + l + 1;
  const double c = band_cosine_coefficients(f, n, d)[d];
  return c * c;
}

double gaussian_fixedN_variance_limit_sum(double f, double n, int max_order) {
  if (!(f > 0.0 && f < 1.0 && n > 0.0 && n < 1.0))
    throw std::domain_error("gaussian_fixedN_variance_limit_sum: (f, n) must lie in (0,1)^2");
  const auto c = band_cosine_coefficients(f, n, max_order + 1);
  long double acc = 0.0L;
  // k + l = d - 1 has d index pairs.
  for (int d = 1; d <= max_order + 1; ++d) acc += static_cast<long double>(d) * c[d] * c[d];
  return static_cast<double>(acc);
}

double fixedN_level_density(double x, int V, int VA, int N) {
  check_sector(V, VA, N, "fixedN_level_density");
  if (VA > N || N > V - VA) throw std::domain_error("fixedN_level_density: require VA <= N <= V - VA");
  if (VA == 0 || x <= -1.0 || x >= 1.0) return 0.0;
  std::vector<double> sq(VA);
  jacobi_weighted_squares(VA - 1, V - N - VA, N - VA, x, sq.data());
  long double acc = 0.0L;
  for (double v : sq) acc += v;
  return static_cast<double>(acc);
}

double arbitraryN_level_density(double x, int V, int VA) {
  if (V <= 0 || VA < 0 || 2 * VA > V) throw std::domain_error("arbitraryN_level_density: require 0 <= 2 VA <= V");
  if (VA == 0 || x < 0.0 || x >= 1.0) return 0.0;
  const int delta = V - 2 * VA;
  std::vector<double> sq(2 * VA);
  jacobi_weighted_squares(2 * VA - 1, delta, delta, x, sq.data());
  long double acc = 0.0L;
  for (int j = 0; j < VA; ++j) acc += 2.0L * sq[2 * j];
  return static_cast<double>(acc);
}

long double bosonic_log_dim(int modes, int particles) {
  if (particles < 0 || modes < 0) return -kInfL;
  if (modes == 0) return particles == 0 ? 0.0L : -kInfL;
  return log_binomial_l(static_cast<long long>(particles) + modes - 1, particles);
}

double bosonic_fixedN_exact(int V, int VA, int N) {
  if (V <= 0 || VA < 0 || VA > V || N < 0) throw std::invalid_argument("bosonic_fixedN_exact: invalid parameters");
  const long double LN = bosonic_log_dim(V, N);
  const auto blocks = sector_blocks(N, LN, [&](int NA) {
    return std::pair<long double, long double>(bosonic_log_dim(VA, NA), bosonic_log_dim(V - VA, N - NA));
  });
  return static_cast<double>(blocks_mean(blocks));
}

}  // namespace eestat
