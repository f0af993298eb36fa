#pragma once

#include <limits>

namespace eestat {

/// ln Γ(x) for x > 0. Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Digamma ψ(x) for x > 0, evaluated in extended precision.
long double digamma_l(long double x);
double digamma(double x);

/// Trigamma ψ'(x) for x > 0.
long double trigamma_l(long double x);
double trigamma(double x);

/// ψ(e^L + 1) - L. Stable for arbitrarily large L (dimension given by its logarithm).
long double digamma_exp_offset(long double log_d);

/// d ψ'(d + 1) with d = e^L, evaluated without overflow.
long double scaled_trigamma_exp(long double log_d);

/// erfc, forwarded to the C library.
double erfc(double x);

/// ln erfc(x) valid far into the tail.
double log_erfc(double x);

/// ln C(n, k); -inf when k < 0 or k > n.
double log_binomial(long long n, long long k);
long double log_binomial_l(long long n, long long k);

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
/// Raw values overflow for very large parameters; use the orthonormal
/// functions below in that regime.
double jacobi_poly(int n, double a, double b, double x);

/// ln h_n with h_n = ∫_{-1}^{1} (1-x)^a (1+x)^b [P_n^{(a,b)}(x)]^2 dx.
double log_jacobi_norm(int n, double a, double b);

/// Fills out[k] = (1-x)^a (1+x)^b [p_k(x)]^2 for k = 0..n_max, where p_k are
/// the orthonormal Jacobi polynomials. Stable for large a, b.
void jacobi_weighted_squares(int n_max, double a, double b, double x, double* out);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace eestat
