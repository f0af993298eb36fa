#pragma once

namespace eestat {

/// Average entanglement entropy of a Haar-random state in a dA x dB bipartite space.
double page_average(double dA, double dB);
double page_variance(double dA, double dB);

/// Same with dimensions given by their natural logarithms.
double page_average_log(long double log_dA, long double log_dB);

/// Uniform states in the N-particle sector of V fermionic modes, subsystem of VA modes.
double fixedN_average(int V, int VA, int N);
double fixedN_variance(int V, int VA, int N);

/// Sector-weighted ensemble with P_N proportional to C(V,N) e^{-wN}.
/// With gaussian=true the per-sector values are those of fixed-N Gaussian states;
/// the per-sector Gaussian variance is then the large-V limit.
double weighted_average(int V, int VA, double w, bool gaussian);
double weighted_variance(int V, int VA, double w, bool gaussian);

/// Mean filling 1/(1+e^w).
double mean_filling(double w);

/// Fermionic Gaussian states without particle-number constraint.
double gaussian_average(int V, int VA);

enum class VarianceMode { ExactSum, Asymptotic };
double gaussian_variance(int V, int VA, VarianceMode mode);
/// Limit (f + f^2 + ln(1-f))/2.
double gaussian_variance_asymptotic(double f);
/// Squared matrix element of the entropy function between orthonormal
/// Jacobi functions i < j, for Delta = V - 2 VA.
double gaussian_variance_element_sq(int i, int j, int delta);
/// Large-V summand for indices (k, l) and its truncated double sum over k + l <= max_order.
double gaussian_variance_limit_summand(double f, int k, int l);
double gaussian_variance_limit_sum(double f, int max_order);

/// Fermionic Gaussian states with N particles.
double gaussian_fixedN_average(int V, int VA, int N);
double gaussian_fixedN_variance_asymptotic(double f, double n);
/// Large-V summand for indices (k, l): squared Fourier-cosine coefficient of
/// order k + l + 1 of the entropy function along the limiting spectral band.
double gaussian_fixedN_variance_limit_summand(double f, double n, int k, int l);
double gaussian_fixedN_variance_limit_sum(double f, double n, int max_order);

/// One-point density of the eigenvalues x = 2y - 1 of the subsystem correlation
/// matrix, normalized to VA on [-1, 1]. Requires VA <= N <= V - VA.
double fixedN_level_density(double x, int V, int VA, int N);
/// One-point density of the nonnegative values x_j of i J_A for arbitrary N,
/// supported on [0, 1] and normalized to VA. Requires 2 VA <= V.
double arbitraryN_level_density(double x, int V, int VA);

/// Bosonic sector dimension C(N + modes - 1, N).
long double bosonic_log_dim(int modes, int particles);
double bosonic_fixedN_exact(int V, int VA, int N);

}  // namespace eestat
