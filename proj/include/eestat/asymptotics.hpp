#pragma once

namespace eestat {

// Large-V expansions. Kronecker-delta terms fire only on exact equality
// (f == 0.5, f == nbar, ...); the *_resolved functions cover neighbourhoods.

struct MeanVariance {
  double mean;
  double variance;
};

MeanVariance page_thermo(double V, double f);

double fixedN_thermo(double V, double f, double n);
double fixedN_variance_thermo(double V, double f, double n);

double page_weighted_thermo(double V, double f, double nbar);
double page_weighted_variance_thermo(double V, double f, double nbar);

double gaussian_thermo(double V, double f);
/// Expansion through 1/V; requires (f, n) mapped into f <= n <= 1/2 by symmetry.
double gaussian_fixedN_thermo(double V, double f, double n);
/// Four-case expansion through 1/V.
double gaussian_weighted_thermo(double V, double f, double nbar);
double gaussian_weighted_variance_thermo(double V, double f, double nbar);

/// Fixed-N average with the erfc-resolved kink terms.
double page_resolved(double V, double f, double n);
/// Coefficient b of -b sqrt(V) for f = 1/2 + lambda_f / sqrt(V).
double page_b(double lambda_f, double n);
/// Constant c of -c for f = 1/2 + lambda_f / V, n = 1/2 + lambda_n / sqrt(V).
double page_c(double lambda_f, double lambda_n);

/// Pieces of the sector-averaged Page result for w = O(1/sqrt V), 1 - 2f = O(1/V).
struct WeightedResolvedTerms {
  double smooth;         // volume term, ln(1-f)/2 and the -V f (1-2 nbar)^2 / 2 drift
  double band_integral;  // (4/pi) ∫ exp(-2d^2 - (ln2 V(1-2f))^2/(8 d^2)) cosh(sqrt(V) w d) d dd
  double erfc_lower;     // ∫ cosh(sqrt(V) w d) erfc((4d^2 - ln2 V(1-2f))/(sqrt8 d)) dd / sqrt(2 pi)
  double erfc_upper;     // same with + ln2 V(1-2f)
  double crossing;       // average of the kink-crossing erfc term of the fixed-N result
  double total;
};
WeightedResolvedTerms page_weighted_resolved_terms(double V, double f, double w);
double page_weighted_resolved(double V, double f, double w);

/// 1/sqrt(V) coefficients resolving f = nbar = 1/2 and f = nbar < 1/2.
double gaussian_weighted_center(double lambda_f, double lambda_n);
double gaussian_weighted_line(double f, double lambda_n);

double bosonic_fixedN_thermo(double V, double f, double n);

}  // namespace eestat
