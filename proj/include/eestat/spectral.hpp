#pragma once

#include <Eigen/Dense>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "eestat/ensembles.hpp"

namespace eestat {

enum class SpacingKind { WignerGOE, WignerGUE, WignerGSE, Poisson, PicketFence };

struct SpacingReference {
  SpacingKind kind = SpacingKind::WignerGUE;

  static SpacingReference wigner(int beta);
  int beta() const;  // Dyson index; 0 for Poisson and PicketFence
  std::string name() const;
  double pdf(double s) const;  // PicketFence: 0 (point mass at s = 1)
  double cdf(double s) const;
};

double reference_pdf(const SpacingReference& ref, double s);

enum class GaussianEnsemble { GOE, GUE };

/// Ordered eigenvalues plus provenance.
struct SpectrumSeries {
  std::vector<double> levels;
  std::string ensemble;
  bool unfolded = false;
};

/// GOE: symmetric with off-diagonal variance 1/2, diagonal variance 1.
/// GUE: Hermitian with E|H_ij|^2 = 1 for all i, j. Semicircle radius 2 sqrt(d) (GUE).
Eigen::MatrixXcd gue_matrix(int d, SeededRng& rng);
Eigen::MatrixXd goe_matrix(int d, SeededRng& rng);
SpectrumSeries sample_gaussian_ensemble(GaussianEnsemble kind, int d, SeededRng& rng);

/// Maps levels through a least-squares polynomial fit of the staircase N(E).
SpectrumSeries unfold(const SpectrumSeries& spec, int degree = 7);
/// Consecutive spacings of the inner `fraction` of the levels.
std::vector<double> bulk_spacings(const SpectrumSeries& spec, double fraction = 0.8);

struct KsResult {
  double distance;
  double p_value;
};

/// Asymptotic Kolmogorov tail probability P(K > lambda).
double kolmogorov_survival(double lambda);
/// Two-sided one-sample KS test against a continuous cdf.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);
/// Two-sided one-sample KS test against ref.cdf.
KsResult spacing_ks(std::vector<double> spacings, const SpacingReference& ref);

/// Per draw: M independent GUE(d) spectra merged; returns the gap between the
/// levels of rank d M / 2 and d M / 2 + 1 in units of the local mean spacing.
std::vector<double> direct_sum_gue_spacing(int M, int d, long long n_draws, SeededRng& rng);

/// Porter-Thomas density of a squared amplitude A with mean 1/dim, for beta = 1, 2.
double porter_thomas_pdf(double amplitude, int beta, double dim);
double porter_thomas_cdf(double amplitude, int beta, double dim);

struct ChiSquareResult {
  double statistic;
  int dof;
  double p_value;
};

/// Pearson test on the bins delimited by `edges`; the outer bins extend to the
/// support boundary. Expected probabilities come from `cdf`.
ChiSquareResult chi_square_test(const std::vector<double>& samples, const std::vector<double>& edges,
                                const std::function<double(double)>& cdf);

/// Density histogram as CSV with header bin_left,bin_right,density[,reference].
void write_histogram_csv(std::ostream& out, const std::vector<double>& values, int bins, double lo, double hi,
                         const SpacingReference* ref = nullptr);

}  // namespace eestat
