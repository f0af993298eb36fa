#include "eestat/spectral.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace eestat {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coefficients of p(s) = amp s^beta exp(-rate s^2).
struct SurmiseCoeffs {
  double amp;
  double rate;
};

SurmiseCoeffs surmise(int beta) {
  const double g1 = std::tgamma((beta + 2) / 2.0);
  const double g0 = std::tgamma((beta + 1) / 2.0);
  return {2.0 * std::pow(g1, beta + 1) / std::pow(g0, beta + 2), (g1 / g0) * (g1 / g0)};
}

}  // namespace

SpacingReference SpacingReference::wigner(int beta) {
  switch (beta) {
    case 1:
      return {SpacingKind::WignerGOE};
    case 2:
      return {SpacingKind::WignerGUE};
    case 4:
      return {SpacingKind::WignerGSE};
    default:
      throw std::invalid_argument("SpacingReference::wigner: beta must be 1, 2 or 4");
  }
}

int SpacingReference::beta() const {
  switch (kind) {
    case SpacingKind::WignerGOE:
      return 1;
    case SpacingKind::WignerGUE:
      return 2;
    case SpacingKind::WignerGSE:
      return 4;
    default:
      return 0;
  }
}

std::string SpacingReference::name() const {
  switch (kind) {
    case SpacingKind::WignerGOE:
      return "wigner-goe";
    case SpacingKind::WignerGUE:
      return "wigner-gue";
    case SpacingKind::WignerGSE:
      return "wigner-gse";
    case SpacingKind::Poisson:
      return "poisson";
    case SpacingKind::PicketFence:
      return "picket-fence";
  }
  return "unknown";
}

double SpacingReference::pdf(double s) const {
  if (s < 0.0) return 0.0;
  switch (kind) {
    case SpacingKind::Poisson:
      return std::exp(-s);
    case SpacingKind::PicketFence:
      return 0.0;
    default: {
      const int b = beta();
      const SurmiseCoeffs c = surmise(b);
      return c.amp * std::pow(s, b) * std::exp(-c.rate * s * s);
    }
  }
}

double SpacingReference::cdf(double s) const {
  if (s <= 0.0) return 0.0;
  switch (kind) {
    case SpacingKind::Poisson:
      return -std::expm1(-s);
    case SpacingKind::PicketFence:
      return s >= 1.0 ? 1.0 : 0.0;
    default: {
      const int b = beta();
      return boost::math::gamma_p((b + 1) / 2.0, surmise(b).rate * s * s);
    }
  }
}

double reference_pdf(const SpacingReference& ref, double s) {
  if (s < 0.0) throw std::domain_error("reference_pdf: s >= 0");
  return ref.pdf(s);
}

Eigen::MatrixXcd gue_matrix(int d, SeededRng& rng) {
  if (d < 1) throw std::invalid_argument("gue_matrix: d >= 1");
  Eigen::MatrixXcd h(d, d);
  for (int j = 0; j < d; ++j) {
    h(j, j) = rng.normal();
    for (int i = j + 1; i < d; ++i) {
      h(i, j) = rng.complex_normal();
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

Eigen::MatrixXd goe_matrix(int d, SeededRng& rng) {
  if (d < 1) throw std::invalid_argument("goe_matrix: d >= 1");
  Eigen::MatrixXd h(d, d);
  for (int j = 0; j < d; ++j) {
    h(j, j) = rng.normal();
    for (int i = j + 1; i < d; ++i) {
      h(i, j) = rng.normal() * M_SQRT1_2;
      h(j, i) = h(i, j);
    }
  }
  return h;
}

SpectrumSeries sample_gaussian_ensemble(GaussianEnsemble kind, int d, SeededRng& rng) {
  if (d < 2) throw std::invalid_argument("sample_gaussian_ensemble: d >= 2");
  SpectrumSeries out;
  Eigen::VectorXd ev;
  if (kind == GaussianEnsemble::GUE) {
    ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gue_matrix(d, rng), Eigen::EigenvaluesOnly).eigenvalues();
    out.ensemble = "GUE";
  } else {
    ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(goe_matrix(d, rng), Eigen::EigenvaluesOnly).eigenvalues();
    out.ensemble = "GOE";
  }
  out.levels.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.levels.begin(), out.levels.end());
  return out;
}

SpectrumSeries unfold(const SpectrumSeries& spec, int degree) {
  const auto n = static_cast<Eigen::Index>(spec.levels.size());
  if (degree < 1 || n < degree + 2) throw std::invalid_argument("unfold: need at least degree + 2 levels");
  const double lo = spec.levels.front();
  const double hi = spec.levels.back();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  if (!(half > 0.0)) throw std::invalid_argument("unfold: degenerate spectrum");

  Eigen::MatrixXd basis(n, degree + 1);
  Eigen::VectorXd staircase(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = (spec.levels[static_cast<std::size_t>(i)] - center) / half;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= x) basis(i, k) = p;
    staircase(i) = static_cast<double>(i) + 0.5;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  qr.setThreshold(1e-13);
  if (qr.rank() < degree + 1) throw std::runtime_error("unfold: ill-conditioned staircase fit");
  const Eigen::VectorXd coef = qr.solve(staircase);

  SpectrumSeries out = spec;
  out.unfolded = true;
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    const double x = (spec.levels[i] - center) / half;
    double acc = 0.0;
    for (int k = degree; k >= 0; --k) acc = acc * x + coef(k);
    out.levels[i] = acc;
  }
  return out;
}

std::vector<double> bulk_spacings(const SpectrumSeries& spec, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("bulk_spacings: fraction in (0, 1]");
  const std::size_t n = spec.levels.size();
  const auto skip = static_cast<std::size_t>(std::floor(0.5 * (1.0 - fraction) * static_cast<double>(n) + 1e-9));
  std::vector<double> out;
  for (std::size_t i = skip; i + 1 < n - skip; ++i) out.push_back(spec.levels[i + 1] - spec.levels[i]);
  return out;
}

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 2) throw std::invalid_argument("ks_test: need at least two samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    dist = std::max({dist, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  const double rn = std::sqrt(n);
  return {dist, kolmogorov_survival((rn + 0.12 + 0.11 / rn) * dist)};
}

KsResult spacing_ks(std::vector<double> spacings, const SpacingReference& ref) {
  if (ref.kind != SpacingKind::PicketFence) return ks_test(std::move(spacings), [&](double s) { return ref.cdf(s); });
  if (spacings.size() < 2) throw std::invalid_argument("spacing_ks: need at least two spacings");
  std::sort(spacings.begin(), spacings.end());
  const double n = static_cast<double>(spacings.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double s = spacings[i];
    // Left and right limits of the step at s = 1.
    const double f_right = ref.cdf(s);
    const double f_left = s == 1.0 ? 0.0 : f_right;
    dist = std::max({dist, static_cast<double>(i + 1) / n - f_right, f_left - static_cast<double>(i) / n});
  }
  const double rn = std::sqrt(n);
  return {dist, kolmogorov_survival((rn + 0.12 + 0.11 / rn) * dist)};
}

std::vector<double> direct_sum_gue_spacing(int M, int d, long long n_draws, SeededRng& rng) {
  if (M < 1 || d < 2 || n_draws < 0) throw std::invalid_argument("direct_sum_gue_spacing: M >= 1, d >= 2");
  const std::size_t mid = static_cast<std::size_t>(d) * static_cast<std::size_t>(M) / 2;
  // Semicircle density at the origin, d / (pi sqrt d) per block.
  const double density = M * std::sqrt(static_cast<double>(d)) / kPi;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_draws));
  std::vector<double> merged;
  for (long long t = 0; t < n_draws; ++t) {
    merged.clear();
    for (int b = 0; b < M; ++b) {
      const SpectrumSeries s = sample_gaussian_ensemble(GaussianEnsemble::GUE, d, rng);
      merged.insert(merged.end(), s.levels.begin(), s.levels.end());
    }
    std::sort(merged.begin(), merged.end());
    out.push_back((merged[mid] - merged[mid - 1]) * density);
  }
  return out;
}

double porter_thomas_pdf(double amplitude, int beta, double dim) {
  if (amplitude < 0.0) throw std::domain_error("porter_thomas_pdf: amplitude >= 0");
  if (beta != 1 && beta != 2) throw std::invalid_argument("porter_thomas_pdf: beta must be 1 or 2");
  const double half = 0.5 * beta;
  const double rate = half * dim;
  return std::pow(rate, half) / std::tgamma(half) * std::pow(amplitude, half - 1.0) * std::exp(-rate * amplitude);
}

double porter_thomas_cdf(double amplitude, int beta, double dim) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("porter_thomas_cdf: beta must be 1 or 2");
  if (amplitude <= 0.0) return 0.0;
  return boost::math::gamma_p(0.5 * beta, 0.5 * beta * dim * amplitude);
}

ChiSquareResult chi_square_test(const std::vector<double>& samples, const std::vector<double>& edges,
                                const std::function<double(double)>& cdf) {
  if (edges.size() < 3) throw std::invalid_argument("chi_square_test: need at least two bins");
  if (!std::is_sorted(edges.begin(), edges.end())) throw std::invalid_argument("chi_square_test: edges must ascend");
  const std::size_t bins = edges.size() - 1;
  std::vector<double> counts(bins, 0.0);
  for (double x : samples) {
    const auto it = std::upper_bound(edges.begin() + 1, edges.end() - 1, x);
    ++counts[static_cast<std::size_t>(it - (edges.begin() + 1))];
  }
  const double n = static_cast<double>(samples.size());
  double stat = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    const double upper = b + 1 == bins ? 1.0 : cdf(edges[b + 1]);
    const double lower = b == 0 ? 0.0 : cdf(edges[b]);
    const double expected = n * (upper - lower);
    if (!(expected > 0.0)) throw std::runtime_error("chi_square_test: empty expected bin");
    stat += (counts[b] - expected) * (counts[b] - expected) / expected;
  }
  const int dof = static_cast<int>(bins) - 1;
  const boost::math::chi_squared dist(dof);
  return {stat, dof, boost::math::cdf(boost::math::complement(dist, stat))};
}

void write_histogram_csv(std::ostream& out, const std::vector<double>& values, int bins, double lo, double hi,
                         const SpacingReference* ref) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("write_histogram_csv: bins >= 1, hi > lo");
  std::vector<long long> counts(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (double v : values) {
    if (v < lo || v >= hi) continue;
    const auto b = std::min(bins - 1, static_cast<int>((v - lo) / width));
    ++counts[static_cast<std::size_t>(b)];
  }
  const double n = static_cast<double>(values.size());
  out << "bin_left,bin_right,density" << (ref ? ",reference" : "") << "\n";
  char buf[128];
  for (int b = 0; b < bins; ++b) {
    const double left = lo + b * width;
    const double right = lo + (b + 1) * width;
    const double density = n > 0 ? counts[static_cast<std::size_t>(b)] / (n * width) : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", left, right, density);
    out << buf;
    if (ref) {
      std::snprintf(buf, sizeof buf, ",%.17g", (ref->cdf(right) - ref->cdf(left)) / width);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace eestat
