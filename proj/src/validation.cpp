#include "eestat/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

#include "eestat/asymptotics.hpp"
#include "eestat/closedform.hpp"
#include "eestat/ensembles.hpp"
#include "eestat/entropy.hpp"
#include "eestat/hamiltonians.hpp"
#include "eestat/specfun.hpp"
#include "eestat/spectral.hpp"

namespace eestat {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

std::string format(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

void append(std::string& s, const std::string& part) {
  if (!s.empty()) s += "; ";
  s += part;
}

bool within_sigma(const EntropyEstimate& e, double exact, double k, std::string& detail, const std::string& label) {
  const double z = (e.mean - exact) / e.std_error;
  append(detail, format("%s mean=%.6f exact=%.6f z=%.2f", label.c_str(), e.mean, exact, z));
  return std::fabs(z) < k;
}

// Leading volume term of the w = 0 Gaussian average, canonical f <= 1/2.
double gaussian_w0_leading(double V, double f) {
  f = std::min(f, 1.0 - f);
  return V * ((f - 1.0) * std::log1p(-f) + f * (kLn2 - 1.0));
}

CriterionResult closed_form_oracles(const ValidationConfig& cfg) {
  CriterionResult r{1, "closed-form oracle battery", true, "", 0};
  const double off = cfg.oracle_offset;
  struct Case {
    const char* label;
    double value;
    double oracle;
  };
  const Case cases[] = {
      {"page(2,2)", page_average(2, 2), 1.0 / 3.0 + off},
      {"page(2,4)", page_average(2, 4), 107.0 / 210.0 + off},
      {"gaussian(2,1)", gaussian_average(2, 1), 0.5 + off},
      {"gaussian_fixedN(2,1,1)", gaussian_fixedN_average(2, 1, 1), 0.5 + off},
      {"fixedN(2,1,1)", fixedN_average(2, 1, 1), 0.5 + off},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const double err = std::fabs(c.value - c.oracle);
    worst = std::max(worst, err);
    if (!(err <= 1e-12)) {
      r.pass = false;
      append(r.detail, format("%s=%.17g vs %.17g", c.label, c.value, c.oracle));
    }
  }
  append(r.detail, format("max error %.3g (tol 1e-12)", worst));
  return r;
}

CriterionResult general_mc(const ValidationConfig& cfg) {
  CriterionResult r{2, "Monte Carlo vs exact, general states", true, "", 0};
  const long long n_full = cfg.quick ? 2000 : 10000;
  const long long n_sector = cfg.quick ? 1000 : 2000;
  for (int VA : {3, 5}) {
    const Partition part(10, VA);
    const auto est = mc_estimate([&](SeededRng& rng) { return vn_entropy(rdm_spectrum_full(sample_haar_state(10, rng), part)); },
                                 n_full, cfg.seed + static_cast<std::uint64_t>(VA), cfg.workers);
    r.pass &= within_sigma(est, page_average(std::ldexp(1.0, VA), std::ldexp(1.0, 10 - VA)), 4.0, r.detail,
                           format("V=10 VA=%d", VA));
  }
  const Partition part(12, 4);
  const auto est = mc_estimate(
      [&](SeededRng& rng) { return vn_entropy(rdm_spectrum_sector(sample_sector_state(12, 6, rng), part)); }, n_sector,
      cfg.seed + 11, cfg.workers);
  r.pass &= within_sigma(est, fixedN_average(12, 4, 6), 4.0, r.detail, "V=12 N=6 VA=4");
  return r;
}

CriterionResult gaussian_mc(const ValidationConfig& cfg) {
  CriterionResult r{3, "Monte Carlo vs exact, Gaussian states", true, "", 0};
  const long long n = cfg.quick ? 500 : 2000;
  const auto arb = mc_estimate([](SeededRng& rng) { return gaussian_entropy_from_J(sample_gaussian_subsystem(50, 20, rng)); },
                               n, cfg.seed + 21, cfg.workers);
  r.pass &= within_sigma(arb, gaussian_average(50, 20), 4.0, r.detail, "V=50 VA=20");
  const auto fix = mc_estimate(
      [](SeededRng& rng) { return gaussian_entropy_from_C(sample_gaussian_fixedN_subsystem(100, 30, 50, rng)); }, n,
      cfg.seed + 22, cfg.workers);
  r.pass &= within_sigma(fix, gaussian_fixedN_average(100, 30, 50), 4.0, r.detail, "V=100 N=50 VA=30");
  return r;
}

CriterionResult variances(const ValidationConfig& cfg) {
  CriterionResult r{4, "variance closed forms", true, "", 0};
  const long long n = cfg.quick ? 1000 : 4000;
  const auto arb = mc_estimate([](SeededRng& rng) { return gaussian_entropy_from_J(sample_gaussian_subsystem(200, 80, rng)); },
                               n, cfg.seed + 31, cfg.workers);
  const double arb_exact = gaussian_variance(200, 80, VarianceMode::ExactSum);
  const double arb_rel = arb.sample_variance / arb_exact - 1.0;
  append(r.detail, format("arbitrary-N var=%.5f closed=%.5f rel=%.3f", arb.sample_variance, arb_exact, arb_rel));
  r.pass &= std::fabs(arb_rel) < 0.10;

  const auto fix = mc_estimate(
      [](SeededRng& rng) { return gaussian_entropy_from_C(sample_gaussian_fixedN_subsystem(200, 80, 100, rng)); }, n,
      cfg.seed + 32, cfg.workers);
  const double fix_exact = gaussian_fixedN_variance_asymptotic(0.4, 0.5);
  const double fix_rel = fix.sample_variance / fix_exact - 1.0;
  append(r.detail, format("fixed-N var=%.5f closed=%.5f rel=%.3f", fix.sample_variance, fix_exact, fix_rel));
  r.pass &= std::fabs(fix_rel) < 0.10;

  const double arb_sum = gaussian_variance_limit_sum(0.3, 400);
  const double arb_lim = gaussian_variance_asymptotic(0.3);
  const double fix_sum = gaussian_fixedN_variance_limit_sum(0.3, 0.4, 400);
  const double fix_lim = gaussian_fixedN_variance_asymptotic(0.3, 0.4);
  append(r.detail, format("double sums: |%.3g| |%.3g| (tol 1e-6)", arb_sum - arb_lim, fix_sum - fix_lim));
  r.pass &= std::fabs(arb_sum - arb_lim) < 1e-6 && std::fabs(fix_sum - fix_lim) < 1e-6;
  return r;
}

CriterionResult asymptotic_slopes(const ValidationConfig&) {
  CriterionResult r{5, "asymptotic-order fits", true, "", 0};
  std::vector<double> vs, fixed_res, line_res, off_res;
  const double w_line = std::log(3.0);       // nbar = 1/4
  const double w_off = std::log(0.6 / 0.4);  // nbar = 2/5
  for (int V = 64; V <= 1024; V *= 2) {
    vs.push_back(V);
    fixed_res.push_back(gaussian_fixedN_average(V, V / 4, V / 2) - gaussian_fixedN_thermo(V, 0.25, 0.5));
    line_res.push_back(weighted_average(V, V / 4, w_line, true) - gaussian_weighted_thermo(V, 0.25, 0.25));
    off_res.push_back(weighted_average(V, V / 4, w_off, true) - gaussian_weighted_thermo(V, 0.25, 0.4));
  }
  const double s1 = loglog_slope(vs, fixed_res);
  const double s2 = loglog_slope(vs, line_res);
  const double s3 = loglog_slope(vs, off_res);
  append(r.detail, format("fixed-N (0.25,0.5) slope=%.3f (target -3)", s1));
  append(r.detail, format("weighted f=nbar=0.25 slope=%.3f (target -1.5)", s2));
  append(r.detail, format("weighted (0.25,0.4) slope=%.3f (target -3)", s3));
  r.pass = std::fabs(s1 + 3.0) <= 0.3 && std::fabs(s2 + 1.5) <= 0.3 && std::fabs(s3 + 3.0) <= 0.3;
  return r;
}

CriterionResult symmetries(const ValidationConfig& cfg) {
  CriterionResult r{6, "symmetry suite", true, "", 0};
  SeededRng rng(cfg.seed, 61);
  double worst_fixed = 0.0, worst_gauss = 0.0;
  for (int p = 0; p < 200; ++p) {
    const int V = 2 + static_cast<int>(rng.uniform() * 199);
    const int VA = static_cast<int>(rng.uniform() * (V + 1));
    const int N = static_cast<int>(rng.uniform() * (V + 1));
    const double s = fixedN_average(V, VA, N);
    worst_fixed = std::max({worst_fixed, std::fabs(s - fixedN_average(V, VA, V - N)),
                            std::fabs(s - fixedN_average(V, V - VA, N))});
    const double g = gaussian_fixedN_average(V, VA, N);
    worst_gauss = std::max({worst_gauss, std::fabs(g - gaussian_fixedN_average(V, VA, V - N)),
                            std::fabs(g - gaussian_fixedN_average(V, V - VA, N)), std::fabs(g - gaussian_fixedN_average(V, N, VA))});
  }
  append(r.detail, format("max deviation fixed-N %.3g, Gaussian fixed-N %.3g (tol 1e-10)", worst_fixed, worst_gauss));
  r.pass = worst_fixed <= 1e-10 && worst_gauss <= 1e-10;
  return r;
}

CriterionResult syk2_eigenstates(const ValidationConfig& cfg) {
  CriterionResult r{7, "SYK2 eigenstate average", true, "", 0};
  const int V = 256;
  const long long n = cfg.quick ? 500 : 2000;
  const QuadraticModel model = build_syk2_dirac(V, cfg.seed + 71);
  const double tail = 1.0 / (3.0 * std::sqrt(2.0 * kPi) * std::sqrt(static_cast<double>(V)));
  for (int k = 1; k <= 5; ++k) {
    const int VA = static_cast<int>(std::lround(0.1 * k * V));
    const double f = static_cast<double>(VA) / V;
    const auto est = quadratic_eigenstate_average(model, VA, EigenstateMode::sampled(n, cfg.seed + 72), cfg.workers);
    const double deficit = gaussian_w0_leading(V, f) - est.mean;
    const double rel = deficit / (0.5 * f) - 1.0;
    append(r.detail, format("f=%.3f deficit=%.4f+-%.4f vs f/2=%.4f rel=%.3f", f, deficit, est.std_error, 0.5 * f, rel));
    r.pass &= std::fabs(rel) <= 0.15;
    if (k == 5) {
      const double residual = deficit - 0.5 * f;
      const double ratio = -residual / tail;
      append(r.detail, format("f=0.5 residual=%.5f vs -%.5f ratio=%.2f", residual, tail, ratio));
      r.pass &= residual < 0.0 && ratio >= 0.5 && ratio <= 2.0;
    }
  }
  return r;
}

CriterionResult free_fermions(const ValidationConfig& cfg) {
  CriterionResult r{8, "translationally invariant free fermions", true, "", 0};
  const int V = 32;
  const long long n = cfg.quick ? 10000 : 100000;
  const QuadraticModel model = build_free_fermion_1d(V);
  const auto est = quadratic_eigenstate_average(model, V / 2, EigenstateMode::sampled(n, cfg.seed + 81), cfg.workers);
  const double scale = 0.5 * V * kLn2;
  const double ratio = est.mean / scale;
  const double err = est.std_error / scale;
  const double sep = (0.5573 - ratio) / err;
  append(r.detail, format("ratio=%.5f+-%.5f, %.1f stderr below 0.5573", ratio, err, sep));
  r.pass = ratio >= 0.530 && ratio <= 0.545 && sep >= 5.0;
  return r;
}

CriterionResult hcb_chain(const ValidationConfig& cfg) {
  CriterionResult r{9, "hard-core boson chain", true, "", 0};
  const std::vector<int> sizes = cfg.quick ? std::vector<int>{10, 12} : std::vector<int>{10, 12, 14};
  double prev = INFINITY;
  for (int V : sizes) {
    const ManyBodyModel m = build_hcb_chain(V, V / 2, 1.0, 1.0, 1.1, 1.1);
    const auto est = interacting_eigenstate_average(m, V / 2, 0.2);
    const double delta = fixedN_average(V, V / 2, V / 2) - est.mean;
    append(r.detail, format("V=%d delta=%.4f delta*V=%.3f", V, delta, delta * V));
    r.pass &= delta > 0.0 && delta < prev && delta * V >= 0.8 && delta * V <= 3.3;
    prev = delta;
  }
  return r;
}

CriterionResult spectral_statistics(const ValidationConfig& cfg) {
  CriterionResult r{10, "spectral statistics", true, "", 0};
  const std::size_t target = cfg.quick ? 20000 : 100000;
  SeededRng rng(cfg.seed, 101);
  std::vector<double> pooled;
  while (pooled.size() < target) {
    const auto sp = bulk_spacings(unfold(sample_gaussian_ensemble(GaussianEnsemble::GUE, 400, rng), 7), 0.8);
    pooled.insert(pooled.end(), sp.begin(), sp.end());
  }
  const auto gue = spacing_ks(pooled, SpacingReference::wigner(2));
  const auto poi = spacing_ks(pooled, {SpacingKind::Poisson});
  append(r.detail, format("GUE(400) %zu spacings: ks_surmise=%.4f ks_poisson=%.4f", pooled.size(), gue.distance, poi.distance));
  r.pass &= gue.distance < 0.05 && poi.distance > 0.2;

  SeededRng rng_sum(cfg.seed, 102);
  const auto gaps = direct_sum_gue_spacing(5, 100, cfg.quick ? 500 : 2000, rng_sum);
  const auto sum_gue = spacing_ks(gaps, SpacingReference::wigner(2));
  const auto sum_poi = spacing_ks(gaps, {SpacingKind::Poisson});
  append(r.detail, format("direct sum M=5: ks_surmise=%.4f ks_poisson=%.4f", sum_gue.distance, sum_poi.distance));
  r.pass &= sum_poi.distance < sum_gue.distance;

  SeededRng rng_pt(cfg.seed, 103);
  const int d = 256;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gue_matrix(d, rng_pt));
  std::vector<double> amps;
  amps.reserve(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) amps.push_back(std::norm(es.eigenvectors()(i, j)));
  std::vector<double> edges;
  const int bins = 20;
  for (int b = 0; b <= bins; ++b) edges.push_back(b == bins ? INFINITY : -std::log1p(-static_cast<double>(b) / bins) / d);
  const auto chi = chi_square_test(amps, edges, [d](double a) { return porter_thomas_cdf(a, 2, d); });
  append(r.detail, format("Porter-Thomas chi2=%.2f dof=%d p=%.4f", chi.statistic, chi.dof, chi.p_value));
  r.pass &= chi.p_value > 0.01;
  return r;
}

CriterionResult cross_representation(const ValidationConfig& cfg) {
  CriterionResult r{11, "cross-representation Gaussian oracle", true, "", 0};
  SeededRng rng(cfg.seed, 111);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int V = 2 + static_cast<int>(rng.uniform() * 7);
    QuadraticModel model;
    switch (trial % 3) {
      case 0:
        model = QuadraticModel::from_matrix(gue_matrix(V, rng));
        break;
      case 1: {
        Eigen::MatrixXcd h = goe_matrix(V, rng).cast<std::complex<double>>();
        model = QuadraticModel::from_matrix(h);
        break;
      }
      default:
        model = build_free_fermion_1d(V);
    }
    const int VA = static_cast<int>(rng.uniform() * (V + 1));
    std::vector<int> occ;
    for (int k = 0; k < V; ++k)
      if (rng.uniform() < 0.5) occ.push_back(k);
    const double from_c = quadratic_eigenstate_entropy(model, occ, VA);
    Eigen::MatrixXcd phi(V, static_cast<Eigen::Index>(occ.size()));
    for (std::size_t c = 0; c < occ.size(); ++c) phi.col(static_cast<Eigen::Index>(c)) = model.orbitals.col(occ[c]);
    const double from_state = vn_entropy(rdm_spectrum_full(PureState::full(V, slater_state(phi)), Partition(V, VA)));
    worst = std::max(worst, std::fabs(from_c - from_state));
  }
  append(r.detail, format("100 models, max |S_C - S_state| = %.3g (tol 1e-9)", worst));
  r.pass = worst <= 1e-9;
  return r;
}

CriterionResult anderson(const ValidationConfig& cfg) {
  CriterionResult r{12, "3D Anderson model", true, "", 0};
  const int L = 6;
  const int V = L * L * L;
  const long long n = cfg.quick ? 200 : 1000;
  double total = 0.0;
  std::string means;
  for (int s = 0; s < 5; ++s) {
    const QuadraticModel model = build_anderson_3d(L, 1.0, cfg.seed + 120 + static_cast<std::uint64_t>(s));
    const auto est =
        quadratic_eigenstate_average(model, V / 2, EigenstateMode::fixed_N_sampled(V / 2, n, cfg.seed + 130), cfg.workers);
    total += est.mean;
    means += format("%s%.3f", s ? "," : "", est.mean);
  }
  const double mean = total / 5.0;
  const double lead = gaussian_w0_leading(V, 0.5);
  const double rel = mean / lead - 1.0;
  append(r.detail, format("seed means [%s], mean=%.4f leading=%.4f rel=%.4f", means.c_str(), mean, lead, rel));
  r.pass = std::fabs(rel) <= 0.03;
  return r;
}

CriterionResult bosonic(const ValidationConfig& cfg) {
  CriterionResult r{13, "bosonic extension", true, "", 0};
  // Exact integer dimensions C(N + m - 1, N).
  auto dim = [](int modes, int particles) -> unsigned long long {
    if (modes == 0) return particles == 0 ? 1 : 0;
    unsigned long long c = 1;
    for (int k = 1; k <= particles; ++k) c = c * static_cast<unsigned long long>(modes - 1 + k) / static_cast<unsigned long long>(k);
    return c;
  };
  bool identity = true;
  for (int V = 1; V <= 8; ++V)
    for (int VA = 0; VA <= V; ++VA)
      for (int N = 0; N <= 12; ++N) {
        unsigned long long sum = 0;
        for (int NA = 0; NA <= N; ++NA) sum += dim(VA, NA) * dim(V - VA, N - NA);
        identity &= sum == dim(V, N);
      }
  append(r.detail, format("dimension identity V<=8, N<=12: %s", identity ? "exact" : "violated"));
  r.pass &= identity;
  const auto est = mc_estimate([](SeededRng& rng) { return sample_bosonic_sector_entropy(4, 2, 3, rng); },
                               cfg.quick ? 2000 : 10000, cfg.seed + 131, cfg.workers);
  r.pass &= within_sigma(est, bosonic_fixedN_exact(4, 2, 3), 4.0, r.detail, "V=4 VA=2 N=3");
  return r;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need matching sizes >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::fabs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double sample_bosonic_sector_entropy(int V, int VA, int N, SeededRng& rng) {
  if (V < 1 || VA < 0 || VA > V || N < 0) throw std::invalid_argument("sample_bosonic_sector_entropy: invalid parameters");
  // Amplitudes factor into independent d_A(N_A) x d_B(N - N_A) blocks.
  std::vector<Eigen::MatrixXcd> blocks;
  double norm = 0.0;
  for (int NA = 0; NA <= N; ++NA) {
    const auto da = static_cast<Eigen::Index>(std::llround(std::exp(bosonic_log_dim(VA, NA))));
    const auto db = static_cast<Eigen::Index>(std::llround(std::exp(bosonic_log_dim(V - VA, N - NA))));
    if (da == 0 || db == 0) continue;
    blocks.push_back(ginibre_complex(static_cast<int>(da), static_cast<int>(db), rng));
    norm += blocks.back().squaredNorm();
  }
  std::vector<double> eigenvalues;
  for (auto& b : blocks) {
    const Eigen::MatrixXcd rho = b * b.adjoint() / norm;
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho, Eigen::EigenvaluesOnly).eigenvalues();
    eigenvalues.insert(eigenvalues.end(), ev.data(), ev.data() + ev.size());
  }
  return vn_entropy(eigenvalues);
}

CriterionResult run_criterion(int id, const ValidationConfig& cfg) {
  using Fn = CriterionResult (*)(const ValidationConfig&);
  static const Fn table[kCriterionCount] = {closed_form_oracles, general_mc,   gaussian_mc,         variances,
                                            asymptotic_slopes,   symmetries,   syk2_eigenstates,    free_fermions,
                                            hcb_chain,           spectral_statistics, cross_representation, anderson,
                                            bosonic};
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("run_criterion: id must be 1..13");
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](cfg);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_validation(const ValidationConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, cfg));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace eestat
