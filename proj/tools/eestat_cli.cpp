// eestat: command-line front end for the entanglement-entropy library.
// Exit status: 0 success, 1 validation failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eestat/asymptotics.hpp"
#include "eestat/closedform.hpp"
#include "eestat/ensembles.hpp"
#include "eestat/entropy.hpp"
#include "eestat/hamiltonians.hpp"
#include "eestat/spectral.hpp"
#include "eestat/validation.hpp"

using json = nlohmann::ordered_json;
using namespace eestat;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kEnsembles = {"page",     "fixed-n",          "weighted",          "gaussian",
                                             "gaussian-fixed-n", "gaussian-weighted", "bosonic-fixed-n"};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + path);
  out << text;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream os;
    if (format == "json") {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = std::isfinite(row[i]) ? json(row[i]) : json(nullptr);
        arr.push_back(obj);
      }
      os << arr.dump(2) << "\n";
      return os.str();
    }
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << (std::isfinite(row[i]) ? num(row[i]) : "nan");
      os << "\n";
    }
    return os.str();
  }
};

struct Params {
  std::string ensemble;
  int V = 0;
  int VA = -1;
  int N = -1;
  double n = -1.0;
  double w = 0.0;
  bool has_w = false;
  double dA = 0.0;
  double dB = 0.0;
};

int require_VA(const Params& p) {
  if (p.VA < 0) throw UsageError("--VA is required");
  return p.VA;
}

int require_N(const Params& p) {
  if (p.N >= 0) return p.N;
  if (p.n > 0.0) return static_cast<int>(std::lround(p.n * p.V));
  throw UsageError("--N (or --n) is required for ensemble " + p.ensemble);
}

// (mean, variance) of the closed form; variance NaN where not available.
std::pair<double, double> closed_form(const Params& p, int VA) {
  const std::string& e = p.ensemble;
  if (e == "page") {
    if (p.dA > 0 && p.dB > 0) return {page_average(p.dA, p.dB), page_variance(p.dA, p.dB)};
    const double dA = std::ldexp(1.0, VA), dB = std::ldexp(1.0, p.V - VA);
    return {page_average_log(VA * std::log(2.0L), (p.V - VA) * std::log(2.0L)), page_variance(dA, dB)};
  }
  if (e == "fixed-n") {
    const int N = require_N(p);
    return {fixedN_average(p.V, VA, N), fixedN_variance(p.V, VA, N)};
  }
  if (e == "weighted") return {weighted_average(p.V, VA, p.w, false), weighted_variance(p.V, VA, p.w, false)};
  if (e == "gaussian") return {gaussian_average(p.V, VA), gaussian_variance(p.V, VA, VarianceMode::ExactSum)};
  if (e == "gaussian-fixed-n") {
    const int N = require_N(p);
    const double f = static_cast<double>(VA) / p.V, n = static_cast<double>(N) / p.V;
    const double var = (f > 0 && f < 1 && n > 0 && n < 1) ? gaussian_fixedN_variance_asymptotic(f, n) : NAN;
    return {gaussian_fixedN_average(p.V, VA, N), var};
  }
  if (e == "gaussian-weighted") return {weighted_average(p.V, VA, p.w, true), weighted_variance(p.V, VA, p.w, true)};
  if (e == "bosonic-fixed-n") return {bosonic_fixedN_exact(p.V, VA, require_N(p)), NAN};
  throw UsageError("unknown ensemble " + e);
}

std::optional<double> thermo(const Params& p, int VA) {
  const double V = p.V;
  const double f = VA / V;
  if (!(f > 0.0 && f < 1.0)) return std::nullopt;
  const std::string& e = p.ensemble;
  const double nbar = mean_filling(p.w);
  if (e == "page") return page_thermo(V, f).mean;
  if (e == "weighted") return page_weighted_thermo(V, f, nbar);
  if (e == "gaussian") return gaussian_thermo(V, f);
  if (e == "gaussian-weighted") return gaussian_weighted_thermo(V, f, nbar);
  const double n = require_N(p) / V;
  if (e == "bosonic-fixed-n") return n > 0.0 ? std::optional<double>(bosonic_fixedN_thermo(V, f, n)) : std::nullopt;
  if (!(n > 0.0 && n < 1.0)) return std::nullopt;
  if (e == "fixed-n") return fixedN_thermo(V, f, n);
  if (e == "gaussian-fixed-n") return gaussian_fixedN_thermo(V, f, n);
  return std::nullopt;
}

void add_physical(CLI::App* cmd, Params& p) {
  cmd->add_option("--ensemble", p.ensemble, "State ensemble")->required()->check(CLI::IsMember(kEnsembles));
  cmd->add_option("--V", p.V, "Number of modes")->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--N", p.N, "Particle number")->check(CLI::NonNegativeNumber);
  cmd->add_option("--n", p.n, "Filling fraction (N = round(n V))")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--w", p.w, "Sector weight parameter");
}

int cmd_exact(const Params& p, const std::string& format, const std::string& out) {
  Table t;
  if (p.ensemble == "page" && p.dA > 0 && p.dB > 0) {
    t.header = {"dA", "dB", "mean", "variance"};
    t.rows.push_back({p.dA, p.dB, page_average(p.dA, p.dB), page_variance(p.dA, p.dB)});
  } else {
    if (p.V < 1) throw UsageError("--V is required");
    const int VA = require_VA(p);
    const auto [mean, var] = closed_form(p, VA);
    const bool weighted = p.ensemble == "weighted" || p.ensemble == "gaussian-weighted";
    const bool sector = p.ensemble == "fixed-n" || p.ensemble == "gaussian-fixed-n" || p.ensemble == "bosonic-fixed-n";
    t.header = {"V", "VA"};
    std::vector<double> row = {static_cast<double>(p.V), static_cast<double>(VA)};
    if (sector) {
      t.header.push_back("N");
      row.push_back(require_N(p));
    } else if (weighted) {
      t.header.push_back("w");
      row.push_back(p.w);
    }
    t.header.insert(t.header.end(), {"mean", "variance"});
    row.insert(row.end(), {mean, var});
    t.rows.push_back(row);
  }
  emit(out, t.render(format));
  return 0;
}

int cmd_curve(const Params& p, int points, const std::string& format, const std::string& out) {
  if (p.V < 2) throw UsageError("--V >= 2 is required");
  Table t;
  t.header = {"f", "value", "asymptotic_value"};
  if (points <= 0) points = p.V - 1;
  if (points > p.V - 1) throw UsageError("--points must not exceed V - 1");
  for (int i = 1; i <= points; ++i) {
    // Evenly spaced interior subsystem sizes.
    const int VA = static_cast<int>(std::lround(static_cast<double>(i) * p.V / (points + 1)));
    const double value = closed_form(p, VA).first;
    const auto asym = thermo(p, VA);
    t.rows.push_back({static_cast<double>(VA) / p.V, value, asym ? *asym : NAN});
  }
  emit(out, t.render(format));
  return 0;
}

int cmd_sample(const Params& p, long long n, std::optional<std::uint64_t> seed, int threads, const std::string& out) {
  if (!seed) throw UsageError("--seed is required for sampling");
  if (p.V < 1) throw UsageError("--V is required");
  const int VA = require_VA(p);
  const Partition part(p.V, VA);
  Statistic stat;
  const std::string& e = p.ensemble;
  int N = -1;
  if (e == "page") {
    stat = [&](SeededRng& rng) { return vn_entropy(rdm_spectrum_full(sample_haar_state(p.V, rng), part)); };
  } else if (e == "fixed-n") {
    N = require_N(p);
    stat = [&, N](SeededRng& rng) { return vn_entropy(rdm_spectrum_sector(sample_sector_state(p.V, N, rng), part)); };
  } else if (e == "gaussian") {
    stat = [&](SeededRng& rng) { return gaussian_entropy_from_J(sample_gaussian_subsystem(p.V, VA, rng)); };
  } else if (e == "gaussian-fixed-n") {
    N = require_N(p);
    stat = [&, N](SeededRng& rng) { return gaussian_entropy_from_C(sample_gaussian_fixedN_subsystem(p.V, VA, N, rng)); };
  } else if (e == "bosonic-fixed-n") {
    N = require_N(p);
    stat = [&, N](SeededRng& rng) { return sample_bosonic_sector_entropy(p.V, VA, N, rng); };
  } else {
    throw UsageError("sampling is not available for ensemble " + e);
  }
  const EntropyEstimate est = mc_estimate(stat, n, *seed, threads);
  const double exact = closed_form(p, VA).first;
  json params;
  params["V"] = p.V;
  params["VA"] = VA;
  if (N >= 0) params["N"] = N;
  json report;
  report["ensemble"] = e;
  report["params"] = params;
  report["mean"] = est.mean;
  report["stderr"] = est.std_error;
  report["sample_variance"] = est.sample_variance;
  report["n_samples"] = est.n_samples;
  report["seed"] = est.seed;
  report["closed_form"] = exact;
  report["z_score"] = est.std_error > 0.0 ? json((est.mean - exact) / est.std_error) : json(nullptr);
  emit(out, report.dump(2) + "\n");
  return 0;
}

struct SpectrumArgs {
  std::string experiment;
  int M = 5;
  int d = 100;
  long long draws = 1000;
  int degree = 7;
  int bins = 50;
  std::string histogram;
};

int cmd_spectrum(const SpectrumArgs& a, std::optional<std::uint64_t> seed, const std::string& out) {
  if (!seed) throw UsageError("--seed is required for spectrum experiments");
  SeededRng rng(*seed, 0);
  json report;
  report["experiment"] = a.experiment;
  report["seed"] = *seed;
  std::vector<double> values;
  const SpacingReference* hist_ref = nullptr;
  const SpacingReference gue_ref = SpacingReference::wigner(2), goe_ref = SpacingReference::wigner(1);
  if (a.experiment == "direct-sum-gue" || a.experiment == "gue-spacing" || a.experiment == "goe-spacing") {
    const bool goe = a.experiment == "goe-spacing";
    if (a.experiment == "direct-sum-gue") {
      values = direct_sum_gue_spacing(a.M, a.d, a.draws, rng);
      report["M"] = a.M;
    } else {
      for (long long t = 0; t < a.draws; ++t) {
        const auto spec = sample_gaussian_ensemble(goe ? GaussianEnsemble::GOE : GaussianEnsemble::GUE, a.d, rng);
        const auto sp = bulk_spacings(unfold(spec, a.degree), 0.8);
        values.insert(values.end(), sp.begin(), sp.end());
      }
      report["degree"] = a.degree;
    }
    report["d"] = a.d;
    report["draws"] = a.draws;
    report["n_spacings"] = values.size();
    const auto& wigner = goe ? goe_ref : gue_ref;
    const auto ks_w = spacing_ks(values, wigner);
    const auto ks_p = spacing_ks(values, {SpacingKind::Poisson});
    report["ks_" + wigner.name()] = ks_w.distance;
    report["p_" + wigner.name()] = ks_w.p_value;
    report["ks_poisson"] = ks_p.distance;
    report["p_poisson"] = ks_p.p_value;
    hist_ref = &wigner;
  } else if (a.experiment == "porter-thomas") {
    for (long long t = 0; t < a.draws; ++t) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gue_matrix(a.d, rng));
      for (int j = 0; j < a.d; ++j)
        for (int i = 0; i < a.d; ++i) values.push_back(a.d * std::norm(es.eigenvectors()(i, j)));
    }
    std::vector<double> edges;
    for (int b = 0; b <= 20; ++b) edges.push_back(b == 20 ? INFINITY : -std::log1p(-b / 20.0));
    const auto chi = chi_square_test(values, edges, [](double x) { return porter_thomas_cdf(x, 2, 1.0); });
    report["d"] = a.d;
    report["draws"] = a.draws;
    report["chi2"] = chi.statistic;
    report["dof"] = chi.dof;
    report["p_value"] = chi.p_value;
  } else {
    throw UsageError("unknown experiment " + a.experiment);
  }
  if (!a.histogram.empty()) {
    std::ofstream h(a.histogram, std::ios::binary);
    if (!h) throw UsageError("cannot open histogram file " + a.histogram);
    write_histogram_csv(h, values, a.bins, 0.0, 4.0, hist_ref);
    report["histogram"] = a.histogram;
  }
  emit(out, report.dump(2) + "\n");
  return 0;
}

struct HamiltonianArgs {
  std::string model;
  int V = 12;
  int N = -1;
  int VA = -1;
  int L = 6;
  double t1 = 1.0, t2 = 0.0, V1 = 0.0, V2 = 0.0, W = 1.0;
  double window = 0.2;
  long long n = 1000;
  std::string selection = "sampled";
};

int cmd_hamiltonian(const HamiltonianArgs& a, std::optional<std::uint64_t> seed, int threads, const std::string& format,
                    const std::string& out) {
  const bool stochastic = a.model != "hcb" && a.model != "free-fermion";
  if (stochastic && !seed) throw UsageError("--seed is required for model " + a.model);
  const std::uint64_t s = seed.value_or(0);
  Table t;
  t.header = {"V", "N", "VA", "mean", "stderr", "n_states"};
  int V = a.V;
  EntropyEstimate est;
  int N = a.N;
  if (a.model == "hcb" || a.model == "block-gue" || a.model == "full-gue") {
    ManyBodyModel m;
    if (a.model == "hcb") {
      if (N < 0) N = V / 2;
      m = build_hcb_chain(V, N, a.t1, a.t2, a.V1, a.V2);
    } else if (a.model == "block-gue") {
      if (N < 0) N = V / 2;
      m = build_block_gue(V, N, s);
    } else {
      N = -1;
      m = build_full_gue(V, s);
    }
    est = interacting_eigenstate_average(m, a.VA >= 0 ? a.VA : V / 2, a.window);
  } else {
    QuadraticModel m;
    if (a.model == "free-fermion") {
      m = build_free_fermion_1d(V);
    } else if (a.model == "anderson") {
      m = build_anderson_3d(a.L, a.W, s);
      V = m.V();
    } else if (a.model == "syk2") {
      m = build_syk2_dirac(V, s);
    } else {
      throw UsageError("unknown model " + a.model);
    }
    EigenstateMode mode;
    if (a.selection == "all") {
      mode = EigenstateMode::all_states();
    } else if (a.selection == "fixed-n") {
      if (N < 0) N = V / 2;
      mode = EigenstateMode::fixed_N_sampled(N, a.n, s);
    } else {
      mode = EigenstateMode::sampled(a.n, s);
    }
    est = quadratic_eigenstate_average(m, a.VA >= 0 ? a.VA : V / 2, mode, threads);
  }
  t.rows.push_back({static_cast<double>(V), static_cast<double>(N), static_cast<double>(a.VA >= 0 ? a.VA : V / 2), est.mean,
                    est.std_error, static_cast<double>(est.n_samples)});
  emit(out, t.render(format));
  return 0;
}

int cmd_validate(const std::string& suite, std::uint64_t seed, int threads, const std::string& out) {
  ValidationConfig cfg;
  cfg.quick = suite == "quick";
  cfg.seed = seed;
  cfg.workers = threads;
  json report;
  report["suite"] = suite;
  report["seed"] = seed;
  json items = json::array();
  bool all = true;
  for (const auto& r : run_validation(cfg, [](const CriterionResult& r) {
         std::fprintf(stderr, "[%s] criterion %d: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
       })) {
    items.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    all &= r.pass;
  }
  report["criteria"] = items;
  report["all_pass"] = all;
  emit(out, report.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement entropy of random and physical pure states"};
  app.require_subcommand(1);
  std::string format = "csv";
  std::string out;
  int threads = 0;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--out", out, "Output file (default stdout)");
  };

  Params p;
  auto* exact = app.add_subcommand("exact", "Closed-form average and variance");
  add_physical(exact, p);
  exact->add_option("--VA", p.VA, "Subsystem modes")->check(CLI::NonNegativeNumber);
  exact->add_option("--dA", p.dA, "Subsystem dimension (page only)")->check(CLI::PositiveNumber);
  exact->add_option("--dB", p.dB, "Complement dimension (page only)")->check(CLI::PositiveNumber);
  common(exact);

  int points = 0;
  auto* curve = app.add_subcommand("curve", "Average entropy against subsystem fraction");
  add_physical(curve, p);
  curve->add_option("--points", points, "Number of interior grid points (default V - 1)")->check(CLI::NonNegativeNumber);
  common(curve);

  long long n_samples = 1000;
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate against the closed form");
  add_physical(sample, p);
  sample->add_option("--VA", p.VA, "Subsystem modes")->check(CLI::NonNegativeNumber);
  sample->add_option("--samples,--n-samples", n_samples, "Number of samples")->check(CLI::Range(2LL, 1LL << 40));
  sample->add_option("--seed", seed, "Master seed");
  sample->add_option("--threads", threads, "Worker threads (default EESTAT_THREADS or all cores)");
  sample->add_option("-o,--out", out, "Output file (default stdout)");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Level-spacing and eigenvector statistics");
  spectrum->add_option("--experiment", sa.experiment)
      ->required()
      ->check(CLI::IsMember({"direct-sum-gue", "gue-spacing", "goe-spacing", "porter-thomas"}));
  spectrum->add_option("--M", sa.M, "Number of blocks (direct-sum-gue)")->check(CLI::PositiveNumber);
  spectrum->add_option("--d", sa.d, "Matrix dimension")->check(CLI::Range(2, 1 << 14));
  spectrum->add_option("--draws", sa.draws, "Number of matrices or direct sums")->check(CLI::PositiveNumber);
  spectrum->add_option("--degree", sa.degree, "Unfolding polynomial degree")->check(CLI::Range(1, 20));
  spectrum->add_option("--bins", sa.bins, "Histogram bins")->check(CLI::PositiveNumber);
  spectrum->add_option("--histogram", sa.histogram, "Histogram CSV path");
  spectrum->add_option("--seed", seed, "Master seed");
  spectrum->add_option("-o,--out", out, "Report file (default stdout)");

  HamiltonianArgs ha;
  auto* ham = app.add_subcommand("hamiltonian", "Eigenstate entanglement of model Hamiltonians");
  ham->add_option("--model", ha.model)
      ->required()
      ->check(CLI::IsMember({"hcb", "block-gue", "full-gue", "free-fermion", "anderson", "syk2"}));
  ham->add_option("--V", ha.V, "Number of sites")->check(CLI::Range(2, 1 << 16));
  ham->add_option("--N", ha.N, "Particle number")->check(CLI::NonNegativeNumber);
  ham->add_option("--VA", ha.VA, "Subsystem sites (default V/2)")->check(CLI::NonNegativeNumber);
  ham->add_option("--L", ha.L, "Anderson lattice size")->check(CLI::Range(2, 16));
  ham->add_option("--W", ha.W, "Anderson disorder strength");
  ham->add_option("--t1", ha.t1, "Nearest-neighbour hopping");
  ham->add_option("--t2", ha.t2, "Next-nearest-neighbour hopping");
  ham->add_option("--V1", ha.V1, "Nearest-neighbour interaction");
  ham->add_option("--V2", ha.V2, "Next-nearest-neighbour interaction");
  ham->add_option("--window", ha.window, "Central fraction of eigenstates")->check(CLI::Range(0.0, 1.0));
  ham->add_option("--samples", ha.n, "Sampled eigenstates (quadratic models)")->check(CLI::Range(2LL, 1LL << 40));
  ham->add_option("--selection", ha.selection, "Eigenstate family for quadratic models")
      ->check(CLI::IsMember({"all", "sampled", "fixed-n"}));
  ham->add_option("--seed", seed, "Disorder and sampling seed");
  ham->add_option("--threads", threads, "Worker threads");
  common(ham);

  std::string suite = "quick";
  std::uint64_t vseed = ValidationConfig{}.seed;
  auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
  validate->add_option("suite", suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  validate->add_option("--seed", vseed, "Master seed");
  validate->add_option("--threads", threads, "Worker threads");
  validate->add_option("-o,--out", out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*exact) return cmd_exact(p, format, out);
    if (*curve) return cmd_curve(p, points, format, out);
    if (*sample) return cmd_sample(p, n_samples, seed, threads, out);
    if (*spectrum) return cmd_spectrum(sa, seed, out);
    if (*ham) return cmd_hamiltonian(ha, seed, threads, format, out);
    if (*validate) return cmd_validate(suite, vseed, threads, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
