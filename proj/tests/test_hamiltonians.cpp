#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "eestat/closedform.hpp"
#include "eestat/entropy.hpp"
#include "eestat/hamiltonians.hpp"
#include "eestat/spectral.hpp"

using namespace eestat;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct MeanAndError {
  double mean;
  double error;
};

// Mean over realizations with the standard error of that mean.
MeanAndError realization_mean(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

// Cyclic shift of every occupied site by one.
std::uint64_t translate(std::uint64_t bits, int V) { return (bits >> 1) | ((bits & 1u) << (V - 1)); }

}  // namespace

TEST(FreeFermions, RingSpectrumAndPlaneWaves) {
  const auto four = build_free_fermion_1d(4);
  const std::vector<double> want = {-2, 0, 0, 2};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(four.energies(k), want[static_cast<std::size_t>(k)], 1e-14);

  const int V = 36;
  const auto m = build_free_fermion_1d(V);
  std::vector<double> cosines;
  for (int k = 0; k < V; ++k) cosines.push_back(-2 * std::cos(2 * kPi * k / V));
  std::sort(cosines.begin(), cosines.end());
  for (int k = 0; k < V; ++k) {
    EXPECT_NEAR(m.energies(k), cosines[static_cast<std::size_t>(k)], 1e-12);
    const Eigen::VectorXcd phi = m.orbitals.col(k);
    EXPECT_LT((m.h * phi - m.energies(k) * phi).norm(), 1e-12);
    for (int x = 0; x < V; ++x) EXPECT_NEAR(std::norm(phi(x)), 1.0 / V, 1e-14);
  }
  EXPECT_LT((m.orbitals.adjoint() * m.orbitals - Eigen::MatrixXcd::Identity(V, V)).norm(), 1e-12);
}

TEST(FreeFermions, SlaterEntropyMatchesManyBodyState) {
  const auto m = build_free_fermion_1d(8);
  const std::vector<int> occupied = {0, 2, 5};
  Eigen::MatrixXcd phi(8, 3);
  for (int j = 0; j < 3; ++j) phi.col(j) = m.orbitals.col(occupied[static_cast<std::size_t>(j)]);
  const auto psi = PureState::full(8, slater_state(phi));
  for (int VA = 1; VA < 8; ++VA)
    EXPECT_NEAR(quadratic_eigenstate_entropy(m, occupied, VA), vn_entropy(rdm_spectrum(psi, Partition(8, VA))), 1e-11);
}

TEST(FreeFermions, FixedNSamplingMatchesEnumeration) {
  const int V = 12, N = 6, VA = 4;
  const auto m = build_free_fermion_1d(V);
  double total = 0;
  int count = 0;
  for (std::uint32_t mask = 0; mask < (1u << V); ++mask) {
    if (std::popcount(mask) != N) continue;
    std::vector<int> occ;
    for (int k = 0; k < V; ++k)
      if ((mask >> k) & 1u) occ.push_back(k);
    total += quadratic_eigenstate_entropy(m, occ, VA);
    ++count;
  }
  const auto est = quadratic_eigenstate_average(m, VA, EigenstateMode::fixed_N_sampled(N, 4000, 11), 1);
  EXPECT_LT(std::fabs(est.mean - total / count), 4 * est.std_error);
}

TEST(FreeFermions, AllStatesEqualsSampledInExpectation) {
  const auto m = build_free_fermion_1d(10);
  const auto all = quadratic_eigenstate_average(m, 5, EigenstateMode::all_states(), 1);
  EXPECT_EQ(all.n_samples, 1024);
  const auto sampled = quadratic_eigenstate_average(m, 5, EigenstateMode::sampled(4000, 12), 1);
  EXPECT_LT(std::fabs(sampled.mean - all.mean), 4 * sampled.std_error);
  const auto again = quadratic_eigenstate_average(m, 5, EigenstateMode::sampled(4000, 12), 3);
  EXPECT_EQ(again.mean, sampled.mean);
}

TEST(Anderson, CleanLatticeSpectrum) {
  const int L = 4;
  const auto m = build_anderson_3d(L, 0.0, 1);
  std::vector<double> want;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        want.push_back(-2 * (std::cos(2 * kPi * a / L) + std::cos(2 * kPi * b / L) + std::cos(2 * kPi * c / L)));
  std::sort(want.begin(), want.end());
  for (int k = 0; k < L * L * L; ++k) EXPECT_NEAR(m.energies(k), want[static_cast<std::size_t>(k)], 1e-12);
}

TEST(Anderson, DisorderAndBoundaries) {
  const auto a = build_anderson_3d(5, 4.0, 7);
  const auto b = build_anderson_3d(5, 4.0, 7);
  const auto c = build_anderson_3d(5, 4.0, 8);
  EXPECT_EQ((a.h - b.h).norm(), 0.0);
  EXPECT_GT((a.h - c.h).norm(), 0.0);
  EXPECT_LE(a.h.diagonal().real().cwiseAbs().maxCoeff(), 2.0);
  EXPECT_LT((a.h - a.h.adjoint()).norm(), 1e-14);
  // Off-diagonal bonds: 6 per site with periodic boundaries, fewer on the open cube surface.
  const auto open = build_anderson_3d(5, 0.0, 7, false);
  const double bonds_periodic = (a.h.cwiseAbs().sum() - a.h.diagonal().cwiseAbs().sum());
  const double bonds_open = open.h.cwiseAbs().sum();
  EXPECT_NEAR(bonds_periodic, 6.0 * 125, 1e-12);
  EXPECT_NEAR(bonds_open, 2.0 * 3 * 4 * 25, 1e-12);
}

TEST(Syk2, MatrixMomentsAndWeightedAverage) {
  const auto m = build_syk2_dirac(200, 3);
  EXPECT_LT((m.h - m.h.adjoint()).norm(), 1e-12);
  EXPECT_NEAR(m.h.cwiseAbs2().mean(), 1.0, 0.03);

  // Averaged over realizations, a random half filling of GUE orbitals is the w = 0 Gaussian ensemble.
  const int V = 64, VA = 16;
  std::vector<double> means;
  for (int r = 0; r < 60; ++r) {
    const auto model = build_syk2_dirac(V, 1000 + r);
    means.push_back(quadratic_eigenstate_average(model, VA, EigenstateMode::sampled(64, 2000 + r), 1).mean);
  }
  const auto agg = realization_mean(means);
  EXPECT_LT(std::fabs(agg.mean - weighted_average(V, VA, 0.0, true)), 4 * agg.error) << agg.mean << " +- " << agg.error;
}

TEST(HardCoreBosons, FourSiteMatrix) {
  const double t1 = 1.0, V1 = 0.7;
  const auto m = build_hcb_chain(4, 2, t1, 0.0, V1, 0.0);
  // Basis (ascending bitstrings, site 0 most significant):
  // A{2,3} B{1,3} C{1,2} D{0,3} E{0,2} F{0,1}
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(6, 6);
  enum { A, B, C, D, E, F };
  want(A, A) = want(C, C) = want(D, D) = want(F, F) = V1;
  for (auto [p, q] : {std::pair{A, B}, std::pair{A, E}, std::pair{B, D}, std::pair{B, C}, std::pair{B, F}, std::pair{C, E},
                      std::pair{D, E}, std::pair{E, F}}) {
    want(p, q) = -t1;
    want(q, p) = -t1;
  }
  EXPECT_LT((m.h.real() - want).norm(), 1e-15);
  EXPECT_EQ(m.h.imag().norm(), 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mine(m.h.real()), hand(want);
  EXPECT_LT((mine.eigenvalues() - hand.eigenvalues()).norm(), 1e-13);
}

TEST(HardCoreBosons, TranslationInvariance) {
  const int V = 9, N = 4;
  const auto m = build_hcb_chain(V, N, 1.0, 0.6, 1.1, 0.4);
  const SectorBasis basis(V, N);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    T(static_cast<Eigen::Index>(basis.index(translate(basis.state(static_cast<std::size_t>(a)), V))), a) = 1.0;
  const Eigen::MatrixXd h = m.h.real();
  EXPECT_LT((T * h - h * T).norm(), 1e-13);
  EXPECT_LT((h - h.transpose()).norm(), 1e-15);
}

TEST(HardCoreBosons, DegenerateMomentumPartnersShareEntropy) {
  const auto m = build_hcb_chain(10, 5, 1.0, 1.0, 1.1, 1.1);
  const auto r = interacting_eigenstate_entropies(m, 5, 0.2);
  ASSERT_EQ(r.energies.size(), 50u);
  EXPECT_TRUE(std::is_sorted(r.energies.begin(), r.energies.end()));
  // Reflection maps k to -k and A to its complement, so +-k partners share the entropy.
  // Accidental degeneracies between self-conjugate momenta carry no such constraint.
  int pairs = 0, matched = 0;
  for (std::size_t i = 0; i + 1 < r.energies.size(); ++i) {
    if (std::fabs(r.energies[i + 1] - r.energies[i]) < 1e-9) {
      ++pairs;
      matched += std::fabs(r.entropies[i] - r.entropies[i + 1]) < 1e-9;
    }
  }
  EXPECT_EQ(pairs, 20);
  EXPECT_GE(matched, 19);
  EXPECT_LT(r.summary.mean, fixedN_average(10, 5, 5));
}

TEST(RandomHamiltonians, BlockGueMatchesFixedNAverage) {
  const int V = 10, N = 5, VA = 5;
  std::vector<double> means;
  for (int r = 0; r < 20; ++r) means.push_back(interacting_eigenstate_average(build_block_gue(V, N, 300 + r), VA, 1.0).mean);
  const auto agg = realization_mean(means);
  EXPECT_LT(std::fabs(agg.mean - fixedN_average(V, VA, N)), 4 * agg.error + 1e-4);
}

TEST(RandomHamiltonians, FullGueMatchesPageAverage) {
  const int V = 8, VA = 4;
  std::vector<double> means;
  for (int r = 0; r < 8; ++r) means.push_back(interacting_eigenstate_average(build_full_gue(V, 400 + r), VA, 1.0).mean);
  const auto agg = realization_mean(means);
  EXPECT_LT(std::fabs(agg.mean - page_average(16, 16)), 4 * agg.error + 1e-4);
}

TEST(RandomHamiltonians, CentralWindowSize) {
  const auto m = build_block_gue(8, 4, 1);
  EXPECT_EQ(interacting_eigenstate_entropies(m, 4, 0.2).entropies.size(), 14u);
  EXPECT_EQ(interacting_eigenstate_entropies(m, 4, 1e-6).entropies.size(), 1u);
  EXPECT_THROW(build_hcb_chain(17, 8, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(build_full_gue(11, 1), std::invalid_argument);
}
