#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "eestat/ensembles.hpp"
#include "eestat/entropy.hpp"

namespace eestat {

enum class QuadraticKind { FreeFermion1D, Anderson3D, SYK2Dirac, Custom };

/// Single-particle Hamiltonian together with its eigenbasis (computed once).
struct QuadraticModel {
  QuadraticKind kind = QuadraticKind::Custom;
  Eigen::MatrixXcd h;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd orbitals; // column k is the orbital of energies(k)
  int L = 0;                 // Anderson lattice size
  double W = 0.0;            // Anderson disorder strength
  std::uint64_t seed = 0;

  int V() const { return static_cast<int>(h.rows()); }
  /// Diagonalizes a Hermitian single-particle matrix.
  static QuadraticModel from_matrix(Eigen::MatrixXcd h, QuadraticKind kind = QuadraticKind::Custom);
};

/// Nearest-neighbour hopping -(c_i^dag c_{i+1} + h.c.) on a ring; orbitals are plane waves.
QuadraticModel build_free_fermion_1d(int V);
/// Cubic lattice, hopping 1, on-site (W/2) eps_i with eps_i uniform in [-1, 1].
/// Site index z L^2 + y L + x; subsystems are leading index ranges.
QuadraticModel build_anderson_3d(int L, double W, std::uint64_t seed, bool periodic = true);
/// Single-particle matrix drawn from GUE.
QuadraticModel build_syk2_dirac(int V, std::uint64_t seed);

/// Entropy of the Slater determinant filling `occupied` orbitals, subsystem = first VA sites.
double quadratic_eigenstate_entropy(const QuadraticModel& m, const std::vector<int>& occupied, int VA);

enum class EigenstateSelection { AllStates, Sampled, FixedNSampled };

struct EigenstateMode {
  EigenstateSelection selection = EigenstateSelection::Sampled;
  long long n_samples = 1000;
  std::uint64_t seed = 0;
  int N = 0;  // FixedNSampled only

  static EigenstateMode all_states() { return {EigenstateSelection::AllStates, 0, 0, 0}; }
  static EigenstateMode sampled(long long n, std::uint64_t seed) { return {EigenstateSelection::Sampled, n, seed, 0}; }
  static EigenstateMode fixed_N_sampled(int N, long long n, std::uint64_t seed) {
    return {EigenstateSelection::FixedNSampled, n, seed, N};
  }
};

/// Sampled: each orbital occupied independently with probability 1/2.
/// FixedNSampled: uniformly random N-subset of orbitals.
EntropyEstimate quadratic_eigenstate_average(const QuadraticModel& m, int VA, const EigenstateMode& mode, int n_workers = 0);

enum class ManyBodyKind { HardCoreBosonChain, BlockGUE, FullGUE };

/// Dense Hamiltonian on a fixed-N sector (N >= 0) or on the full 2^V space (N = -1).
struct ManyBodyModel {
  ManyBodyKind kind = ManyBodyKind::BlockGUE;
  int V = 0;
  int N = -1;
  Eigen::MatrixXcd h;
  bool real = false;  // h has vanishing imaginary part

  std::size_t dim() const { return static_cast<std::size_t>(h.rows()); }
};

/// Hard-core bosons on a ring: hops of range 1 and 2 with amplitudes -t1, -t2,
/// density interactions V1 n_i n_{i+1} + V2 n_i n_{i+2}. Bitwise occupation basis, no signs.
ManyBodyModel build_hcb_chain(int V, int N, double t1, double t2, double V1, double V2);
ManyBodyModel build_block_gue(int V, int N, std::uint64_t seed);
ManyBodyModel build_full_gue(int V, std::uint64_t seed);

struct EigenstateEntropies {
  std::vector<double> energies;
  std::vector<double> entropies;
  EntropyEstimate summary;  // std_error = spread / sqrt(count)
};

/// Entropies of the central `central_fraction` of eigenstates ordered by energy.
EigenstateEntropies interacting_eigenstate_entropies(const ManyBodyModel& m, int VA, double central_fraction);
EntropyEstimate interacting_eigenstate_average(const ManyBodyModel& m, int VA, double central_fraction);

}  // namespace eestat
