#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace eestat {

/// Bipartition of V fermionic modes; subsystem A is the first VA modes.
struct Partition {
  int V = 0;
  int VA = 0;

  Partition() = default;
  Partition(int v, int va);
  int VB() const { return V - VA; }
  double f() const { return static_cast<double>(VA) / V; }
};

/// Occupation basis of the N-particle sector of V modes, bitstrings in ascending order.
/// Mode 1 is the most significant bit.
class SectorBasis {
 public:
  SectorBasis(int V, int N);

  int V() const { return V_; }
  int N() const { return N_; }
  std::size_t size() const { return states_.size(); }
  std::uint64_t state(std::size_t i) const { return states_[i]; }
  const std::vector<std::uint64_t>& states() const { return states_; }
  /// Position of a weight-N bitstring in the basis (combinatorial ranking).
  std::size_t index(std::uint64_t bits) const;

 private:
  int V_;
  int N_;
  std::vector<std::uint64_t> states_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

/// Pure state in the full 2^V space or in a fixed-N sector.
struct PureState {
  int V = 0;
  int N = -1;  // -1 for the full space
  Eigen::VectorXcd amplitudes;

  static PureState full(int V, Eigen::VectorXcd amps);
  static PureState sector(int V, int N, Eigen::VectorXcd amps);
  bool is_sector() const { return N >= 0; }
  Eigen::VectorXcd embed() const;  // amplitudes in the full space
};

struct RdmSpectrum {
  std::vector<double> eigenvalues;
  std::vector<int> block_labels;  // subsystem particle number per eigenvalue; empty for the full space
  std::vector<int> block_ids;     // N_A of each nonempty block
  std::vector<double> block_weights;
};

/// s(x) = -((1+x)/2) ln((1+x)/2) - ((1-x)/2) ln((1-x)/2), |x| clamped to 1.
double s_binary(double x);

double vn_entropy(const std::vector<double>& eigenvalues);
double vn_entropy(const RdmSpectrum& spec);
double renyi_entropy(const RdmSpectrum& spec, double order);

RdmSpectrum rdm_spectrum_full(const PureState& state, const Partition& part);
RdmSpectrum rdm_spectrum_sector(const PureState& state, const Partition& part);
/// Dispatches on the state space.
RdmSpectrum rdm_spectrum(const PureState& state, const Partition& part);

/// Entropy of a Gaussian state from the subsystem correlation block C_A.
double gaussian_entropy_from_C(const Eigen::MatrixXcd& CA);
double gaussian_entropy_from_C(const Eigen::MatrixXd& CA);

/// Entropy from the subsystem block of the complex structure; sum over the VA
/// nonnegative values x_j of the spectrum of i J_A.
double gaussian_entropy_from_J(const Eigen::MatrixXd& JA);

/// Complex structure of a number-conserving Gaussian state with correlation matrix C,
/// in the Majorana ordering (q_1..q_V, p_1..p_V).
Eigen::MatrixXd complex_structure_from_C(const Eigen::MatrixXcd& C);

/// Restriction of a 2V x 2V complex structure to the first VA modes in (q, p) ordering.
Eigen::MatrixXd restrict_complex_structure(const Eigen::MatrixXd& J, int V, int VA);

/// Slater determinant of the orthonormal orbitals (columns of Phi) as a 2^V amplitude vector.
Eigen::VectorXcd slater_state(const Eigen::MatrixXcd& Phi);

}  // namespace eestat
