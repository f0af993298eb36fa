#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>

#include "eestat/entropy.hpp"

namespace eestat {

/// Random stream keyed by (master_seed, stream_id). Equal keys give equal draws.
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }  // [0, 1)
  std::complex<double> complex_normal();          // E|z|^2 = 1
  std::uint64_t bits() { return engine_(); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

struct EntropyEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(sample_variance / n_samples)
  double sample_variance = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
};

Eigen::MatrixXcd ginibre_complex(int rows, int cols, SeededRng& rng);
Eigen::MatrixXd ginibre_real(int rows, int cols, SeededRng& rng);

/// Haar-distributed U(d) and O(d) via Ginibre QR with the diagonal phase fixed.
Eigen::MatrixXcd haar_unitary(int d, SeededRng& rng);
Eigen::MatrixXd haar_orthogonal(int d, SeededRng& rng);
/// First k columns of a Haar matrix; costs O(d k^2).
Eigen::MatrixXcd haar_unitary_columns(int d, int k, SeededRng& rng);
Eigen::MatrixXd haar_orthogonal_columns(int d, int k, SeededRng& rng);

PureState sample_haar_state(int V, SeededRng& rng);
PureState sample_sector_state(int V, int N, SeededRng& rng);

/// Standard complex structure J0 = i tau_2 (x) 1 in (q, p) ordering.
Eigen::MatrixXd standard_complex_structure(int V);
/// M^T J0 M with M Haar on O(2V).
Eigen::MatrixXd sample_gaussian_state(int V, SeededRng& rng);
/// Subsystem block of sample_gaussian_state for the first VA modes, drawn directly.
Eigen::MatrixXd sample_gaussian_subsystem(int V, int VA, SeededRng& rng);

/// Rank-N projector C = U^dag diag(1_N, 0) U with U Haar on U(V).
Eigen::MatrixXcd sample_gaussian_fixedN(int V, int N, SeededRng& rng);
/// Its leading VA x VA block, drawn directly.
Eigen::MatrixXcd sample_gaussian_fixedN_subsystem(int V, int VA, int N, SeededRng& rng);

using Statistic = std::function<double(SeededRng&)>;

/// Samples per chunk; chunk c draws from stream c.
inline constexpr long long kChunkSize = 64;

/// Default worker count: EESTAT_THREADS if set, else hardware concurrency.
int default_workers();

/// Mean and variance of `statistic` over n_samples draws. Chunks are reduced in
/// ascending order, so the result does not depend on n_workers.
/// n_workers <= 0 selects default_workers().
EntropyEstimate mc_estimate(const Statistic& statistic, long long n_samples, std::uint64_t master_seed, int n_workers = 0);

}  // namespace eestat
