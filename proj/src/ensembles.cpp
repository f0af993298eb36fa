#include "eestat/ensembles.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "eestat/specfun.hpp"

namespace eestat {

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                    0x65657374u};
  engine_.seed(seq);
}

std::complex<double> SeededRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Eigen::MatrixXcd ginibre_complex(int rows, int cols, SeededRng& rng) {
  Eigen::MatrixXcd z(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) z(i, j) = rng.complex_normal();
  return z;
}

Eigen::MatrixXd ginibre_real(int rows, int cols, SeededRng& rng) {
  Eigen::MatrixXd z(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) z(i, j) = rng.normal();
  return z;
}

namespace {

// Q of a QR factorization, columns rescaled so that diag(R) > 0.
template <typename Matrix>
Matrix corrected_q(const Matrix& z) {
  using Scalar = typename Matrix::Scalar;
  const Eigen::Index d = z.rows();
  const Eigen::Index k = z.cols();
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Scalar r = qr.matrixQR()(j, j);
    const double mod = std::abs(r);
    if (mod > 0.0) q.col(j) *= r / mod;
  }
  return q;
}

void check_dim(int d, int k, const char* who) {
  if (d < 1 || k < 0 || k > d) throw std::invalid_argument(std::string(who) + ": need 0 <= k <= d, d >= 1");
}

}  // namespace

Eigen::MatrixXcd haar_unitary(int d, SeededRng& rng) { return haar_unitary_columns(d, d, rng); }

Eigen::MatrixXd haar_orthogonal(int d, SeededRng& rng) { return haar_orthogonal_columns(d, d, rng); }

Eigen::MatrixXcd haar_unitary_columns(int d, int k, SeededRng& rng) {
  check_dim(d, k, "haar_unitary");
  return corrected_q<Eigen::MatrixXcd>(ginibre_complex(d, k, rng));
}

Eigen::MatrixXd haar_orthogonal_columns(int d, int k, SeededRng& rng) {
  check_dim(d, k, "haar_orthogonal");
  return corrected_q<Eigen::MatrixXd>(ginibre_real(d, k, rng));
}

PureState sample_haar_state(int V, SeededRng& rng) {
  if (V < 1 || V > 26) throw std::invalid_argument("sample_haar_state: need 1 <= V <= 26");
  const Eigen::Index d = Eigen::Index{1} << V;
  Eigen::VectorXcd amps(d);
  for (Eigen::Index i = 0; i < d; ++i) amps(i) = rng.complex_normal();
  amps.normalize();
  return PureState::full(V, std::move(amps));
}

PureState sample_sector_state(int V, int N, SeededRng& rng) {
  if (V < 1 || N < 0 || N > V) throw std::invalid_argument("sample_sector_state: need 0 <= N <= V");
  if (log_binomial(V, N) > std::log(1.0e8)) throw std::invalid_argument("sample_sector_state: sector too large");
  const auto d = static_cast<Eigen::Index>(std::llround(std::exp(log_binomial(V, N))));
  Eigen::VectorXcd amps(d);
  for (Eigen::Index i = 0; i < d; ++i) amps(i) = rng.complex_normal();
  amps.normalize();
  return PureState::sector(V, N, std::move(amps));
}

Eigen::MatrixXd standard_complex_structure(int V) {
  Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(2 * V, 2 * V);
  j0.topRightCorner(V, V) = Eigen::MatrixXd::Identity(V, V);
  j0.bottomLeftCorner(V, V) = -Eigen::MatrixXd::Identity(V, V);
  return j0;
}

Eigen::MatrixXd sample_gaussian_state(int V, SeededRng& rng) {
  if (V < 1) throw std::invalid_argument("sample_gaussian_state: V >= 1");
  const Eigen::MatrixXd m = haar_orthogonal(2 * V, rng);
  return m.transpose() * standard_complex_structure(V) * m;
}

Eigen::MatrixXd sample_gaussian_subsystem(int V, int VA, SeededRng& rng) {
  if (V < 1 || VA < 0 || VA > V) throw std::invalid_argument("sample_gaussian_subsystem: need 0 <= VA <= V");
  // Any 2 VA columns of a Haar orthogonal matrix are identically distributed.
  const Eigen::MatrixXd cols = haar_orthogonal_columns(2 * V, 2 * VA, rng);
  const Eigen::MatrixXd top = cols.topRows(V);
  const Eigen::MatrixXd bottom = cols.bottomRows(V);
  // (J0 M)_rows = (bottom; -top)
  const Eigen::MatrixXd ja = top.transpose() * bottom - bottom.transpose() * top;
  return 0.5 * (ja - ja.transpose());
}

Eigen::MatrixXcd sample_gaussian_fixedN(int V, int N, SeededRng& rng) {
  if (V < 1 || N < 0 || N > V) throw std::invalid_argument("sample_gaussian_fixedN: need 0 <= N <= V");
  if (N == 0) return Eigen::MatrixXcd::Zero(V, V);
  const Eigen::MatrixXcd occ = haar_unitary_columns(V, N, rng);
  return occ * occ.adjoint();
}

Eigen::MatrixXcd sample_gaussian_fixedN_subsystem(int V, int VA, int N, SeededRng& rng) {
  if (V < 1 || N < 0 || N > V || VA < 0 || VA > V)
    throw std::invalid_argument("sample_gaussian_fixedN_subsystem: need 0 <= N, VA <= V");
  if (N == 0) return Eigen::MatrixXcd::Zero(VA, VA);
  const Eigen::MatrixXcd occ = haar_unitary_columns(V, N, rng);
  const Eigen::MatrixXcd rows = occ.topRows(VA);
  return rows * rows.adjoint();
}

int default_workers() {
  if (const char* env = std::getenv("EESTAT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct Moments {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / n;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

}  // namespace

EntropyEstimate mc_estimate(const Statistic& statistic, long long n_samples, std::uint64_t master_seed, int n_workers) {
  if (n_samples < 2) throw std::invalid_argument("mc_estimate: n_samples >= 2");
  if (n_workers <= 0) n_workers = default_workers();
  const long long n_chunks = (n_samples + kChunkSize - 1) / kChunkSize;
  n_workers = static_cast<int>(std::min<long long>(n_workers, n_chunks));

  std::vector<Moments> chunks(static_cast<std::size_t>(n_chunks));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_chunks));
  std::atomic<long long> next{0};

  auto work = [&] {
    for (long long c = next++; c < n_chunks; c = next++) {
      try {
        SeededRng rng(master_seed, static_cast<std::uint64_t>(c));
        const long long begin = c * kChunkSize;
        const long long end = std::min(n_samples, begin + kChunkSize);
        Moments& m = chunks[static_cast<std::size_t>(c)];
        for (long long i = begin; i < end; ++i) m.push(statistic(rng));
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    }
  };

  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  Moments total;
  for (long long c = 0; c < n_chunks; ++c) {
    if (errors[static_cast<std::size_t>(c)]) {
      try {
        std::rethrow_exception(errors[static_cast<std::size_t>(c)]);
      } catch (const std::exception& e) {
        throw std::runtime_error("mc_estimate: chunk " + std::to_string(c) + ": " + e.what());
      }
    }
    total.merge(chunks[static_cast<std::size_t>(c)]);
  }

  EntropyEstimate est;
  est.mean = total.mean;
  est.n_samples = total.count;
  est.sample_variance = total.m2 / static_cast<double>(total.count - 1);
  est.std_error = std::sqrt(est.sample_variance / static_cast<double>(total.count));
  est.seed = master_seed;
  return est;
}

}  // namespace eestat
