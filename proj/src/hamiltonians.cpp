#include "eestat/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eestat/spectral.hpp"

namespace eestat {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool occupied(std::uint64_t bits, int V, int mode) { return (bits >> (V - 1 - mode)) & 1u; }
std::uint64_t mode_bit(int V, int mode) { return std::uint64_t{1} << (V - 1 - mode); }

}  // namespace

QuadraticModel QuadraticModel::from_matrix(Eigen::MatrixXcd h, QuadraticKind kind) {
  if (h.rows() != h.cols() || h.rows() < 1) throw std::invalid_argument("QuadraticModel: square matrix required");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("QuadraticModel: matrix is not Hermitian");
  QuadraticModel m;
  m.kind = kind;
  m.h = std::move(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.h);
  m.energies = es.eigenvalues();
  m.orbitals = es.eigenvectors();
  return m;
}

QuadraticModel build_free_fermion_1d(int V) {
  if (V < 2) throw std::invalid_argument("build_free_fermion_1d: V >= 2");
  QuadraticModel m;
  m.kind = QuadraticKind::FreeFermion1D;
  m.h = Eigen::MatrixXcd::Zero(V, V);
  for (int x = 0; x < V; ++x) {
    const int y = (x + 1) % V;
    m.h(x, y) -= 1.0;
    m.h(y, x) -= 1.0;
  }
  // Plane waves diagonalize h exactly and fix the basis inside degenerate pairs.
  std::vector<int> momenta(static_cast<std::size_t>(V));
  std::iota(momenta.begin(), momenta.end(), 0);
  auto energy = [V](int k) { return -2.0 * std::cos(2.0 * kPi * k / V); };
  std::stable_sort(momenta.begin(), momenta.end(), [&](int a, int b) { return energy(a) < energy(b); });
  m.energies.resize(V);
  m.orbitals.resize(V, V);
  const double norm = 1.0 / std::sqrt(static_cast<double>(V));
  for (int c = 0; c < V; ++c) {
    const int k = momenta[static_cast<std::size_t>(c)];
    m.energies(c) = energy(k);
    for (int x = 0; x < V; ++x) m.orbitals(x, c) = std::polar(norm, 2.0 * kPi * k * x / V);
  }
  return m;
}

QuadraticModel build_anderson_3d(int L, double W, std::uint64_t seed, bool periodic) {
  if (L < 2) throw std::invalid_argument("build_anderson_3d: L >= 2");
  const int V = L * L * L;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(V, V);
  auto site = [L](int x, int y, int z) { return (z * L + y) * L + x; };
  SeededRng rng(seed, 0);
  for (int z = 0; z < L; ++z)
    for (int y = 0; y < L; ++y)
      for (int x = 0; x < L; ++x) {
        const int s = site(x, y, z);
        h(s, s) = 0.5 * W * (2.0 * rng.uniform() - 1.0);
        const int nb[3][3] = {{x + 1, y, z}, {x, y + 1, z}, {x, y, z + 1}};
        for (const auto& n : nb) {
          if (!periodic && (n[0] == L || n[1] == L || n[2] == L)) continue;
          const int t = site(n[0] % L, n[1] % L, n[2] % L);
          h(s, t) -= 1.0;
          h(t, s) -= 1.0;
        }
      }
  QuadraticModel m = QuadraticModel::from_matrix(std::move(h), QuadraticKind::Anderson3D);
  m.L = L;
  m.W = W;
  m.seed = seed;
  return m;
}

QuadraticModel build_syk2_dirac(int V, std::uint64_t seed) {
  if (V < 2) throw std::invalid_argument("build_syk2_dirac: V >= 2");
  SeededRng rng(seed, 0);
  QuadraticModel m = QuadraticModel::from_matrix(gue_matrix(V, rng), QuadraticKind::SYK2Dirac);
  m.seed = seed;
  return m;
}

double quadratic_eigenstate_entropy(const QuadraticModel& m, const std::vector<int>& occupied_orbitals, int VA) {
  const int V = m.V();
  if (VA < 0 || VA > V) throw std::invalid_argument("quadratic_eigenstate_entropy: 0 <= VA <= V");
  if (VA == 0 || occupied_orbitals.empty()) return 0.0;
  Eigen::MatrixXcd phi(VA, static_cast<Eigen::Index>(occupied_orbitals.size()));
  for (std::size_t c = 0; c < occupied_orbitals.size(); ++c) {
    const int k = occupied_orbitals[c];
    if (k < 0 || k >= V) throw std::invalid_argument("quadratic_eigenstate_entropy: orbital index out of range");
    phi.col(static_cast<Eigen::Index>(c)) = m.orbitals.col(k).head(VA);
  }
  const Eigen::MatrixXcd ca = phi * phi.adjoint();
  return gaussian_entropy_from_C(ca);
}

EntropyEstimate quadratic_eigenstate_average(const QuadraticModel& m, int VA, const EigenstateMode& mode, int n_workers) {
  const int V = m.V();
  switch (mode.selection) {
    case EigenstateSelection::AllStates: {
      if (V > 24) throw std::invalid_argument("quadratic_eigenstate_average: all_states needs V <= 24");
      const std::uint64_t total = std::uint64_t{1} << V;
      // Deterministic enumeration in mask order.
      double mean = 0.0, m2 = 0.0;
      std::vector<int> occ;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        occ.clear();
        for (int k = 0; k < V; ++k)
          if ((mask >> k) & 1u) occ.push_back(k);
        const double s = quadratic_eigenstate_entropy(m, occ, VA);
        const double d = s - mean;
        mean += d / static_cast<double>(mask + 1);
        m2 += d * (s - mean);
      }
      EntropyEstimate est;
      est.mean = mean;
      est.n_samples = static_cast<long long>(total);
      est.sample_variance = total > 1 ? m2 / static_cast<double>(total - 1) : 0.0;
      est.std_error = std::sqrt(est.sample_variance / static_cast<double>(total));
      return est;
    }
    case EigenstateSelection::Sampled:
      return mc_estimate(
          [&](SeededRng& rng) {
            std::vector<int> occ;
            for (int k = 0; k < V; ++k)
              if (rng.uniform() < 0.5) occ.push_back(k);
            return quadratic_eigenstate_entropy(m, occ, VA);
          },
          mode.n_samples, mode.seed, n_workers);
    case EigenstateSelection::FixedNSampled: {
      if (mode.N < 0 || mode.N > V) throw std::invalid_argument("quadratic_eigenstate_average: 0 <= N <= V");
      return mc_estimate(
          [&](SeededRng& rng) {
            std::vector<int> perm(static_cast<std::size_t>(V));
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = 0; i < mode.N; ++i) {
              std::uniform_int_distribution<int> pick(i, V - 1);
              std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng.engine()))]);
            }
            perm.resize(static_cast<std::size_t>(mode.N));
            return quadratic_eigenstate_entropy(m, perm, VA);
          },
          mode.n_samples, mode.seed, n_workers);
    }
  }
  throw std::logic_error("quadratic_eigenstate_average: unknown mode");
}

ManyBodyModel build_hcb_chain(int V, int N, double t1, double t2, double V1, double V2) {
  if (V < 3 || N < 0 || N > V) throw std::invalid_argument("build_hcb_chain: V >= 3, 0 <= N <= V");
  if (V > 16) throw std::invalid_argument("build_hcb_chain: V <= 16");
  const SectorBasis basis(V, N);
  const auto d = static_cast<Eigen::Index>(basis.size());
  ManyBodyModel m;
  m.kind = ManyBodyKind::HardCoreBosonChain;
  m.V = V;
  m.N = N;
  m.real = true;
  m.h = Eigen::MatrixXcd::Zero(d, d);
  const double hop[2] = {t1, t2};
  const double dens[2] = {V1, V2};
  for (Eigen::Index a = 0; a < d; ++a) {
    const std::uint64_t bits = basis.state(static_cast<std::size_t>(a));
    for (int i = 0; i < V; ++i)
      for (int r = 1; r <= 2; ++r) {
        const int j = (i + r) % V;
        const bool ni = occupied(bits, V, i);
        const bool nj = occupied(bits, V, j);
        if (ni && nj) m.h(a, a) += dens[r - 1];
        if (ni != nj && hop[r - 1] != 0.0) {
          const std::uint64_t moved = bits ^ mode_bit(V, i) ^ mode_bit(V, j);
          const auto b = static_cast<Eigen::Index>(basis.index(moved));
          m.h(b, a) -= hop[r - 1];
        }
      }
  }
  return m;
}

ManyBodyModel build_block_gue(int V, int N, std::uint64_t seed) {
  if (V < 1 || V > 20 || N < 0 || N > V) throw std::invalid_argument("build_block_gue: 0 <= N <= V <= 20");
  const SectorBasis basis(V, N);
  SeededRng rng(seed, 0);
  ManyBodyModel m;
  m.kind = ManyBodyKind::BlockGUE;
  m.V = V;
  m.N = N;
  m.h = gue_matrix(static_cast<int>(basis.size()), rng);
  return m;
}

ManyBodyModel build_full_gue(int V, std::uint64_t seed) {
  if (V < 1 || V > 10) throw std::invalid_argument("build_full_gue: 1 <= V <= 10");
  SeededRng rng(seed, 0);
  ManyBodyModel m;
  m.kind = ManyBodyKind::FullGUE;
  m.V = V;
  m.N = -1;
  m.h = gue_matrix(1 << V, rng);
  return m;
}

namespace {

// Cyclic shift of every boson by one site.
std::uint64_t translate(std::uint64_t bits, int V) {
  const std::uint64_t low = bits & 1u;
  return (bits >> 1) | (low << (V - 1));
}

// Inside each degenerate eigenspace touching [begin, end), replaces the columns
// of `vectors` by eigenvectors of the lattice translation.
void momentum_resolve(const ManyBodyModel& m, const Eigen::VectorXd& energies, Eigen::MatrixXcd& vectors,
                      Eigen::Index begin, Eigen::Index end) {
  const SectorBasis basis(m.V, m.N);
  const Eigen::Index d = energies.size();
  std::vector<Eigen::Index> image(static_cast<std::size_t>(d));
  for (Eigen::Index a = 0; a < d; ++a)
    image[static_cast<std::size_t>(a)] =
        static_cast<Eigen::Index>(basis.index(translate(basis.state(static_cast<std::size_t>(a)), m.V)));
  const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
  Eigen::Index lo = begin;
  while (lo > 0 && energies(lo) - energies(lo - 1) < 1e-9 * scale) --lo;
  for (Eigen::Index i = lo; i < std::min(end, d);) {
    Eigen::Index j = i + 1;
    while (j < d && energies(j) - energies(j - 1) < 1e-9 * scale) ++j;
    const Eigen::Index g = j - i;
    if (g > 1) {
      const Eigen::MatrixXcd q = vectors.middleCols(i, g);
      Eigen::MatrixXcd tq(d, g);
      for (Eigen::Index a = 0; a < d; ++a) tq.row(image[static_cast<std::size_t>(a)]) = q.row(a);
      const Eigen::MatrixXcd t = q.adjoint() * tq;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t);
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(q * es.eigenvectors());
      vectors.middleCols(i, g) = qr.householderQ() * Eigen::MatrixXcd::Identity(d, g);
    }
    i = j;
  }
}

}  // namespace

EigenstateEntropies interacting_eigenstate_entropies(const ManyBodyModel& m, int VA, double central_fraction) {
  if (!(central_fraction > 0.0 && central_fraction <= 1.0))
    throw std::invalid_argument("interacting_eigenstate_average: central_fraction in (0, 1]");
  const Partition part(m.V, VA);
  const auto d = static_cast<Eigen::Index>(m.dim());
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;
  if (m.real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.h.real());
    energies = es.eigenvalues();
    vectors = es.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.h);
    energies = es.eigenvalues();
    vectors = es.eigenvectors();
  }
  const auto count = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(central_fraction * d)));
  const Eigen::Index first = (d - count) / 2;
  if (m.kind == ManyBodyKind::HardCoreBosonChain && m.N >= 0) momentum_resolve(m, energies, vectors, first, first + count);

  EigenstateEntropies out;
  out.energies.reserve(static_cast<std::size_t>(count));
  out.entropies.reserve(static_cast<std::size_t>(count));
  double mean = 0.0, m2 = 0.0;
  for (Eigen::Index k = 0; k < count; ++k) {
    const Eigen::Index idx = first + k;
    const PureState psi = m.N >= 0 ? PureState::sector(m.V, m.N, vectors.col(idx)) : PureState::full(m.V, vectors.col(idx));
    const double s = vn_entropy(rdm_spectrum(psi, part));
    out.energies.push_back(energies(idx));
    out.entropies.push_back(s);
    const double delta = s - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (s - mean);
  }
  out.summary.mean = mean;
  out.summary.n_samples = count;
  out.summary.sample_variance = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  out.summary.std_error = std::sqrt(out.summary.sample_variance / static_cast<double>(count));
  return out;
}

EntropyEstimate interacting_eigenstate_average(const ManyBodyModel& m, int VA, double central_fraction) {
  return interacting_eigenstate_entropies(m, VA, central_fraction).summary;
}

}  // namespace eestat
