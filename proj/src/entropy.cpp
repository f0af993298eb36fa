#include "eestat/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace eestat {

namespace {

constexpr double kClamp = 1e-12;

// Eigenvalues of W W^dagger, computed from the smaller Gram matrix and zero padded to rows(W).
std::vector<double> gram_spectrum(const Eigen::MatrixXcd& W) {
  std::vector<double> out;
  out.reserve(W.rows());
  if (W.rows() == 0) return out;
  Eigen::MatrixXcd G = (W.rows() <= W.cols()) ? Eigen::MatrixXcd(W * W.adjoint()) : Eigen::MatrixXcd(W.adjoint() * W);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::max(0.0, es.eigenvalues()(i)));
  while (static_cast<Eigen::Index>(out.size()) < W.rows()) out.push_back(0.0);
  return out;
}

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1); }

template <typename Matrix>
double gaussian_entropy_impl(const Matrix& CA) {
  if (CA.rows() != CA.cols()) throw std::invalid_argument("gaussian_entropy_from_C: matrix not square");
  if (CA.size() > 0 && (CA - CA.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("gaussian_entropy_from_C: matrix not Hermitian");
  if (CA.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(CA, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double y = std::clamp(static_cast<double>(es.eigenvalues()(i)), 0.0, 1.0);
    s += s_binary(2.0 * y - 1.0);
  }
  return s;
}

}  // namespace

Partition::Partition(int v, int va) : V(v), VA(va) {
  if (v <= 0) throw std::invalid_argument("Partition: V must be positive");
  if (va < 0 || va > v) throw std::invalid_argument("Partition: VA must lie in [0, V]");
}

SectorBasis::SectorBasis(int V, int N) : V_(V), N_(N) {
  if (V <= 0 || V > 62) throw std::invalid_argument("SectorBasis: V must lie in [1, 62]");
  if (N < 0 || N > V) throw std::invalid_argument("SectorBasis: N must lie in [0, V]");
  binom_.assign(V + 1, std::vector<std::uint64_t>(V + 2, 0));
  for (int n = 0; n <= V; ++n) {
    binom_[n][0] = 1;
    for (int k = 1; k <= n; ++k) binom_[n][k] = binom_[n - 1][k - 1] + (k <= n - 1 ? binom_[n - 1][k] : 0);
  }
  const std::uint64_t count = binom_[V][N];
  states_.reserve(count);
  if (N == 0) {
    states_.push_back(0);
    return;
  }
  std::uint64_t x = low_mask(N);
  for (std::uint64_t i = 0; i < count; ++i) {
    states_.push_back(x);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

std::size_t SectorBasis::index(std::uint64_t bits) const {
  std::size_t idx = 0;
  int seen = 0;
  for (int p = 0; p < V_; ++p) {
    if (bits >> p & 1u) {
      ++seen;
      idx += binom_[p][seen];
    }
  }
  return idx;
}

PureState PureState::full(int V, Eigen::VectorXcd amps) {
  if (V <= 0 || V > 30) throw std::invalid_argument("PureState::full: V must lie in [1, 30]");
  if (amps.size() != (Eigen::Index{1} << V)) throw std::invalid_argument("PureState::full: dimension mismatch");
  return PureState{V, -1, std::move(amps)};
}

PureState PureState::sector(int V, int N, Eigen::VectorXcd amps) {
  SectorBasis basis(V, N);
  if (static_cast<std::size_t>(amps.size()) != basis.size())
    throw std::invalid_argument("PureState::sector: dimension mismatch");
  return PureState{V, N, std::move(amps)};
}

Eigen::VectorXcd PureState::embed() const {
  if (!is_sector()) return amplitudes;
  SectorBasis basis(V, N);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << V);
  for (std::size_t i = 0; i < basis.size(); ++i) out(static_cast<Eigen::Index>(basis.state(i))) = amplitudes(i);
  return out;
}

double s_binary(double x) {
  x = std::clamp(x, -1.0, 1.0);
  const double p = 0.5 * (1.0 + x), q = 0.5 * (1.0 - x);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (q > 0.0) s -= q * std::log(q);
  return s;
}

double vn_entropy(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > kClamp) s -= l * std::log(l);
  return s;
}

double vn_entropy(const RdmSpectrum& spec) { return vn_entropy(spec.eigenvalues); }

double renyi_entropy(const RdmSpectrum& spec, double order) {
  if (!(order > 0.0) || order == 1.0) throw std::domain_error("renyi_entropy: order must be positive and != 1");
  double acc = 0.0;
  for (double l : spec.eigenvalues)
    if (l > kClamp) acc += std::pow(l, order);
  return std::log(acc) / (1.0 - order);
}

RdmSpectrum rdm_spectrum_full(const PureState& state, const Partition& part) {
  if (state.is_sector()) throw std::invalid_argument("rdm_spectrum_full: sector state given");
  if (state.V != part.V || state.amplitudes.size() != (Eigen::Index{1} << part.V))
    throw std::invalid_argument("rdm_spectrum_full: dimension mismatch");
  const Eigen::Index dA = Eigen::Index{1} << part.VA, dB = Eigen::Index{1} << part.VB();
  using RowMajor = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> W(state.amplitudes.data(), dA, dB);
  RdmSpectrum out;
  out.eigenvalues = gram_spectrum(Eigen::MatrixXcd(W));
  return out;
}

RdmSpectrum rdm_spectrum_sector(const PureState& state, const Partition& part) {
  if (!state.is_sector()) throw std::invalid_argument("rdm_spectrum_sector: full-space state given");
  if (state.V != part.V) throw std::invalid_argument("rdm_spectrum_sector: dimension mismatch");
  const int V = part.V, VA = part.VA, VB = part.VB(), N = state.N;
  SectorBasis basis(V, N);
  if (static_cast<std::size_t>(state.amplitudes.size()) != basis.size())
    throw std::invalid_argument("rdm_spectrum_sector: dimension mismatch");

  const std::uint64_t maskB = low_mask(VB);
  std::map<int, Eigen::MatrixXcd> blocks;
  std::map<int, std::pair<SectorBasis, SectorBasis>> bases;
  for (int NA = std::max(0, N - VB); NA <= std::min(N, VA); ++NA) {
    SectorBasis a(std::max(VA, 1), VA == 0 ? 0 : NA), b(std::max(VB, 1), VB == 0 ? 0 : N - NA);
    blocks.emplace(NA, Eigen::MatrixXcd::Zero(a.size(), b.size()));
    bases.emplace(NA, std::make_pair(std::move(a), std::move(b)));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint64_t bits = basis.state(i);
    const std::uint64_t a = VB >= 64 ? 0 : bits >> VB, b = bits & maskB;
    const int NA = std::popcount(a);
    const auto& [ba, bb] = bases.at(NA);
    blocks.at(NA)(ba.index(a), bb.index(b)) = state.amplitudes(i);
  }
  RdmSpectrum out;
  for (const auto& [NA, W] : blocks) {
    const double weight = W.squaredNorm();
    out.block_ids.push_back(NA);
    out.block_weights.push_back(weight);
    for (double l : gram_spectrum(W)) {
      out.eigenvalues.push_back(l);
      out.block_labels.push_back(NA);
    }
  }
  return out;
}

RdmSpectrum rdm_spectrum(const PureState& state, const Partition& part) {
  return state.is_sector() ? rdm_spectrum_sector(state, part) : rdm_spectrum_full(state, part);
}

double gaussian_entropy_from_C(const Eigen::MatrixXcd& CA) { return gaussian_entropy_impl(CA); }
double gaussian_entropy_from_C(const Eigen::MatrixXd& CA) { return gaussian_entropy_impl(CA); }

double gaussian_entropy_from_J(const Eigen::MatrixXd& JA) {
  if (JA.rows() != JA.cols() || JA.rows() % 2 != 0)
    throw std::invalid_argument("gaussian_entropy_from_J: matrix must be square of even size");
  if (JA.size() > 0 && (JA + JA.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("gaussian_entropy_from_J: matrix not antisymmetric");
  const Eigen::Index VA = JA.rows() / 2;
  if (VA == 0) return 0.0;
  // The spectrum of i J_A is {+-x_j}; J_A^T J_A has each x_j^2 twice.
  const Eigen::MatrixXd gram = JA.transpose() * JA;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < 2 * VA; ++i) s += 0.5 * s_binary(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  return s;
}

Eigen::MatrixXd complex_structure_from_C(const Eigen::MatrixXcd& C) {
  const Eigen::Index V = C.rows();
  const Eigen::MatrixXcd G = 2.0 * C - Eigen::MatrixXcd::Identity(V, V);
  const Eigen::MatrixXd GR = G.real(), GI = G.imag();
  Eigen::MatrixXd J(2 * V, 2 * V);
  J.topLeftCorner(V, V) = -GI;
  J.topRightCorner(V, V) = -GR;
  J.bottomLeftCorner(V, V) = GR;
  J.bottomRightCorner(V, V) = -GI;
  return J;
}

Eigen::MatrixXd restrict_complex_structure(const Eigen::MatrixXd& J, int V, int VA) {
  if (J.rows() != 2 * V || J.cols() != 2 * V) throw std::invalid_argument("restrict_complex_structure: size mismatch");
  Eigen::MatrixXd JA(2 * VA, 2 * VA);
  JA.topLeftCorner(VA, VA) = J.block(0, 0, VA, VA);
  JA.topRightCorner(VA, VA) = J.block(0, V, VA, VA);
  JA.bottomLeftCorner(VA, VA) = J.block(V, 0, VA, VA);
  JA.bottomRightCorner(VA, VA) = J.block(V, V, VA, VA);
  return JA;
}

Eigen::VectorXcd slater_state(const Eigen::MatrixXcd& Phi) {
  const int V = static_cast<int>(Phi.rows()), N = static_cast<int>(Phi.cols());
  SectorBasis basis(V, N);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << V);
  Eigen::MatrixXcd sub(N, N);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint64_t bits = basis.state(i);
    int r = 0;
    // Mode m (1-based) sits at bit V - m.
    for (int m = 0; m < V; ++m)
      if (bits >> (V - 1 - m) & 1u) sub.row(r++) = Phi.row(m);
    out(static_cast<Eigen::Index>(bits)) = N == 0 ? std::complex<double>(1.0) : sub.determinant();
  }
  return out;
}

}  // namespace eestat
