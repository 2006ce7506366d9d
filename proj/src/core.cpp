#include "qwalk/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwalk {

NonOrthonormalInput::NonOrthonormalInput(int first, int second,
                                         double inner_product)
    : Error([&] {
        std::ostringstream msg;
        msg << "prescribed columns " << first << " and " << second
            << " are not orthonormal: |<" << first << "|" << second
            << ">| = " << inner_product;
        return msg.str();
      }()),
      first_(first),
      second_(second),
      inner_product_(inner_product) {}

int Position::max_coord() const {
  return coords.empty() ? 0 : *std::max_element(coords.begin(), coords.end());
}

Position Position::origin(int party_count) {
  return Position(std::vector<int>(static_cast<std::size_t>(party_count), 0));
}

Position shifted(const Position& x, CoinIndex z, int power) {
  Position out = x;
  for (int j = 0; j < x.party_count(); ++j) {
    if (z.bit(j)) out.coords[static_cast<std::size_t>(j)] += power;
  }
  return out;
}

// ---------------------------------------------------------------------------

double unitarity_error(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const Eigen::MatrixXcd diff =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return diff.cwiseAbs().maxCoeff();
}

UnitaryBlock::UnitaryBlock(Eigen::MatrixXcd entries, double tol)
    : entries_(std::move(entries)) {
  const double err = qwalk::unitarity_error(entries_);
  if (!(err <= tol)) {
    std::ostringstream msg;
    msg << "block is not unitary: max|U^dagger U - I| = " << err;
    throw NonUnitaryBlock(msg.str());
  }
}

UnitaryBlock UnitaryBlock::identity(int dim) {
  return UnitaryBlock(Eigen::MatrixXcd::Identity(dim, dim), Unchecked{});
}

UnitaryBlock UnitaryBlock::pauli_x(int party_count, CoinIndex flips) {
  const int dim = coin_dimension(party_count);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int z = 0; z < dim; ++z) {
    m(static_cast<int>(static_cast<std::uint32_t>(z) ^ flips.bits), z) = 1.0;
  }
  return UnitaryBlock(std::move(m), Unchecked{});
}

double UnitaryBlock::unitarity_error() const {
  return qwalk::unitarity_error(entries_);
}

bool UnitaryBlock::is_identity(double tol) const {
  return (entries_ - Eigen::MatrixXcd::Identity(dim(), dim()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

UnitaryBlock UnitaryBlock::operator*(const UnitaryBlock& rhs) const {
  if (dim() != rhs.dim()) throw DimensionMismatch("block dimensions differ");
  return UnitaryBlock(entries_ * rhs.entries_, Unchecked{});
}

UnitaryBlock UnitaryBlock::scaled(Complex phase) const {
  if (std::abs(std::abs(phase) - 1.0) > kInputTol) {
    throw NonUnitaryBlock("scaling a block by a non unit-modulus factor");
  }
  return UnitaryBlock(entries_ * phase, Unchecked{});
}

// ---------------------------------------------------------------------------

namespace {

std::size_t checked_size(int party_count, int dimension) {
  if (party_count < 1) throw InvalidInput("party count must be >= 1");
  if (dimension < 1) throw InvalidInput("dimension must be >= 1");
  std::size_t n = 1;
  for (int j = 0; j < party_count; ++j) n *= static_cast<std::size_t>(dimension);
  return n;
}

double sum_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& a : v) s += std::norm(a);
  return s;
}

}  // namespace

TargetState::TargetState(int party_count, int dimension,
                         std::vector<Complex> amplitudes, double tol)
    : party_count_(party_count),
      dimension_(dimension),
      amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != checked_size(party_count, dimension)) {
    throw DimensionMismatch("target amplitude count is not d^c");
  }
  const double n = std::sqrt(sum_norm(amplitudes_));
  if (!(std::abs(n - 1.0) <= tol)) {
    std::ostringstream msg;
    msg << "target state is not normalized: norm = " << n;
    throw InvalidInput(msg.str());
  }
}

TargetState TargetState::normalized(int party_count, int dimension,
                                    std::vector<Complex> amplitudes) {
  const double n = std::sqrt(sum_norm(amplitudes));
  if (n == 0.0) throw InvalidInput("cannot normalize the zero vector");
  for (Complex& a : amplitudes) a /= n;
  return TargetState(party_count, dimension, std::move(amplitudes));
}

TargetState TargetState::basis(int party_count, int dimension,
                               const Position& x) {
  std::vector<Complex> amps(checked_size(party_count, dimension));
  amps[0] = 1.0;
  TargetState t(party_count, dimension, std::move(amps));
  const std::size_t idx = t.flat_index(x);
  t.amplitudes_[0] = 0.0;
  t.amplitudes_[idx] = 1.0;
  return t;
}

std::size_t TargetState::flat_index(const Position& x) const {
  if (x.party_count() != party_count_) {
    throw DimensionMismatch("position has the wrong number of coordinates");
  }
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int j = 0; j < party_count_; ++j) {
    const int v = x[j];
    if (v < 0 || v >= dimension_) throw IndexOutOfRange("position outside [0,d)^c");
    idx += static_cast<std::size_t>(v) * stride;
    stride *= static_cast<std::size_t>(dimension_);
  }
  return idx;
}

Position TargetState::position_of(std::size_t flat) const {
  std::vector<int> coords(static_cast<std::size_t>(party_count_));
  for (auto& v : coords) {
    v = static_cast<int>(flat % static_cast<std::size_t>(dimension_));
    flat /= static_cast<std::size_t>(dimension_);
  }
  return Position(std::move(coords));
}

Complex TargetState::at(const Position& x) const {
  return amplitudes_[flat_index(x)];
}

double TargetState::norm() const { return std::sqrt(sum_norm(amplitudes_)); }

TargetState random_target(int party_count, int dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(checked_size(party_count, dimension));
  for (Complex& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = Complex(re, im);
  }
  return TargetState::normalized(party_count, dimension, std::move(amps));
}

// ---------------------------------------------------------------------------

WalkState::WalkState(int party_count, int dimension, Storage amplitudes)
    : party_count_(party_count),
      dimension_(dimension),
      amplitudes_(std::move(amplitudes)) {
  checked_size(party_count, dimension);
  const int coin_dim = coin_dimension(party_count);
  for (const auto& [x, v] : amplitudes_) {
    if (x.party_count() != party_count) {
      throw DimensionMismatch("position has the wrong number of coordinates");
    }
    for (int j = 0; j < party_count; ++j) {
      if (x[j] < 0 || x[j] >= dimension) {
        throw OutOfGrid("walk state populates a position outside [0,d)^c");
      }
    }
    if (v.size() != coin_dim) throw DimensionMismatch("coin vector is not 2^c long");
  }
  if (!(std::abs(norm() - 1.0) <= kInputTol)) {
    throw InvalidInput("walk state is not normalized");
  }
}

WalkState WalkState::initial(int party_count, int dimension) {
  Storage s;
  Eigen::VectorXcd coin = Eigen::VectorXcd::Zero(coin_dimension(party_count));
  coin(0) = 1.0;
  s.emplace(Position::origin(party_count), std::move(coin));
  return WalkState(party_count, dimension, std::move(s));
}

WalkState WalkState::from_target(const TargetState& target, CoinIndex coin) {
  const int coin_dim = coin_dimension(target.party_count());
  Storage s;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target.flat(i) == Complex(0.0)) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(coin_dim);
    v(coin.index()) = target.flat(i);
    s.emplace(target.position_of(i), std::move(v));
  }
  return WalkState(target.party_count(), target.dimension(), std::move(s));
}

Complex WalkState::amplitude(const Position& x, CoinIndex z) const {
  auto it = amplitudes_.find(x);
  if (it == amplitudes_.end()) return 0.0;
  return it->second(z.index());
}

double WalkState::norm() const {
  double s = 0.0;
  for (const auto& [x, v] : amplitudes_) s += v.squaredNorm();
  return std::sqrt(s);
}

double WalkState::off_origin_coin_mass() const {
  double s = 0.0;
  for (const auto& [x, v] : amplitudes_) s += v.squaredNorm() - std::norm(v(0));
  return std::max(s, 0.0);
}

double WalkState::coin_spread_mass() const {
  double s = 0.0;
  for (const auto& [x, v] : amplitudes_) {
    s += v.squaredNorm() - v.cwiseAbs2().maxCoeff();
  }
  return std::max(s, 0.0);
}

// ---------------------------------------------------------------------------

UnitaryBlock complete_unitary(int dim, const PrescribedColumns& prescribed) {
  if (dim < 1) throw InvalidInput("unitary dimension must be >= 1");
  for (const auto& [col, v] : prescribed) {
    if (col < 0 || col >= dim) throw IndexOutOfRange("prescribed column index");
    if (v.size() != dim) throw DimensionMismatch("prescribed column length");
  }
  for (auto a = prescribed.begin(); a != prescribed.end(); ++a) {
    for (auto b = a; b != prescribed.end(); ++b) {
      const Complex ip = a->second.dot(b->second);
      const double expected = (a == b) ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kInputTol) {
        throw NonOrthonormalInput(a->first, b->first, std::abs(ip));
      }
    }
  }

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::VectorXcd> span;
  span.reserve(static_cast<std::size_t>(dim));
  for (const auto& [col, v] : prescribed) {
    u.col(col) = v;
    span.push_back(v);
  }

  std::vector<int> free_cols;
  for (int c = 0; c < dim; ++c) {
    if (!prescribed.contains(c)) free_cols.push_back(c);
  }

  auto project_out = [&span](Eigen::VectorXcd& v) {
    for (const auto& b : span) v -= b * b.dot(v);
  };

  std::size_t next = 0;
  for (int e = 0; e < dim && next < free_cols.size(); ++e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(dim, e);
    project_out(v);
    if (v.norm() <= kInputTol) continue;
    // second pass restores orthogonality lost to cancellation
    project_out(v);
    v.normalize();
    u.col(free_cols[next++]) = v;
    span.push_back(std::move(v));
  }
  return UnitaryBlock(std::move(u));
}

// ---------------------------------------------------------------------------

double fidelity(const WalkState& a, const TargetState& b) {
  if (a.party_count() != b.party_count() || a.dimension() != b.dimension()) {
    throw DimensionMismatch("fidelity between states of different (c, d)");
  }
  Complex overlap = 0.0;
  for (const auto& [x, v] : a.amplitudes()) {
    overlap += std::conj(v(0)) * b.at(x);
  }
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double fidelity(const WalkState& a, const WalkState& b) {
  if (a.party_count() != b.party_count() || a.dimension() != b.dimension()) {
    throw DimensionMismatch("fidelity between states of different (c, d)");
  }
  Complex overlap = 0.0;
  for (const auto& [x, v] : a.amplitudes()) {
    auto it = b.amplitudes().find(x);
    if (it != b.amplitudes().end()) overlap += v.dot(it->second);
  }
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace qwalk
