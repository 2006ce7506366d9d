#pragma once

// Domain types shared by every module: lattice positions, coin labels,
// unitary coin blocks, target states and sparse walk states.

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

using Complex = std::complex<double>;

/// Tolerance for invariant checks on values the library produces.
inline constexpr double kInvariantTol = 1e-12;
/// Tolerance for validating user supplied input.
inline constexpr double kInputTol = 1e-10;

/// Lattice point x in Z^c with x >= 0.
struct Position {
  std::vector<int> coords;

  Position() = default;
  explicit Position(std::vector<int> c) : coords(std::move(c)) {}
  Position(std::initializer_list<int> c) : coords(c) {}

  int party_count() const { return static_cast<int>(coords.size()); }
  int operator[](int j) const { return coords[static_cast<std::size_t>(j)]; }
  int max_coord() const;

  static Position origin(int party_count);

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;
};

/// Coin basis label z in {0,1}^c, packed so that bit j is the direction
/// bit of party j. For c = 2: 0 = stay, 1 = right (x+1), 2 = up (y+1),
/// 3 = diagonal.
struct CoinIndex {
  std::uint32_t bits = 0;

  bool bit(int j) const { return (bits >> j) & 1u; }
  int index() const { return static_cast<int>(bits); }

  friend auto operator<=>(const CoinIndex&, const CoinIndex&) = default;
};

inline constexpr CoinIndex kStay{0};
inline constexpr CoinIndex kRight{1};
inline constexpr CoinIndex kUp{2};
inline constexpr CoinIndex kDiagonal{3};

inline int coin_dimension(int party_count) { return 1 << party_count; }

/// x + t*z.
Position shifted(const Position& x, CoinIndex z, int power = 1);

/// Dense 2^c x 2^c unitary acting on the coin register.
class UnitaryBlock {
 public:
  /// Validates U^dagger U = I to `tol`; throws NonUnitaryBlock otherwise.
  explicit UnitaryBlock(Eigen::MatrixXcd entries, double tol = kInvariantTol);

  static UnitaryBlock identity(int dim);
  /// Tensor product of Pauli X on every party whose bit is set in `flips`.
  /// Maps |z> to |z xor flips>.
  static UnitaryBlock pauli_x(int party_count, CoinIndex flips);

  const Eigen::MatrixXcd& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

  /// max_ij |(U^dagger U - I)_ij|
  double unitarity_error() const;
  bool is_identity(double tol = kInvariantTol) const;

  UnitaryBlock operator*(const UnitaryBlock& rhs) const;
  UnitaryBlock scaled(Complex phase) const;

 private:
  struct Unchecked {};
  UnitaryBlock(Eigen::MatrixXcd entries, Unchecked) : entries_(std::move(entries)) {}

  Eigen::MatrixXcd entries_;
};

double unitarity_error(const Eigen::MatrixXcd& u);

/// Dense rank-c tensor of amplitudes with every axis of size d.
/// Flat index: x_0 + d*x_1 + d^2*x_2 + ...
class TargetState {
 public:
  /// Throws InvalidInput unless the amplitudes have unit norm within `tol`.
  TargetState(int party_count, int dimension, std::vector<Complex> amplitudes,
              double tol = kInvariantTol);

  /// Normalizes `amplitudes` before construction.
  static TargetState normalized(int party_count, int dimension,
                                std::vector<Complex> amplitudes);
  static TargetState basis(int party_count, int dimension, const Position& x);

  int party_count() const { return party_count_; }
  int dimension() const { return dimension_; }
  std::size_t size() const { return amplitudes_.size(); }

  Complex at(const Position& x) const;
  Complex flat(std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  std::size_t flat_index(const Position& x) const;
  Position position_of(std::size_t flat) const;

  double norm() const;

 private:
  int party_count_;
  int dimension_;
  std::vector<Complex> amplitudes_;
};

/// Complex standard-normal amplitudes, normalized.
TargetState random_target(int party_count, int dimension, std::mt19937_64& rng);

/// Sparse system ket in H_P (x) H_C, stored as one coin vector per
/// populated position.
class WalkState {
 public:
  using Storage = std::map<Position, Eigen::VectorXcd>;

  WalkState(int party_count, int dimension, Storage amplitudes);

  /// |0^c> (x) |0^c>
  static WalkState initial(int party_count, int dimension);
  /// |target> (x) |coin> at every position.
  static WalkState from_target(const TargetState& target, CoinIndex coin = kStay);

  int party_count() const { return party_count_; }
  int dimension() const { return dimension_; }
  const Storage& amplitudes() const { return amplitudes_; }

  Complex amplitude(const Position& x, CoinIndex z) const;
  double norm() const;

  /// Probability mass whose coin is not |0^c>.
  double off_origin_coin_mass() const;
  /// Sum over positions of (|v_x|^2 - max_z |v_x(z)|^2); zero iff each
  /// position carries a single coin basis state.
  double coin_spread_mass() const;

 private:
  int party_count_;
  int dimension_;
  Storage amplitudes_;
};

/// Prescribed columns of a unitary, keyed by column index.
using PrescribedColumns = std::map<int, Eigen::VectorXcd>;

/// Completes the prescribed orthonormal columns to a dim x dim unitary by
/// Gram-Schmidt against the canonical basis in index order. Canonical vectors
/// within kInputTol of the running span are skipped; the survivors fill the
/// free columns in ascending order.
UnitaryBlock complete_unitary(int dim, const PrescribedColumns& prescribed);

/// |<a|b>|^2 with b = target (x) |0^c>.
double fidelity(const WalkState& a, const TargetState& b);
/// |<a|b>|^2
double fidelity(const WalkState& a, const WalkState& b);

}  // namespace qwalk
