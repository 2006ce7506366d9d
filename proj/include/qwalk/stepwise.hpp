#pragma once

// Step-by-step synthesis: a d-step walk whose level-k coins fork the
// amplitude of every frontier position (some coordinate equal to k) into the
// positions of level k+1, followed by a permutation coin that returns the
// arriving coin state to |0^c>.

#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Amplitudes of the intermediate state at level k, supported on [0,k]^c.
class IntermediateAmplitudes {
 public:
  IntermediateAmplitudes(int party_count, int level, std::vector<Complex> table);

  int level() const { return level_; }
  int party_count() const { return party_count_; }
  /// Axis length, level + 1.
  int extent() const { return level_ + 1; }

  /// Zero for positions with a coordinate above the level.
  Complex at(const Position& x) const;
  std::span<const Complex> table() const { return table_; }
  double norm() const;

 private:
  std::size_t index(const Position& x) const;

  int party_count_;
  int level_;
  std::vector<Complex> table_;
};

/// Direction set of a frontier position: the coin labels whose set bits only
/// touch coordinates of `base` that equal the level.
struct Cylinder {
  Position base;
  int level = 0;
  std::vector<CoinIndex> members;

  static Cylinder at(const Position& base, int level);
};

/// True if some coordinate equals `level` and none exceeds it.
bool is_frontier(const Position& x, int level);
/// All positions of [0,level]^c with some coordinate equal to `level`, in
/// lexicographic order.
std::vector<Position> frontier_positions(int party_count, int level);

/// Backward recursion from the target (level d-1) down to `level`.
IntermediateAmplitudes alpha_recurrence(const TargetState& target, int level);
/// Every level 0..d-1 in one backward pass; element k is level k.
std::vector<IntermediateAmplitudes> alpha_cascade(const TargetState& target);

/// Bipartite closed form of the level-k amplitude at (x, y) in terms of the
/// target: interior entries verbatim, frontier entries the root of the
/// target mass in the corresponding tail rectangle. At the top level
/// k = d-1 the intermediate state is the target itself.
Complex alpha_closed_form(const TargetState& target, int level, int x, int y);

/// Fork coins of level k (k <= d-2): at each frontier position x with
/// nonzero amplitude, a unitary whose first column is
/// sum_{z in V_x} next(x+z) |z> / current(x). Zero amplitude leaves the
/// position out of the map (identity).
BlockMap build_c1_blocks(const IntermediateAmplitudes& current,
                         const IntermediateAmplitudes& next);

/// Restoring coins of level k (k >= 1): X on every party whose coordinate
/// equals k, at every frontier position of level k.
BlockMap build_c2_blocks(int party_count, int level);

StagedSchedule synthesize_scheme1_staged(const TargetState& target);
Schedule synthesize_scheme1(const TargetState& target);

}  // namespace qwalk
