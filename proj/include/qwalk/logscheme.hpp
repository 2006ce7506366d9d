#pragma once

// Recursive bipartite synthesis for d a power of two: one coarse coin
// distributes the quadrant masses to the four corners (0,0), (d/2,0),
// (0,d/2), (d/2,d/2), then the four half-size constructions run in parallel
// from those corners. log2(d) stages with shift powers d/2, d/4, ..., 1.

#include <array>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Quadrant masses and renormalized quadrant states of a bipartite target.
/// Quadrant (a, b) has index a + 2*b: 0 = (0,0), 1 = (1,0), 2 = (0,1),
/// 3 = (1,1), matching the coin label that reaches its corner.
struct QuadrantSplit {
  std::array<double, 4> gammas{};
  /// Quadrant states on [0, d/2)^2. A quadrant with zero mass holds |0,0>.
  std::array<TargetState, 4> substates;
};

bool is_power_of_two(int d);

/// Throws NotBipartite for c != 2 and NotPowerOfTwo unless d is an even
/// power of two (d >= 2).
QuadrantSplit quadrant_split(const TargetState& target);

/// Throws NotBipartite for c != 2 and NotPowerOfTwo unless d is a power of
/// two.
StagedSchedule synthesize_scheme2_staged(const TargetState& target);
Schedule synthesize_scheme2(const TargetState& target);

}  // namespace qwalk
