#pragma once

// Closed-form coins for the generalized Bell states
//   |phi_{n,m}> = d^{-1/2} sum_j e^{2 pi i j n / d} |j> (x) |(j + m) mod d>.

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

class BellParams {
 public:
  /// n and m are reduced mod d. Throws InvalidInput for d < 2.
  BellParams(int dimension, long long n, long long m);

  int dimension() const { return d_; }
  int n() const { return n_; }
  int m() const { return m_; }

  /// e^{2 pi i j n / d}
  Complex phase(long long j) const;

 private:
  int d_;
  int n_;
  int m_;
};

TargetState bell_target(const BellParams& params);

/// 1 for z >= 0, else 0.
inline int step_function(long long z) { return z >= 0 ? 1 : 0; }
/// z for z >= 0, else 0.
inline long long ramp(long long z) { return z * step_function(z); }

/// Number of pairs (z, w) with k <= z, w < d and w = z + m (mod d).
long long sigma(int m, int k, int d);

/// Level-k amplitude at (x, y) from the case table.
Complex bell_alpha(const BellParams& params, int level, int x, int y);

/// Column D^{(k)} |0> of the corner fork coin, before completion.
Eigen::VectorXcd bell_corner_column(const BellParams& params, int level);

/// Whether to restore the target phases lost by the tabulated fork coins on
/// the last step. The table carries no phase on amplitude that moves into
/// the top level, so for n != 0 the literal table does not prepare the
/// state; the correction multiplies each top-level restoring coin by the
/// target phase of its position.
enum class BellPhaseFix { kApply, kLiteral };

StagedSchedule bell_coins_staged(const BellParams& params,
                                 BellPhaseFix fix = BellPhaseFix::kApply);
Schedule bell_coins(const BellParams& params,
                    BellPhaseFix fix = BellPhaseFix::kApply);

}  // namespace qwalk
