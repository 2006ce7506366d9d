#pragma once

// Coin and shift operators on sparse walk states, and schedule execution.

#include <map>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

/// Position-indexed coin blocks; an absent position means identity.
using BlockMap = std::map<Position, UnitaryBlock>;

/// Block at `x`, identity if absent.
UnitaryBlock block_at(const BlockMap& blocks, const Position& x, int party_count);

/// One walk step: apply `blocks`, then the conditional shift `shift_power`
/// times.
struct CoinStep {
  BlockMap blocks;
  int shift_power = 1;
};

/// A fused walk. `final_coin` is a coin applied after the last shift; it is
/// the trailing W = S C whose shift is trivial because every amplitude has
/// already been returned to coin |0^c>.
struct Schedule {
  int party_count = 2;
  int dimension = 1;
  std::vector<CoinStep> steps;
  BlockMap final_coin;

  int total_shift() const;
  /// Number of coin layers (steps plus the final coin) with a non-identity block.
  int non_identity_coin_layers() const;
  /// Number of non-identity blocks across all layers.
  int non_identity_blocks() const;
};

/// One stage of the unfused form: fork coin, shift, restoring coin.
/// Executed as restore * S^shift_power * fork.
struct Stage {
  BlockMap fork;
  int shift_power = 1;
  BlockMap restore;
};

/// Unfused walk; after every stage all amplitude is expected to sit in
/// coin |0^c>.
struct StagedSchedule {
  int party_count = 2;
  int dimension = 1;
  std::vector<Stage> stages;
};

/// Multiplies each stage's restoring coin into the next stage's fork coin
/// (restore applied first). The last restoring coin becomes `final_coin`.
Schedule fuse(const StagedSchedule& staged);

WalkState apply_coin(const WalkState& state, const BlockMap& blocks);

/// Moves the amplitude at (x, z) to (x + power*z, z). Throws OutOfGrid if a
/// nonzero amplitude would leave [0,d)^c.
WalkState apply_shift(const WalkState& state, int power);

struct RunOptions {
  /// Throws InconsistentAmplitudes if, after a step, some position carries
  /// more than one coin basis state (mass above `collapse_tol`).
  bool check_coin_collapse = false;
  double collapse_tol = 1e-10;
};

/// Per-step diagnostics gathered while running a schedule.
struct StepTrace {
  double norm = 1.0;
  /// Mass not concentrated in a single coin basis state per position.
  double coin_spread = 0.0;
};

WalkState run(const Schedule& schedule, const RunOptions& options = {});
WalkState run(const Schedule& schedule, std::vector<StepTrace>& trace,
              const RunOptions& options = {});

/// Runs the unfused stages. With `check_coin_collapse`, asserts that every
/// stage ends with all amplitude in coin |0^c>.
WalkState run(const StagedSchedule& staged, const RunOptions& options = {});

}  // namespace qwalk
