#include "qwalk/walk.hpp"

#include <cmath>
#include <sstream>

namespace qwalk {

UnitaryBlock block_at(const BlockMap& blocks, const Position& x,
                      int party_count) {
  auto it = blocks.find(x);
  if (it == blocks.end()) return UnitaryBlock::identity(coin_dimension(party_count));
  return it->second;
}

int Schedule::total_shift() const {
  int total = 0;
  for (const auto& s : steps) total += s.shift_power;
  return total;
}

namespace {

bool has_non_identity(const BlockMap& blocks) {
  for (const auto& [x, b] : blocks) {
    if (!b.is_identity()) return true;
  }
  return false;
}

int count_non_identity(const BlockMap& blocks) {
  int n = 0;
  for (const auto& [x, b] : blocks) n += b.is_identity() ? 0 : 1;
  return n;
}

}  // namespace

int Schedule::non_identity_coin_layers() const {
  int n = has_non_identity(final_coin) ? 1 : 0;
  for (const auto& s : steps) n += has_non_identity(s.blocks) ? 1 : 0;
  return n;
}

int Schedule::non_identity_blocks() const {
  int n = count_non_identity(final_coin);
  for (const auto& s : steps) n += count_non_identity(s.blocks);
  return n;
}

Schedule fuse(const StagedSchedule& staged) {
  Schedule out;
  out.party_count = staged.party_count;
  out.dimension = staged.dimension;
  const BlockMap* pending = nullptr;
  for (const Stage& stage : staged.stages) {
    CoinStep step;
    step.shift_power = stage.shift_power;
    step.blocks = stage.fork;
    if (pending != nullptr) {
      for (const auto& [x, restore] : *pending) {
        auto it = step.blocks.find(x);
        if (it == step.blocks.end()) {
          step.blocks.emplace(x, restore);
        } else {
          it->second = it->second * restore;
        }
      }
    }
    out.steps.push_back(std::move(step));
    pending = &stage.restore;
  }
  if (pending != nullptr) out.final_coin = *pending;
  return out;
}

WalkState apply_coin(const WalkState& state, const BlockMap& blocks) {
  WalkState::Storage next = state.amplitudes();
  for (auto& [x, v] : next) {
    auto it = blocks.find(x);
    if (it == blocks.end()) continue;
    if (it->second.dim() != v.size()) {
      throw DimensionMismatch("coin block size does not match the coin register");
    }
    v = it->second.matrix() * v;
  }
  return WalkState(state.party_count(), state.dimension(), std::move(next));
}

WalkState apply_shift(const WalkState& state, int power) {
  if (power < 0) throw InvalidInput("shift power must be non-negative");
  const int c = state.party_count();
  const int d = state.dimension();
  const int coin_dim = coin_dimension(c);
  WalkState::Storage next;
  for (const auto& [x, v] : state.amplitudes()) {
    for (int z = 0; z < coin_dim; ++z) {
      const Complex a = v(z);
      if (a == Complex(0.0)) continue;
      Position y = shifted(x, CoinIndex{static_cast<std::uint32_t>(z)}, power);
      for (int j = 0; j < c; ++j) {
        if (y[j] >= d) {
          std::ostringstream msg;
          msg << "shift by " << power << " moves amplitude from coordinate "
              << x[j] << " of party " << j << " outside the grid of size " << d;
          throw OutOfGrid(msg.str());
        }
      }
      auto [it, inserted] = next.try_emplace(std::move(y));
      if (inserted) it->second = Eigen::VectorXcd::Zero(coin_dim);
      it->second(z) += a;
    }
  }
  return WalkState(c, d, std::move(next));
}

namespace {

void check_collapse(double mass, double tol,
                    std::size_t step, const char* what) {
  if (mass > tol) {
    std::ostringstream msg;
    msg << "coin register not collapsed after step " << step << ": " << what
        << " = " << mass;
    throw InconsistentAmplitudes(msg.str());
  }
}

}  // namespace

WalkState run(const Schedule& schedule, std::vector<StepTrace>& trace,
              const RunOptions& options) {
  WalkState state = WalkState::initial(schedule.party_count, schedule.dimension);
  trace.clear();
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    const CoinStep& step = schedule.steps[i];
    if (step.shift_power < 1) throw InvalidInput("shift power must be >= 1");
    state = apply_shift(apply_coin(state, step.blocks), step.shift_power);
    StepTrace t{state.norm(), state.coin_spread_mass()};
    if (options.check_coin_collapse) {
      check_collapse(t.coin_spread, options.collapse_tol, i, "coin spread");
    }
    trace.push_back(t);
  }
  state = apply_coin(state, schedule.final_coin);
  if (options.check_coin_collapse) {
    check_collapse(state.off_origin_coin_mass(), options.collapse_tol,
                   schedule.steps.size(), "mass outside |0^c>");
  }
  return state;
}

WalkState run(const Schedule& schedule, const RunOptions& options) {
  std::vector<StepTrace> trace;
  return run(schedule, trace, options);
}

WalkState run(const StagedSchedule& staged, const RunOptions& options) {
  WalkState state = WalkState::initial(staged.party_count, staged.dimension);
  for (std::size_t i = 0; i < staged.stages.size(); ++i) {
    const Stage& stage = staged.stages[i];
    if (stage.shift_power < 1) throw InvalidInput("shift power must be >= 1");
    state = apply_coin(apply_shift(apply_coin(state, stage.fork), stage.shift_power),
                       stage.restore);
    if (options.check_coin_collapse) {
      check_collapse(state.off_origin_coin_mass(), options.collapse_tol, i,
                     "mass outside |0^c>");
    }
  }
  return state;
}

}  // namespace qwalk
