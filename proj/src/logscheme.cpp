#include "qwalk/logscheme.hpp"

#include <cmath>

#include "qwalk/stepwise.hpp"

namespace qwalk {

bool is_power_of_two(int d) { return d >= 1 && (d & (d - 1)) == 0; }

namespace {

void require_bipartite_power_of_two(const TargetState& target) {
  if (target.party_count() != 2) {
    throw NotBipartite("the logarithmic scheme is implemented for c = 2 only");
  }
  if (!is_power_of_two(target.dimension())) {
    throw NotPowerOfTwo("the logarithmic scheme needs d to be a power of two");
  }
}

TargetState placeholder(int dimension) {
  return TargetState::basis(2, dimension, {0, 0});
}

BlockMap translated(const BlockMap& blocks, int dx, int dy) {
  BlockMap out;
  for (const auto& [x, b] : blocks) out.emplace(Position{x[0] + dx, x[1] + dy}, b);
  return out;
}

}  // namespace

QuadrantSplit quadrant_split(const TargetState& target) {
  require_bipartite_power_of_two(target);
  const int d = target.dimension();
  if (d < 2) throw NotPowerOfTwo("quadrant split needs d >= 2");
  const int half = d / 2;

  std::array<double, 4> gammas{};
  std::array<std::vector<Complex>, 4> parts;
  for (auto& p : parts) p.resize(static_cast<std::size_t>(half * half));
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) {
      const int q = (x >= half ? 1 : 0) + (y >= half ? 2 : 0);
      const Complex a = target.at({x, y});
      gammas[static_cast<std::size_t>(q)] += std::norm(a);
      parts[static_cast<std::size_t>(q)]
           [static_cast<std::size_t>((x % half) + half * (y % half))] = a;
    }
  }

  auto make = [&](std::size_t q) {
    if (gammas[q] == 0.0) return placeholder(half);
    return TargetState::normalized(2, half, std::move(parts[q]));
  };
  return QuadrantSplit{gammas, {make(0), make(1), make(2), make(3)}};
}

StagedSchedule synthesize_scheme2_staged(const TargetState& target) {
  require_bipartite_power_of_two(target);
  const int d = target.dimension();
  if (d <= 2) return synthesize_scheme1_staged(target);

  const int half = d / 2;
  const QuadrantSplit split = quadrant_split(target);

  StagedSchedule out{2, d, {}};

  Stage coarse;
  coarse.shift_power = half;
  Eigen::VectorXcd column(4);
  for (int q = 0; q < 4; ++q) column(q) = std::sqrt(split.gammas[static_cast<std::size_t>(q)]);
  column.normalize();
  coarse.fork.emplace(Position{0, 0}, complete_unitary(4, {{0, column}}));
  coarse.restore.emplace(Position{half, 0}, UnitaryBlock::pauli_x(2, kRight));
  coarse.restore.emplace(Position{0, half}, UnitaryBlock::pauli_x(2, kUp));
  coarse.restore.emplace(Position{half, half}, UnitaryBlock::pauli_x(2, kDiagonal));
  out.stages.push_back(std::move(coarse));

  // Stage j+1 of the merged walk is stage j of each quadrant's walk placed
  // at the quadrant's corner.
  const int depth = static_cast<int>(std::lround(std::log2(half)));
  out.stages.resize(static_cast<std::size_t>(depth + 1));
  for (int j = 0; j < depth; ++j) {
    out.stages[static_cast<std::size_t>(j + 1)].shift_power = half >> (j + 1);
  }
  for (int q = 0; q < 4; ++q) {
    if (split.gammas[static_cast<std::size_t>(q)] == 0.0) continue;
    const int dx = (q & 1) ? half : 0;
    const int dy = (q & 2) ? half : 0;
    const StagedSchedule sub =
        synthesize_scheme2_staged(split.substates[static_cast<std::size_t>(q)]);
    for (std::size_t j = 0; j < sub.stages.size(); ++j) {
      Stage& merged = out.stages[j + 1];
      merged.fork.merge(translated(sub.stages[j].fork, dx, dy));
      merged.restore.merge(translated(sub.stages[j].restore, dx, dy));
    }
  }
  return out;
}

Schedule synthesize_scheme2(const TargetState& target) {
  return fuse(synthesize_scheme2_staged(target));
}

}  // namespace qwalk
