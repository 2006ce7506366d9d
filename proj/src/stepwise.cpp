#include "qwalk/stepwise.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qwalk {

IntermediateAmplitudes::IntermediateAmplitudes(int party_count, int level,
                                               std::vector<Complex> table)
    : party_count_(party_count), level_(level), table_(std::move(table)) {
  std::size_t expected = 1;
  for (int j = 0; j < party_count; ++j) expected *= static_cast<std::size_t>(level + 1);
  if (table_.size() != expected) {
    throw DimensionMismatch("intermediate table must have (k+1)^c entries");
  }
}

std::size_t IntermediateAmplitudes::index(const Position& x) const {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int j = 0; j < party_count_; ++j) {
    idx += static_cast<std::size_t>(x[j]) * stride;
    stride *= static_cast<std::size_t>(extent());
  }
  return idx;
}

Complex IntermediateAmplitudes::at(const Position& x) const {
  if (x.party_count() != party_count_) {
    throw DimensionMismatch("position has the wrong number of coordinates");
  }
  for (int j = 0; j < party_count_; ++j) {
    if (x[j] < 0) throw IndexOutOfRange("negative coordinate");
    if (x[j] > level_) return 0.0;
  }
  return table_[index(x)];
}

double IntermediateAmplitudes::norm() const {
  double s = 0.0;
  for (const Complex& a : table_) s += std::norm(a);
  return std::sqrt(s);
}

Cylinder Cylinder::at(const Position& base, int level) {
  Cylinder cyl{base, level, {}};
  std::uint32_t free_bits = 0;
  for (int j = 0; j < base.party_count(); ++j) {
    if (base[j] == level) free_bits |= 1u << j;
  }
  // every subset of free_bits, ascending
  const std::uint32_t dim = 1u << base.party_count();
  for (std::uint32_t z = 0; z < dim; ++z) {
    if ((z & ~free_bits) == 0) cyl.members.push_back(CoinIndex{z});
  }
  return cyl;
}

bool is_frontier(const Position& x, int level) {
  bool touches = false;
  for (int v : x.coords) {
    if (v > level) return false;
    touches = touches || v == level;
  }
  return touches;
}

std::vector<Position> frontier_positions(int party_count, int level) {
  std::vector<Position> out;
  std::vector<int> coords(static_cast<std::size_t>(party_count), 0);
  while (true) {
    Position p(coords);
    if (is_frontier(p, level)) out.push_back(std::move(p));
    int j = party_count - 1;
    while (j >= 0 && coords[static_cast<std::size_t>(j)] == level) {
      coords[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++coords[static_cast<std::size_t>(j)];
  }
  return out;
}

namespace {

/// Level k from level k+1.
IntermediateAmplitudes step_down(const IntermediateAmplitudes& next) {
  const int c = next.party_count();
  const int k = next.level() - 1;
  std::size_t n = 1;
  for (int j = 0; j < c; ++j) n *= static_cast<std::size_t>(k + 1);
  std::vector<Complex> table(n);
  std::vector<int> coords(static_cast<std::size_t>(c), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (auto& v : coords) {
      v = static_cast<int>(rest % static_cast<std::size_t>(k + 1));
      rest /= static_cast<std::size_t>(k + 1);
    }
    const Position x(coords);
    if (!is_frontier(x, k)) {
      table[i] = next.at(x);
      continue;
    }
    double mass = 0.0;
    for (CoinIndex z : Cylinder::at(x, k).members) {
      mass += std::norm(next.at(shifted(x, z)));
    }
    table[i] = std::sqrt(mass);
  }
  return IntermediateAmplitudes(c, k, std::move(table));
}

IntermediateAmplitudes top_level(const TargetState& target) {
  const auto amps = target.amplitudes();
  return IntermediateAmplitudes(target.party_count(), target.dimension() - 1,
                                std::vector<Complex>(amps.begin(), amps.end()));
}

}  // namespace

IntermediateAmplitudes alpha_recurrence(const TargetState& target, int level) {
  if (level < 0 || level >= target.dimension()) {
    throw IndexOutOfRange("level must lie in [0, d-1]");
  }
  IntermediateAmplitudes current = top_level(target);
  while (current.level() > level) current = step_down(current);
  return current;
}

std::vector<IntermediateAmplitudes> alpha_cascade(const TargetState& target) {
  std::vector<IntermediateAmplitudes> levels;
  levels.reserve(static_cast<std::size_t>(target.dimension()));
  levels.push_back(top_level(target));
  while (levels.back().level() > 0) levels.push_back(step_down(levels.back()));
  return {levels.rbegin(), levels.rend()};
}

Complex alpha_closed_form(const TargetState& target, int level, int x, int y) {
  if (target.party_count() != 2) throw NotBipartite("closed form is bipartite only");
  const int d = target.dimension();
  if (level < 0 || level >= d || x < 0 || y < 0 || x > level || y > level) {
    throw IndexOutOfRange("need 0 <= x, y <= k <= d-1");
  }
  if ((x < level && y < level) || level == d - 1) return target.at({x, y});
  double mass = 0.0;
  if (x == level && y < level) {
    for (int z = level; z < d; ++z) mass += std::norm(target.at({z, y}));
  } else if (x < level && y == level) {
    for (int w = level; w < d; ++w) mass += std::norm(target.at({x, w}));
  } else {
    for (int z = level; z < d; ++z) {
      for (int w = level; w < d; ++w) mass += std::norm(target.at({z, w}));
    }
  }
  return std::sqrt(mass);
}

BlockMap build_c1_blocks(const IntermediateAmplitudes& current,
                         const IntermediateAmplitudes& next) {
  const int c = current.party_count();
  const int k = current.level();
  if (next.party_count() != c || next.level() != k + 1) {
    throw DimensionMismatch("fork coins need consecutive levels");
  }
  const int dim = coin_dimension(c);
  BlockMap blocks;
  for (const Position& x : frontier_positions(c, k)) {
    const Complex denom = current.at(x);
    // zero amplitude: the block never acts on anything
    if (std::abs(denom) < std::numeric_limits<double>::min()) continue;
    Eigen::VectorXcd column = Eigen::VectorXcd::Zero(dim);
    for (CoinIndex z : Cylinder::at(x, k).members) {
      column(z.index()) = next.at(shifted(x, z)) / denom;
    }
    const double norm = column.norm();
    if (std::abs(norm - 1.0) > kInputTol) {
      std::ostringstream msg;
      msg << "fork column at level " << k << " has norm " << norm;
      throw InconsistentAmplitudes(msg.str());
    }
    blocks.emplace(x, complete_unitary(dim, {{0, column}}));
  }
  return blocks;
}

BlockMap build_c2_blocks(int party_count, int level) {
  if (level < 1) throw IndexOutOfRange("restoring coins start at level 1");
  BlockMap blocks;
  for (const Position& x : frontier_positions(party_count, level)) {
    std::uint32_t flips = 0;
    for (int j = 0; j < party_count; ++j) {
      if (x[j] == level) flips |= 1u << j;
    }
    blocks.emplace(x, UnitaryBlock::pauli_x(party_count, CoinIndex{flips}));
  }
  return blocks;
}

StagedSchedule synthesize_scheme1_staged(const TargetState& target) {
  const int c = target.party_count();
  const int d = target.dimension();
  StagedSchedule out{c, d, {}};
  if (d == 1) return out;
  const auto levels = alpha_cascade(target);
  out.stages.reserve(static_cast<std::size_t>(d - 1));
  for (int k = 0; k + 1 < d; ++k) {
    const auto& current = levels[static_cast<std::size_t>(k)];
    const auto& next = levels[static_cast<std::size_t>(k + 1)];
    out.stages.push_back(
        Stage{build_c1_blocks(current, next), 1, build_c2_blocks(c, k + 1)});
  }
  return out;
}

Schedule synthesize_scheme1(const TargetState& target) {
  return fuse(synthesize_scheme1_staged(target));
}

}  // namespace qwalk
