#include "qwalk/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qwalk/stepwise.hpp"

namespace qwalk {

namespace {

int reduce(long long v, int d) {
  const long long r = v % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

}  // namespace

BellParams::BellParams(int dimension, long long n, long long m) : d_(dimension) {
  if (dimension < 2) throw InvalidInput("Bell states need d >= 2");
  n_ = reduce(n, d_);
  m_ = reduce(m, d_);
}

Complex BellParams::phase(long long j) const {
  const long long e = (static_cast<long long>(reduce(j, d_)) * n_) % d_;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / d_);
}

TargetState bell_target(const BellParams& params) {
  const int d = params.dimension();
  std::vector<Complex> amps(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    const int y = (j + params.m()) % d;
    amps[static_cast<std::size_t>(j + d * y)] = params.phase(j) * scale;
  }
  return TargetState(2, d, std::move(amps));
}

long long sigma(int m, int k, int d) {
  return ramp(static_cast<long long>(d) - m - k) + ramp(static_cast<long long>(m) - k);
}

Complex bell_alpha(const BellParams& params, int level, int x, int y) {
  const int d = params.dimension();
  const int m = params.m();
  const int k = level;
  if (k < 0 || k >= d || x < 0 || y < 0 || x > k || y > k) {
    throw IndexOutOfRange("need 0 <= x, y <= k <= d-1");
  }
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  // the top level is the target itself, phases included
  if ((x < k && y < k) || k == d - 1) {
    return (y == (x + m) % d) ? params.phase(x) * inv_sqrt_d : Complex(0.0);
  }
  if (x == k && y < k) {
    return (k + m - d <= y && y < std::min(m, k)) ? inv_sqrt_d : 0.0;
  }
  if (x < k && y == k) {
    return (k - m <= x && x < std::min(d - m, k)) ? inv_sqrt_d : 0.0;
  }
  return std::sqrt(static_cast<double>(sigma(m, k, d)) / d);
}

Eigen::VectorXcd bell_corner_column(const BellParams& params, int level) {
  const int d = params.dimension();
  const int m = params.m();
  const int k = level;
  Eigen::VectorXcd col = Eigen::VectorXcd::Zero(4);
  if (m == 0) {
    const double stay = 1.0 / static_cast<double>(d - k);
    col(kStay.index()) = std::sqrt(stay) * params.phase(k);
    col(kDiagonal.index()) = std::sqrt(1.0 - stay);
    return col;
  }
  const double s = static_cast<double>(sigma(m, k, d));
  col(kRight.index()) = std::sqrt(step_function(m - k - 1) / s);
  col(kUp.index()) = std::sqrt(step_function(d - m - k - 1) / s);
  col(kDiagonal.index()) = std::sqrt(static_cast<double>(sigma(m, k + 1, d)) / s);
  return col;
}

namespace {

/// Fork coin of level k at (x, y) per the closed-form table; nullopt for
/// identity.
std::optional<UnitaryBlock> tabulated_fork(const BellParams& params, int k,
                                           int x, int y) {
  const int d = params.dimension();
  const int m = params.m();
  const auto identity = UnitaryBlock::identity(4);
  if (x == k && y == k) {
    if (sigma(m, k, d) == 0) return std::nullopt;
    return complete_unitary(4, {{0, bell_corner_column(params, k)}});
  }
  if (x == k && y == k + m - d) return identity.scaled(params.phase(k));
  if (x == k && k + m - d < y && y < std::min(m, k)) {
    return UnitaryBlock::pauli_x(2, kRight);
  }
  if (x == k - m && y == k) return identity.scaled(params.phase(k - m));
  if (y == k && k - m < x && x < std::min(d - m, k)) {
    return UnitaryBlock::pauli_x(2, kUp);
  }
  return std::nullopt;
}

}  // namespace

StagedSchedule bell_coins_staged(const BellParams& params, BellPhaseFix fix) {
  const int d = params.dimension();
  StagedSchedule out{2, d, {}};
  for (int k = 0; k + 1 < d; ++k) {
    Stage stage;
    for (const Position& p : frontier_positions(2, k)) {
      if (auto block = tabulated_fork(params, k, p[0], p[1])) {
        stage.fork.emplace(p, std::move(*block));
      }
    }
    stage.restore = build_c2_blocks(2, k + 1);
    out.stages.push_back(std::move(stage));
  }
  if (fix == BellPhaseFix::kApply && !out.stages.empty()) {
    const TargetState target = bell_target(params);
    for (auto& [p, block] : out.stages.back().restore) {
      const Complex a = target.at(p);
      if (a != Complex(0.0)) block = block.scaled(a / std::abs(a));
    }
  }
  return out;
}

Schedule bell_coins(const BellParams& params, BellPhaseFix fix) {
  return fuse(bell_coins_staged(params, fix));
}

}  // namespace qwalk
