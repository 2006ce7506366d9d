#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library beyond the plain data types: the dense walk builds the
// full coin and shift matrices on H_P (x) H_C, the tail sums evaluate the
// intermediate amplitudes from their definition, and the pair count is a
// double loop.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace oracle {

using qwalk::Complex;
using qwalk::Position;

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Dense walk on [0,d)^c with the coin register as the fastest index:
/// basis index = z + 2^c * (x_0 + d x_1 + ...).
class DenseWalk {
 public:
  DenseWalk(int c, int d) : c_(c), d_(d), coins_(1 << c), sites_(ipow(d, c)) {}

  long long dim() const { return sites_ * coins_; }

  long long site(const Position& x) const {
    long long s = 0;
    for (int j = c_ - 1; j >= 0; --j) s = s * d_ + x[j];
    return s;
  }
  Position position(long long s) const {
    std::vector<int> v(static_cast<std::size_t>(c_));
    for (int j = 0; j < c_; ++j) {
      v[static_cast<std::size_t>(j)] = static_cast<int>(s % d_);
      s /= d_;
    }
    return Position(v);
  }

  Eigen::VectorXcd initial() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
    v(0) = 1.0;
    return v;
  }

  /// Block-diagonal coin; positions missing from the map get identity.
  Eigen::MatrixXcd coin(const qwalk::BlockMap& blocks) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim(), dim());
    for (const auto& [x, b] : blocks) {
      const long long off = site(x) * coins_;
      m.block(off, off, coins_, coins_) = b.matrix();
    }
    return m;
  }

  /// Conditional shift with periodic wrap so the matrix is a permutation.
  Eigen::MatrixXcd shift(int power) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (long long s = 0; s < sites_; ++s) {
      const Position x = position(s);
      for (int z = 0; z < coins_; ++z) {
        std::vector<int> y(x.coords);
        for (int j = 0; j < c_; ++j) {
          if ((z >> j) & 1) y[static_cast<std::size_t>(j)] = (x[j] + power) % d_;
        }
        m(site(Position(y)) * coins_ + z, s * coins_ + z) = 1.0;
      }
    }
    return m;
  }

  /// Mass that would cross the boundary under `shift(power)`.
  double escaping_mass(const Eigen::VectorXcd& v, int power) const {
    double mass = 0;
    for (long long s = 0; s < sites_; ++s) {
      const Position x = position(s);
      for (int z = 0; z < coins_; ++z) {
        for (int j = 0; j < c_; ++j) {
          if (((z >> j) & 1) && x[j] + power >= d_) {
            mass += std::norm(v(s * coins_ + z));
            break;
          }
        }
      }
    }
    return mass;
  }

  Eigen::VectorXcd run(const qwalk::Schedule& s, double* escaped = nullptr) const {
    Eigen::VectorXcd v = initial();
    double lost = 0;
    for (const auto& step : s.steps) {
      v = coin(step.blocks) * v;
      lost += escaping_mass(v, step.shift_power);
      v = shift(step.shift_power) * v;
    }
    v = coin(s.final_coin) * v;
    if (escaped) *escaped = lost;
    return v;
  }

  Eigen::VectorXcd embed(const qwalk::TargetState& t) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
    for (std::size_t i = 0; i < t.size(); ++i) {
      v(site(t.position_of(i)) * coins_) = t.flat(i);
    }
    return v;
  }

  Eigen::VectorXcd embed(const qwalk::WalkState& w) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
    for (const auto& [x, coin] : w.amplitudes()) v.segment(site(x) * coins_, coins_) = coin;
    return v;
  }

 private:
  int c_;
  int d_;
  int coins_;
  long long sites_;
};

inline double overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b));
}

/// Level-k intermediate amplitude from its definition: interior points keep
/// the target amplitude, frontier points carry the root of the target mass
/// over every position that agrees on the interior coordinates and is >= k
/// on the frontier ones. Returns the modulus only; valid for k < d-1.
inline double tail_mass_amplitude(const qwalk::TargetState& t, int k, const Position& x) {
  const int c = t.party_count();
  double mass = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Position y = t.position_of(i);
    bool match = true;
    for (int j = 0; j < c && match; ++j) {
      match = x[j] < k ? y[j] == x[j] : y[j] >= k;
    }
    if (match) mass += std::norm(t.flat(i));
  }
  return std::sqrt(mass);
}

/// #{(z, w) : k <= z, w < d, w == z + m mod d}
inline long long pair_count(int m, int k, int d) {
  long long n = 0;
  for (int z = k; z < d; ++z) {
    for (int w = k; w < d; ++w) {
      if (w == (z + m) % d) ++n;
    }
  }
  return n;
}

/// Haar-ish random unitary via QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace oracle
