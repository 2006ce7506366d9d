#pragma once

// Two-site gate-level lowering of bipartite stepwise schedules and
// long-distance CNOT accounting.
//
// Wire layout (site A then site B):
//   A: p1[0..n-1] (position x, LSB first), a1, a3, c1
//   B: p2[0..n-1] (position y, LSB first), a2, a4, c2
// with n = ceil(log2 d). The coin label bits are (c1, c2) = (bit 0, bit 1).
//
// A coin layer at level k is lowered as
//   mark a1 <- [x == k], mark a2 <- [y == k]
//   for each y < k with a non-identity block:
//     mark a4 <- [y == y0]; C(k,y0) on (c1,c2) controlled by a1, a4; unmark a4
//   C(k,k) on (c1,c2) controlled by a1, a2
//   for each x < k with a non-identity block:
//     mark a3 <- [x == x0]; C(x0,k) on (c1,c2) controlled by a3, a2; unmark a3
//   unmark a2, unmark a1
// The three groups act on disjoint position sets and commute, so any order
// of them is equivalent; this one is checked by dense replay. Each
// controlled 4-qubit block straddles both sites and is charged a fixed
// number of long-distance CNOTs; all markings and shifts are site-local.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class Site { kA, kB };

struct Qubit {
  std::string label;
  Site site;
};

enum class GateKind {
  /// Multi-controlled X with a control value pattern; all wires on one site.
  kLocalToffoli,
  /// Increment of a position register mod d, controlled by its coin qubit.
  kLocalIncrement,
  /// 4x4 block on (c1, c2) controlled by two ancillae; spans both sites.
  kUcgNode,
};

const char* to_string(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<int> controls;
  /// Required value (0/1) of each control.
  std::vector<int> control_values;
  std::vector<int> targets;
  /// kUcgNode: the coin block, basis index = c1 + 2*c2.
  Eigen::MatrixXcd matrix;
  /// kLocalIncrement: register modulus and increment.
  int modulus = 0;
  int amount = 0;
  int cross_cnots = 0;
  std::string tag;
};

/// Assumed long-distance CNOT count of one cross-site controlled 4-qubit
/// block. Elementary decomposition of the block is not performed.
inline constexpr int kDefaultCrossCnotsPerBlock = 8;

struct CostModel {
  int cross_cnots_per_block = kDefaultCrossCnotsPerBlock;
};

class CircuitIR {
 public:
  explicit CircuitIR(int dimension);

  int dimension() const { return dimension_; }
  int register_bits() const { return bits_; }
  const std::vector<Qubit>& qubits() const { return qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }

  int p1(int bit) const { return bit; }
  int a1() const { return bits_; }
  int a3() const { return bits_ + 1; }
  int c1() const { return bits_ + 2; }
  int p2(int bit) const { return bits_ + 3 + bit; }
  int a2() const { return 2 * bits_ + 3; }
  int a4() const { return 2 * bits_ + 4; }
  int c2() const { return 2 * bits_ + 5; }

  Site site_of(int qubit) const { return qubits_[static_cast<std::size_t>(qubit)].site; }

  /// Throws InvalidInput if a gate references a foreign wire or breaks the
  /// locality rules (local gates on one site, blocks across both).
  void append(Gate gate);
  void append(const CircuitIR& fragment);

  int cross_cnots() const;
  int local_gates() const;

 private:
  int dimension_;
  int bits_;
  std::vector<Qubit> qubits_;
  std::vector<Gate> gates_;
};

/// Lowers one coin layer of level `level`. Throws NonFrontierBlock if a
/// non-identity block sits off the level's frontier, NotBipartite if a block
/// is not 4x4.
CircuitIR lower_coin_step(int dimension, int level, const BlockMap& blocks,
                          const CostModel& model = {});

/// Controlled increments x += amount*c1, y += amount*c2 (mod d).
CircuitIR lower_shift(int dimension, int amount = 1);

/// Step k's coin at level k, its shift, then the final coin at level
/// steps.size(). Throws NotBipartite for c != 2.
CircuitIR lower_schedule(const Schedule& schedule, const CostModel& model = {});

struct StepCost {
  int level = 0;
  int cross_cnots = 0;
  int local_gates = 0;
  int blocks = 0;
};

/// Size/depth of the circuit-model state preparation obtained from the walk
/// on n qubits, split into two registers of h = ceil(n/2) qubits. There are
/// 2^h coin layers, each a uniformly controlled gate of size 2^h and depth
/// 2^h / n, and 2^h shifts, each an adder of size n and depth log2(n). Unit
/// constants throughout; the constructions themselves are not built.
struct QspCostModel {
  int qubits = 0;
  int half = 0;
  double coin_layers = 0;
  double ucg_size = 0;
  double ucg_depth = 0;
  double adder_size = 0;
  double adder_depth = 0;
  double size = 0;
  double depth = 0;
  std::string size_formula;
  std::string depth_formula;
};

QspCostModel qsp_cost_model(int qubits);

struct CostReport {
  int dimension = 0;
  int long_distance_cnots = 0;
  int local_gates = 0;
  int cross_cnots_per_block = kDefaultCrossCnotsPerBlock;
  std::vector<StepCost> steps;
  QspCostModel state_preparation;
};

CostReport cost(const Schedule& schedule, const CostModel& model = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Dense simulator over all wires of a CircuitIR. Small d only.
class DenseReplay {
 public:
  explicit DenseReplay(const CircuitIR& layout);

  /// Loads a walk state with all ancillae in |0>.
  void load(const WalkState& state);
  void apply(const CircuitIR& fragment);
  /// Probability that any ancilla is |1>.
  double ancilla_excitation() const;
  /// Projects onto ancillae |0> and decodes positions < d.
  WalkState decode() const;

  const Eigen::VectorXcd& amplitudes() const { return amps_; }

 private:
  std::uint64_t encode(const Position& x, CoinIndex z) const;
  void apply(const Gate& gate);

  CircuitIR layout_;
  Eigen::VectorXcd amps_;
};

}  // namespace qwalk
