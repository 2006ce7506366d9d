#include "qwalk/circuit.hpp"

#include <cmath>
#include <sstream>

namespace qwalk {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kLocalToffoli:
      return "local-toffoli";
    case GateKind::kLocalIncrement:
      return "local-increment";
    case GateKind::kUcgNode:
      return "ucg-node";
  }
  return "unknown";
}

namespace {

int register_width(int d) {
  int n = 0;
  while ((1 << n) < d) ++n;
  return std::max(n, 1);
}

}  // namespace

CircuitIR::CircuitIR(int dimension) : dimension_(dimension) {
  if (dimension < 2) throw InvalidInput("circuit lowering needs d >= 2");
  bits_ = register_width(dimension);
  auto add_side = [this](Site site, const std::string& p, const std::string& a,
                         const std::string& b, const std::string& c) {
    for (int i = 0; i < bits_; ++i) {
      qubits_.push_back({p + "[" + std::to_string(i) + "]", site});
    }
    qubits_.push_back({a, site});
    qubits_.push_back({b, site});
    qubits_.push_back({c, site});
  };
  add_side(Site::kA, "p1", "a1", "a3", "c1");
  add_side(Site::kB, "p2", "a2", "a4", "c2");
}

void CircuitIR::append(Gate gate) {
  const int n = static_cast<int>(qubits_.size());
  std::vector<int> wires = gate.controls;
  wires.insert(wires.end(), gate.targets.begin(), gate.targets.end());
  if (gate.control_values.size() != gate.controls.size()) {
    throw InvalidInput("gate control pattern length mismatch");
  }
  bool site_a = false;
  bool site_b = false;
  for (int w : wires) {
    if (w < 0 || w >= n) throw InvalidInput("gate references an unknown wire");
    (site_of(w) == Site::kA ? site_a : site_b) = true;
  }
  const bool cross = site_a && site_b;
  if (gate.kind == GateKind::kUcgNode) {
    if (!cross) throw InvalidInput("controlled block must span both sites");
    if (gate.targets.size() != 2 || gate.matrix.rows() != 4 || gate.matrix.cols() != 4) {
      throw InvalidInput("controlled block acts on exactly (c1, c2)");
    }
  } else {
    if (cross) throw InvalidInput("local gate spans both sites");
    if (gate.cross_cnots != 0) throw InvalidInput("local gate charged cross-site CNOTs");
  }
  gates_.push_back(std::move(gate));
}

void CircuitIR::append(const CircuitIR& fragment) {
  if (fragment.dimension_ != dimension_) {
    throw DimensionMismatch("fragments lowered for different d");
  }
  for (const Gate& g : fragment.gates_) gates_.push_back(g);
}

int CircuitIR::cross_cnots() const {
  int n = 0;
  for (const Gate& g : gates_) n += g.cross_cnots;
  return n;
}

int CircuitIR::local_gates() const {
  int n = 0;
  for (const Gate& g : gates_) n += g.kind == GateKind::kUcgNode ? 0 : 1;
  return n;
}

// ---------------------------------------------------------------------------

namespace {

Gate mark(const CircuitIR& ir, bool first_register, int value, int target,
          std::string tag) {
  Gate g{GateKind::kLocalToffoli, {}, {}, {target}, {}, 0, 0, 0, std::move(tag)};
  for (int b = 0; b < ir.register_bits(); ++b) {
    g.controls.push_back(first_register ? ir.p1(b) : ir.p2(b));
    g.control_values.push_back((value >> b) & 1);
  }
  return g;
}

Gate controlled_block(const CircuitIR& ir, int ctrl_a, int ctrl_b,
                      const UnitaryBlock& block, const CostModel& model,
                      std::string tag) {
  return Gate{GateKind::kUcgNode,
              {ctrl_a, ctrl_b},
              {1, 1},
              {ir.c1(), ir.c2()},
              block.matrix(),
              0,
              0,
              model.cross_cnots_per_block,
              std::move(tag)};
}

std::string position_tag(int level, int x, int y) {
  std::ostringstream s;
  s << "k=" << level << " (" << x << "," << y << ")";
  return s.str();
}

}  // namespace

CircuitIR lower_coin_step(int dimension, int level, const BlockMap& blocks,
                          const CostModel& model) {
  CircuitIR ir(dimension);
  std::map<int, const UnitaryBlock*> row;     // (level, y), y < level
  std::map<int, const UnitaryBlock*> column;  // (x, level), x < level
  const UnitaryBlock* corner = nullptr;
  for (const auto& [p, block] : blocks) {
    if (block.dim() != 4 || p.party_count() != 2) {
      throw NotBipartite("circuit lowering handles 4x4 coin blocks only");
    }
    if (block.is_identity()) continue;
    const int x = p[0];
    const int y = p[1];
    if (x > level || y > level || (x != level && y != level)) {
      std::ostringstream msg;
      msg << "non-identity block at (" << x << "," << y
          << ") is off the frontier of level " << level;
      throw NonFrontierBlock(msg.str());
    }
    if (x == level && y == level) {
      corner = &block;
    } else if (x == level) {
      row[y] = &block;
    } else {
      column[x] = &block;
    }
  }
  if (row.empty() && column.empty() && corner == nullptr) return ir;

  const std::string k = "k=" + std::to_string(level);
  ir.append(mark(ir, true, level, ir.a1(), k + " mark x==k"));
  ir.append(mark(ir, false, level, ir.a2(), k + " mark y==k"));
  for (const auto& [y, block] : row) {
    ir.append(mark(ir, false, y, ir.a4(), k + " mark y==" + std::to_string(y)));
    ir.append(controlled_block(ir, ir.a1(), ir.a4(), *block, model,
                               position_tag(level, level, y)));
    ir.append(mark(ir, false, y, ir.a4(), k + " unmark y==" + std::to_string(y)));
  }
  if (corner != nullptr) {
    ir.append(controlled_block(ir, ir.a1(), ir.a2(), *corner, model,
                               position_tag(level, level, level)));
  }
  for (const auto& [x, block] : column) {
    ir.append(mark(ir, true, x, ir.a3(), k + " mark x==" + std::to_string(x)));
    ir.append(controlled_block(ir, ir.a3(), ir.a2(), *block, model,
                               position_tag(level, x, level)));
    ir.append(mark(ir, true, x, ir.a3(), k + " unmark x==" + std::to_string(x)));
  }
  ir.append(mark(ir, false, level, ir.a2(), k + " unmark y==k"));
  ir.append(mark(ir, true, level, ir.a1(), k + " unmark x==k"));
  return ir;
}

CircuitIR lower_shift(int dimension, int amount) {
  CircuitIR ir(dimension);
  auto increment = [&](bool first) {
    Gate g{GateKind::kLocalIncrement, {first ? ir.c1() : ir.c2()}, {1}, {}, {},
           dimension, amount, 0, first ? "x += c1" : "y += c2"};
    for (int b = 0; b < ir.register_bits(); ++b) {
      g.targets.push_back(first ? ir.p1(b) : ir.p2(b));
    }
    return g;
  };
  ir.append(increment(true));
  ir.append(increment(false));
  return ir;
}

CircuitIR lower_schedule(const Schedule& schedule, const CostModel& model) {
  if (schedule.party_count != 2) throw NotBipartite("circuit lowering needs c = 2");
  CircuitIR ir(schedule.dimension);
  int level = 0;
  for (const CoinStep& step : schedule.steps) {
    ir.append(lower_coin_step(schedule.dimension, level++, step.blocks, model));
    ir.append(lower_shift(schedule.dimension, step.shift_power));
  }
  ir.append(lower_coin_step(schedule.dimension, level, schedule.final_coin, model));
  return ir;
}

// ---------------------------------------------------------------------------

QspCostModel qsp_cost_model(int qubits) {
  if (qubits < 2) throw InvalidInput("state preparation model needs n >= 2");
  QspCostModel m;
  m.qubits = qubits;
  m.half = (qubits + 1) / 2;
  const double layers = std::ldexp(1.0, m.half);
  const double n = static_cast<double>(qubits);
  m.coin_layers = layers;
  m.ucg_size = layers;
  m.ucg_depth = layers / n;
  m.adder_size = n;
  m.adder_depth = std::log2(n);
  m.size = layers * m.ucg_size + layers * m.adder_size;
  m.depth = layers * m.ucg_depth + layers * m.adder_depth;
  m.size_formula = "2^h * 2^h + 2^h * n";
  m.depth_formula = "2^h * 2^h / n + 2^h * log2(n)";
  return m;
}

CostReport cost(const Schedule& schedule, const CostModel& model) {
  if (schedule.party_count != 2) throw NotBipartite("cost accounting needs c = 2");
  CostReport report;
  report.dimension = schedule.dimension;
  report.cross_cnots_per_block = model.cross_cnots_per_block;

  auto account = [&](int level, const BlockMap& blocks, const CoinStep* step) {
    CircuitIR ir = lower_coin_step(schedule.dimension, level, blocks, model);
    if (step != nullptr) ir.append(lower_shift(schedule.dimension, step->shift_power));
    StepCost s;
    s.level = level;
    s.cross_cnots = ir.cross_cnots();
    s.local_gates = ir.local_gates();
    for (const Gate& g : ir.gates()) s.blocks += g.kind == GateKind::kUcgNode ? 1 : 0;
    report.long_distance_cnots += s.cross_cnots;
    report.local_gates += s.local_gates;
    report.steps.push_back(s);
  };
  int level = 0;
  for (const CoinStep& step : schedule.steps) account(level++, step.blocks, &step);
  account(level, schedule.final_coin, nullptr);

  int qubits = 2 * register_width(schedule.dimension);
  report.state_preparation = qsp_cost_model(qubits);
  return report;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("slope fit needs at least two matching samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidInput("log-log fit needs positive samples");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

DenseReplay::DenseReplay(const CircuitIR& layout) : layout_(layout) {
  const auto n = layout.qubits().size();
  if (n > 24) throw InvalidInput("dense replay is limited to small registers");
  amps_ = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
}

std::uint64_t DenseReplay::encode(const Position& x, CoinIndex z) const {
  std::uint64_t idx = 0;
  for (int b = 0; b < layout_.register_bits(); ++b) {
    idx |= static_cast<std::uint64_t>((x[0] >> b) & 1) << layout_.p1(b);
    idx |= static_cast<std::uint64_t>((x[1] >> b) & 1) << layout_.p2(b);
  }
  idx |= static_cast<std::uint64_t>(z.bit(0)) << layout_.c1();
  idx |= static_cast<std::uint64_t>(z.bit(1)) << layout_.c2();
  return idx;
}

void DenseReplay::load(const WalkState& state) {
  if (state.party_count() != 2 || state.dimension() != layout_.dimension()) {
    throw DimensionMismatch("replay layout does not match the walk state");
  }
  amps_.setZero();
  for (const auto& [x, v] : state.amplitudes()) {
    for (int z = 0; z < 4; ++z) {
      amps_(static_cast<std::int64_t>(encode(x, CoinIndex{static_cast<std::uint32_t>(z)}))) = v(z);
    }
  }
}

void DenseReplay::apply(const CircuitIR& fragment) {
  for (const Gate& g : fragment.gates()) apply(g);
}

void DenseReplay::apply(const Gate& g) {
  const std::uint64_t size = static_cast<std::uint64_t>(amps_.size());
  auto bit = [](std::uint64_t i, int q) { return static_cast<int>((i >> q) & 1u); };
  auto controls_match = [&](std::uint64_t i) {
    for (std::size_t c = 0; c < g.controls.size(); ++c) {
      if (bit(i, g.controls[c]) != g.control_values[c]) return false;
    }
    return true;
  };

  switch (g.kind) {
    case GateKind::kLocalToffoli: {
      const std::uint64_t mask = std::uint64_t{1} << g.targets.front();
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & mask) == 0 && controls_match(i)) {
          std::swap(amps_(static_cast<std::int64_t>(i)),
                    amps_(static_cast<std::int64_t>(i | mask)));
        }
      }
      break;
    }
    case GateKind::kLocalIncrement: {
      Eigen::VectorXcd next = Eigen::VectorXcd::Zero(amps_.size());
      for (std::uint64_t i = 0; i < size; ++i) {
        std::uint64_t j = i;
        if (controls_match(i)) {
          int value = 0;
          for (std::size_t b = 0; b < g.targets.size(); ++b) value |= bit(i, g.targets[b]) << b;
          if (value < g.modulus) {
            const int shifted_value = (value + g.amount) % g.modulus;
            for (std::size_t b = 0; b < g.targets.size(); ++b) {
              const std::uint64_t m = std::uint64_t{1} << g.targets[b];
              j = ((shifted_value >> b) & 1) ? (j | m) : (j & ~m);
            }
          }
        }
        next(static_cast<std::int64_t>(j)) += amps_(static_cast<std::int64_t>(i));
      }
      amps_ = std::move(next);
      break;
    }
    case GateKind::kUcgNode: {
      const std::uint64_t m1 = std::uint64_t{1} << g.targets[0];
      const std::uint64_t m2 = std::uint64_t{1} << g.targets[1];
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & (m1 | m2)) != 0 || !controls_match(i)) continue;
        const std::int64_t idx[4] = {static_cast<std::int64_t>(i),
                                     static_cast<std::int64_t>(i | m1),
                                     static_cast<std::int64_t>(i | m2),
                                     static_cast<std::int64_t>(i | m1 | m2)};
        Eigen::Vector4cd v;
        for (int z = 0; z < 4; ++z) v(z) = amps_(idx[z]);
        v = g.matrix * v;
        for (int z = 0; z < 4; ++z) amps_(idx[z]) = v(z);
      }
      break;
    }
  }
}

double DenseReplay::ancilla_excitation() const {
  const std::uint64_t mask = (std::uint64_t{1} << layout_.a1()) |
                             (std::uint64_t{1} << layout_.a2()) |
                             (std::uint64_t{1} << layout_.a3()) |
                             (std::uint64_t{1} << layout_.a4());
  double mass = 0.0;
  for (std::int64_t i = 0; i < amps_.size(); ++i) {
    if (static_cast<std::uint64_t>(i) & mask) mass += std::norm(amps_(i));
  }
  return mass;
}

WalkState DenseReplay::decode() const {
  const int d = layout_.dimension();
  WalkState::Storage s;
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) {
      Eigen::VectorXcd v(4);
      bool any = false;
      for (int z = 0; z < 4; ++z) {
        v(z) = amps_(static_cast<std::int64_t>(
            encode({x, y}, CoinIndex{static_cast<std::uint32_t>(z)})));
        any = any || v(z) != Complex(0.0);
      }
      if (any) s.emplace(Position{x, y}, std::move(v));
    }
  }
  return WalkState(2, d, std::move(s));
}

}  // namespace qwalk
