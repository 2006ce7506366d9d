#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qwalk/bell.hpp"
#include "qwalk/circuit.hpp"
#include "qwalk/io.hpp"
#include "qwalk/stepwise.hpp"

using namespace qwalk;

namespace {

// Replays the lowered schedule layer by layer against the walk engine.
void check_replay(const Schedule& s) {
  const int d = s.dimension;
  const CircuitIR layout(d);
  DenseReplay replay(layout);
  replay.load(WalkState::initial(2, d));
  WalkState ref = WalkState::initial(2, d);
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    replay.apply(lower_coin_step(d, static_cast<int>(k), s.steps[k].blocks));
    replay.apply(lower_shift(d, s.steps[k].shift_power));
    ref = apply_shift(apply_coin(ref, s.steps[k].blocks), s.steps[k].shift_power);
    CHECK(replay.ancilla_excitation() <= 1e-20);
    CHECK(fidelity(replay.decode(), ref) >= 1 - 1e-10);
  }
  replay.apply(lower_coin_step(d, static_cast<int>(s.steps.size()), s.final_coin));
  ref = apply_coin(ref, s.final_coin);
  CHECK(replay.ancilla_excitation() <= 1e-20);
  CHECK(fidelity(replay.decode(), ref) >= 1 - 1e-10);

  DenseReplay whole(layout);
  whole.load(WalkState::initial(2, d));
  whole.apply(lower_schedule(s));
  CHECK(whole.ancilla_excitation() <= 1e-20);
  CHECK(fidelity(whole.decode(), run(s)) >= 1 - 1e-10);
}

}  // namespace

TEST_CASE("wire layout") {
  const CircuitIR ir(4);
  CHECK(ir.register_bits() == 2);
  CHECK(ir.qubits().size() == 10);
  for (int q : {ir.p1(0), ir.p1(1), ir.a1(), ir.a3(), ir.c1()}) CHECK(ir.site_of(q) == Site::kA);
  for (int q : {ir.p2(0), ir.p2(1), ir.a2(), ir.a4(), ir.c2()}) CHECK(ir.site_of(q) == Site::kB);
  CHECK(CircuitIR(5).register_bits() == 3);
  CHECK(CircuitIR(2).register_bits() == 1);
  CHECK_THROWS(CircuitIR(1));
}

TEST_CASE("append enforces locality") {
  CircuitIR ir(2);
  Gate cross{GateKind::kLocalToffoli, {ir.p1(0)}, {1}, {ir.a2()}, {}, 0, 0, 0, "bad"};
  CHECK_THROWS_AS(ir.append(cross), InvalidInput);
  Gate local{GateKind::kLocalToffoli, {ir.p1(0)}, {1}, {ir.a1()}, {}, 0, 0, 0, "ok"};
  CHECK_NOTHROW(ir.append(local));
  CHECK(ir.cross_cnots() == 0);
}

TEST_CASE("lower_coin_step: all identity is empty") {
  BlockMap ids;
  ids.emplace(Position{1, 0}, UnitaryBlock::identity(4));
  const CircuitIR ir = lower_coin_step(4, 1, ids);
  CHECK(ir.gates().empty());
  CHECK(ir.cross_cnots() == 0);
  CHECK(lower_coin_step(4, 2, {}).gates().empty());
}

TEST_CASE("lower_coin_step: Bell d=2 restore layer has three blocks") {
  const Schedule s = bell_coins(BellParams(2, 0, 0));
  const CircuitIR ir = lower_coin_step(2, 1, s.final_coin);
  int nodes = 0;
  for (const Gate& g : ir.gates()) nodes += g.kind == GateKind::kUcgNode;
  CHECK(nodes == 3);
  CHECK(ir.cross_cnots() == 3 * kDefaultCrossCnotsPerBlock);
}

TEST_CASE("lower_coin_step rejects off-frontier blocks") {
  std::mt19937_64 rng(1);
  BlockMap b;
  b.emplace(Position{0, 0}, UnitaryBlock(oracle::random_unitary(4, rng)));
  CHECK_THROWS_AS(lower_coin_step(4, 2, b), NonFrontierBlock);
}

TEST_CASE("lower_shift is local and wraps mod d") {
  for (int d : {2, 3, 4, 7, 16}) CHECK(lower_shift(d).cross_cnots() == 0);

  const CircuitIR layout(4);
  WalkState::Storage s;
  Eigen::VectorXcd right = Eigen::VectorXcd::Zero(4);
  right(kRight.index()) = 1.0;
  s[{3, 2}] = right;
  DenseReplay replay(layout);
  replay.load(WalkState(2, 4, s));
  replay.apply(lower_shift(4));
  CHECK(replay.decode().amplitude({0, 2}, kRight) == Complex(1.0));

  WalkState::Storage still;
  Eigen::VectorXcd stay = Eigen::VectorXcd::Zero(4);
  stay(0) = 1.0;
  still[{2, 3}] = stay;
  DenseReplay r2(layout);
  r2.load(WalkState(2, 4, still));
  r2.apply(lower_shift(4));
  CHECK(r2.decode().amplitude({2, 3}, kStay) == Complex(1.0));
}

TEST_CASE("dense replay matches the walk at d in {2, 4}") {
  std::mt19937_64 rng(12);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 3; ++trial) check_replay(synthesize_scheme1(random_target(2, d, rng)));
    check_replay(bell_coins(BellParams(d, 1, d - 1)));
  }
}

TEST_CASE("cost: shift-only schedule is free") {
  Schedule s;
  s.dimension = 8;
  for (int i = 0; i < 7; ++i) s.steps.push_back({{}, 1});
  const CostReport r = cost(s);
  CHECK(r.long_distance_cnots == 0);
  CHECK(r.local_gates > 0);
}

TEST_CASE("cost: Bell d=2 matches the golden file") {
  const CostReport r = cost(bell_coins(BellParams(2, 0, 0)));
  // One corner fork at level 0, three restores at level 1.
  CHECK(r.long_distance_cnots == 4 * kDefaultCrossCnotsPerBlock);

  std::ifstream in(QWALK_GOLDEN_DIR "/bell_d2_cost.json");
  REQUIRE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(io::dump(io::cost_report_to_json(r)) == golden.str());
}

TEST_CASE("cost: random scheme-1 targets cost exactly 8 d^2") {
  std::mt19937_64 rng(6);
  for (int d = 2; d <= 12; ++d) {
    CHECK(cost(synthesize_scheme1(random_target(2, d, rng))).long_distance_cnots ==
          kDefaultCrossCnotsPerBlock * d * d);
  }
  CHECK_THROWS_AS(cost(synthesize_scheme1(random_target(3, 2, rng))), NotBipartite);
}

TEST_CASE("loglog_slope") {
  const std::vector<double> x{1, 2, 4, 8};
  const std::vector<double> y{3, 12, 48, 192};
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(loglog_slope(std::vector<double>{1}, std::vector<double>{1}), InvalidInput);
}

TEST_CASE("state preparation model") {
  const QspCostModel m = qsp_cost_model(10);
  CHECK(m.half == 5);
  CHECK(m.size == 32.0 * 32 + 32 * 10);
  CHECK(m.depth == doctest::Approx(32.0 * 32 / 10 + 32 * std::log2(10.0)));
  CHECK(qsp_cost_model(9).half == 5);
}
