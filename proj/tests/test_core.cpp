#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qwalk/core.hpp"

using namespace qwalk;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

Eigen::VectorXcd vec(std::initializer_list<Complex> v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex a : v) out(i++) = a;
  return out;
}

TargetState bell22() { return TargetState(2, 2, {r2, 0.0, 0.0, r2}); }

}  // namespace

TEST_CASE("coin labels follow the bit convention") {
  CHECK(shifted({1, 2}, kRight, 3) == Position{4, 2});
  CHECK(shifted({1, 2}, kUp) == Position{1, 3});
  CHECK(shifted({1, 2}, kDiagonal, 2) == Position{3, 4});
  CHECK(shifted({1, 2}, kStay, 5) == Position{1, 2});
  CHECK(coin_dimension(3) == 8);
}

TEST_CASE("pauli_x permutes coin labels") {
  const UnitaryBlock x = UnitaryBlock::pauli_x(2, kRight);
  for (int z = 0; z < 4; ++z) {
    CHECK(std::abs(x.matrix()(z ^ 1, z) - Complex(1.0)) < 1e-15);
  }
  const UnitaryBlock xx = UnitaryBlock::pauli_x(2, kDiagonal);
  CHECK(std::abs(xx.matrix()(3, 0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(xx.matrix()(2, 1) - Complex(1.0)) < 1e-15);
  CHECK(UnitaryBlock::pauli_x(3, CoinIndex{0}).is_identity());
}

TEST_CASE("UnitaryBlock rejects non-unitary matrices") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  m(0, 0) = 1.001;
  CHECK_THROWS_AS(UnitaryBlock{m}, NonUnitaryBlock);
  CHECK_NOTHROW(UnitaryBlock(Eigen::MatrixXcd::Identity(4, 4)));
}

TEST_CASE("complete_unitary: identity column gives the identity") {
  const UnitaryBlock u = complete_unitary(4, {{0, vec({1.0, 0.0, 0.0, 0.0})}});
  CHECK(u.is_identity(0.0));
}

TEST_CASE("complete_unitary: prescribed column is kept exactly") {
  const Eigen::VectorXcd col = vec({r2, 0.0, 0.0, r2});
  const UnitaryBlock u = complete_unitary(4, {{0, col}});
  CHECK(u.unitarity_error() <= 1e-12);
  CHECK(u.matrix().col(0) == col);
}

TEST_CASE("complete_unitary: random prescribed sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXcd ref = oracle::random_unitary(8, rng);
    PrescribedColumns p;
    for (int j = 0; j < 8; ++j) {
      if ((trial >> (j % 5)) & 1) p[j] = ref.col(j);
    }
    const UnitaryBlock u = complete_unitary(8, p);
    CHECK(u.unitarity_error() <= 1e-12);
    for (const auto& [j, col] : p) CHECK((u.matrix().col(j) - col).norm() <= 1e-12);
  }
}

TEST_CASE("complete_unitary reports the offending pair") {
  PrescribedColumns p{{0, vec({1.0, 0.0})}, {1, vec({r2, r2})}};
  try {
    complete_unitary(2, p);
    FAIL("expected NonOrthonormalInput");
  } catch (const NonOrthonormalInput& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 1);
    CHECK(e.inner_product() == doctest::Approx(r2));
  }
  CHECK_THROWS_AS(complete_unitary(2, {{0, vec({2.0, 0.0})}}), NonOrthonormalInput);
  CHECK_THROWS_AS(complete_unitary(2, {{0, vec({1.0, 0.0, 0.0})}}), DimensionMismatch);
}

TEST_CASE("TargetState indexing and validation") {
  const TargetState t = TargetState::basis(2, 3, {2, 1});
  CHECK(t.flat_index({2, 1}) == 5);
  CHECK(t.position_of(5) == Position{2, 1});
  CHECK(t.at({2, 1}) == Complex(1.0));
  CHECK_THROWS_AS(t.at({3, 0}), IndexOutOfRange);
  CHECK_THROWS_AS(TargetState(2, 2, {1.0, 1.0, 0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(TargetState(2, 2, {1.0}), DimensionMismatch);
}

TEST_CASE("random targets are normalized and seeded") {
  std::mt19937_64 a(5), b(5);
  const TargetState ta = random_target(3, 4, a);
  const TargetState tb = random_target(3, 4, b);
  CHECK(std::abs(ta.norm() - 1.0) <= 1e-12);
  for (std::size_t i = 0; i < ta.size(); ++i) CHECK(ta.flat(i) == tb.flat(i));
}

TEST_CASE("WalkState validation") {
  WalkState::Storage bad;
  bad[{2, 0}] = vec({1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(WalkState(2, 2, bad), OutOfGrid);
  WalkState::Storage unnormed;
  unnormed[{0, 0}] = vec({1.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(WalkState(2, 2, unnormed), InvalidInput);
}

TEST_CASE("fidelity examples") {
  const WalkState origin = WalkState::initial(2, 2);
  CHECK(fidelity(origin, TargetState::basis(2, 2, {0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(origin, bell22()) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(fidelity(origin, TargetState::basis(2, 3, {0, 0})), DimensionMismatch);
}

TEST_CASE("fidelity is symmetric and phase invariant") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const TargetState a = random_target(2, 3, rng);
    const TargetState b = random_target(2, 3, rng);
    const WalkState wa = WalkState::from_target(a);
    const WalkState wb = WalkState::from_target(b);
    CHECK(std::abs(fidelity(wa, wb) - fidelity(wb, wa)) <= 1e-14);
    CHECK(std::abs(fidelity(wa, b) - fidelity(wa, wb)) <= 1e-14);

    std::vector<Complex> rotated(a.amplitudes().begin(), a.amplitudes().end());
    for (Complex& v : rotated) v *= std::polar(1.0, 0.7 * i);
    const TargetState ar(2, 3, rotated);
    CHECK(std::abs(fidelity(wb, ar) - fidelity(wb, a)) <= 1e-14);
    CHECK(fidelity(wa, a) == doctest::Approx(1.0).epsilon(1e-14));
  }
}
