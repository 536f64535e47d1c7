#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "geophase/discrete.hpp"
#include "geophase/rng.hpp"
#include "geophase/stats.hpp"

using namespace geophase;

namespace {

MarketParams frictionless(Scalar r) {
  MarketParams p;
  p.impact = ImpactFunction::linear(r);
  p.q = p.c = p.sigma = 0.0;
  p.s0 = 100.0;
  return p;
}

// Independent cash oracle: the cash delta telescopes to the negated sum of
// execution-price-times-quantity minus fees, read off the pre-trade quotes.
Scalar telescoped_cash_delta(const Trajectory& traj, const MarketParams& p) {
  Scalar acc = 0.0;
  for (Eigen::Index i = 0; i < traj.u.size(); ++i) {
    if (traj.u[i] == 0.0) continue;
    acc -= execution_price(traj.s[i], traj.u[i], p.q) * traj.u[i];
    acc -= p.c;
  }
  return acc;
}

}  // namespace

TEST_CASE("step: hand-evaluated buy") {
  const auto p = frictionless(0.1);
  const SystemState next = step({0.0, 100.0, 0.0}, 1.0, 0.0, p);
  CHECK(next.y == 1.0);
  CHECK(next.s == doctest::Approx(100.1).epsilon(1e-15));
  CHECK(next.z == -100.0);
}

TEST_CASE("step: null trade is the identity apart from drift") {
  const auto p = frictionless(0.1);
  const SystemState x{3.0, 42.5, -7.0};
  const SystemState same = step(x, 0.0, 0.0, p);
  CHECK(same.y == x.y);
  CHECK(same.s == x.s);
  CHECK(same.z == x.z);
  const SystemState drifted = step(x, 0.0, 0.25, p);
  CHECK(drifted.s == 42.75);
  CHECK(drifted.z == x.z);  // no fee without a trade
}

TEST_CASE("step: completing the cycle banks the impact") {
  const auto p = frictionless(0.1);
  const SystemState next = step({1.0, 100.1, -100.0}, -1.0, 0.0, p);
  CHECK(next.y == 0.0);
  CHECK(next.s == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(next.z == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("make_cycle_input: single buy-then-sell pattern") {
  const std::vector<CycleSpec> cycles = {{20, 80, 1.0, CycleDirection::BuyThenSell}};
  const Sequence u = make_cycle_input(cycles, 100);
  CHECK(u.size() == 100);
  CHECK(u[20] == 1.0);
  CHECK(u[80] == -1.0);
  CHECK(u.abs().sum() == 2.0);  // zero everywhere else
}

TEST_CASE("make_cycle_input: empty list gives all zeros") {
  const Sequence u = make_cycle_input(std::vector<CycleSpec>{}, 50);
  CHECK(u.size() == 50);
  CHECK((u == 0.0).all());
}

TEST_CASE("make_cycle_input: sell-then-buy flips the signs") {
  const std::vector<CycleSpec> cycles = {{5, 7, 2.0, CycleDirection::SellThenBuy}};
  const Sequence u = make_cycle_input(cycles, 10);
  CHECK(u[5] == -2.0);
  CHECK(u[7] == 2.0);
}

TEST_CASE("make_cycle_input rejects overlap and out-of-range cycles") {
  const std::vector<CycleSpec> overlapping = {{5, 9, 1.0, CycleDirection::BuyThenSell},
                                              {8, 12, 1.0, CycleDirection::BuyThenSell}};
  CHECK_THROWS_AS(make_cycle_input(overlapping, 20), std::invalid_argument);
  const std::vector<CycleSpec> shared_tick = {{5, 9, 1.0, CycleDirection::BuyThenSell},
                                              {9, 12, 1.0, CycleDirection::BuyThenSell}};
  CHECK_THROWS_AS(make_cycle_input(shared_tick, 20), std::invalid_argument);
  const std::vector<CycleSpec> out_of_range = {{5, 25, 1.0, CycleDirection::BuyThenSell}};
  CHECK_THROWS_AS(make_cycle_input(out_of_range, 20), std::invalid_argument);
  CHECK_THROWS_AS((CycleSpec{10, 5, 1.0, CycleDirection::BuyThenSell}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((CycleSpec{5, 10, 0.0, CycleDirection::BuyThenSell}.validate()),
                  std::invalid_argument);
}

TEST_CASE("simulate: single cycle endpoint matches the closed form") {
  const auto p = frictionless(0.1);
  const std::vector<CycleSpec> cycles = {{20, 80, 1.0, CycleDirection::BuyThenSell}};
  const Sequence u = make_cycle_input(cycles, 100);
  const Trajectory traj = simulate({0.0, p.s0, 0.0}, u, Sequence::Zero(100), p);
  traj.validate();
  const SystemState end = traj.final_state();
  CHECK(end.y == 0.0);
  CHECK(end.s == p.s0);
  CHECK(end.z == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(phase(traj) - closed_form_phase(1.0, p)) <= 1e-12);
}

TEST_CASE("simulate: all-zero inputs give a constant trajectory") {
  const auto p = frictionless(0.1);
  const Trajectory traj = simulate({2.0, 50.0, -1.0}, Sequence::Zero(30), Sequence::Zero(30), p);
  CHECK((traj.y == 2.0).all());
  CHECK((traj.s == 50.0).all());
  CHECK((traj.z == -1.0).all());
  CHECK(phase(traj) == 0.0);
}

TEST_CASE("simulate: sell-then-buy cycle earns the same phase") {
  const auto p = frictionless(0.1);
  const std::vector<CycleSpec> cycles = {{20, 80, 1.0, CycleDirection::SellThenBuy}};
  const Sequence u = make_cycle_input(cycles, 100);
  const Trajectory traj = simulate({0.0, p.s0, 0.0}, u, Sequence::Zero(100), p);
  CHECK(std::abs(phase(traj) - 0.1) <= 1e-12);
  CHECK(traj.final_state().s == p.s0);
}

TEST_CASE("simulate rejects mismatched input and drift lengths") {
  const auto p = frictionless(0.1);
  CHECK_THROWS_AS(simulate({0.0, 100.0, 0.0}, Sequence::Zero(10), Sequence::Zero(9), p),
                  std::invalid_argument);
}

TEST_CASE("simulate: replay consistency against step()") {
  const auto p = frictionless(0.2);
  Rng rng(777);
  Sequence u(64), w(64);
  for (int i = 0; i < 64; ++i) {
    u[i] = rng.uniform01() < 0.3 ? std::round(10.0 * (rng.uniform01() - 0.5)) : 0.0;
    w[i] = rng.normal(0.05);
  }
  const Trajectory traj = simulate({0.0, 10.0, 0.0}, u, w, p);
  for (Eigen::Index i = 0; i < traj.u.size(); ++i) {
    const SystemState next = step(traj.state(i), traj.u[i], traj.w[i], p);
    CHECK(next.y == traj.y[i + 1]);
    CHECK(next.s == traj.s[i + 1]);
    CHECK(next.z == traj.z[i + 1]);
  }
}

TEST_CASE("simulate: telescoping cash identity holds exactly from z0 = 0") {
  MarketParams p = frictionless(0.15);
  p.q = 0.04;
  p.c = 0.002;
  Rng rng(31);
  Sequence u(128), w(128);
  for (int i = 0; i < 128; ++i) {
    u[i] = rng.uniform01() < 0.25 ? std::round(6.0 * (rng.uniform01() - 0.5)) : 0.0;
    w[i] = rng.normal(0.02);
  }
  const Trajectory traj = simulate({0.0, 100.0, 0.0}, u, w, p);
  CHECK(phase(traj) == telescoped_cash_delta(traj, p));  // bitwise: same fold order
}

TEST_CASE("closed_form_phase values") {
  CHECK(closed_form_phase(1.0, frictionless(0.1)) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(closed_form_phase(0.0, frictionless(0.1)) == 0.0);
  MarketParams p = frictionless(0.1);
  p.q = 0.05;
  p.c = 0.01;
  CHECK(closed_form_phase(2.0, p) == doctest::Approx(0.28).epsilon(1e-14));
  CHECK_THROWS_AS(closed_form_phase(-1.0, p), std::invalid_argument);
}

TEST_CASE("phase equals closed form for both directions and all grid points") {
  for (const Scalar r : {0.05, 0.1, 0.3}) {
    for (const Scalar k : {1.0, 2.0, 4.0}) {
      for (const auto dir : {CycleDirection::BuyThenSell, CycleDirection::SellThenBuy}) {
        const auto p = frictionless(r);
        const std::vector<CycleSpec> cycles = {{10, 40, k, dir}};
        const Trajectory traj =
            simulate({0.0, p.s0, 0.0}, make_cycle_input(cycles, 64), Sequence::Zero(64), p);
        CHECK(std::abs(phase(traj) - closed_form_phase(k, p)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("two sequential identical cycles double the phase") {
  const auto p = frictionless(0.1);
  const std::vector<CycleSpec> cycles = {{5, 15, 1.0, CycleDirection::BuyThenSell},
                                         {25, 35, 1.0, CycleDirection::BuyThenSell}};
  const Trajectory traj =
      simulate({0.0, p.s0, 0.0}, make_cycle_input(cycles, 50), Sequence::Zero(50), p);
  CHECK(std::abs(phase(traj) - 2.0 * closed_form_phase(1.0, p)) <= 1e-12);
}

TEST_CASE("phase is independent of cycle placement and width") {
  const auto p = frictionless(0.1);
  const Scalar reference = closed_form_phase(2.0, p);
  for (std::int64_t t_b : {0, 5, 33, 70}) {
    for (std::int64_t width : {1, 7, 29}) {
      const std::vector<CycleSpec> cycles = {{t_b, t_b + width, 2.0, CycleDirection::BuyThenSell}};
      const Trajectory traj =
          simulate({0.0, p.s0, 0.0}, make_cycle_input(cycles, 128), Sequence::Zero(128), p);
      CHECK(std::abs(phase(traj) - reference) <= 1e-12);
    }
  }
}

TEST_CASE("phase scales with the square of the cycle size") {
  const auto p = frictionless(0.1);
  std::vector<Scalar> ratios;
  for (const Scalar k : {1.0, 2.0, 4.0, 8.0}) {
    const std::vector<CycleSpec> cycles = {{10, 50, k, CycleDirection::BuyThenSell}};
    const Trajectory traj =
        simulate({0.0, p.s0, 0.0}, make_cycle_input(cycles, 100), Sequence::Zero(100), p);
    ratios.push_back(phase(traj) / (k * k));
  }
  for (const Scalar ratio : ratios) CHECK(ratio == doctest::Approx(ratios.front()).epsilon(1e-12));
}

TEST_CASE("cycle neutrality: inventory and quote return exactly, for any odd impact") {
  const std::vector<ImpactFunction> impacts = {
      ImpactFunction::linear(0.1), ImpactFunction::signed_power(0.2, 0.5),
      ImpactFunction::custom([](Scalar u) { return 0.01 * u * u * u; })};
  for (const auto& impact : impacts) {
    MarketParams p;
    p.impact = impact;
    p.s0 = 50.0;
    const std::vector<CycleSpec> cycles = {{3, 11, 2.0, CycleDirection::BuyThenSell},
                                           {20, 27, 5.0, CycleDirection::SellThenBuy},
                                           {30, 59, 1.5, CycleDirection::BuyThenSell}};
    const Trajectory traj =
        simulate({0.0, p.s0, 0.0}, make_cycle_input(cycles, 64), Sequence::Zero(64), p);
    CHECK(traj.final_state().y == 0.0);
    CHECK(traj.final_state().s == p.s0);  // impacts cancel exactly by oddness
  }
}

TEST_CASE("zero-area shape cycle still produces a positive phase") {
  const auto p = frictionless(0.1);
  const std::vector<CycleSpec> cycles = {{20, 80, 2.0, CycleDirection::BuyThenSell}};
  const Trajectory traj =
      simulate({0.0, p.s0, 0.0}, make_cycle_input(cycles, 100), Sequence::Zero(100), p);
  CHECK(shape_area(traj) == 0.0);  // path retraces a segment
  CHECK(phase(traj) > 0.0);
}

TEST_CASE("shape_area: constant trajectory has zero area") {
  const auto p = frictionless(0.1);
  const Trajectory traj = simulate({0.0, 10.0, 0.0}, Sequence::Zero(5), Sequence::Zero(5), p);
  CHECK(shape_area(traj) == 0.0);
}

TEST_CASE("shape_area: synthetic unit square") {
  // Built directly, not via dynamics: counterclockwise unit square in (y, s).
  Trajectory traj;
  traj.u = Sequence::Zero(4);
  traj.w = Sequence::Zero(4);
  traj.y.resize(5);
  traj.s.resize(5);
  traj.z = Sequence::Zero(5);
  traj.y << 0.0, 1.0, 1.0, 0.0, 0.0;
  traj.s << 0.0, 0.0, 1.0, 1.0, 0.0;
  CHECK(shape_area(traj) == 1.0);
  traj.y.reverseInPlace();  // clockwise now
  traj.s.reverseInPlace();
  CHECK(shape_area(traj) == -1.0);
}

TEST_CASE("shape_area rejects open paths and reports the gap") {
  Trajectory traj;
  traj.u = Sequence::Zero(1);
  traj.w = Sequence::Zero(1);
  traj.y.resize(2);
  traj.s.resize(2);
  traj.z = Sequence::Zero(2);
  traj.y << 0.0, 0.5;
  traj.s << 0.0, 0.0;
  CHECK_THROWS_WITH_AS(shape_area(traj), doctest::Contains("dy=0.5"), std::invalid_argument);
}

TEST_CASE("negative quote ticks are counted") {
  const auto p = frictionless(0.1);
  Sequence w = Sequence::Zero(4);
  w[1] = -200.0;  // sledgehammer drift
  const Trajectory traj = simulate({0.0, 100.0, 0.0}, Sequence::Zero(4), w, p);
  CHECK(negative_quote_ticks(traj) == 3);
}

TEST_CASE("trajectory CSV format is stable") {
  const auto p = frictionless(0.1);
  const std::vector<CycleSpec> cycles = {{0, 1, 1.0, CycleDirection::BuyThenSell}};
  const Trajectory traj =
      simulate({0.0, 1.0, 0.0}, make_cycle_input(cycles, 2), Sequence::Zero(2), p);
  std::ostringstream os;
  write_csv(os, traj);
  CHECK(os.str() ==
        "tick,u,w,y,s,z\n"
        "0,1,0,0,1,0\n"
        "1,-1,0,1,1.1,-1\n"
        "2,0,0,0,1,0.10000000000000009\n");
}
