#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coop/oracle.hpp"
#include "coop/solver.hpp"
#include "test_util.hpp"

using namespace coop;
using coop::testutil::InstanceGen;
using coop::testutil::make_state;

namespace {

// Metric value of an action recomputed from first principles.
double metric_of(const SolverInput& in, const ControlAction& a) {
  double cost = in.source_weight() * a.alloc.source_power;
  for (int i = 0; i < a.alloc.relay_powers.size(); ++i)
    cost += in.relay_weight(i) * a.alloc.relay_powers[i];
  if (a.mode != Mode::Idle) cost -= in.success_reward();
  return cost;
}

void check_action_consistency(const SolverInput& in, const ModeCost& c) {
  if (!c.feasible()) return;
  const ControlAction& a = *c.action;
  CHECK(metric_of(in, a) == doctest::Approx(c.cost).epsilon(1e-9));
  if (a.mode != Mode::Idle) CHECK(outcome(a.mode, a.scheme, a.alloc, *in.state, in.budget));
  CHECK(a.alloc.source_power <= in.ps_max * (1.0 + 1e-9));
  for (int i = 0; i < a.alloc.relay_powers.size(); ++i) {
    CHECK(a.alloc.relay_powers[i] >= -1e-15);
    CHECK(a.alloc.relay_powers[i] <= in.pr_max[i] * (1.0 + 1e-9));
  }
}

}  // namespace

TEST_CASE("direct mode: exact inversion and caps") {
  auto st = make_state(1.0, {}, {});
  SolverInput in = make_solver_input(st, {1.0, 1.0}, Scheme::RegDfOrtho, 0.0, 1.0,
                                     Eigen::ArrayXd(), 2.0, 0.5, 1.0, 10.0);
  // weight = x_s + V beta = 3, reward = z + V alpha = 1.
  ModeCost c = cost_direct(in);
  REQUIRE(c.feasible());
  CHECK(c.action->alloc.source_power == doctest::Approx(1.0));
  CHECK(c.cost == doctest::Approx(3.0 * 1.0 - 1.0));

  in.ps_max = 0.5;  // required power now exceeds the cap
  CHECK_FALSE(cost_direct(in).feasible());

  auto dead = make_state(0.0, {}, {});
  SolverInput in2 = make_solver_input(dead, {1.0, 1.0}, Scheme::RegDfOrtho, 0.0, 0.0,
                                      Eigen::ArrayXd(), 1.0, 0.0, 1.0, 10.0);
  CHECK_FALSE(cost_direct(in2).feasible());
}

TEST_CASE("relay ordering and decode floor") {
  auto st = make_state(0.1, {2.0, 1.0, 3.0}, {1.0, 1.0, 1.0});
  CHECK(order_relays(st) == std::vector<int>{2, 0, 1});

  LinkBudget b{1.0, 1.0};
  CHECK(min_decode_power({}, st, b, Scheme::RegDfOrtho) == 0.0);
  // m=3 orthogonal: kappa=3, theta = (1/3)(2^3-1) = 7/3; weakest of {0} is 2.
  CHECK(min_decode_power({0}, st, b, Scheme::RegDfOrtho) == doctest::Approx(7.0 / 6.0));
  auto zero = make_state(0.1, {0.0}, {1.0});
  CHECK(std::isinf(min_decode_power({0}, zero, b, Scheme::RegDfOrtho)));
}

TEST_CASE("repetition DF: greedy hand example") {
  auto st = make_state(0.5, {2.0}, {1.0});
  SolverInput in = make_solver_input(st, {1.0, 1.0}, Scheme::RegDfOrtho, 10.0, 0.0,
                                     Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  // kappa=1 (m=1), theta=1, decode floor 0.5; the relay (efficiency 1) fills
  // the remaining 0.75 ahead of the source (efficiency 0.5).
  ModeCost sub = solve_regdf_subproblem({0}, in);
  REQUIRE(sub.feasible());
  CHECK(sub.action->alloc.source_power == doctest::Approx(0.5));
  CHECK(sub.action->alloc.relay_powers[0] == doctest::Approx(0.75));
  CHECK(sub.cost == doctest::Approx(0.5 + 0.75 - 10.0));

  // Source-only alternative costs 2 - 10; the prefix {0} wins.
  ModeCost full = cost_regdf(in);
  REQUIRE(full.feasible());
  CHECK(full.cost == doctest::Approx(-8.75));
  CHECK(full.action->decode_target == std::vector<int>{0});
  check_action_consistency(in, full);
}

TEST_CASE("multihop: half-slot single-relay hand example") {
  auto st = make_state(0.5, {2.0}, {1.0});
  SolverInput in = make_solver_input(st, {1.0, 1.0}, Scheme::RegDfOrtho, 10.0, 0.0,
                                     Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  // kappa=2: theta=1.5, floor=0.75, direct gain ignored, relay carries 1.5.
  ModeCost c = cost_multihop(in);
  REQUIRE(c.feasible());
  CHECK(c.action->alloc.source_power == doctest::Approx(0.75));
  CHECK(c.action->alloc.relay_powers[0] == doctest::Approx(1.5));
  CHECK(c.cost == doctest::Approx(0.75 + 1.5 - 10.0));
  check_action_consistency(in, c);

  auto none = make_state(0.5, {}, {});
  SolverInput in0 = make_solver_input(none, {1.0, 1.0}, Scheme::RegDfOrtho, 10.0, 0.0,
                                      Eigen::ArrayXd(), 1.0, 0.0, 1.0, 10.0);
  CHECK_FALSE(cost_multihop(in0).feasible());
}

TEST_CASE("independent-codebook DF: single-link inversion and symmetry") {
  auto st = make_state(2.0, {}, {});
  SolverInput in = make_solver_input(st, {1.0, 2.0}, Scheme::NonRegDfOrtho, 5.0, 0.0,
                                     Eigen::ArrayXd(), 1.0, 0.0, 1.0, 10.0);
  // m=0: log2(1 + 2 Ps) = 2  =>  Ps = 1.5.
  ModeCost c = cost_nonregdf(in);
  REQUIRE(c.feasible());
  CHECK(c.action->alloc.source_power == doctest::Approx(1.5).epsilon(1e-6));
  check_action_consistency(in, c);

  auto sym = make_state(0.8, {3.0, 3.0}, {1.2, 1.2});
  SolverInput in2 = make_solver_input(sym, {1.0, 1.0}, Scheme::NonRegDfOrtho, 20.0, 0.0,
                                      Eigen::ArrayXd::Zero(2), 1.0, 0.0, 1.0, 10.0);
  ModeCost c2 = solve_nonregdf_subproblem({0, 1}, in2);
  REQUIRE(c2.feasible());
  CHECK(c2.action->alloc.relay_powers[0] ==
        doctest::Approx(c2.action->alloc.relay_powers[1]).epsilon(1e-9));
  check_action_consistency(in2, c2);
}

TEST_CASE("AF: inner solver structure") {
  auto st = make_state(0.2, {1.5, 0.7}, {0.9, 1.3});
  SolverInput in = make_solver_input(st, {1.0, 1.0}, Scheme::AfOrtho, 30.0, 0.0,
                                     Eigen::ArrayXd::Zero(2), 1.0, 0.0, 1.0, 10.0);
  ModeCost c = solve_af_inner(2.0, in);
  REQUIRE(c.feasible());
  check_action_consistency(in, c);

  // Constraint met with (near) equality unless every relay is clamped.
  const double kappa = 2.0, w = 1.0;
  const double noise = w / kappa;
  const double theta = (w / kappa) * (std::exp2(2.0) - 1.0);
  const double ps = 2.0;
  double theta_p = ps * st.gain_sd - theta;
  double h = 0.0;
  bool any_interior = false;
  for (int i = 0; i < 2; ++i) {
    theta_p += ps * st.gain_sr[i];
    const double pi = c.action->alloc.relay_powers[i];
    const double num = ps * ps * st.gain_sr[i] * st.gain_sr[i] + ps * st.gain_sr[i] * noise;
    h += num / (ps * st.gain_sr[i] + pi * st.gain_rd[i] + noise);
    if (pi > 1e-9 && pi < in.pr_max[i] - 1e-9) any_interior = true;
  }
  if (any_interior) CHECK(std::abs(h - theta_p) <= 1e-6 * std::max(1.0, std::abs(theta_p)));
  CHECK(h <= theta_p + 1e-9);

  // Interior relays share one multiplier (stationarity of the KKT system).
  std::vector<double> nus;
  for (int i = 0; i < 2; ++i) {
    const double pi = c.action->alloc.relay_powers[i];
    if (pi <= 1e-9 || pi >= in.pr_max[i] - 1e-9) continue;
    const double num = ps * ps * st.gain_sr[i] * st.gain_sr[i] + ps * st.gain_sr[i] * noise;
    const double denom = ps * st.gain_sr[i] + pi * st.gain_rd[i] + noise;
    nus.push_back(in.relay_weight(i) * denom * denom / (num * st.gain_rd[i]));
  }
  for (std::size_t i = 1; i < nus.size(); ++i)
    CHECK(nus[i] == doctest::Approx(nus[0]).epsilon(1e-6));
}

TEST_CASE("AF: direct-sufficient and infeasible source powers") {
  auto st = make_state(5.0, {1.0}, {1.0});
  SolverInput in = make_solver_input(st, {1.0, 1.0}, Scheme::AfOrtho, 10.0, 0.0,
                                     Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  // kappa=1 (m=1), theta=1; Ps=1 gives Ps*gsd=5 >= theta: no relay power.
  ModeCost c = solve_af_inner(1.0, in);
  REQUIRE(c.feasible());
  CHECK(c.action->alloc.relay_powers[0] == 0.0);
  CHECK(c.cost == doctest::Approx(1.0 - 10.0));

  CHECK_FALSE(solve_af_inner(0.0, in).feasible());
  auto weak = make_state(0.001, {0.001}, {0.001});
  SolverInput in2 = make_solver_input(weak, {1.0, 1.0}, Scheme::AfOrtho, 10.0, 0.0,
                                      Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  CHECK_FALSE(solve_af_inner(0.5, in2).feasible());
}

TEST_CASE("best action: masks and tie-breaking toward simpler modes") {
  auto dead = make_state(0.0, {0.0}, {0.0});
  SolverInput in = make_solver_input(dead, {1.0, 1.0}, Scheme::RegDfOrtho, 50.0, 0.0,
                                     Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  Decision d = best_action(in);
  REQUIRE(d.best.feasible());
  CHECK(d.best.action->mode == Mode::Idle);
  CHECK(d.best.cost == 0.0);

  // Zero reward: spending power can only hurt, idle wins.
  auto st = make_state(1.0, {1.0}, {1.0});
  SolverInput in2 = make_solver_input(st, {1.0, 1.0}, Scheme::RegDfOrtho, 0.0, 0.0,
                                      Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  Decision d2 = best_action(in2);
  CHECK(d2.best.action->mode == Mode::Idle);

  // Restricted masks never pick an excluded mode.
  SolverInput in3 = make_solver_input(st, {1.0, 1.0}, Scheme::RegDfOrtho, 50.0, 0.0,
                                      Eigen::ArrayXd::Zero(1), 1.0, 0.0, 1.0, 10.0);
  Decision d3 = best_action(in3, kAllowIdle | kAllowDirect);
  REQUIRE(d3.best.feasible());
  CHECK((d3.best.action->mode == Mode::Idle || d3.best.action->mode == Mode::Direct));
  CHECK(std::isinf(d3.mode_costs[2]));
  CHECK(std::isinf(d3.mode_costs[3]));
}

TEST_CASE("best action never loses to a random feasible action") {
  InstanceGen gen(2024);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int rep = 0; rep < 150; ++rep) {
    const int m = rep % 4;
    auto st = gen.state(m);
    for (Scheme scheme : {Scheme::RegDfOrtho, Scheme::NonRegDfOrtho, Scheme::AfOrtho,
                          Scheme::DfDstc, Scheme::AfDstc}) {
      SolverInput in = gen.input(st, scheme);
      Decision d = best_action(in);
      REQUIRE(d.best.feasible());
      CHECK(d.best.cost <= 1e-12);  // idle is always available
      check_action_consistency(in, d.best);

      for (int s = 0; s < 20; ++s) {
        ControlAction a;
        a.scheme = scheme;
        a.alloc = PowerAllocation::zeros(m);
        a.alloc.source_power = u(gen.rng);
        for (int i = 0; i < m; ++i) a.alloc.relay_powers[i] = u(gen.rng);
        a.mode = m > 0 && s % 3 == 0 ? Mode::Cooperative : (s % 3 == 1 && m > 0 ? Mode::Multihop
                                                                                : Mode::Direct);
        if (a.mode == Mode::Direct) a.alloc.relay_powers.setZero();
        if (!outcome(a.mode, a.scheme, a.alloc, st, in.budget)) continue;
        CHECK(d.best.cost <= metric_of(in, a) + 1e-9);
      }
    }
  }
}

TEST_CASE("solver matches the exhaustive grid oracle") {
  InstanceGen gen(77);
  oracle::GridSpec spec;
  spec.points_per_axis = 41;
  int compared = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const int m = rep % 3;
    auto st = gen.state(m);
    for (Scheme scheme : {Scheme::RegDfOrtho, Scheme::NonRegDfOrtho, Scheme::AfOrtho}) {
      SolverInput in = gen.input(st, scheme);
      Decision d = best_action(in);
      ModeCost ref = oracle::grid_best_action(in, spec);
      REQUIRE(ref.feasible());
      const double tol = std::max(1e-3, 0.01 * std::abs(ref.cost));
      CHECK(std::abs(d.best.cost - ref.cost) <= tol);
      ++compared;
    }
  }
  CHECK(compared == 120);
}

TEST_CASE("raising a relay's queue never raises its allocated power") {
  InstanceGen gen(31);
  for (int rep = 0; rep < 60; ++rep) {
    auto st = gen.state(2);
    SolverInput in = gen.input(st, Scheme::RegDfOrtho);
    ModeCost base = cost_regdf(in);
    SolverInput heavier = in;
    heavier.x_r[0] += 4.0;
    ModeCost loaded = cost_regdf(heavier);
    if (!base.feasible() || !loaded.feasible()) continue;
    CHECK(loaded.action->alloc.relay_powers[0] <=
          base.action->alloc.relay_powers[0] + 1e-9);
    CHECK(loaded.cost >= base.cost - 1e-9);
  }
}
