#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coop/controller.hpp"

using namespace coop;

namespace {

ControllerParams one_node_params() {
  ControllerParams p;
  p.v = 100.0;
  p.rho = Eigen::ArrayXd::Constant(1, 0.98);
  p.lambda = Eigen::ArrayXd::Constant(1, 0.5);
  p.alpha = Eigen::ArrayXd::Constant(1, 0.0);
  p.p_avg = Eigen::ArrayXd::Constant(1, 1.0);
  p.p_max = Eigen::ArrayXd::Constant(1, 10.0);
  p.beta = Eigen::ArrayXd::Constant(1, 1.0);
  return p;
}

}  // namespace

TEST_CASE("queue recursions") {
  ControllerParams p = one_node_params();
  p.rho[0] = 0.5;
  VirtualQueues q = VirtualQueues::zeros(1, 1);

  q.z[0] = 2.0;
  update_reliability_queue(q, 0, true, true, p);
  CHECK(q.z[0] == doctest::Approx(1.5));  // max(2-1,0) + 0.5

  update_reliability_queue(q, 0, false, false, p);
  CHECK(q.z[0] == doctest::Approx(1.5));  // no success, no arrival

  q.z[0] = 0.3;
  update_reliability_queue(q, 0, true, false, p);
  CHECK(q.z[0] == 0.0);  // drains but never goes negative

  q.x[0] = 3.0;
  update_power_queues(q, Eigen::ArrayXd::Constant(1, 0.4), p);
  CHECK(q.x[0] == doctest::Approx(2.4));  // max(3-1,0) + 0.4

  q.x[0] = 0.2;
  update_power_queues(q, Eigen::ArrayXd::Zero(1), p);
  CHECK(q.x[0] == 0.0);

  // Composite update touches both families at once.
  VirtualQueues q2 = VirtualQueues::zeros(1, 1);
  update_queues(q2, 0, false, true, Eigen::ArrayXd::Constant(1, 2.0), p);
  CHECK(q2.z[0] == doctest::Approx(0.5));
  CHECK(q2.x[0] == doctest::Approx(2.0));
}

TEST_CASE("drift bound constant: hand values") {
  ControllerParams p = one_node_params();
  Theorem1Constants c = theorem1_constants(p);
  // 0.5 * (1 + (0.5*0.98)^2 + 1^2 + 10^2)
  CHECK(c.b == doctest::Approx(51.12005));
  CHECK(c.utility_gap == doctest::Approx(51.12005 / 100.0));
  CHECK(c.queue_bound_scale == doctest::Approx(51.12005 + 100.0 * 10.0));

  ControllerParams empty;
  empty.v = 0.0;
  empty.rho = Eigen::ArrayXd::Zero(1);
  empty.lambda = Eigen::ArrayXd::Zero(1);
  empty.alpha = Eigen::ArrayXd::Zero(1);
  empty.p_avg = Eigen::ArrayXd(0);
  empty.p_max = Eigen::ArrayXd(0);
  empty.beta = Eigen::ArrayXd(0);
  Theorem1Constants c0 = theorem1_constants(empty);
  CHECK(c0.b == doctest::Approx(0.5));
  CHECK(std::isinf(c0.utility_gap));  // V = 0 gives no utility guarantee
}

TEST_CASE("drift bound constant grows with V and the gap shrinks") {
  ControllerParams p = one_node_params();
  Theorem1Constants lo = theorem1_constants(p);
  p.v = 1000.0;
  Theorem1Constants hi = theorem1_constants(p);
  CHECK(hi.b == lo.b);
  CHECK(hi.utility_gap < lo.utility_gap);
  CHECK(hi.queue_bound_scale > lo.queue_bound_scale);
}
