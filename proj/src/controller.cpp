#include "coop/controller.hpp"

namespace coop {

void update_reliability_queue(VirtualQueues& q, int source, bool success, bool arrival,
                              const ControllerParams& params) {
  const double phi = success ? 1.0 : 0.0;
  const double a = arrival ? 1.0 : 0.0;
  q.z[source] = std::max(q.z[source] - phi, 0.0) + params.rho[source] * a;
}

void update_power_queues(VirtualQueues& q, const Eigen::ArrayXd& node_powers,
                         const ControllerParams& params) {
  q.x = (q.x - params.p_avg).max(0.0) + node_powers;
}

void update_queues(VirtualQueues& q, int source, bool success, bool arrival,
                   const Eigen::ArrayXd& node_powers, const ControllerParams& params) {
  update_reliability_queue(q, source, success, arrival, params);
  update_power_queues(q, node_powers, params);
}

Theorem1Constants theorem1_constants(const ControllerParams& params, int source) {
  Theorem1Constants c;
  c.v = params.v;
  const double lr = params.lambda[source] * params.rho[source];
  c.b = 0.5 * (1.0 + lr * lr + (params.p_avg.square() + params.p_max.square()).sum());
  c.utility_gap = params.v > 0.0 ? c.b / params.v : kInf;
  c.queue_bound_scale =
      c.b + params.v * (params.alpha[source] + (params.beta * params.p_max).sum());
  return c;
}

}  // namespace coop
