#pragma once

#include <Eigen/Dense>

#include "coop/solver.hpp"

namespace coop {

// Software counters whose stability enforces the time-average reliability
// and power constraints. All values are nonnegative and start at zero.
struct VirtualQueues {
  Eigen::ArrayXd z;  // reliability queue per source
  Eigen::ArrayXd x;  // power queue per node (sources first, then relays)

  static VirtualQueues zeros(int sources, int nodes) {
    return {Eigen::ArrayXd::Zero(sources), Eigen::ArrayXd::Zero(nodes)};
  }
};

struct ControllerParams {
  double v = 0.0;
  Eigen::ArrayXd rho;     // per source
  Eigen::ArrayXd lambda;  // per source
  Eigen::ArrayXd alpha;   // per source
  Eigen::ArrayXd p_avg;   // per node
  Eigen::ArrayXd p_max;   // per node
  Eigen::ArrayXd beta;    // per node
};

// Constants of the performance bounds reported alongside measured averages.
// The slackness epsilon is not computable a priori, so the queue bound is
// reported per unit epsilon.
struct Theorem1Constants {
  double b = 0.0;
  double v = 0.0;
  double utility_gap = 0.0;        // B / V
  double queue_bound_scale = 0.0;  // B + V (alpha_s + sum beta_i P_i^max)
};

// End-of-slot recursion for one source: the reliability queue drains on
// success and fills by rho per arrival; every node's power queue drains by
// its average budget and fills by the power spent this slot.
void update_queues(VirtualQueues& q, int source, bool success, bool arrival,
                   const Eigen::ArrayXd& node_powers, const ControllerParams& params);

void update_reliability_queue(VirtualQueues& q, int source, bool success, bool arrival,
                              const ControllerParams& params);
void update_power_queues(VirtualQueues& q, const Eigen::ArrayXd& node_powers,
                         const ControllerParams& params);

Theorem1Constants theorem1_constants(const ControllerParams& params, int source = 0);

}  // namespace coop
