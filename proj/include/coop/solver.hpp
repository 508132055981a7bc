#pragma once

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "coop/phy.hpp"

namespace coop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One candidate decision: transmission mode plus its power allocation.
// decode_target lists the relay indices (into the channel state) a DF
// scheme relies on for the second phase.
struct ControlAction {
  Mode mode = Mode::Idle;
  Scheme scheme = Scheme::RegDfOrtho;
  PowerAllocation alloc;
  std::vector<int> decode_target;
};

// Evaluated drift-plus-penalty value of a candidate action. Infeasible
// modes carry +infinity and no action.
struct ModeCost {
  double cost = kInf;
  std::optional<ControlAction> action;

  bool feasible() const { return action.has_value(); }
};

// Everything the per-slot solvers need: queue values, objective weights,
// the control parameter V, the channel observation, and power limits.
struct SolverInput {
  double z = 0.0;           // reliability queue of the transmitting source
  double x_s = 0.0;         // source power queue
  Eigen::ArrayXd x_r;       // relay power queues, parallel to state->relays
  double alpha = 0.0;
  double beta_s = 1.0;
  Eigen::ArrayXd beta_r;
  double v = 0.0;
  const ChannelState* state = nullptr;
  LinkBudget budget;
  double ps_max = 10.0;
  Eigen::ArrayXd pr_max;    // parallel to state->relays
  Scheme scheme = Scheme::RegDfOrtho;
  int af_grid_points = 100;

  double source_weight() const { return x_s + v * beta_s; }
  double relay_weight(int i) const { return x_r[i] + v * beta_r[i]; }
  double success_reward() const { return z + v * alpha; }
};

// Builds a SolverInput with uniform weights/limits for a given state.
SolverInput make_solver_input(const ChannelState& state, const LinkBudget& budget, Scheme scheme,
                              double z, double x_s, const Eigen::ArrayXd& x_r, double v,
                              double alpha, double beta, double p_max);

ModeCost cost_idle();
ModeCost cost_direct(const SolverInput& in);

// Relays sorted by decreasing source-relay gain, ties by ascending index.
// The k-th candidate decode set is the first k entries of this order.
std::vector<int> order_relays(const ChannelState& state);

// Minimum source power making every relay of the (prefix) set decode the
// first phase; 0 for the empty set, +infinity if any member gain is 0.
double min_decode_power(const std::vector<int>& prefix, const ChannelState& state,
                        const LinkBudget& budget, Scheme scheme);

// Greedy solution of the linear subproblem for a fixed decode set:
// minimize weighted power subject to P_s g_sd + sum P_i g_id >= theta with
// the decode floor on P_s. kappa overrides the scheme scaling (used by the
// multihop reduction); pass <= 0 to derive it from the scheme.
ModeCost solve_regdf_subproblem(const std::vector<int>& prefix, const SolverInput& in,
                                double kappa = 0.0, bool zero_sd = false);

ModeCost cost_regdf(const SolverInput& in);

// Water-filling solution for the sum-of-logs constraint of the independent
// codebook scheme; the water level is found by bracketed bisection.
ModeCost solve_nonregdf_subproblem(const std::vector<int>& prefix, const SolverInput& in);

ModeCost cost_nonregdf(const SolverInput& in);

// Optimal relay powers for a fixed source power under amplify-and-forward;
// closed form in the dual variable, bisected to meet the transformed
// constraint with equality.
ModeCost solve_af_inner(double source_power, const SolverInput& in);

// Minimum of solve_af_inner over a uniform source-power grid.
ModeCost cost_af(const SolverInput& in);

ModeCost cost_multihop(const SolverInput& in);

// Cooperative-mode cost under the configured scheme.
ModeCost cost_cooperative(const SolverInput& in);

struct Decision {
  ModeCost best;
  // Per-mode costs in order idle, direct, multihop, cooperative.
  std::array<double, 4> mode_costs{kInf, kInf, kInf, kInf};
};

// Mode mask bits for restricted strategies.
enum ModeMask : unsigned {
  kAllowIdle = 1u << 0,
  kAllowDirect = 1u << 1,
  kAllowMultihop = 1u << 2,
  kAllowCooperative = 1u << 3,
  kAllowAll = kAllowIdle | kAllowDirect | kAllowMultihop | kAllowCooperative,
};

// Least-cost action over the allowed modes. Ties break in the order
// idle < direct < multihop < cooperative.
Decision best_action(const SolverInput& in, unsigned mode_mask = kAllowAll);

}  // namespace coop
