#pragma once

#include <functional>

#include "coop/solver.hpp"

namespace coop {
namespace oracle {

// Exhaustive-search settings. points_per_axis applies to every free power
// variable; after the full pass the search zooms around the incumbent,
// recentering while it improves and shrinking refine_rounds times on stalls.
struct GridSpec {
  int points_per_axis = 101;
  int refine_rounds = 3;
  int refine_points = 21;
  long max_points = 10'000'000;
};

// Brute-force minimum of the per-slot metric over all modes and gridded
// power combinations, using the success indicator for feasibility. Shares
// only the mutual-information formulas with the production solvers.
ModeCost grid_best_action(const SolverInput& in, const GridSpec& spec,
                          unsigned mode_mask = kAllowAll);

// Brute-force second-stage cost-to-go minimization: weighted relay power
// minus reward times the supplied success probability.
struct SecondStageObjective {
  Eigen::ArrayXd weights;                                 // per decoded relay
  Eigen::ArrayXd p_max;                                   // per decoded relay
  double reward = 0.0;                                    // Z + V alpha
  std::function<double(const Eigen::ArrayXd&)> success;   // probability of delivery
};

double grid_second_stage(const SecondStageObjective& obj, const GridSpec& spec,
                         Eigen::ArrayXd* best_powers = nullptr);

}  // namespace oracle
}  // namespace coop
