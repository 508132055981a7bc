#pragma once

#include <Eigen/Dense>

#include "coop/channel.hpp"
#include "coop/phy.hpp"

namespace coop {
namespace dp {

// Finite model of the first-phase outcome: which relays decoded, and the
// quantized mutual information already accumulated at the destination.
// Outcome index = subset * bins + bin; bin j covers [edges[j], edges[j+1])
// with the last bin open above, and the lower edge as representative.
struct OutcomeSpace {
  int relay_count = 0;
  int bins = 1;
  std::vector<double> mi_bin_edges;  // ascending, edges[0] == 0

  long size() const { return (1L << relay_count) * bins; }
  int subset_of(long outcome) const { return static_cast<int>(outcome / bins); }
  int bin_of(long outcome) const { return static_cast<int>(outcome % bins); }
};

// Link statistics for the unknown-channels model: exponential means of the
// gain-squared values.
struct FadingStats {
  Eigen::ArrayXd mean_sr;  // per relay
  Eigen::ArrayXd mean_rd;  // per relay
  double mean_sd = 1.0;
};

// Queue values and weights of the slot being solved.
struct DpWeights {
  double source_weight = 1.0;        // X_s + V beta_s
  Eigen::ArrayXd relay_weights;      // X_i + V beta_i
  Eigen::ArrayXd relay_p_max;
  double reward = 0.0;               // Z_s + V alpha_s
};

OutcomeSpace enumerate_outcomes(int relay_count, int bins, const LinkBudget& budget);

// Probability of each outcome when the source transmits at source_power.
// Relays decode independently through the exponential tail at the decode
// threshold; the destination bin follows the exponential law of |h_sd|^2.
Eigen::ArrayXd first_stage_dist(double source_power, const FadingStats& stats,
                                const OutcomeSpace& space, const LinkBudget& budget,
                                Scheme scheme);

// Tail probability P[sum a_i E_i >= x] for independent unit exponentials;
// closed form for distinct coefficients, with tiny tie-breaking jitter.
double weighted_exponential_tail(const Eigen::ArrayXd& coeffs, double x);

// Probability the destination decodes given the outcome, the relay powers
// (indexed over the full relay list; only decoded relays count), and the
// same-codebook combining rule.
double success_probability(const OutcomeSpace& space, long outcome, double source_power,
                           const Eigen::ArrayXd& relay_powers, const FadingStats& stats,
                           const LinkBudget& budget, Scheme scheme);

struct SecondStageResult {
  double value = 0.0;
  Eigen::ArrayXd relay_powers;
};

// Optimal expected second-stage cost for one outcome: weighted relay power
// minus reward times success probability, minimized over the power box by
// tensor-grid search (points_per_relay per decoded relay).
SecondStageResult second_stage_value(const OutcomeSpace& space, long outcome, double source_power,
                                     const DpWeights& weights, const FadingStats& stats,
                                     const LinkBudget& budget, Scheme scheme,
                                     int points_per_relay = 50);

// A fully tabulated first stage for a fixed source power: outcome
// probabilities and per-outcome optimal second-stage values.
struct TwoStageProblem {
  double source_term = 0.0;  // (X_s + V beta_s) P_s
  Eigen::ArrayXd f;          // outcome probabilities
  Eigen::ArrayXd j1;         // optimal second-stage value per outcome

  double exact_value() const { return source_term + (f * j1).sum(); }
  double variance() const {
    const double mu = (f * j1).sum();
    return (f * j1.square()).sum() - mu * mu;
  }
};

TwoStageProblem tabulate(double source_power, const OutcomeSpace& space, const DpWeights& weights,
                         const FadingStats& stats, const LinkBudget& budget, Scheme scheme,
                         int points_per_relay = 50);

// Exact first-stage cost-to-go at one source power.
double exact_cost_to_go(const TwoStageProblem& problem);

// Monte Carlo estimate: sample n outcomes from f and average their
// second-stage values around the deterministic source term.
double mc_estimate(const TwoStageProblem& problem, long n, Rng& rng);

struct DpSolution {
  double best_value = 0.0;
  double best_source_power = 0.0;
  Eigen::ArrayXd grid;    // source powers examined
  Eigen::ArrayXd values;  // exact cost-to-go per grid point
};

// Exact dynamic program over a uniform source-power grid.
DpSolution exact_dp(double ps_max, int ps_points, const OutcomeSpace& space,
                    const DpWeights& weights, const FadingStats& stats, const LinkBudget& budget,
                    Scheme scheme, int points_per_relay = 50);

// Chebyshev tail bound sigma^2 / (n eps^2), capped at 1.
double chebyshev_bound(double variance, long n, double eps);

}  // namespace dp
}  // namespace coop
