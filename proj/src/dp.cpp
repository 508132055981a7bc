#include "coop/dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coop {
namespace dp {

namespace {
constexpr long kMaxOutcomes = 1'000'000;
}

OutcomeSpace enumerate_outcomes(int relay_count, int bins, const LinkBudget& budget) {
  if (relay_count < 0 || relay_count > 10) throw std::invalid_argument("relay count out of range");
  if (bins < 1) throw std::invalid_argument("bins must be positive");
  OutcomeSpace space;
  space.relay_count = relay_count;
  space.bins = bins;
  if (space.size() > kMaxOutcomes) throw std::invalid_argument("outcome space too large");
  space.mi_bin_edges.resize(bins);
  for (int j = 0; j < bins; ++j) space.mi_bin_edges[j] = budget.rate * j / bins;
  return space;
}

Eigen::ArrayXd first_stage_dist(double source_power, const FadingStats& stats,
                                const OutcomeSpace& space, const LinkBudget& budget,
                                Scheme scheme) {
  const int m = space.relay_count;
  const double kappa = slot_scaling(scheme, m);
  const double w = budget.bandwidth;

  Eigen::ArrayXd p_decode = Eigen::ArrayXd::Zero(m);
  if (source_power > 0.0) {
    const double tau = decode_threshold(source_power, budget, kappa);
    for (int i = 0; i < m; ++i) p_decode[i] = std::exp(-tau / stats.mean_sr[i]);
  }

  // Destination-MI bin masses from the exponential gain law.
  Eigen::ArrayXd bin_mass = Eigen::ArrayXd::Zero(space.bins);
  if (source_power <= 0.0) {
    bin_mass[0] = 1.0;
  } else {
    auto tail_at_mi = [&](double mi) {
      const double g = (w / (kappa * source_power)) * (std::exp2(mi * kappa / w) - 1.0);
      return std::exp(-g / stats.mean_sd);
    };
    for (int j = 0; j < space.bins; ++j) {
      const double upper =
          j + 1 < space.bins ? tail_at_mi(space.mi_bin_edges[j + 1]) : 0.0;
      bin_mass[j] = tail_at_mi(space.mi_bin_edges[j]) - upper;
    }
  }

  Eigen::ArrayXd f(space.size());
  for (long o = 0; o < space.size(); ++o) {
    const int subset = space.subset_of(o);
    double p = bin_mass[space.bin_of(o)];
    for (int i = 0; i < m; ++i)
      p *= (subset >> i) & 1 ? p_decode[i] : 1.0 - p_decode[i];
    f[o] = p;
  }
  return f;
}

double weighted_exponential_tail(const Eigen::ArrayXd& coeffs, double x) {
  if (x <= 0.0) return 1.0;
  std::vector<double> a;
  for (int i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] > 0.0) a.push_back(coeffs[i]);
  if (a.empty()) return 0.0;
  std::sort(a.begin(), a.end());
  // Separate near-ties so the partial-fraction weights stay finite.
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] <= a[i - 1] * (1.0 + 1e-9)) a[i] = a[i - 1] * (1.0 + 1e-6);

  double p = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double weight = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) weight *= a[i] / (a[i] - a[j]);
    p += weight * std::exp(-x / a[i]);
  }
  return std::clamp(p, 0.0, 1.0);
}

double success_probability(const OutcomeSpace& space, long outcome, double source_power,
                           const Eigen::ArrayXd& relay_powers, const FadingStats& stats,
                           const LinkBudget& budget, Scheme scheme) {
  const int m = space.relay_count;
  const double kappa = slot_scaling(scheme, m);
  const double w = budget.bandwidth;
  const double mi0 = space.mi_bin_edges[space.bin_of(outcome)];
  const double x = std::exp2(budget.rate * kappa / w) - std::exp2(mi0 * kappa / w);
  if (x <= 0.0) return 1.0;
  (void)source_power;

  const int subset = space.subset_of(outcome);
  Eigen::ArrayXd coeffs = Eigen::ArrayXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    if ((subset >> i) & 1)
      coeffs[i] = kappa * relay_powers[i] * stats.mean_rd[i] / w;
  }
  return weighted_exponential_tail(coeffs, x);
}

SecondStageResult second_stage_value(const OutcomeSpace& space, long outcome, double source_power,
                                     const DpWeights& weights, const FadingStats& stats,
                                     const LinkBudget& budget, Scheme scheme,
                                     int points_per_relay) {
  const int m = space.relay_count;
  const int subset = space.subset_of(outcome);
  std::vector<int> decoded;
  for (int i = 0; i < m; ++i)
    if ((subset >> i) & 1) decoded.push_back(i);

  SecondStageResult best;
  best.relay_powers = Eigen::ArrayXd::Zero(m);
  Eigen::ArrayXd p = Eigen::ArrayXd::Zero(m);
  best.value = -weights.reward *
               success_probability(space, outcome, source_power, p, stats, budget, scheme);
  if (decoded.empty() || weights.reward <= 0.0) return best;

  int n = std::max(2, points_per_relay);
  while (n > 2 && std::pow(static_cast<double>(n), static_cast<double>(decoded.size())) > 2e6)
    --n;

  std::vector<int> idx(decoded.size(), 0);
  while (true) {
    for (std::size_t d = 0; d < decoded.size(); ++d)
      p[decoded[d]] = weights.relay_p_max[decoded[d]] * idx[d] / (n - 1);
    double cost = 0.0;
    for (int i : decoded) cost += weights.relay_weights[i] * p[i];
    cost -= weights.reward *
            success_probability(space, outcome, source_power, p, stats, budget, scheme);
    if (cost < best.value) {
      best.value = cost;
      best.relay_powers = p;
    }
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return best;
}

TwoStageProblem tabulate(double source_power, const OutcomeSpace& space, const DpWeights& weights,
                         const FadingStats& stats, const LinkBudget& budget, Scheme scheme,
                         int points_per_relay) {
  TwoStageProblem problem;
  problem.source_term = weights.source_weight * source_power;
  problem.f = first_stage_dist(source_power, stats, space, budget, scheme);
  problem.j1.resize(space.size());
  for (long o = 0; o < space.size(); ++o) {
    problem.j1[o] = second_stage_value(space, o, source_power, weights, stats, budget, scheme,
                                       points_per_relay)
                        .value;
  }
  return problem;
}

double exact_cost_to_go(const TwoStageProblem& problem) { return problem.exact_value(); }

double mc_estimate(const TwoStageProblem& problem, long n, Rng& rng) {
  std::discrete_distribution<long> sample(problem.f.data(), problem.f.data() + problem.f.size());
  double sum = 0.0;
  for (long j = 0; j < n; ++j) sum += problem.j1[sample(rng)];
  return problem.source_term + sum / static_cast<double>(n);
}

DpSolution exact_dp(double ps_max, int ps_points, const OutcomeSpace& space,
                    const DpWeights& weights, const FadingStats& stats, const LinkBudget& budget,
                    Scheme scheme, int points_per_relay) {
  DpSolution sol;
  sol.grid.resize(ps_points);
  sol.values.resize(ps_points);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < ps_points; ++j) {
    const double ps = ps_points == 1 ? ps_max : ps_max * j / (ps_points - 1);
    const TwoStageProblem problem =
        tabulate(ps, space, weights, stats, budget, scheme, points_per_relay);
    sol.grid[j] = ps;
    sol.values[j] = problem.exact_value();
    if (sol.values[j] < best) {
      best = sol.values[j];
      sol.best_value = best;
      sol.best_source_power = ps;
    }
  }
  return sol;
}

double chebyshev_bound(double variance, long n, double eps) {
  if (eps <= 0.0 || n < 1) throw std::invalid_argument("bad chebyshev arguments");
  return std::min(1.0, variance / (static_cast<double>(n) * eps * eps));
}

}  // namespace dp
}  // namespace coop
