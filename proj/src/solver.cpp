#include "coop/solver.hpp"

#include <algorithm>
#include <cmath>

namespace coop {

namespace {

constexpr int kBisectIters = 200;
constexpr double kResidual = 1e-9;

double theta_for(const LinkBudget& b, double kappa) {
  return (b.bandwidth / kappa) * (std::exp2(b.rate * kappa / b.bandwidth) - 1.0);
}

double safe_weight(double w) { return std::max(w, 1e-12); }

struct FillEntry {
  int id;  // -1 for the source
  double gain;
  double weight;
  double cap;
};

// Greedy fill of a single linear constraint sum(gain * power) >= need,
// cheapest marginal cost first.
bool greedy_fill(std::vector<FillEntry>& entries, double need, double tol,
                 double& extra_source_power, Eigen::ArrayXd& relay_powers, double& power_cost) {
  std::sort(entries.begin(), entries.end(), [](const FillEntry& a, const FillEntry& b) {
    const double ea = a.weight <= 0.0 ? kInf : a.gain / a.weight;
    const double eb = b.weight <= 0.0 ? kInf : b.gain / b.weight;
    if (ea != eb) return ea > eb;
    return a.id < b.id;
  });
  for (const FillEntry& e : entries) {
    if (need <= 0.0) break;
    if (e.gain <= 0.0 || e.cap <= 0.0) continue;
    const double full = need / e.gain;
    const double take = std::min(e.cap, full);
    if (e.id < 0)
      extra_source_power += take;
    else
      relay_powers[e.id] += take;
    power_cost += e.weight * take;
    need = take >= full ? 0.0 : need - take * e.gain;
  }
  return need <= tol;
}

// Shared core of the regenerative-DF LP and its multihop reduction.
ModeCost regdf_sub(const std::vector<int>& prefix, const SolverInput& in, double kappa,
                   double gain_sd, Mode mode) {
  const ChannelState& st = *in.state;
  const double theta = theta_for(in.budget, kappa);

  double floor = 0.0;
  if (!prefix.empty()) {
    double gmin = kInf;
    for (int i : prefix) gmin = std::min(gmin, st.gain_sr[i]);
    if (gmin <= 0.0) return {};
    floor = theta / gmin;
  }
  if (floor > in.ps_max * (1.0 + 1e-12)) return {};
  floor = std::min(floor, in.ps_max);

  double power_cost = in.source_weight() * floor;
  double need = theta - floor * gain_sd;
  Eigen::ArrayXd relay_powers = Eigen::ArrayXd::Zero(st.relay_count());
  double extra_ps = 0.0;

  std::vector<FillEntry> entries;
  entries.push_back({-1, gain_sd, in.source_weight(), in.ps_max - floor});
  for (int i : prefix)
    entries.push_back({i, st.gain_rd[i], in.relay_weight(i), in.pr_max[i]});

  if (need > 0.0 &&
      !greedy_fill(entries, need, 1e-12 * std::max(1.0, theta), extra_ps, relay_powers,
                   power_cost))
    return {};

  ControlAction action;
  action.mode = mode;
  action.scheme = in.scheme;
  action.alloc.source_power = floor + extra_ps;
  action.alloc.relay_powers = std::move(relay_powers);
  action.decode_target = prefix;
  return {power_cost - in.success_reward(), std::move(action)};
}

}  // namespace

SolverInput make_solver_input(const ChannelState& state, const LinkBudget& budget, Scheme scheme,
                              double z, double x_s, const Eigen::ArrayXd& x_r, double v,
                              double alpha, double beta, double p_max) {
  SolverInput in;
  in.state = &state;
  in.budget = budget;
  in.scheme = scheme;
  in.z = z;
  in.x_s = x_s;
  in.x_r = x_r;
  in.v = v;
  in.alpha = alpha;
  in.beta_s = beta;
  in.beta_r = Eigen::ArrayXd::Constant(state.relay_count(), beta);
  in.ps_max = p_max;
  in.pr_max = Eigen::ArrayXd::Constant(state.relay_count(), p_max);
  return in;
}

ModeCost cost_idle() {
  ControlAction a;
  a.mode = Mode::Idle;
  a.alloc = PowerAllocation::zeros(0);
  return {0.0, std::move(a)};
}

ModeCost cost_direct(const SolverInput& in) {
  const ChannelState& st = *in.state;
  if (st.gain_sd <= 0.0) return {};
  const LinkBudget& b = in.budget;
  const double ps = (b.bandwidth / st.gain_sd) * (std::exp2(b.rate / b.bandwidth) - 1.0);
  if (ps > in.ps_max * (1.0 + 1e-12)) return {};
  ControlAction a;
  a.mode = Mode::Direct;
  a.scheme = in.scheme;
  a.alloc = PowerAllocation::zeros(st.relay_count());
  a.alloc.source_power = std::min(ps, in.ps_max);
  return {in.source_weight() * a.alloc.source_power - in.success_reward(), std::move(a)};
}

std::vector<int> order_relays(const ChannelState& state) {
  std::vector<int> order(state.relay_count());
  for (int i = 0; i < state.relay_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (state.gain_sr[a] != state.gain_sr[b]) return state.gain_sr[a] > state.gain_sr[b];
    return a < b;
  });
  return order;
}

double min_decode_power(const std::vector<int>& prefix, const ChannelState& state,
                        const LinkBudget& budget, Scheme scheme) {
  if (prefix.empty()) return 0.0;
  const double kappa = slot_scaling(scheme, state.relay_count());
  double gmin = kInf;
  for (int i : prefix) gmin = std::min(gmin, state.gain_sr[i]);
  if (gmin <= 0.0) return kInf;
  return theta_for(budget, kappa) / gmin;
}

ModeCost solve_regdf_subproblem(const std::vector<int>& prefix, const SolverInput& in,
                                double kappa, bool zero_sd) {
  const double k = kappa > 0.0 ? kappa : slot_scaling(in.scheme, in.state->relay_count());
  return regdf_sub(prefix, in, k, zero_sd ? 0.0 : in.state->gain_sd, Mode::Cooperative);
}

namespace {

template <typename SubSolver>
ModeCost best_over_prefixes(const SolverInput& in, SubSolver&& solve) {
  const auto order = order_relays(*in.state);
  ModeCost best;
  std::vector<int> prefix;
  prefix.reserve(order.size());
  // k = 0 first, then growing prefixes; ties keep the smaller set.
  ModeCost c0 = solve(prefix);
  best = std::move(c0);
  for (int id : order) {
    prefix.push_back(id);
    ModeCost c = solve(prefix);
    if (c.cost < best.cost) best = std::move(c);
  }
  return best;
}

}  // namespace

ModeCost cost_regdf(const SolverInput& in) {
  return best_over_prefixes(
      in, [&](const std::vector<int>& prefix) { return solve_regdf_subproblem(prefix, in); });
}

ModeCost solve_nonregdf_subproblem(const std::vector<int>& prefix, const SolverInput& in) {
  const ChannelState& st = *in.state;
  const int m = st.relay_count();
  const double kappa = slot_scaling(in.scheme, m);
  const LinkBudget& b = in.budget;
  const double w = b.bandwidth;
  const double target = kappa * b.rate / w;  // sum of log2 terms required

  double floor = 0.0;
  if (!prefix.empty()) {
    double gmin = kInf;
    for (int i : prefix) gmin = std::min(gmin, st.gain_sr[i]);
    if (gmin <= 0.0) return {};
    floor = theta_for(b, kappa) / gmin;
  }
  if (floor > in.ps_max * (1.0 + 1e-12)) return {};
  floor = std::min(floor, in.ps_max);

  const double gsd = st.gain_sd;
  auto powers_at = [&](double mu, double& ps, Eigen::ArrayXd& pr) {
    ps = gsd > 0.0
             ? std::clamp(mu / safe_weight(in.source_weight()) - w / (kappa * gsd), floor,
                          in.ps_max)
             : floor;
    for (int i : prefix) {
      const double g = st.gain_rd[i];
      pr[i] = g > 0.0
                  ? std::clamp(mu / safe_weight(in.relay_weight(i)) - w / (kappa * g), 0.0,
                               in.pr_max[i])
                  : 0.0;
    }
  };
  auto constraint = [&](double ps, const Eigen::ArrayXd& pr) {
    double s = std::log2(1.0 + kappa * ps * gsd / w);
    for (int i : prefix) s += std::log2(1.0 + kappa * pr[i] * st.gain_rd[i] / w);
    return s;
  };

  Eigen::ArrayXd pr = Eigen::ArrayXd::Zero(m);
  double ps = floor;

  // All-max attainability check.
  {
    Eigen::ArrayXd pr_hi = Eigen::ArrayXd::Zero(m);
    for (int i : prefix) pr_hi[i] = st.gain_rd[i] > 0.0 ? in.pr_max[i] : 0.0;
    if (constraint(gsd > 0.0 ? in.ps_max : floor, pr_hi) < target - 1e-12) return {};
  }

  if (constraint(ps, pr) < target - kResidual) {
    // Bracket the water level, then bisect from the feasible side.
    double hi = 1.0;
    for (int it = 0; it < kBisectIters; ++it) {
      powers_at(hi, ps, pr);
      if (constraint(ps, pr) >= target) break;
      hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < kBisectIters; ++it) {
      const double mid = 0.5 * (lo + hi);
      powers_at(mid, ps, pr);
      const double c = constraint(ps, pr);
      if (c >= target)
        hi = mid;
      else
        lo = mid;
      if (std::abs(c - target) <= kResidual) break;
    }
    powers_at(hi, ps, pr);
  }

  double power_cost = in.source_weight() * ps;
  for (int i : prefix) power_cost += in.relay_weight(i) * pr[i];

  ControlAction action;
  action.mode = Mode::Cooperative;
  action.scheme = in.scheme;
  action.alloc.source_power = ps;
  action.alloc.relay_powers = std::move(pr);
  action.decode_target = prefix;
  return {power_cost - in.success_reward(), std::move(action)};
}

ModeCost cost_nonregdf(const SolverInput& in) {
  return best_over_prefixes(
      in, [&](const std::vector<int>& prefix) { return solve_nonregdf_subproblem(prefix, in); });
}

ModeCost solve_af_inner(double source_power, const SolverInput& in) {
  const ChannelState& st = *in.state;
  const int m = st.relay_count();
  const LinkBudget& b = in.budget;
  const double kappa = slot_scaling(in.scheme, m);
  const double w = b.bandwidth;
  const double theta = theta_for(b, kappa);
  const double ps = source_power;

  if (ps <= 0.0) {
    if (b.rate > 0.0) return {};
    ControlAction a;
    a.mode = Mode::Cooperative;
    a.scheme = in.scheme;
    a.alloc = PowerAllocation::zeros(m);
    return {-in.success_reward(), std::move(a)};
  }

  ControlAction action;
  action.mode = Mode::Cooperative;
  action.scheme = in.scheme;
  action.alloc = PowerAllocation::zeros(m);
  action.alloc.source_power = ps;

  // Direct path already sufficient: no relay power needed.
  if (ps * st.gain_sd >= theta * (1.0 - 1e-15)) {
    return {in.source_weight() * ps - in.success_reward(), std::move(action)};
  }

  const double noise = w / kappa;
  double theta_p = ps * st.gain_sd - theta;
  Eigen::ArrayXd num(m);
  for (int i = 0; i < m; ++i) {
    const double gsi = st.gain_sr[i];
    num[i] = ps * ps * gsi * gsi + ps * gsi * noise;
    theta_p += ps * gsi;
  }

  auto residual = [&](const Eigen::ArrayXd& pr) {
    double h = 0.0;
    for (int i = 0; i < m; ++i)
      h += num[i] / (ps * st.gain_sr[i] + pr[i] * st.gain_rd[i] + noise);
    return h;
  };
  auto powers_at = [&](double nu, Eigen::ArrayXd& pr) {
    for (int i = 0; i < m; ++i) {
      const double gid = st.gain_rd[i];
      if (gid <= 0.0 || num[i] <= 0.0) {
        pr[i] = 0.0;
        continue;
      }
      const double raw = std::sqrt(nu * num[i] / (safe_weight(in.relay_weight(i)) * gid)) -
                         (ps * st.gain_sr[i] + noise) / gid;
      pr[i] = std::clamp(raw, 0.0, in.pr_max[i]);
    }
  };

  Eigen::ArrayXd pr = Eigen::ArrayXd::Zero(m);
  {
    Eigen::ArrayXd pr_hi(m);
    for (int i = 0; i < m; ++i) pr_hi[i] = st.gain_rd[i] > 0.0 ? in.pr_max[i] : 0.0;
    if (residual(pr_hi) > theta_p + 1e-12) return {};
  }

  double hi = 1.0;
  for (int it = 0; it < kBisectIters; ++it) {
    powers_at(hi, pr);
    if (residual(pr) <= theta_p) break;
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < kBisectIters; ++it) {
    const double mid = 0.5 * (lo + hi);
    powers_at(mid, pr);
    const double r = residual(pr);
    if (r <= theta_p)
      hi = mid;
    else
      lo = mid;
    if (std::abs(r - theta_p) <= kResidual * std::max(1.0, std::abs(theta_p))) break;
  }
  powers_at(hi, pr);

  double power_cost = in.source_weight() * ps;
  for (int i = 0; i < m; ++i) power_cost += in.relay_weight(i) * pr[i];
  action.alloc.relay_powers = std::move(pr);
  return {power_cost - in.success_reward(), std::move(action)};
}

ModeCost cost_af(const SolverInput& in) {
  const int n = std::max(2, in.af_grid_points);
  ModeCost best;
  double best_ps = 0.0;
  auto try_ps = [&](double ps) {
    ModeCost c = solve_af_inner(ps, in);
    if (c.cost < best.cost) {
      best_ps = ps;
      best = std::move(c);
    }
  };
  for (int j = 0; j < n; ++j) try_ps(in.ps_max * static_cast<double>(j) / (n - 1));
  // The scan fixes the basin; local refinement frees the answer from the
  // grid step so the inner closed form decides the final resolution.
  double step = in.ps_max / (n - 1);
  for (int round = 0; round < 4; ++round) {
    const double lo = std::max(0.0, best_ps - step);
    const double hi = std::min(in.ps_max, best_ps + step);
    for (int j = 0; j <= 20; ++j) try_ps(lo + (hi - lo) * j / 20.0);
    step /= 10.0;
  }
  return best;
}

ModeCost cost_multihop(const SolverInput& in) {
  const ChannelState& st = *in.state;
  ModeCost best;
  for (int i = 0; i < st.relay_count(); ++i) {
    ModeCost c = regdf_sub({i}, in, 2.0, 0.0, Mode::Multihop);
    if (c.cost < best.cost) best = std::move(c);
  }
  return best;
}

ModeCost cost_cooperative(const SolverInput& in) {
  switch (in.scheme) {
    case Scheme::RegDfOrtho:
    case Scheme::DfDstc:
      return cost_regdf(in);
    case Scheme::NonRegDfOrtho:
      return cost_nonregdf(in);
    case Scheme::AfOrtho:
    case Scheme::AfDstc:
      return cost_af(in);
  }
  return {};
}

Decision best_action(const SolverInput& in, unsigned mode_mask) {
  Decision d;
  ModeCost candidates[4];
  if (mode_mask & kAllowIdle) candidates[0] = cost_idle();
  if (mode_mask & kAllowDirect) candidates[1] = cost_direct(in);
  if (mode_mask & kAllowMultihop) candidates[2] = cost_multihop(in);
  if (mode_mask & kAllowCooperative) candidates[3] = cost_cooperative(in);
  for (int i = 0; i < 4; ++i) {
    d.mode_costs[i] = candidates[i].cost;
    if (candidates[i].feasible() && candidates[i].cost < d.best.cost)
      d.best = std::move(candidates[i]);
  }
  return d;
}

}  // namespace coop
