#include "coop/engine.hpp"

#include <numeric>
#include <stdexcept>

namespace coop {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Optimal: return "optimal";
    case Strategy::DirectOnly: return "direct";
    case Strategy::CoopOnly: return "cooperate";
  }
  return "?";
}

void SimConfig::validate() const {
  if (slots < 1) throw std::invalid_argument("horizon must be at least 1 slot");
  if (sources.empty()) throw std::invalid_argument("at least one source required");
  if (relay_count < 0) throw std::invalid_argument("negative relay count");
  for (const auto& s : sources) {
    if (!grid.valid(s.cell)) throw std::invalid_argument("source cell outside grid");
    if (s.lambda < 0.0 || s.lambda > 1.0) throw std::invalid_argument("lambda outside [0,1]");
    if (s.rho < 0.0 || s.rho > 1.0) throw std::invalid_argument("rho outside [0,1]");
  }
  for (int c : relay_cells)
    if (!grid.valid(c)) throw std::invalid_argument("relay cell outside grid");
  if (p_avg > p_max) throw std::invalid_argument("p_avg exceeds p_max");
  if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
    throw std::invalid_argument("burn-in fraction outside [0,1)");
}

ControllerParams controller_params(const SimConfig& config) {
  const int ns = config.source_count();
  const int nn = config.node_count();
  ControllerParams p;
  p.v = config.v;
  p.rho.resize(ns);
  p.lambda.resize(ns);
  p.alpha.resize(ns);
  for (int s = 0; s < ns; ++s) {
    p.rho[s] = config.sources[s].rho;
    p.lambda[s] = config.sources[s].lambda;
    p.alpha[s] = config.sources[s].alpha;
  }
  p.p_avg = Eigen::ArrayXd::Constant(nn, config.p_avg);
  p.p_max = Eigen::ArrayXd::Constant(nn, config.p_max);
  p.beta = Eigen::ArrayXd::Constant(nn, config.beta);
  return p;
}

namespace {

unsigned strategy_mask(Strategy s) {
  switch (s) {
    case Strategy::Optimal: return kAllowAll;
    case Strategy::DirectOnly: return kAllowIdle | kAllowDirect;
    case Strategy::CoopOnly: return kAllowIdle | kAllowCooperative;
  }
  return kAllowAll;
}

std::vector<int> initial_relay_cells(const SimConfig& config) {
  if (!config.relay_cells.empty()) {
    if (static_cast<int>(config.relay_cells.size()) != config.relay_count)
      throw std::invalid_argument("relay_cells size mismatch");
    return config.relay_cells;
  }
  std::vector<int> cells(config.relay_count);
  for (int i = 0; i < config.relay_count; ++i) cells[i] = i % config.grid.cell_count();
  return cells;
}

}  // namespace

Metrics run(const SimConfig& config, const TraceSink& trace) {
  config.validate();
  const int ns = config.source_count();
  const int nn = config.node_count();
  const long window_start = static_cast<long>(config.burn_in_fraction * config.slots);

  Rng rng(config.seed);
  MobilityModel mobility{config.stay_probability, initial_relay_cells(config)};
  VirtualQueues queues = VirtualQueues::zeros(ns, nn);
  const ControllerParams params = controller_params(config);
  const unsigned mask = strategy_mask(config.strategy);

  Metrics metrics;
  metrics.horizon = config.slots;
  metrics.window_start = window_start;
  metrics.deliveries_total.assign(ns, 0.0);
  metrics.arrivals_total.assign(ns, 0.0);
  metrics.power_total.assign(nn, 0.0);
  std::vector<double> deliveries_win(ns, 0.0), arrivals_win(ns, 0.0), power_win(nn, 0.0);
  double z_sum_win = 0.0, x_sum_win = 0.0;

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Eigen::ArrayXd slot_powers(nn);

  for (long t = 0; t < config.slots; ++t) {
    std::vector<bool> arrival(ns);
    for (int s = 0; s < ns; ++s) arrival[s] = coin(rng) < config.sources[s].lambda;

    int tdma_pick = -1;
    if (config.access == MediumAccess::TdmaRoundRobin) {
      tdma_pick = static_cast<int>(t % ns);
    } else if (config.access == MediumAccess::TdmaRandom) {
      std::uniform_int_distribution<int> pick(0, ns - 1);
      tdma_pick = pick(rng);
    }

    mobility = step_mobility(mobility, config.grid, rng);
    slot_powers.setZero();
    std::vector<bool> success(ns, false);
    std::vector<Mode> modes(ns, Mode::Idle);
    std::vector<double> src_power(ns, 0.0), rel_power(ns, 0.0);

    for (int s = 0; s < ns; ++s) {
      const bool opportunity = tdma_pick < 0 || tdma_pick == s;
      if (!arrival[s] || !opportunity) continue;

      const ChannelState state = sample_channel_state(config.sources[s].cell, mobility,
                                                      config.fading, config.grid, rng, t,
                                                      config.eligibility);
      Eigen::ArrayXd x_r(state.relay_count());
      for (int i = 0; i < state.relay_count(); ++i) x_r[i] = queues.x[ns + state.relays[i]];

      SolverInput in = make_solver_input(state, config.budget, config.scheme, queues.z[s],
                                         queues.x[s], x_r, config.v, config.sources[s].alpha,
                                         config.beta, config.p_max);
      in.af_grid_points = config.af_grid_points;

      unsigned slot_mask = mask;
      if (config.coop_requires_relay && state.relay_count() == 0)
        slot_mask &= ~kAllowCooperative;

      const Decision decision = best_action(in, slot_mask);
      if (!decision.best.feasible()) continue;
      const ControlAction& action = *decision.best.action;
      modes[s] = action.mode;
      if (action.mode == Mode::Idle) continue;

      success[s] = outcome(action.mode, action.scheme, action.alloc, state, config.budget);
      src_power[s] = action.alloc.source_power;
      slot_powers[s] += action.alloc.source_power;
      for (int i = 0; i < state.relay_count(); ++i) {
        slot_powers[ns + state.relays[i]] += action.alloc.relay_powers[i];
        rel_power[s] += action.alloc.relay_powers[i];
      }
    }

    // End-of-slot bookkeeping after the ACK/NACK outcomes are known.
    for (int s = 0; s < ns; ++s)
      update_reliability_queue(queues, s, success[s], arrival[s], params);
    update_power_queues(queues, slot_powers, params);

    for (int s = 0; s < ns; ++s) {
      metrics.deliveries_total[s] += success[s] ? 1.0 : 0.0;
      metrics.arrivals_total[s] += arrival[s] ? 1.0 : 0.0;
    }
    for (int i = 0; i < nn; ++i) metrics.power_total[i] += slot_powers[i];
    metrics.max_z = std::max(metrics.max_z, queues.z.maxCoeff());
    metrics.max_x = std::max(metrics.max_x, queues.x.maxCoeff());

    if (t >= window_start) {
      for (int s = 0; s < ns; ++s) {
        deliveries_win[s] += success[s] ? 1.0 : 0.0;
        arrivals_win[s] += arrival[s] ? 1.0 : 0.0;
      }
      for (int i = 0; i < nn; ++i) power_win[i] += slot_powers[i];
      z_sum_win += queues.z.mean();
      x_sum_win += queues.x.mean();
    }

    if (trace) {
      for (int s = 0; s < ns; ++s) {
        if (!arrival[s] && modes[s] == Mode::Idle && ns > 1) continue;
        trace(SlotTrace{t, s, arrival[s], success[s], modes[s], src_power[s], rel_power[s],
                        queues.z[s]});
      }
    }
  }

  const double window = static_cast<double>(config.slots - window_start);
  metrics.delivered_fraction.resize(ns);
  metrics.arrival_rate.resize(ns);
  metrics.avg_power.resize(nn);
  for (int s = 0; s < ns; ++s) {
    metrics.delivered_fraction[s] = deliveries_win[s] / window;
    metrics.arrival_rate[s] = arrivals_win[s] / window;
  }
  double sum_power = 0.0;
  for (int i = 0; i < nn; ++i) {
    metrics.avg_power[i] = power_win[i] / window;
    sum_power += metrics.avg_power[i];
  }
  metrics.avg_sum_power = sum_power;
  metrics.avg_z = z_sum_win / window;
  metrics.avg_x = x_sum_win / window;
  metrics.final_z.assign(queues.z.data(), queues.z.data() + ns);
  metrics.final_x.assign(queues.x.data(), queues.x.data() + nn);
  double objective = 0.0;
  for (int s = 0; s < ns; ++s)
    objective += config.sources[s].alpha * metrics.delivered_fraction[s];
  for (int i = 0; i < nn; ++i) objective -= config.beta * metrics.avg_power[i];
  metrics.objective = objective;
  return metrics;
}

std::vector<SweepPoint> sweep_v(const SimConfig& config, const std::vector<double>& v_list) {
  if (v_list.empty()) throw std::invalid_argument("empty V list");
  std::vector<SweepPoint> points;
  points.reserve(v_list.size());
  for (std::size_t k = 0; k < v_list.size(); ++k) {
    SimConfig c = config;
    c.v = v_list[k];
    c.seed = config.seed + k;
    points.push_back({v_list[k], run(c)});
  }
  return points;
}

FeasibilityVerdict check_feasibility(const Metrics& metrics, const SimConfig& config, double tol) {
  FeasibilityVerdict v;
  v.feasible = true;
  for (int s = 0; s < config.source_count(); ++s) {
    const bool ok = metrics.delivered_fraction[s] >=
                    config.sources[s].rho * metrics.arrival_rate[s] - tol;
    v.reliability_ok.push_back(ok);
    v.feasible = v.feasible && ok;
  }
  for (int i = 0; i < config.node_count(); ++i) {
    const bool ok = metrics.avg_power[i] <= config.p_avg + tol;
    v.power_ok.push_back(ok);
    v.feasible = v.feasible && ok;
  }
  return v;
}

}  // namespace coop
