#include "coop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coop {
namespace oracle {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = hi;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// Evaluates f over the cartesian product of axes.
template <typename F>
void for_each_point(const std::vector<std::vector<double>>& axes, F&& f) {
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> point(axes.size());
  while (true) {
    for (std::size_t d = 0; d < axes.size(); ++d) point[d] = axes[d][idx[d]];
    f(point);
    std::size_t d = 0;
    while (d < axes.size() && ++idx[d] == axes[d].size()) idx[d++] = 0;
    if (d == axes.size()) break;
  }
}

long point_count(const std::vector<std::vector<double>>& axes) {
  long n = 1;
  for (const auto& a : axes) n *= static_cast<long>(a.size());
  return n;
}

struct ModeSearch {
  Mode mode;
  Scheme scheme;
  std::vector<int> power_relays;  // relay dims after the source dim
};

// Minimizes the metric for one mode over gridded powers with local zoom.
ModeCost search_mode(const SolverInput& in, const GridSpec& spec, const ModeSearch& ms,
                     const std::vector<double>& extra_ps_lines) {
  const ChannelState& st = *in.state;
  const std::size_t dims = 1 + ms.power_relays.size();

  int per_axis = spec.points_per_axis;
  while (per_axis > 2 && std::pow(static_cast<double>(per_axis), static_cast<double>(dims)) >
                             static_cast<double>(spec.max_points))
    --per_axis;

  std::vector<double> caps(dims);
  caps[0] = in.ps_max;
  for (std::size_t d = 1; d < dims; ++d) caps[d] = in.pr_max[ms.power_relays[d - 1]];

  std::vector<std::vector<double>> axes(dims);
  for (std::size_t d = 0; d < dims; ++d) axes[d] = linspace(0.0, caps[d], per_axis);
  for (double v : extra_ps_lines) {
    if (v > 0.0 && v <= in.ps_max) axes[0].push_back(v);
  }
  std::sort(axes[0].begin(), axes[0].end());
  if (point_count(axes) > spec.max_points) throw std::invalid_argument("oracle grid too large");

  double best_cost = kInf;
  std::vector<double> best_point;
  auto eval = [&](const std::vector<double>& point) {
    PowerAllocation alloc = PowerAllocation::zeros(st.relay_count());
    alloc.source_power = point[0];
    for (std::size_t d = 1; d < dims; ++d) alloc.relay_powers[ms.power_relays[d - 1]] = point[d];
    if (!outcome(ms.mode, ms.scheme, alloc, st, in.budget)) return;
    double cost = in.source_weight() * alloc.source_power;
    for (int i = 0; i < st.relay_count(); ++i)
      cost += in.relay_weight(i) * alloc.relay_powers[i];
    cost -= in.success_reward();
    if (cost < best_cost) {
      best_cost = cost;
      best_point = point;
    }
  };
  for_each_point(axes, eval);
  if (!std::isfinite(best_cost)) return {};

  // Pattern-style zoom: recenter at the same scale while the window still
  // finds improvement and shrink only on a stalled pass. A fixed shrink
  // schedule strands the search on tilted constraint surfaces, where the
  // minimum is reached by several same-scale slides along the surface.
  const double shrink = std::max(2.0, (spec.refine_points - 1) / 2.0);
  double scale = 1.0;
  int shrinks = 0;
  for (int it = 0; it < spec.refine_rounds + 24 && shrinks < spec.refine_rounds; ++it) {
    const double prev = best_cost;
    std::vector<std::vector<double>> zoom(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      const double step = caps[d] / std::max(1, per_axis - 1) * scale;
      const double lo = std::max(0.0, best_point[d] - step);
      const double hi = std::min(caps[d], best_point[d] + step);
      zoom[d] = linspace(lo, hi, spec.refine_points);
      zoom[d].push_back(best_point[d]);
      std::sort(zoom[d].begin(), zoom[d].end());
    }
    for_each_point(zoom, eval);
    if (best_cost >= prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      scale /= shrink;
      ++shrinks;
    }
  }

  // Constraint-fill polish. The minimum usually sits on the success
  // boundary, and the boundary's slope need not match any coarse grid
  // direction, which strands axis-aligned zooming. Success is monotone in
  // every power, so bisecting one "fill" coordinate down to the boundary
  // while another runs over a fine grid traces the boundary exactly.
  auto try_point = [&](std::vector<double> point) -> double {
    PowerAllocation alloc = PowerAllocation::zeros(st.relay_count());
    alloc.source_power = point[0];
    for (std::size_t d = 1; d < dims; ++d) alloc.relay_powers[ms.power_relays[d - 1]] = point[d];
    auto feasible_with = [&](double v, std::size_t fill) {
      if (fill == 0)
        alloc.source_power = v;
      else
        alloc.relay_powers[ms.power_relays[fill - 1]] = v;
      return outcome(ms.mode, ms.scheme, alloc, st, in.budget);
    };
    double local = kInf;
    for (std::size_t fill = 0; fill < dims; ++fill) {
      const double keep = point[fill];
      if (!feasible_with(caps[fill], fill)) {
        feasible_with(keep, fill);
        continue;
      }
      double lo = 0.0, hi = caps[fill];
      if (feasible_with(0.0, fill)) {
        hi = 0.0;
      } else {
        for (int it = 0; it < 40; ++it) {
          const double mid = 0.5 * (lo + hi);
          (feasible_with(mid, fill) ? hi : lo) = mid;
        }
      }
      point[fill] = hi;
      double cost = in.source_weight() * point[0];
      for (std::size_t d = 1; d < dims; ++d)
        cost += in.relay_weight(ms.power_relays[d - 1]) * point[d];
      cost -= in.success_reward();
      local = std::min(local, cost);
      eval(point);
      point[fill] = keep;
      feasible_with(keep, fill);
    }
    return local;
  };

  // Decode jumps happen along the source-power axis only; uniform grids on
  // that axis must carry the jump values themselves.
  auto with_lines = [&](std::vector<double> grid, std::size_t d) {
    if (d == 0) {
      for (double v : extra_ps_lines)
        if (v >= 0.0 && v <= caps[0]) grid.push_back(v);
    }
    return grid;
  };

  auto improved = [](double before, double after) {
    return after < before - 1e-12 * std::max(1.0, std::abs(before));
  };

  // One-variable slides with a fill: coordinate t runs over a refining grid
  // from the incumbent, and separately from all-zeros — the latter is how
  // the search escapes a basin whose incumbent carries power that would be
  // wasted on the other side of a decode jump.
  auto slide_sweeps = [&] {
    for (int sweep = 0; sweep < 6; ++sweep) {
      const double before = best_cost;
      try_point(best_point);
      for (std::size_t d = 0; d < dims; ++d) {
        double span = caps[d];
        std::vector<double> t_grid = with_lines(linspace(0.0, caps[d], 101), d);
        for (int level = 0; level < 3; ++level) {
          double best_t = best_point[d];
          for (double t : t_grid) {
            std::vector<double> point = best_point;
            point[d] = t;
            const double prev = best_cost;
            try_point(point);
            if (dims > 1) {
              std::vector<double> fresh(dims, 0.0);
              fresh[d] = t;
              try_point(std::move(fresh));
            }
            if (best_cost < prev) best_t = t;
          }
          span /= 10.0;
          t_grid = with_lines(
              linspace(std::max(0.0, best_t - span), std::min(caps[d], best_t + span), 21), d);
        }
      }
      if (!improved(before, best_cost)) break;
    }
  };

  // Two-variable grids with a fill, for optima where three or more powers
  // are simultaneously interior (sum-of-logs water-filling splits). Each
  // pair refines around its own best cell; the coarse grid alone is too
  // blunt to seed those basins.
  auto pair_pass = [&] {
    for (std::size_t a = 0; a + 1 < dims; ++a) {
      for (std::size_t b = a + 1; b < dims; ++b) {
        double ca = 0.0, cb = 0.0, span_a = caps[a], span_b = caps[b];
        std::vector<double> grid_a = with_lines(linspace(0.0, caps[a], 15), a);
        std::vector<double> grid_b = linspace(0.0, caps[b], 15);
        for (int level = 0; level < 3; ++level) {
          double local_best = kInf;
          for (double ta : grid_a) {
            for (double tb : grid_b) {
              std::vector<double> fresh(dims, 0.0);
              fresh[a] = ta;
              fresh[b] = tb;
              double c = try_point(std::move(fresh));
              std::vector<double> point = best_point;
              point[a] = ta;
              point[b] = tb;
              c = std::min(c, try_point(std::move(point)));
              if (c < local_best) {
                local_best = c;
                ca = ta;
                cb = tb;
              }
            }
          }
          if (!std::isfinite(local_best)) break;
          span_a /= 7.0;
          span_b /= 7.0;
          grid_a = with_lines(
              linspace(std::max(0.0, ca - span_a), std::min(caps[a], ca + span_a), 11), a);
          grid_b = linspace(std::max(0.0, cb - span_b), std::min(caps[b], cb + span_b), 11);
        }
      }
    }
  };

  slide_sweeps();
  for (int round = 0; dims >= 3 && round < 3; ++round) {
    const double before = best_cost;
    pair_pass();
    if (!improved(before, best_cost)) break;
    slide_sweeps();
  }

  ControlAction action;
  action.mode = ms.mode;
  action.scheme = ms.scheme;
  action.alloc = PowerAllocation::zeros(st.relay_count());
  action.alloc.source_power = best_point[0];
  for (std::size_t d = 1; d < dims; ++d)
    action.alloc.relay_powers[ms.power_relays[d - 1]] = best_point[d];
  return {best_cost, std::move(action)};
}

}  // namespace

ModeCost grid_best_action(const SolverInput& in, const GridSpec& spec, unsigned mode_mask) {
  const ChannelState& st = *in.state;
  const int m = st.relay_count();

  // Source powers at which a relay starts decoding; jump points of the
  // success indicator that a uniform grid could straddle.
  std::vector<double> ps_lines;
  for (double kappa : {slot_scaling(in.scheme, m), 2.0}) {
    const double theta = (in.budget.bandwidth / kappa) *
                         (std::exp2(in.budget.rate * kappa / in.budget.bandwidth) - 1.0);
    for (int i = 0; i < m; ++i) {
      if (st.gain_sr[i] > 0.0) ps_lines.push_back(theta / st.gain_sr[i] * (1.0 + 1e-12));
    }
  }
  // Seed the interior of every decode basin too; a coarse uniform axis can
  // otherwise skip a narrow interval between two jump points entirely.
  std::sort(ps_lines.begin(), ps_lines.end());
  const std::size_t n_lines = ps_lines.size();
  for (std::size_t i = 0; i + 1 < n_lines; ++i)
    ps_lines.push_back(0.5 * (ps_lines[i] + ps_lines[i + 1]));

  ModeCost best;
  if (mode_mask & kAllowIdle) best = cost_idle();

  auto consider = [&](ModeCost c) {
    if (c.feasible() && c.cost < best.cost) best = std::move(c);
  };

  if (mode_mask & kAllowDirect) consider(search_mode(in, spec, {Mode::Direct, in.scheme, {}}, {}));
  if (mode_mask & kAllowMultihop) {
    for (int i = 0; i < m; ++i)
      consider(search_mode(in, spec, {Mode::Multihop, in.scheme, {i}}, ps_lines));
  }
  if (mode_mask & kAllowCooperative) {
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    consider(search_mode(in, spec, {Mode::Cooperative, in.scheme, all}, ps_lines));
  }
  return best;
}

double grid_second_stage(const SecondStageObjective& obj, const GridSpec& spec,
                         Eigen::ArrayXd* best_powers) {
  const int k = static_cast<int>(obj.weights.size());
  Eigen::ArrayXd p = Eigen::ArrayXd::Zero(k);
  if (k == 0) {
    if (best_powers) *best_powers = p;
    return -obj.reward * obj.success(p);
  }

  int per_axis = spec.points_per_axis;
  while (per_axis > 2 && std::pow(static_cast<double>(per_axis), static_cast<double>(k)) >
                             static_cast<double>(spec.max_points))
    --per_axis;

  std::vector<std::vector<double>> axes(k);
  for (int d = 0; d < k; ++d) axes[d] = linspace(0.0, obj.p_max[d], per_axis);

  double best = kInf;
  Eigen::ArrayXd best_p = p;
  auto eval = [&](const std::vector<double>& point) {
    for (int d = 0; d < k; ++d) p[d] = point[d];
    const double val = (obj.weights * p).sum() - obj.reward * obj.success(p);
    if (val < best) {
      best = val;
      best_p = p;
    }
  };
  for_each_point(axes, eval);

  for (int round = 0; round < spec.refine_rounds; ++round) {
    std::vector<std::vector<double>> zoom(k);
    for (int d = 0; d < k; ++d) {
      const double step = obj.p_max[d] / std::max(1, per_axis - 1) /
                          std::pow(static_cast<double>(spec.refine_points - 1) / 2.0,
                                   static_cast<double>(round));
      zoom[d] = linspace(std::max(0.0, best_p[d] - step), std::min(obj.p_max[d], best_p[d] + step),
                         spec.refine_points);
      zoom[d].push_back(best_p[d]);
      std::sort(zoom[d].begin(), zoom[d].end());
    }
    for_each_point(zoom, eval);
  }

  if (best_powers) *best_powers = best_p;
  return best;
}

}  // namespace oracle
}  // namespace coop
