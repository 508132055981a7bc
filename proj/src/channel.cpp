#include "coop/channel.hpp"

#include <algorithm>

namespace coop {

std::vector<int> CellGrid::neighbors(int cell) const {
  std::vector<int> out;
  const int r = cell / cols;
  const int c = cell % cols;
  if (r > 0) out.push_back(cell - cols);
  if (r + 1 < rows) out.push_back(cell + cols);
  if (c > 0) out.push_back(cell - 1);
  if (c + 1 < cols) out.push_back(cell + 1);
  return out;
}

bool CellGrid::adjacent(int a, int b) const {
  const int ra = a / cols, ca = a % cols;
  const int rb = b / cols, cb = b % cols;
  return std::abs(ra - rb) + std::abs(ca - cb) == 1;
}

MobilityModel step_mobility(const MobilityModel& model, const CellGrid& grid, Rng& rng) {
  MobilityModel next = model;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t n = 0; n < next.node_cell.size(); ++n) {
    if (coin(rng) < model.stay_probability) continue;
    const auto adj = grid.neighbors(model.node_cell[n]);
    if (adj.empty()) continue;  // one-cell grid: forced stay
    std::uniform_int_distribution<std::size_t> pick(0, adj.size() - 1);
    next.node_cell[n] = adj[pick(rng)];
  }
  return next;
}

std::vector<int> relay_set(const MobilityModel& mobility, const CellGrid& grid, int source_cell,
                           RelayEligibility eligibility) {
  std::vector<int> out;
  for (std::size_t n = 0; n < mobility.node_cell.size(); ++n) {
    const int cell = mobility.node_cell[n];
    const bool ok = cell == source_cell ||
                    (eligibility == RelayEligibility::SameOrAdjacent &&
                     grid.adjacent(cell, source_cell));
    if (ok) out.push_back(static_cast<int>(n));
  }
  return out;
}

ChannelState sample_channel_state(int source_cell, const MobilityModel& mobility,
                                  const FadingModel& fading, const CellGrid& grid, Rng& rng,
                                  long slot, RelayEligibility eligibility) {
  ChannelState state;
  state.slot = slot;
  state.relays = relay_set(mobility, grid, source_cell, eligibility);
  const int m = state.relay_count();
  state.gain_sr.resize(m);
  state.gain_rd.resize(m);

  auto draw = [&rng](double mean) {
    std::exponential_distribution<double> exp_dist(1.0 / mean);
    return exp_dist(rng);
  };
  state.gain_sd = draw(fading.mean_to_dest);
  for (int i = 0; i < m; ++i) {
    const bool co_located = mobility.node_cell[state.relays[i]] == source_cell;
    state.gain_sr[i] = draw(co_located ? fading.mean_same_cell : fading.mean_adjacent);
    state.gain_rd[i] = draw(fading.mean_to_dest);
  }
  return state;
}

}  // namespace coop
