#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace coop {

using Rng = std::mt19937_64;

// Rectangular cell topology with 4-neighbor adjacency, no wraparound.
struct CellGrid {
  int rows = 3;
  int cols = 3;
  int base_station_cell = 0;

  int cell_count() const { return rows * cols; }
  bool valid(int cell) const { return cell >= 0 && cell < cell_count(); }
  std::vector<int> neighbors(int cell) const;
  bool adjacent(int a, int b) const;
};

enum class RelayEligibility { SameCell, SameOrAdjacent };

// Positions of the mobile relay nodes plus the random-walk stay probability.
struct MobilityModel {
  double stay_probability = 0.8;
  std::vector<int> node_cell;  // cell index per relay node
};

// Noise-normalized Rayleigh fading: gain-squared values are exponential.
struct FadingModel {
  double mean_same_cell = 1.0;   // source-relay links, co-located
  double mean_adjacent = 1.0;    // source-relay links, adjacent cell
  double mean_to_dest = 1.0;     // any node to the base station
};

// Per-slot network observation: eligible relays and the active link gains.
struct ChannelState {
  long slot = 0;
  std::vector<int> relays;   // relay node ids eligible this slot
  double gain_sd = 0.0;      // |h_sd|^2
  Eigen::ArrayXd gain_sr;    // |h_si|^2, parallel to relays
  Eigen::ArrayXd gain_rd;    // |h_id|^2, parallel to relays

  int relay_count() const { return static_cast<int>(relays.size()); }
};

// One step of the per-node Markov random walk. Each node stays with
// stay_probability, otherwise moves to a uniformly chosen adjacent cell.
MobilityModel step_mobility(const MobilityModel& model, const CellGrid& grid, Rng& rng);

// Relay nodes currently eligible to cooperate with a source in source_cell.
std::vector<int> relay_set(const MobilityModel& mobility, const CellGrid& grid, int source_cell,
                           RelayEligibility eligibility = RelayEligibility::SameCell);

// Draws fresh block-fading gains for all links active this slot.
ChannelState sample_channel_state(int source_cell, const MobilityModel& mobility,
                                  const FadingModel& fading, const CellGrid& grid, Rng& rng,
                                  long slot = 0,
                                  RelayEligibility eligibility = RelayEligibility::SameCell);

}  // namespace coop
