#pragma once

#include <Eigen/Dense>

#include "coop/channel.hpp"

namespace coop {

// Cooperative second-phase signaling choices. Orthogonal schemes split the
// slot into m+1 equal mini-slots; DSTC schemes use two half-slots.
enum class Scheme { RegDfOrtho, NonRegDfOrtho, AfOrtho, DfDstc, AfDstc };

enum class Mode { Idle, Direct, Multihop, Cooperative };

bool is_af(Scheme s);
bool is_dstc(Scheme s);
const char* to_string(Scheme s);
const char* to_string(Mode m);

// Bandwidth W (symbols/slot) and target rate R (bits/slot).
struct LinkBudget {
  double bandwidth = 1.0;
  double rate = 1.0;
};

// Slot-structure scaling factor: m for orthogonal schemes, 2 for DSTC.
// An orthogonal slot with no relays degenerates to a single full-width
// mini-slot (scaling 1).
double slot_scaling(Scheme scheme, int relay_count);

// Phase powers for one transmission. relay_powers is parallel to the
// channel state's relay list; unused entries are zero.
struct PowerAllocation {
  double source_power = 0.0;
  Eigen::ArrayXd relay_powers;

  static PowerAllocation zeros(int relay_count);
};

// Gain-squared threshold above which a relay decodes the first phase:
// (W/kappa) log2(1 + kappa P_s g / W) >= R  <=>  g >= tau.
double decode_threshold(double source_power, const LinkBudget& budget, double kappa);

// Indices (into state.relays) of relays that decode the first phase.
std::vector<int> decode_set(double source_power, const ChannelState& state,
                            const LinkBudget& budget, Scheme scheme);

// Total end-of-slot mutual information in bits/slot. decode_relays indexes
// into state.relays and is ignored for AF schemes (all relays amplify).
double mutual_information(Mode mode, Scheme scheme, const PowerAllocation& alloc,
                          const std::vector<int>& decode_relays, const ChannelState& state,
                          const LinkBudget& budget);

// Tolerance below R at which a transmission still counts as successful;
// absorbs the equality-constrained optima of the per-mode solvers.
inline constexpr double kMiSlack = 1e-9;

// Realized success indicator for a control action. DF relays contribute only
// if they hold power and decoded the first phase; AF relays always amplify.
// For multihop, the single powered relay must decode at half-slot scaling.
bool outcome(Mode mode, Scheme scheme, const PowerAllocation& alloc, const ChannelState& state,
             const LinkBudget& budget);

}  // namespace coop
