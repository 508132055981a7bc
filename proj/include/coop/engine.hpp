#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coop/channel.hpp"
#include "coop/controller.hpp"
#include "coop/solver.hpp"

namespace coop {

enum class Strategy { Optimal, DirectOnly, CoopOnly };

// How sources share the medium. Orthogonal gives every source its own
// channel each slot; the TDMA variants grant one transmission opportunity
// per slot and drop other sources' packets.
enum class MediumAccess { Orthogonal, TdmaRoundRobin, TdmaRandom };

const char* to_string(Strategy s);

struct SourceSpec {
  int cell = 0;
  double lambda = 0.5;
  double rho = 0.98;
  double alpha = 0.0;
};

struct SimConfig {
  CellGrid grid;
  int relay_count = 7;
  std::vector<int> relay_cells;  // initial cells; empty -> round-robin spread
  double stay_probability = 0.8;
  std::vector<SourceSpec> sources;
  FadingModel fading;
  RelayEligibility eligibility = RelayEligibility::SameCell;
  Scheme scheme = Scheme::RegDfOrtho;
  LinkBudget budget;
  double p_avg = 1.0;
  double p_max = 10.0;
  double beta = 1.0;
  double v = 100.0;
  long slots = 500000;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::Optimal;
  MediumAccess access = MediumAccess::Orthogonal;
  int af_grid_points = 100;
  double burn_in_fraction = 0.5;
  // When set, the cooperative mode is infeasible on slots with no eligible
  // relay instead of degenerating to a full-width single mini-slot.
  bool coop_requires_relay = false;

  int source_count() const { return static_cast<int>(sources.size()); }
  int node_count() const { return source_count() + relay_count; }
  void validate() const;  // throws std::invalid_argument on bad fields
};

struct SlotTrace {
  long slot = 0;
  int source = 0;
  bool arrival = false;
  bool success = false;
  Mode mode = Mode::Idle;
  double source_power = 0.0;
  double relay_power = 0.0;
  double z = 0.0;
};

struct Metrics {
  long horizon = 0;
  long window_start = 0;

  // Windowed (post burn-in) statistics used for reporting.
  std::vector<double> delivered_fraction;  // per source, deliveries / window
  std::vector<double> arrival_rate;        // per source
  std::vector<double> avg_power;           // per node
  double avg_sum_power = 0.0;
  double avg_z = 0.0;  // time average of mean-over-sources Z
  double avg_x = 0.0;

  // Full-horizon sums and final values for the telescoping identities.
  std::vector<double> deliveries_total;  // per source
  std::vector<double> arrivals_total;    // per source
  std::vector<double> power_total;       // per node
  std::vector<double> final_z;
  std::vector<double> final_x;
  double max_z = 0.0;
  double max_x = 0.0;

  double objective = 0.0;  // sum_s alpha_s r_s - sum_i beta_i e_i (windowed)
};

using TraceSink = std::function<void(const SlotTrace&)>;

// Executes the slotted simulation: arrivals, source scheduling, mobility,
// channel sampling, the drift-plus-penalty decision, outcome realization,
// queue updates, and metric accumulation.
Metrics run(const SimConfig& config, const TraceSink& trace = nullptr);

struct SweepPoint {
  double v = 0.0;
  Metrics metrics;
};

std::vector<SweepPoint> sweep_v(const SimConfig& config, const std::vector<double>& v_list);

struct FeasibilityVerdict {
  bool feasible = false;
  std::vector<bool> reliability_ok;  // per source
  std::vector<bool> power_ok;        // per node
};

FeasibilityVerdict check_feasibility(const Metrics& metrics, const SimConfig& config, double tol);

ControllerParams controller_params(const SimConfig& config);

}  // namespace coop
