#include "coop/phy.hpp"

#include <cmath>
#include <limits>

namespace coop {

bool is_af(Scheme s) { return s == Scheme::AfOrtho || s == Scheme::AfDstc; }
bool is_dstc(Scheme s) { return s == Scheme::DfDstc || s == Scheme::AfDstc; }

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::RegDfOrtho: return "regdf-ortho";
    case Scheme::NonRegDfOrtho: return "nonregdf-ortho";
    case Scheme::AfOrtho: return "af-ortho";
    case Scheme::DfDstc: return "df-dstc";
    case Scheme::AfDstc: return "af-dstc";
  }
  return "?";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Idle: return "idle";
    case Mode::Direct: return "direct";
    case Mode::Multihop: return "multihop";
    case Mode::Cooperative: return "cooperative";
  }
  return "?";
}

double slot_scaling(Scheme scheme, int relay_count) {
  if (is_dstc(scheme)) return 2.0;
  return relay_count > 0 ? static_cast<double>(relay_count) : 1.0;
}

PowerAllocation PowerAllocation::zeros(int relay_count) {
  PowerAllocation a;
  a.relay_powers = Eigen::ArrayXd::Zero(relay_count);
  return a;
}

double decode_threshold(double source_power, const LinkBudget& budget, double kappa) {
  if (source_power <= 0.0) return std::numeric_limits<double>::infinity();
  const double w = budget.bandwidth;
  return (w / (kappa * source_power)) * (std::exp2(budget.rate * kappa / w) - 1.0);
}

std::vector<int> decode_set(double source_power, const ChannelState& state,
                            const LinkBudget& budget, Scheme scheme) {
  std::vector<int> out;
  const int m = state.relay_count();
  if (m == 0 || source_power <= 0.0) return out;
  // Relative slack mirrors kMiSlack: a relay sitting exactly on the decode
  // floor must not lose to one rounding error in the threshold.
  const double tau = decode_threshold(source_power, budget, slot_scaling(scheme, m));
  for (int i = 0; i < m; ++i) {
    if (state.gain_sr[i] >= tau * (1.0 - 1e-9)) out.push_back(i);
  }
  return out;
}

namespace {

double log_term(double w, double kappa, double snr) {
  return (w / kappa) * std::log2(1.0 + snr);
}

}  // namespace

double mutual_information(Mode mode, Scheme scheme, const PowerAllocation& alloc,
                          const std::vector<int>& decode_relays, const ChannelState& state,
                          const LinkBudget& budget) {
  const double w = budget.bandwidth;
  switch (mode) {
    case Mode::Idle:
      return 0.0;
    case Mode::Direct:
      return w * std::log2(1.0 + alloc.source_power * state.gain_sd / w);
    case Mode::Multihop: {
      // Half-slot relaying; the destination ignores the first-phase signal.
      double snr = 0.0;
      for (int i : decode_relays) snr += 2.0 * alloc.relay_powers[i] * state.gain_rd[i] / w;
      return log_term(w, 2.0, snr);
    }
    case Mode::Cooperative:
      break;
  }

  const int m = state.relay_count();
  const double kappa = slot_scaling(scheme, m);
  switch (scheme) {
    case Scheme::RegDfOrtho:
    case Scheme::DfDstc: {
      double snr = kappa * alloc.source_power * state.gain_sd / w;
      for (int i : decode_relays) snr += kappa * alloc.relay_powers[i] * state.gain_rd[i] / w;
      return log_term(w, kappa, snr);
    }
    case Scheme::NonRegDfOrtho: {
      double mi = log_term(w, kappa, kappa * alloc.source_power * state.gain_sd / w);
      for (int i : decode_relays)
        mi += log_term(w, kappa, kappa * alloc.relay_powers[i] * state.gain_rd[i] / w);
      return mi;
    }
    case Scheme::AfOrtho:
    case Scheme::AfDstc: {
      const double ps = alloc.source_power;
      double sum = state.gain_sd;
      for (int i = 0; i < m; ++i) {
        const double denom = ps * state.gain_sr[i] + alloc.relay_powers[i] * state.gain_rd[i] +
                             w / kappa;
        if (denom > 0.0)
          sum += alloc.relay_powers[i] * state.gain_sr[i] * state.gain_rd[i] / denom;
      }
      return log_term(w, kappa, kappa * ps * sum / w);
    }
  }
  return 0.0;
}

bool outcome(Mode mode, Scheme scheme, const PowerAllocation& alloc, const ChannelState& state,
             const LinkBudget& budget) {
  if (mode == Mode::Idle) return false;

  std::vector<int> active;
  if (mode == Mode::Multihop) {
    const double tau = decode_threshold(alloc.source_power, budget, 2.0);
    for (int i = 0; i < state.relay_count(); ++i) {
      if (alloc.relay_powers.size() > i && alloc.relay_powers[i] > 0.0 &&
          state.gain_sr[i] >= tau * (1.0 - 1e-9))
        active.push_back(i);
    }
  } else if (mode == Mode::Cooperative && !is_af(scheme)) {
    for (int i : decode_set(alloc.source_power, state, budget, scheme)) {
      if (alloc.relay_powers.size() > i && alloc.relay_powers[i] > 0.0) active.push_back(i);
    }
  }
  const double mi = mutual_information(mode, scheme, alloc, active, state, budget);
  return mi >= budget.rate - kMiSlack;
}

}  // namespace coop
