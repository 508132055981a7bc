#pragma once

#include <random>
#include <vector>

#include "coop/solver.hpp"

namespace coop::testutil {

inline ChannelState make_state(double gain_sd, const std::vector<double>& gain_sr,
                               const std::vector<double>& gain_rd) {
  ChannelState st;
  st.gain_sd = gain_sd;
  const int m = static_cast<int>(gain_sr.size());
  st.gain_sr.resize(m);
  st.gain_rd.resize(m);
  for (int i = 0; i < m; ++i) {
    st.relays.push_back(i);
    st.gain_sr[i] = gain_sr[i];
    st.gain_rd[i] = gain_rd[i];
  }
  return st;
}

// Random solver instance with occasional dead links and varied queue loads.
struct InstanceGen {
  std::mt19937_64 rng;
  explicit InstanceGen(std::uint64_t seed) : rng(seed) {}

  double gain() {
    std::uniform_real_distribution<double> dead(0.0, 1.0);
    if (dead(rng) < 0.05) return 0.0;
    std::exponential_distribution<double> e(1.0);
    return e(rng);
  }

  ChannelState state(int m) {
    std::vector<double> sr(m), rd(m);
    for (int i = 0; i < m; ++i) {
      sr[i] = gain();
      rd[i] = gain();
    }
    return make_state(gain(), sr, rd);
  }

  SolverInput input(const ChannelState& st, Scheme scheme) {
    std::uniform_real_distribution<double> q(0.0, 5.0);
    std::uniform_real_distribution<double> reward(0.0, 40.0);
    SolverInput in = make_solver_input(st, {1.0, 1.0}, scheme, reward(rng), q(rng),
                                       Eigen::ArrayXd::Zero(st.relay_count()), 1.0, 0.0, 1.0,
                                       10.0);
    for (int i = 0; i < st.relay_count(); ++i) in.x_r[i] = q(rng);
    return in;
  }
};

}  // namespace coop::testutil
