#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coop/channel.hpp"

using namespace coop;

TEST_CASE("grid neighbors and adjacency") {
  CellGrid g{3, 3, 0};
  CHECK(g.cell_count() == 9);
  auto corner = g.neighbors(0);
  std::sort(corner.begin(), corner.end());
  CHECK(corner == std::vector<int>{1, 3});
  auto center = g.neighbors(4);
  std::sort(center.begin(), center.end());
  CHECK(center == std::vector<int>{1, 3, 5, 7});
  CHECK(g.adjacent(2, 5));
  CHECK_FALSE(g.adjacent(2, 3));  // row wrap is not adjacency
  CHECK_FALSE(g.adjacent(4, 4));
}

TEST_CASE("mobility: stay probability one is a fixed point") {
  CellGrid g{3, 3, 0};
  MobilityModel m{1.0, {0, 4, 8}};
  Rng rng(7);
  for (int t = 0; t < 50; ++t) m = step_mobility(m, g, rng);
  CHECK(m.node_cell == std::vector<int>{0, 4, 8});
}

TEST_CASE("mobility: 1x1 grid has nowhere to go") {
  CellGrid g{1, 1, 0};
  MobilityModel m{0.0, {0}};
  Rng rng(3);
  m = step_mobility(m, g, rng);
  CHECK(m.node_cell[0] == 0);
}

TEST_CASE("mobility: moves land on adjacent cells only") {
  CellGrid g{3, 3, 0};
  MobilityModel m{0.5, {4}};
  Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    const int before = m.node_cell[0];
    m = step_mobility(m, g, rng);
    const int after = m.node_cell[0];
    CHECK((after == before || g.adjacent(before, after)));
  }
}

TEST_CASE("mobility: empirical stay fraction matches 0.8") {
  CellGrid g{3, 3, 0};
  MobilityModel m{0.8, {4}};
  Rng rng(19);
  const int n = 200000;
  int stays = 0;
  for (int t = 0; t < n; ++t) {
    const int before = m.node_cell[0];
    m = step_mobility(m, g, rng);
    if (m.node_cell[0] == before) ++stays;
  }
  CHECK(std::abs(static_cast<double>(stays) / n - 0.8) < 0.01);
}

TEST_CASE("relay set: same-cell vs adjacent eligibility") {
  CellGrid g{3, 3, 0};
  MobilityModel m{0.8, {4, 1, 8, 4}};
  auto same = relay_set(m, g, 4, RelayEligibility::SameCell);
  CHECK(same == std::vector<int>{0, 3});
  auto adj = relay_set(m, g, 4, RelayEligibility::SameOrAdjacent);
  CHECK(adj == std::vector<int>{0, 1, 3});
}

TEST_CASE("channel sampling: shape, determinism, exponential law") {
  CellGrid g{3, 3, 0};
  MobilityModel m{0.8, {4, 4, 0}};
  FadingModel fading{2.0, 1.0, 0.5};

  Rng r1(42), r2(42);
  auto a = sample_channel_state(4, m, fading, g, r1, 17);
  auto b = sample_channel_state(4, m, fading, g, r2, 17);
  CHECK(a.slot == 17);
  CHECK(a.relays == std::vector<int>{0, 1});
  CHECK(a.gain_sd == b.gain_sd);
  CHECK((a.gain_sr == b.gain_sr).all());
  CHECK((a.gain_rd == b.gain_rd).all());

  // Law of large numbers on the configured exponential means.
  Rng rng(5);
  const int n = 400000;
  double sum_sr = 0.0, sum_sd = 0.0, tail = 0.0;
  const double tau = 1.0;
  for (int t = 0; t < n; ++t) {
    auto st = sample_channel_state(4, m, fading, g, rng, t);
    sum_sr += st.gain_sr[0];
    sum_sd += st.gain_sd;
    if (st.gain_sr[0] >= tau) tail += 1.0;
  }
  CHECK(std::abs(sum_sr / n - 2.0) < 0.02);
  CHECK(std::abs(sum_sd / n - 0.5) < 0.01);
  const double p = std::exp(-tau / 2.0);
  const double sigma = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(tail / n - p) < 4 * sigma + 1e-12);
}

TEST_CASE("channel sampling: no eligible relays") {
  CellGrid g{3, 3, 0};
  MobilityModel m{0.8, {0, 1}};
  FadingModel fading;
  Rng rng(1);
  auto st = sample_channel_state(8, m, fading, g, rng);
  CHECK(st.relay_count() == 0);
  CHECK(st.gain_sr.size() == 0);
  CHECK(st.gain_sd >= 0.0);
}
