// coopsim: experiment driver around the coop library. Subcommands:
//   simulate     one run, metrics.csv (+ trace.csv with --trace)
//   sweep-v      rerun over a list of V values, sweep.csv
//   feasibility  (lambda, rho) pairs x strategies verdict matrix, feasibility.csv
//   solve-slot   per-mode cost table for a hand-written channel state
//   dp-estimate  two-stage cost-to-go: exact value, MC estimate, error bound
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coop/dp.hpp"
#include "coop/engine.hpp"
#include "coop/oracle.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

const json& require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) bad_key(key, "missing");
  return j.at(key);
}

double num(const json& j, const std::string& key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number()) bad_key(key, "expected a number");
  return j.at(key).get<double>();
}

long integer(const json& j, const std::string& key, long fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) bad_key(key, "expected an integer");
  return j.at(key).get<long>();
}

bool boolean(const json& j, const std::string& key, bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) bad_key(key, "expected a boolean");
  return j.at(key).get<bool>();
}

std::string text(const json& j, const std::string& key, const std::string& fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_string()) bad_key(key, "expected a string");
  return j.at(key).get<std::string>();
}

Eigen::ArrayXd array_of(const json& j, const std::string& key, int expect = -1) {
  if (!j.is_object() || !j.contains(key)) bad_key(key, "missing");
  const json& a = j.at(key);
  if (!a.is_array()) bad_key(key, "expected an array of numbers");
  Eigen::ArrayXd out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) bad_key(key, "expected an array of numbers");
    out[i] = a[i].get<double>();
  }
  if (expect >= 0 && out.size() != expect) bad_key(key, "wrong length");
  return out;
}

coop::Scheme scheme_from(const std::string& name) {
  if (name == "regdf-ortho") return coop::Scheme::RegDfOrtho;
  if (name == "nonregdf-ortho") return coop::Scheme::NonRegDfOrtho;
  if (name == "af-ortho") return coop::Scheme::AfOrtho;
  if (name == "df-dstc") return coop::Scheme::DfDstc;
  if (name == "af-dstc") return coop::Scheme::AfDstc;
  bad_key("scheme", "unknown scheme '" + name + "'");
}

coop::Strategy strategy_from(const std::string& name) {
  if (name == "optimal") return coop::Strategy::Optimal;
  if (name == "direct") return coop::Strategy::DirectOnly;
  if (name == "cooperate") return coop::Strategy::CoopOnly;
  bad_key("strategy", "unknown strategy '" + name + "'");
}

coop::SimConfig sim_config_from(const json& j) {
  coop::SimConfig c;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    c.grid.rows = static_cast<int>(integer(g, "rows", 3));
    c.grid.cols = static_cast<int>(integer(g, "cols", 3));
  }
  c.relay_count = static_cast<int>(integer(j, "relay_count", 7));
  if (j.contains("relay_cells")) {
    const Eigen::ArrayXd cells = array_of(j, "relay_cells");
    for (int i = 0; i < cells.size(); ++i) c.relay_cells.push_back(static_cast<int>(cells[i]));
  }
  c.stay_probability = num(j, "stay_probability", 0.8);

  c.sources.clear();
  const json& sources = require(j, "sources");
  if (!sources.is_array() || sources.empty()) bad_key("sources", "expected a non-empty array");
  for (const json& s : sources) {
    coop::SourceSpec spec;
    spec.cell = static_cast<int>(integer(s, "cell", 0));
    spec.lambda = num(s, "lambda", 0.5);
    spec.rho = num(s, "rho", 0.98);
    spec.alpha = num(s, "alpha", 0.0);
    c.sources.push_back(spec);
  }

  if (j.contains("fading")) {
    const json& f = j.at("fading");
    c.fading.mean_same_cell = num(f, "mean_same_cell", 1.0);
    c.fading.mean_adjacent = num(f, "mean_adjacent", 1.0);
    c.fading.mean_to_dest = num(f, "mean_to_dest", 1.0);
  }
  const std::string elig = text(j, "eligibility", "same-cell");
  if (elig == "same-cell")
    c.eligibility = coop::RelayEligibility::SameCell;
  else if (elig == "same-or-adjacent")
    c.eligibility = coop::RelayEligibility::SameOrAdjacent;
  else
    bad_key("eligibility", "unknown value '" + elig + "'");

  c.scheme = scheme_from(text(j, "scheme", "regdf-ortho"));
  c.budget.bandwidth = num(j, "bandwidth", 1.0);
  c.budget.rate = num(j, "rate", 1.0);
  c.p_avg = num(j, "p_avg", 1.0);
  c.p_max = num(j, "p_max", 10.0);
  c.beta = num(j, "beta", 1.0);
  c.v = num(j, "v", 100.0);
  c.slots = integer(j, "slots", 500000);
  c.seed = static_cast<std::uint64_t>(integer(j, "seed", 1));
  c.strategy = strategy_from(text(j, "strategy", "optimal"));

  const std::string access = text(j, "access", "orthogonal");
  if (access == "orthogonal")
    c.access = coop::MediumAccess::Orthogonal;
  else if (access == "tdma-rr")
    c.access = coop::MediumAccess::TdmaRoundRobin;
  else if (access == "tdma-random")
    c.access = coop::MediumAccess::TdmaRandom;
  else
    bad_key("access", "unknown value '" + access + "'");

  c.af_grid_points = static_cast<int>(integer(j, "af_grid_points", 100));
  c.burn_in_fraction = num(j, "burn_in_fraction", 0.5);
  c.coop_requires_relay = boolean(j, "coop_requires_relay", false);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config invalid: ") + e.what());
  }
  return c;
}

// FNV-1a over the canonical dump of the merged config.
std::string config_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct CsvWriter {
  std::ofstream out;
  CsvWriter(const std::filesystem::path& path, const std::string& header) {
    out.open(path, std::ios::binary);  // binary: LF newlines everywhere
    if (!out) throw ConfigError("cannot open output file " + path.string());
    out << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  }
};

// Applies one "a.b.0.c=value" override onto the config tree.
void apply_override(json& j, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) bad_key(kv, "override must be key=value");
  const std::string path = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // unquoted strings
  }

  json* node = &j;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) bad_key(path, "empty override path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (node->is_array()) {
      const std::size_t idx = std::stoul(p);
      if (idx >= node->size()) bad_key(path, "array index out of range");
      node = &(*node)[idx];
    } else {
      if (!node->contains(p)) (*node)[p] = json::object();
      node = &(*node)[p];
    }
  }
  const std::string& last = parts.back();
  if (node->is_array()) {
    const std::size_t idx = std::stoul(last);
    if (idx >= node->size()) bad_key(path, "array index out of range");
    (*node)[idx] = value;
  } else {
    (*node)[last] = value;
  }
}

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  long seed = -1;
  bool trace = false;
  bool oracle = false;
};

json load_config(const Common& common) {
  json j;
  if (common.config_path.empty()) {
    j = json::object();
  } else {
    std::ifstream in(common.config_path);
    if (!in) throw ConfigError("cannot read config file " + common.config_path);
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("config parse error in " + common.config_path + ": " + e.what());
    }
  }
  for (const std::string& kv : common.overrides) apply_override(j, kv);
  if (common.seed >= 0) j["seed"] = common.seed;
  return j;
}

std::filesystem::path out_path(const Common& common, const std::string& name) {
  std::filesystem::create_directories(common.out_dir);
  return std::filesystem::path(common.out_dir) / name;
}

// Echo of the merged config (file + overrides + --seed); re-running against
// the echo reproduces the CSV output byte for byte.
void echo_config(const Common& common, const json& j) {
  std::ofstream out(out_path(common, "config.json"), std::ios::binary);
  out << j.dump(2) << "\n";
}

void write_metrics_csv(const Common& common, const json& j, const coop::SimConfig& c,
                       const coop::Metrics& m, const std::string& name = "metrics.csv") {
  const std::string hash = config_hash(j);
  const std::string seed = std::to_string(c.seed);
  CsvWriter csv(out_path(common, name),
                "seed,config_hash,source,arrival_rate,delivered_fraction,reliability_ratio,"
                "avg_z,final_z,max_z,avg_sum_power,avg_x,objective");
  for (int s = 0; s < c.source_count(); ++s) {
    const double ratio =
        m.arrival_rate[s] > 0.0 ? m.delivered_fraction[s] / m.arrival_rate[s] : 1.0;
    csv.row({seed, hash, std::to_string(s), fmt9(m.arrival_rate[s]),
             fmt9(m.delivered_fraction[s]), fmt9(ratio), fmt9(m.avg_z), fmt9(m.final_z[s]),
             fmt9(m.max_z), fmt9(m.avg_sum_power), fmt9(m.avg_x), fmt9(m.objective)});
  }
}

int cmd_simulate(const Common& common) {
  const json j = load_config(common);
  echo_config(common, j);
  coop::SimConfig c = sim_config_from(j);

  std::unique_ptr<CsvWriter> trace_csv;
  coop::TraceSink sink;
  if (common.trace) {
    trace_csv = std::make_unique<CsvWriter>(
        out_path(common, "trace.csv"),
        "seed,config_hash,slot,source,arrival,success,mode,source_power,relay_power,z");
    const std::string hash = config_hash(j);
    const std::string seed = std::to_string(c.seed);
    sink = [&, hash, seed](const coop::SlotTrace& t) {
      trace_csv->row({seed, hash, std::to_string(t.slot), std::to_string(t.source),
                      t.arrival ? "1" : "0", t.success ? "1" : "0", coop::to_string(t.mode),
                      fmt9(t.source_power), fmt9(t.relay_power), fmt9(t.z)});
    };
  }

  const coop::Metrics m = coop::run(c, sink);
  write_metrics_csv(common, j, c, m);

  const coop::FeasibilityVerdict verdict =
      coop::check_feasibility(m, c, num(j, "feasibility_tol", 5e-3));
  std::printf("horizon %ld slots, window start %ld, scheme %s, V %.4f\n", m.horizon,
              m.window_start, coop::to_string(c.scheme), c.v);
  for (int s = 0; s < c.source_count(); ++s) {
    const double ratio =
        m.arrival_rate[s] > 0.0 ? m.delivered_fraction[s] / m.arrival_rate[s] : 1.0;
    std::printf("source %d: arrivals %.4f delivered %.4f reliability %.4f (target %.4f) %s\n", s,
                m.arrival_rate[s], m.delivered_fraction[s], ratio, c.sources[s].rho,
                verdict.reliability_ok[s] ? "ok" : "VIOLATED");
  }
  std::printf("avg sum power %.4f (budget %.4f per node), avg Z %.4f, avg X %.4f\n",
              m.avg_sum_power, c.p_avg, m.avg_z, m.avg_x);
  std::printf("feasible: %s\n", verdict.feasible ? "yes" : "no");
  return 0;
}

int cmd_sweep_v(const Common& common) {
  const json j = load_config(common);
  echo_config(common, j);
  coop::SimConfig c = sim_config_from(j);
  std::vector<double> v_list{1, 5, 10, 20, 50, 100};
  if (j.contains("v_list")) {
    const Eigen::ArrayXd vs = array_of(j, "v_list");
    v_list.assign(vs.data(), vs.data() + vs.size());
  }

  const auto points = coop::sweep_v(c, v_list);
  const std::string hash = config_hash(j);
  CsvWriter csv(out_path(common, "sweep.csv"),
                "seed,config_hash,v,avg_sum_power,avg_z,avg_x,min_reliability_ratio");
  std::printf("%8s %14s %10s %10s %12s\n", "V", "avg_sum_pwr", "avg_Z", "avg_X", "reliability");
  for (std::size_t k = 0; k < points.size(); ++k) {
    const coop::Metrics& m = points[k].metrics;
    double min_ratio = 1.0;
    for (int s = 0; s < c.source_count(); ++s) {
      if (m.arrival_rate[s] > 0.0)
        min_ratio = std::min(min_ratio, m.delivered_fraction[s] / m.arrival_rate[s]);
    }
    csv.row({std::to_string(c.seed + k), hash, fmt9(points[k].v), fmt9(m.avg_sum_power),
             fmt9(m.avg_z), fmt9(m.avg_x), fmt9(min_ratio)});
    std::printf("%8.2f %14.4f %10.4f %10.4f %12.4f\n", points[k].v, m.avg_sum_power, m.avg_z,
                m.avg_x, min_ratio);
  }
  return 0;
}

int cmd_feasibility(const Common& common) {
  const json j = load_config(common);
  echo_config(common, j);
  coop::SimConfig base = sim_config_from(j);
  const double tol = num(j, "feasibility_tol", 5e-3);

  std::vector<std::pair<double, double>> pairs{{0.1, 0.9},  {0.2, 0.9},  {0.2, 0.95},
                                               {0.5, 0.95}, {0.5, 0.98}, {0.6, 0.98},
                                               {0.7, 0.99}};
  if (j.contains("pairs")) {
    const json& p = j.at("pairs");
    if (!p.is_array()) bad_key("pairs", "expected an array of [lambda, rho] pairs");
    pairs.clear();
    for (const json& e : p) {
      if (!e.is_array() || e.size() != 2) bad_key("pairs", "expected [lambda, rho] entries");
      pairs.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  }

  const std::string hash = config_hash(j);
  CsvWriter csv(out_path(common, "feasibility.csv"),
                "seed,config_hash,lambda,rho,strategy,min_reliability_ratio,max_avg_power,"
                "feasible");
  std::printf("%6s %6s | %-10s %-10s %-10s\n", "lambda", "rho", "direct", "cooperate", "optimal");
  for (const auto& [lambda, rho] : pairs) {
    std::printf("%6.2f %6.2f |", lambda, rho);
    for (coop::Strategy strat :
         {coop::Strategy::DirectOnly, coop::Strategy::CoopOnly, coop::Strategy::Optimal}) {
      coop::SimConfig c = base;
      c.strategy = strat;
      for (auto& s : c.sources) {
        s.lambda = lambda;
        s.rho = rho;
      }
      const coop::Metrics m = coop::run(c);
      const coop::FeasibilityVerdict verdict = coop::check_feasibility(m, c, tol);
      double min_ratio = 1.0;
      double max_power = 0.0;
      for (int s = 0; s < c.source_count(); ++s) {
        if (m.arrival_rate[s] > 0.0)
          min_ratio = std::min(min_ratio, m.delivered_fraction[s] / m.arrival_rate[s]);
      }
      for (double p : m.avg_power) max_power = std::max(max_power, p);
      csv.row({std::to_string(c.seed), hash, fmt9(lambda), fmt9(rho), coop::to_string(strat),
               fmt9(min_ratio), fmt9(max_power), verdict.feasible ? "1" : "0"});
      std::printf(" %-10s", verdict.feasible ? "yes" : "no");
    }
    std::printf("\n");
  }
  return 0;
}

int cmd_solve_slot(const Common& common) {
  const json j = load_config(common);
  const json& slot = require(j, "slot");

  coop::ChannelState state;
  state.gain_sd = num(slot, "gain_sd", 0.0);
  const Eigen::ArrayXd sr =
      slot.contains("gain_sr") ? array_of(slot, "gain_sr") : Eigen::ArrayXd(0);
  const Eigen::ArrayXd rd =
      slot.contains("gain_rd") ? array_of(slot, "gain_rd", static_cast<int>(sr.size()))
                               : Eigen::ArrayXd(0);
  if (sr.size() != rd.size()) bad_key("slot.gain_rd", "wrong length");
  state.gain_sr = sr;
  state.gain_rd = rd;
  for (int i = 0; i < sr.size(); ++i) state.relays.push_back(i);

  coop::LinkBudget budget{num(j, "bandwidth", 1.0), num(j, "rate", 1.0)};
  const int m = state.relay_count();
  Eigen::ArrayXd x_r = slot.contains("x_r") ? array_of(slot, "x_r", m)
                                            : Eigen::ArrayXd::Zero(m);
  coop::SolverInput in = coop::make_solver_input(
      state, budget, scheme_from(text(j, "scheme", "regdf-ortho")), num(slot, "z", 0.0),
      num(slot, "x_s", 0.0), x_r, num(j, "v", 100.0), num(slot, "alpha", 0.0),
      num(j, "beta", 1.0), num(j, "p_max", 10.0));
  in.af_grid_points = static_cast<int>(integer(j, "af_grid_points", 100));

  const coop::Decision d = coop::best_action(in);
  const char* labels[4] = {"idle", "direct", "multihop", "cooperative"};
  std::printf("per-mode metric values:\n");
  for (int i = 0; i < 4; ++i) {
    if (std::isinf(d.mode_costs[i]))
      std::printf("  %-12s infeasible\n", labels[i]);
    else
      std::printf("  %-12s %.6f\n", labels[i], d.mode_costs[i]);
  }
  if (!d.best.feasible()) {
    std::printf("no feasible action\n");
    return 0;
  }
  const coop::ControlAction& a = *d.best.action;
  std::printf("chosen: %s, cost %.6f, P_s %.6f", coop::to_string(a.mode), d.best.cost,
              a.alloc.source_power);
  // Direct and idle actions carry no relay entries.
  for (int i = 0; i < a.alloc.relay_powers.size(); ++i)
    std::printf(", P_%d %.6f", i + 1, a.alloc.relay_powers[i]);
  std::printf("\n");

  if (common.oracle) {
    coop::oracle::GridSpec spec;
    const coop::ModeCost ref = coop::oracle::grid_best_action(in, spec);
    std::printf("grid oracle: cost %.6f (delta %.2e)\n", ref.cost,
                std::abs(ref.cost - d.best.cost));
  }
  return 0;
}

int cmd_dp_estimate(const Common& common) {
  const json j = load_config(common);
  echo_config(common, j);
  const json& dp = require(j, "dp");
  const int m = static_cast<int>(integer(dp, "relay_count", 2));
  const int bins = static_cast<int>(integer(dp, "bins", 4));
  coop::LinkBudget budget{num(j, "bandwidth", 1.0), num(j, "rate", 1.0)};
  const coop::Scheme scheme = scheme_from(text(j, "scheme", "regdf-ortho"));

  coop::dp::FadingStats stats;
  stats.mean_sr = dp.contains("mean_sr") ? array_of(dp, "mean_sr", m)
                                         : Eigen::ArrayXd::Constant(m, 1.0);
  stats.mean_rd = dp.contains("mean_rd") ? array_of(dp, "mean_rd", m)
                                         : Eigen::ArrayXd::Constant(m, 1.0);
  stats.mean_sd = num(dp, "mean_sd", 1.0);

  coop::dp::DpWeights weights;
  weights.source_weight = num(dp, "source_weight", 1.0);
  weights.relay_weights = dp.contains("relay_weights")
                              ? array_of(dp, "relay_weights", m)
                              : Eigen::ArrayXd::Constant(m, 1.0);
  weights.relay_p_max = dp.contains("relay_p_max") ? array_of(dp, "relay_p_max", m)
                                                   : Eigen::ArrayXd::Constant(m, 10.0);
  weights.reward = num(dp, "reward", 10.0);

  const auto space = coop::dp::enumerate_outcomes(m, bins, budget);
  const int ps_points = static_cast<int>(integer(dp, "ps_points", 51));
  const auto sol = coop::dp::exact_dp(num(dp, "ps_max", 10.0), ps_points, space, weights, stats,
                                      budget, scheme,
                                      static_cast<int>(integer(dp, "points_per_relay", 50)));
  std::printf("outcome space: %ld outcomes (%d relays x %d bins)\n", space.size(), m, bins);
  std::printf("exact J0 = %.6f at P_s = %.4f\n", sol.best_value, sol.best_source_power);

  const auto problem = coop::dp::tabulate(sol.best_source_power, space, weights, stats, budget,
                                          scheme,
                                          static_cast<int>(integer(dp, "points_per_relay", 50)));
  const double variance = problem.variance();
  coop::Rng rng(static_cast<std::uint64_t>(integer(j, "seed", 1)));
  const long n = integer(dp, "mc_samples", 100000);
  const double est = coop::dp::mc_estimate(problem, n, rng);
  const double eps = num(dp, "eps", 0.1);
  std::printf("J0_est(n=%ld) = %.6f (|error| %.6f), sigma^2 = %.6f\n", n, est,
              std::abs(est - sol.best_value), variance);

  const std::string hash = config_hash(j);
  CsvWriter csv(out_path(common, "dp.csv"),
                "seed,config_hash,n,estimate,exact,chebyshev_bound_eps");
  std::printf("%10s %14s %22s\n", "n", "estimate", "P[|err|>eps] bound");
  for (long nk = 100; nk <= n; nk *= 10) {
    coop::Rng r(static_cast<std::uint64_t>(integer(j, "seed", 1)) + static_cast<std::uint64_t>(nk));
    const double e = coop::dp::mc_estimate(problem, nk, r);
    const double bound = coop::dp::chebyshev_bound(variance, nk, eps);
    csv.row({std::to_string(integer(j, "seed", 1)), hash, std::to_string(nk), fmt9(e),
             fmt9(sol.best_value), fmt9(bound)});
    std::printf("%10ld %14.6f %22.6f\n", nk, e, bound);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drift-plus-penalty cooperative transmission simulator"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON config file");
    sub->add_option("--out", common.out_dir, "output directory for CSV files");
    sub->add_option("--seed", common.seed, "override the config seed");
    sub->add_option("--set", common.overrides, "config override key=value (repeatable)");
    sub->add_flag("--trace", common.trace, "write per-slot trace.csv");
    sub->add_flag("--oracle", common.oracle, "cross-check against the brute-force grid oracle");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one simulation");
  CLI::App* sweep = app.add_subcommand("sweep-v", "sweep the control parameter V");
  CLI::App* feas = app.add_subcommand("feasibility", "rate-reliability feasibility matrix");
  CLI::App* slot = app.add_subcommand("solve-slot", "solve a single hand-written slot");
  CLI::App* dpe = app.add_subcommand("dp-estimate", "two-stage cost-to-go estimation");
  for (CLI::App* sub : {simulate, sweep, feas, slot, dpe}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(common);
    if (sweep->parsed()) return cmd_sweep_v(common);
    if (feas->parsed()) return cmd_feasibility(common);
    if (slot->parsed()) return cmd_solve_slot(common);
    if (dpe->parsed()) return cmd_dp_estimate(common);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
