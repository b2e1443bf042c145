#include "uavnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "uavnet/canonical_json.hpp"
#include "uavnet/error.hpp"
#include "uavnet/graph.hpp"

namespace uavnet {
namespace {

struct Stat {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation; zero for fewer than two values.
Stat stat_of(const std::vector<double>& v) {
  Stat s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() < 2) return s;
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return s;
}

std::vector<SweepRow> run_item(const SweepSpec& spec, std::uint64_t seed, int n_od) {
  GenSpec gen = spec.family;
  gen.seed = seed;
  gen.od_pairs = n_od;
  const Scenario scenario = generate_scenario(gen);
  std::optional<Plan> plan;
  std::string plan_error;
  bool plan_tried = false;
  std::vector<SweepRow> rows;
  for (Mode mode : all_modes()) {
    if (std::find(spec.modes.begin(), spec.modes.end(), mode) == spec.modes.end()) continue;
    if (mode != Mode::no_uav && !plan_tried) {
      plan_tried = true;
      try {
        plan = plan_deployment(scenario, spec.options.schedule);
      } catch (const Error& e) {
        plan_error = e.what();
      }
    }
    PipelineResult r = run_pipeline(scenario, mode, spec.options, plan);
    if (mode != Mode::no_uav && !plan) {
      r.row.failed = true;
      r.row.failure = plan_error;
    }
    r.row.seed = seed;
    rows.push_back(r.row);
  }
  return rows;
}

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::no_uav: return "no-uav";
    case Mode::uav_lambda0: return "uav-lambda0";
    case Mode::uav_energy_aware: return "uav-energy-aware";
  }
  return "?";
}

Mode parse_mode(const std::string& name) {
  for (Mode m : all_modes()) {
    if (name == mode_name(m)) return m;
  }
  throw Error(ErrorCode::invalid_argument, "unknown mode '" + name + "' (expected no-uav, uav-lambda0 or uav-energy-aware)");
}

const std::vector<Mode>& all_modes() {
  static const std::vector<Mode> modes{Mode::no_uav, Mode::uav_lambda0, Mode::uav_energy_aware};
  return modes;
}

double unsupported_fraction(const RoutingSolution& solution, const std::vector<Commodity>& commodities) {
  if (solution.supported.size() != commodities.size()) {
    throw Error(ErrorCode::invalid_argument, "unsupported_fraction: solution and demand sizes differ");
  }
  double demanded = 0.0;
  for (const Commodity& c : commodities) demanded += c.demand;
  if (!(demanded > 0.0)) throw Error(ErrorCode::invalid_argument, "unsupported_fraction: total demand is zero");
  const double eta = 1.0 - solution.total_supported() / demanded;
  if (std::abs(eta) < 1e-12) return 0.0;
  return std::clamp(eta, 0.0, 1.0);
}

PipelineResult run_pipeline(const Scenario& scenario, Mode mode, const PipelineOptions& options,
                            const std::optional<Plan>& precomputed_plan) {
  const auto start = std::chrono::steady_clock::now();
  PipelineResult out;
  out.row.mode = mode;
  out.row.n_od = static_cast<int>(scenario.demand.size());
  out.row.seed = scenario.params.seed;
  const std::vector<Commodity> commodities = commodities_of(scenario);
  Params params = scenario.params;
  params.energy_weight = mode == Mode::uav_energy_aware ? options.energy_lambda : 0.0;

  std::optional<Placement> placement;
  if (mode != Mode::no_uav) {
    try {
      out.plan = precomputed_plan ? *precomputed_plan : plan_deployment(scenario, options.schedule);
      placement = out.plan->final_placement();
    } catch (const Error& e) {
      out.row.failed = true;
      out.row.failure = e.what();
    }
  }
  const NetworkGraph graph = build_graph(scenario, placement);
  out.routing = route(graph, commodities, params, options.branch);
  out.row.eta = unsupported_fraction(out.routing, commodities);
  out.row.total_power = out.routing.total_power();
  out.row.supported = out.routing.total_supported();
  out.row.uav_count = placement ? placement->uav_count() : 0;
  out.row.status = out.routing.status;
  if (options.timing) {
    out.row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

SweepTable sweep(const SweepSpec& spec) {
  if (spec.od_range.empty() || spec.modes.empty() || spec.seeds.empty()) {
    throw Error(ErrorCode::invalid_argument, "sweep: seeds, od_range and modes must be non-empty");
  }
  for (int n : spec.od_range) {
    if (n <= 0) throw Error(ErrorCode::invalid_argument, "sweep: OD counts must be positive");
  }
  std::vector<std::pair<std::uint64_t, int>> items;
  for (std::uint64_t seed : spec.seeds) {
    for (int n : spec.od_range) items.emplace_back(seed, n);
  }
  std::sort(items.begin(), items.end());
  std::vector<std::vector<SweepRow>> slots(items.size());
  std::vector<std::string> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i] = run_item(spec, items[i].first, items[i].second);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(items.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  SweepTable table;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!errors[i].empty()) throw Error(ErrorCode::internal, "sweep: " + errors[i]);
    table.rows.insert(table.rows.end(), slots[i].begin(), slots[i].end());
  }
  table.summaries = summarize(table.rows);
  return table;
}

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  std::map<std::pair<int, int>, std::vector<const SweepRow*>> groups;
  for (const SweepRow& r : rows) groups[{r.n_od, static_cast<int>(r.mode)}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    SummaryRow s;
    s.n_od = key.first;
    s.mode = static_cast<Mode>(key.second);
    s.count = static_cast<int>(members.size());
    std::vector<double> eta, power, uavs, runtime;
    for (const SweepRow* r : members) {
      eta.push_back(r->eta);
      power.push_back(r->total_power);
      uavs.push_back(r->uav_count);
      runtime.push_back(r->runtime_ms);
      s.failures += r->failed ? 1 : 0;
    }
    Stat st = stat_of(eta);
    s.eta_mean = st.mean;
    s.eta_std = st.std;
    st = stat_of(power);
    s.power_mean = st.mean;
    s.power_std = st.std;
    st = stat_of(uavs);
    s.uav_mean = st.mean;
    s.uav_std = st.std;
    st = stat_of(runtime);
    s.runtime_mean = st.mean;
    s.runtime_std = st.std;
    out.push_back(s);
  }
  return out;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = "seed,n_od,mode,eta,total_power_w,uav_count,runtime_ms\n";
  for (const SweepRow& r : table.rows) {
    out += std::to_string(r.seed) + "," + std::to_string(r.n_od) + "," + mode_name(r.mode) + "," + format_fixed(r.eta) +
           "," + format_fixed(r.total_power) + "," + std::to_string(r.uav_count) + "," + format_fixed(r.runtime_ms) + "\n";
  }
  for (const SummaryRow& s : table.summaries) {
    out += "mean," + std::to_string(s.n_od) + "," + mode_name(s.mode) + "," + format_fixed(s.eta_mean) + "," +
           format_fixed(s.power_mean) + "," + format_fixed(s.uav_mean) + "," + format_fixed(s.runtime_mean) + "\n";
  }
  return out;
}

nlohmann::json sweep_json(const SweepTable& table, const nlohmann::json& meta) {
  using nlohmann::json;
  json rows = json::array();
  for (const SweepRow& r : table.rows) {
    json row = {{"seed", r.seed},
                {"n_od", r.n_od},
                {"mode", mode_name(r.mode)},
                {"eta", r.eta},
                {"total_power_w", r.total_power},
                {"uav_count", r.uav_count},
                {"runtime_ms", r.runtime_ms},
                {"supported_kbps", r.supported},
                {"status", mip_status_name(r.status)},
                {"failed", r.failed}};
    if (r.failed) row["failure"] = r.failure;
    rows.push_back(row);
  }
  json summaries = json::array();
  for (const SummaryRow& s : table.summaries) {
    summaries.push_back({{"n_od", s.n_od},
                         {"mode", mode_name(s.mode)},
                         {"count", s.count},
                         {"eta_mean", s.eta_mean},
                         {"eta_std", s.eta_std},
                         {"total_power_w_mean", s.power_mean},
                         {"total_power_w_std", s.power_std},
                         {"uav_count_mean", s.uav_mean},
                         {"uav_count_std", s.uav_std},
                         {"runtime_ms_mean", s.runtime_mean},
                         {"runtime_ms_std", s.runtime_std},
                         {"failures", s.failures}});
  }
  return {{"rows", rows}, {"summaries", summaries}, {"meta", meta}};
}

}  // namespace uavnet
