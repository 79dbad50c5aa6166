#include "ssd/metrics/metrics.hpp"

#include <array>
#include <sstream>

#include "ssd/core/errors.hpp"

namespace ssd {

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {
    "OWN_COLOR_COIN", "APPLES_ON_MAP", "CLEANED",        "GOLD_MINED",
    "BLUE_EATEN",     "RECEIVED",      "COOP_COLLECTED",
};

bool is_harvest_name(std::string_view env_name) {
  return env_name == "harvest_open" || env_name == "harvest_closed" ||
         env_name == "harvest_partnership";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view metric_kind_name(MetricKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

MetricKind parse_metric_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<MetricKind>(i);
  }
  throw ConfigError("unknown metric kind '" + std::string(name) + "'");
}

MetricKind metric_kind_for(std::string_view env_name) {
  if (env_name == "coins") return MetricKind::OwnColorCoin;
  if (is_harvest_name(env_name)) return MetricKind::ApplesOnMap;
  if (env_name == "clean_up") return MetricKind::Cleaned;
  if (env_name == "coop_mining") return MetricKind::GoldMined;
  if (env_name == "mushrooms") return MetricKind::BlueEaten;
  if (env_name == "gift_refinement") return MetricKind::Received;
  if (env_name == "pd_arena") return MetricKind::CoopCollected;
  throw ConfigError("unknown environment '" + std::string(env_name) + "'", "env");
}

MetricReport summarize(std::span<const MetricEvent> events, std::string_view env_name,
                       std::int64_t num_steps, int num_agents) {
  const MetricKind kind = metric_kind_for(env_name);
  MetricReport report;
  report.env_name = std::string(env_name);
  report.per_agent.assign(static_cast<std::size_t>(std::max(num_agents, 0)), 0.0);
  double total = 0.0;
  for (const auto& e : events) {
    if (e.kind != kind) continue;
    total += e.amount;
    if (e.agent >= 0) {
      const auto idx = static_cast<std::size_t>(e.agent);
      if (idx >= report.per_agent.size()) report.per_agent.resize(idx + 1, 0.0);
      report.per_agent[idx] += e.amount;
    }
  }
  if (kind == MetricKind::ApplesOnMap) {
    report.value = num_steps > 0 ? total / static_cast<double>(num_steps) : 0.0;
  } else {
    report.value = total;
  }
  return report;
}

MetricReport combine(const MetricReport& a, std::int64_t steps_a, const MetricReport& b,
                     std::int64_t steps_b) {
  if (a.env_name != b.env_name) throw ContractViolation("combine: reports from different envs");
  MetricReport out;
  out.env_name = a.env_name;
  out.episodes = a.episodes + b.episodes;
  out.per_agent.assign(std::max(a.per_agent.size(), b.per_agent.size()), 0.0);
  for (std::size_t i = 0; i < a.per_agent.size(); ++i) out.per_agent[i] += a.per_agent[i];
  for (std::size_t i = 0; i < b.per_agent.size(); ++i) out.per_agent[i] += b.per_agent[i];
  if (metric_kind_for(a.env_name) == MetricKind::ApplesOnMap) {
    const auto total = steps_a + steps_b;
    out.value = total > 0 ? (a.value * static_cast<double>(steps_a) +
                             b.value * static_cast<double>(steps_b)) /
                                static_cast<double>(total)
                          : 0.0;
  } else {
    out.value = a.value + b.value;
  }
  return out;
}

std::string metrics_csv_header(int num_agents) {
  std::string header = "env,mode,seed,episode,value";
  for (int i = 0; i < num_agents; ++i) header += ",agent_" + std::to_string(i);
  return header;
}

std::string metrics_csv_row(const MetricReport& report, std::string_view mode, std::uint64_t seed,
                            int episode) {
  std::string row = report.env_name + "," + std::string(mode) + "," + std::to_string(seed) + "," +
                    std::to_string(episode) + "," + format_double(report.value);
  for (double v : report.per_agent) row += "," + format_double(v);
  return row;
}

}  // namespace ssd
