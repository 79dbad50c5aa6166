#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssd {

enum class MetricKind : std::uint8_t {
  OwnColorCoin,
  ApplesOnMap,
  Cleaned,
  GoldMined,
  BlueEaten,
  Received,
  CoopCollected,
};

struct MetricEvent {
  MetricKind kind = MetricKind::OwnColorCoin;
  int agent = -1;  // -1 when the event is not tied to one agent
  std::int64_t step = 0;
  double amount = 1.0;

  friend bool operator==(const MetricEvent&, const MetricEvent&) = default;
};

struct MetricReport {
  std::string env_name;
  double value = 0.0;
  std::vector<double> per_agent;
  int episodes = 1;
};

std::string_view metric_kind_name(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);

// The event kind that feeds the cooperation metric of an environment.
MetricKind metric_kind_for(std::string_view env_name);

inline void record(std::vector<MetricEvent>& events, const MetricEvent& event) {
  events.push_back(event);
}

// One-episode report. Harvest variants average APPLES_ON_MAP over num_steps;
// every other environment sums the amounts of its metric kind.
MetricReport summarize(std::span<const MetricEvent> events, std::string_view env_name,
                       std::int64_t num_steps, int num_agents = 0);

// Report over two concatenated episodes: sums, or the step-weighted mean for
// harvest.
MetricReport combine(const MetricReport& a, std::int64_t steps_a, const MetricReport& b,
                     std::int64_t steps_b);

std::string metrics_csv_header(int num_agents);
std::string metrics_csv_row(const MetricReport& report, std::string_view mode, std::uint64_t seed,
                            int episode);

}  // namespace ssd
