#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ssd/env/config.hpp"
#include "ssd/metrics/metrics.hpp"
#include "ssd/reward/shaping.hpp"
#include "ssd/schelling/policy.hpp"

namespace ssd {

struct EpisodeResult {
  std::vector<double> returns;  // summed shaped reward per agent
  MetricReport report;
};

// Reset with seed, then step for episode_len steps with one policy per agent.
EpisodeResult run_episode(const EnvConfig& config, std::span<const std::shared_ptr<const Policy>> policies,
                          const RewardMode& mode, std::uint64_t seed);

struct SchellingCurves {
  int n = 0;
  std::vector<double> rc;  // rc[l]: mean cooperator return with l cooperating co-players
  std::vector<double> rd;  // rd[l]: mean defector return with l cooperating co-players
  std::vector<double> stderr_c;
  std::vector<double> stderr_d;
  int episodes = 0;
};

struct DilemmaReport {
  bool cond1 = false;  // mutual cooperation beats mutual defection
  bool cond2 = false;  // mutual cooperation beats being exploited
  bool fear = false;
  bool greed = false;
  std::vector<bool> dominance;  // rd[l] > rc[l]

  bool is_ssd() const { return cond1 && cond2 && (fear || greed); }
};

// Per-seat returns of one episode. seats[i] is the role of agent i.
using EpisodeFn = std::function<std::vector<double>(std::span<const Role> seats, std::uint64_t seed)>;

// Curves for n players from an arbitrary episode runner. Seats are shuffled
// per episode from seed; episodes run concurrently but aggregate in order.
SchellingCurves schelling_curves(int n, const EpisodeFn& episode, int episodes, std::uint64_t seed);

SchellingCurves schelling_curves(const EnvConfig& config, std::shared_ptr<const Policy> coop,
                                 std::shared_ptr<const Policy> defect, int episodes = 30,
                                 std::uint64_t seed = 0, const RewardMode& mode = {});

DilemmaReport certify(const SchellingCurves& curves);

// CSV with columns l,Rc,Rd,stderr_c,stderr_d.
std::string curves_csv(const SchellingCurves& curves);
// key = value lines.
std::string report_text(const DilemmaReport& report);

}  // namespace ssd
