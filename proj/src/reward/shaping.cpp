#include "ssd/reward/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ssd/core/errors.hpp"

namespace ssd {

bool SvoConfig::targets_agent(int i) const {
  if (!targets) return true;
  return std::find(targets->begin(), targets->end(), i) != targets->end();
}

std::string_view reward_kind_name(RewardKind kind) {
  switch (kind) {
    case RewardKind::Individual: return "individual";
    case RewardKind::Common: return "common";
    case RewardKind::Svo: return "svo";
  }
  return "individual";
}

RewardKind parse_reward_kind(std::string_view name) {
  if (name == "individual") return RewardKind::Individual;
  if (name == "common") return RewardKind::Common;
  if (name == "svo") return RewardKind::Svo;
  throw ConfigError("unknown reward mode '" + std::string(name) + "'", "reward_mode");
}

std::vector<double> common_reward(std::span<const double> rewards) {
  double total = 0.0;
  for (double r : rewards) total += r;
  return std::vector<double>(rewards.size(), total);
}

std::optional<double> reward_angle(double own, double others_mean) {
  if (own == 0.0 && others_mean == 0.0) return std::nullopt;
  return std::clamp(std::atan2(others_mean, own), 0.0, std::numbers::pi / 2);
}

double svo_utility(std::span<const double> rewards, int i, const SvoConfig& cfg) {
  const auto idx = static_cast<std::size_t>(i);
  if (idx >= rewards.size()) throw ContractViolation("svo_utility: agent index out of range");
  const double own = rewards[idx];
  if (!cfg.targets_agent(i) || rewards.size() < 2 || cfg.w == 0.0) return own;
  double others = 0.0;
  for (std::size_t j = 0; j < rewards.size(); ++j) {
    if (j != idx) others += rewards[j];
  }
  others /= static_cast<double>(rewards.size() - 1);
  const auto angle = reward_angle(own, others);
  if (!angle) return own;
  return own - cfg.w * std::abs(cfg.theta - *angle);
}

std::vector<double> shape_rewards(const RewardMode& mode, std::span<const double> rewards) {
  switch (mode.kind) {
    case RewardKind::Individual: return {rewards.begin(), rewards.end()};
    case RewardKind::Common: return common_reward(rewards);
    case RewardKind::Svo: {
      if (!mode.svo) throw ContractViolation("svo reward mode requires an SvoConfig");
      std::vector<double> out(rewards.size());
      for (std::size_t i = 0; i < rewards.size(); ++i) {
        out[i] = svo_utility(rewards, static_cast<int>(i), *mode.svo);
      }
      return out;
    }
  }
  return {rewards.begin(), rewards.end()};
}

RewardMode make_svo_mode(double theta_degrees, double w, std::optional<std::vector<int>> targets) {
  if (!(theta_degrees >= 0.0 && theta_degrees <= 90.0)) {
    throw ContractViolation("svo angle must lie in [0, 90] degrees");
  }
  if (!(w >= 0.0)) throw ContractViolation("svo weight must be nonnegative");
  SvoConfig cfg;
  cfg.theta = theta_degrees / 180.0 * std::numbers::pi;
  cfg.w = w;
  cfg.angle_degrees = theta_degrees;
  cfg.targets = std::move(targets);
  return RewardMode{RewardKind::Svo, std::move(cfg)};
}

}  // namespace ssd
