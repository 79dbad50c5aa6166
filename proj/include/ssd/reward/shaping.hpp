#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssd {

enum class RewardKind { Individual, Common, Svo };

struct SvoConfig {
  double theta = 0.0;  // target reward angle, radians in [0, pi/2]
  double w = 0.0;      // penalty weight, >= 0
  double angle_degrees = 0.0;  // theta as configured
  // Agents that receive the SVO utility. nullopt means every agent.
  std::optional<std::vector<int>> targets;

  bool targets_agent(int i) const;
};

struct RewardMode {
  RewardKind kind = RewardKind::Individual;
  std::optional<SvoConfig> svo;
};

std::string_view reward_kind_name(RewardKind kind);
RewardKind parse_reward_kind(std::string_view name);

// Every agent receives the sum of all rewards.
std::vector<double> common_reward(std::span<const double> rewards);

// atan2(others_mean, own) clamped into [0, pi/2]; nullopt at the origin.
std::optional<double> reward_angle(double own, double others_mean);

// U_i = r_i - w * |theta_svo - theta(R)|, with theta(R) the reward angle of
// agent i against the mean of everyone else.
double svo_utility(std::span<const double> rewards, int i, const SvoConfig& cfg);

std::vector<double> shape_rewards(const RewardMode& mode, std::span<const double> rewards);

// Validates and builds a mode. Throws ContractViolation on bad angles/weights.
RewardMode make_svo_mode(double theta_degrees, double w, std::optional<std::vector<int>> targets = {});

}  // namespace ssd
