#include "ssd/bench/bench.hpp"

#include <chrono>
#include <sstream>

#include "ssd/bench/vec_env.hpp"
#include "ssd/core/errors.hpp"

namespace ssd {

BenchReport bench(const EnvConfig& config, int num_envs, std::int64_t steps, std::uint64_t seed,
                  std::size_t workers) {
  if (num_envs < 1) throw ContractViolation("bench: num_envs must be at least 1");
  if (steps < 0) throw ContractViolation("bench: steps must be non-negative");
  BenchReport report;
  report.env = std::string(config.name());
  report.num_envs = num_envs;
  report.steps = steps;
  VecEnv envs(std::make_shared<const EnvConfig>(config), num_envs, seed, workers);
  envs.set_track_digests(false);
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t t = 0; t < steps; ++t) envs.step_random();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (steps > 0 && report.seconds > 0.0) {
    report.steps_per_second = static_cast<double>(num_envs) * static_cast<double>(steps) / report.seconds;
  }
  std::uint64_t h = 0;
  for (int i = 0; i < envs.size(); ++i) h = h * 0x9E3779B97F4A7C15ULL + state_hash(envs.state(i));
  report.final_hash = h;
  return report;
}

std::string bench_csv_header() { return "env,num_envs,steps_per_second"; }

std::string bench_csv_row(const BenchReport& report) {
  std::ostringstream out;
  out << report.env << ',' << report.num_envs << ',' << report.steps_per_second;
  return out.str();
}

}  // namespace ssd
