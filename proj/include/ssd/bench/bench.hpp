#pragma once

#include <cstdint>
#include <string>

#include "ssd/core/parallel.hpp"
#include "ssd/env/config.hpp"

namespace ssd {

struct BenchReport {
  std::string env;
  int num_envs = 0;
  std::int64_t steps = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;  // num_envs * steps / seconds, 0 when nothing ran
  std::uint64_t final_hash = 0;    // combined state hash of all instances
};

BenchReport bench(const EnvConfig& config, int num_envs, std::int64_t steps, std::uint64_t seed,
                  std::size_t workers = default_workers());

std::string bench_csv_header();
std::string bench_csv_row(const BenchReport& report);

}  // namespace ssd
