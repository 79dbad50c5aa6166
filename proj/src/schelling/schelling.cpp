#include "ssd/schelling/schelling.hpp"

#include <cmath>
#include <sstream>

#include "ssd/core/errors.hpp"
#include "ssd/core/parallel.hpp"
#include "ssd/env/env.hpp"

namespace ssd {

EpisodeResult run_episode(const EnvConfig& config, std::span<const std::shared_ptr<const Policy>> policies,
                          const RewardMode& mode, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(config.num_agents);
  if (policies.size() != n) {
    throw ContractViolation("run_episode: need " + std::to_string(n) + " policies, got " +
                            std::to_string(policies.size()));
  }
  auto shared = std::make_shared<const EnvConfig>(config);
  auto [state, obs] = reset(shared, seed);
  std::vector<PolicyMemory> memory(n);
  std::vector<Rng> rngs;
  rngs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    memory[i].agent = static_cast<int>(i);
    memory[i].num_agents = static_cast<int>(n);
    rngs.emplace_back(derive_seed(seed, 0x504F4C, i));
  }
  EpisodeResult result;
  result.returns.assign(n, 0.0);
  std::vector<MetricEvent> events;
  std::vector<ActionId> actions(n);
  StepOutput out;
  out.obs = std::move(obs);
  for (int t = 0; t < config.episode_len; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      actions[i] = policies[i]->act(out.obs[i], memory[i], rngs[i]);
    }
    step_into(state, actions, out);
    const auto shaped = shape_rewards(mode, out.rewards);
    for (std::size_t i = 0; i < n; ++i) result.returns[i] += shaped[i];
    events.insert(events.end(), out.events.begin(), out.events.end());
  }
  result.report = summarize(events, config.name(), config.episode_len, config.num_agents);
  return result;
}

namespace {

struct PointStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};

PointStats stats_of(const std::vector<double>& samples) {
  PointStats s;
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    s.stderr_ = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return s;
}

}  // namespace

SchellingCurves schelling_curves(int n, const EpisodeFn& episode, int episodes, std::uint64_t seed) {
  if (n < 2) throw ContractViolation("schelling_curves: need at least two players");
  if (episodes < 1) throw ContractViolation("schelling_curves: episodes must be positive");
  SchellingCurves curves;
  curves.n = n;
  curves.episodes = episodes;
  curves.rc.assign(static_cast<std::size_t>(n), 0.0);
  curves.rd = curves.rc;
  curves.stderr_c = curves.rc;
  curves.stderr_d = curves.rc;

  // Job j covers point p = j / episodes: p = 2l estimates rc[l] (l + 1
  // cooperators), p = 2l + 1 estimates rd[l] (l cooperators).
  const std::size_t jobs = static_cast<std::size_t>(2 * n) * static_cast<std::size_t>(episodes);
  std::vector<double> sample(jobs, 0.0);
  parallel_for(jobs, default_workers(), [&](std::size_t j) {
    const auto point = j / static_cast<std::size_t>(episodes);
    const auto e = j % static_cast<std::size_t>(episodes);
    const int l = static_cast<int>(point / 2);
    const bool for_coop = point % 2 == 0;
    const int cooperators = for_coop ? l + 1 : l;
    const std::uint64_t s = derive_seed(seed, point, e);
    std::vector<Role> seats(static_cast<std::size_t>(n), Role::Defector);
    for (int i = 0; i < cooperators; ++i) seats[static_cast<std::size_t>(i)] = Role::Cooperator;
    Rng shuffle = Rng(s).split(1);
    for (std::size_t i = seats.size(); i > 1; --i) {
      std::swap(seats[i - 1], seats[shuffle.below(static_cast<std::uint32_t>(i))]);
    }
    const auto returns = episode(seats, s);
    if (returns.size() != seats.size()) throw ContractViolation("schelling_curves: episode returned wrong size");
    const Role want = for_coop ? Role::Cooperator : Role::Defector;
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < seats.size(); ++i) {
      if (seats[i] == want) {
        sum += returns[i];
        ++count;
      }
    }
    sample[j] = sum / count;
  });

  for (int l = 0; l < n; ++l) {
    for (int which = 0; which < 2; ++which) {
      const auto point = static_cast<std::size_t>(2 * l + which);
      const auto first = sample.begin() + static_cast<std::ptrdiff_t>(point * static_cast<std::size_t>(episodes));
      const auto st = stats_of(std::vector<double>(first, first + episodes));
      auto& mean = which == 0 ? curves.rc : curves.rd;
      auto& err = which == 0 ? curves.stderr_c : curves.stderr_d;
      mean[static_cast<std::size_t>(l)] = st.mean;
      err[static_cast<std::size_t>(l)] = st.stderr_;
    }
  }
  return curves;
}

SchellingCurves schelling_curves(const EnvConfig& config, std::shared_ptr<const Policy> coop,
                                 std::shared_ptr<const Policy> defect, int episodes, std::uint64_t seed,
                                 const RewardMode& mode) {
  auto episode = [&](std::span<const Role> seats, std::uint64_t s) {
    std::vector<std::shared_ptr<const Policy>> policies;
    policies.reserve(seats.size());
    for (Role r : seats) policies.push_back(r == Role::Cooperator ? coop : defect);
    return run_episode(config, policies, mode, s).returns;
  };
  return schelling_curves(config.num_agents, episode, episodes, seed);
}

DilemmaReport certify(const SchellingCurves& curves) {
  const auto n = static_cast<std::size_t>(curves.n);
  if (n < 1 || curves.rc.size() != n || curves.rd.size() != n) {
    throw ContractViolation("certify: curve arrays must have length n");
  }
  DilemmaReport r;
  r.dominance.resize(n);
  for (std::size_t l = 0; l < n; ++l) r.dominance[l] = curves.rd[l] > curves.rc[l];
  r.cond1 = curves.rc[n - 1] > curves.rd[0];
  r.cond2 = curves.rc[n - 1] > curves.rc[0];
  r.fear = r.dominance[0];
  r.greed = r.dominance[n - 1];
  return r;
}

std::string curves_csv(const SchellingCurves& curves) {
  std::ostringstream out;
  out.precision(17);
  out << "l,Rc,Rd,stderr_c,stderr_d\n";
  for (std::size_t l = 0; l < curves.rc.size(); ++l) {
    out << l << ',' << curves.rc[l] << ',' << curves.rd[l] << ',' << curves.stderr_c[l] << ','
        << curves.stderr_d[l] << '\n';
  }
  return out.str();
}

std::string report_text(const DilemmaReport& report) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::ostringstream out;
  out << "cond1 = " << flag(report.cond1) << '\n'
      << "cond2 = " << flag(report.cond2) << '\n'
      << "fear = " << flag(report.fear) << '\n'
      << "greed = " << flag(report.greed) << '\n'
      << "ssd = " << flag(report.is_ssd()) << '\n'
      << "dominance = ";
  for (std::size_t l = 0; l < report.dominance.size(); ++l) {
    out << (l ? "," : "") << (report.dominance[l] ? 1 : 0);
  }
  out << '\n';
  return out.str();
}

}  // namespace ssd
