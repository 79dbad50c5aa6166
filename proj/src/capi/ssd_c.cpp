#include "ssd/ssd.h"

#include <cstring>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "ssd/bench/bench.hpp"
#include "ssd/bench/render.hpp"
#include "ssd/core/errors.hpp"
#include "ssd/env/env.hpp"
#include "ssd/schelling/schelling.hpp"

namespace {

using namespace ssd;

thread_local std::string g_last_error;

struct EnvBox {
  RunConfig run;
  std::shared_ptr<const EnvConfig> config;
  std::optional<EnvState> state;
  StepOutput last;
  std::mutex mutex;
};

struct PolicyBox {
  std::vector<std::shared_ptr<const Policy>> policies;
  std::vector<PolicyMemory> memory;
  std::vector<Rng> rngs;
  std::mutex mutex;
};

class Registry {
 public:
  template <typename T>
  std::uint64_t add(std::shared_ptr<T> box) {
    std::lock_guard lock(mutex_);
    const std::uint64_t id = next_++;
    if constexpr (std::is_same_v<T, EnvBox>) {
      envs_.emplace(id, std::move(box));
    } else {
      policies_.emplace(id, std::move(box));
    }
    return id;
  }

  std::shared_ptr<EnvBox> env(std::uint64_t id) { return find(envs_, id, "environment"); }
  std::shared_ptr<PolicyBox> policy(std::uint64_t id) { return find(policies_, id, "policy"); }

  void close_env(std::uint64_t id) {
    std::lock_guard lock(mutex_);
    envs_.erase(id);
  }
  void close_policy(std::uint64_t id) {
    std::lock_guard lock(mutex_);
    policies_.erase(id);
  }
  std::size_t live() {
    std::lock_guard lock(mutex_);
    return envs_.size() + policies_.size();
  }

 private:
  template <typename Map>
  typename Map::mapped_type find(Map& map, std::uint64_t id, const char* what) {
    std::lock_guard lock(mutex_);
    const auto it = map.find(id);
    if (it != map.end()) return it->second;
    if (id != 0 && id < next_) throw ClosedHandle(std::string(what) + " handle " + std::to_string(id) + " is closed");
    throw InvalidHandle("unknown " + std::string(what) + " handle " + std::to_string(id));
  }

 public:
  struct ClosedHandle : std::runtime_error {
    using std::runtime_error::runtime_error;
  };
  struct InvalidHandle : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

 private:
  std::mutex mutex_;
  std::uint64_t next_ = 1;
  std::unordered_map<std::uint64_t, std::shared_ptr<EnvBox>> envs_;
  std::unordered_map<std::uint64_t, std::shared_ptr<PolicyBox>> policies_;
};

Registry& registry() {
  static Registry r;
  return r;
}

struct ActionRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int fail(int status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SSD_OK;
  } catch (const Registry::ClosedHandle& e) {
    return fail(SSD_ERR_CLOSED, e.what());
  } catch (const Registry::InvalidHandle& e) {
    return fail(SSD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ActionRange& e) {
    return fail(SSD_ERR_ACTION_RANGE, e.what());
  } catch (const ParseError& e) {
    return fail(SSD_ERR_PARSE, e.what());
  } catch (const ConfigError& e) {
    return fail(SSD_ERR_PARSE, e.what());
  } catch (const ContractViolation& e) {
    return fail(SSD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SSD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SSD_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw ContractViolation(message);
}

EnvState& live_state(EnvBox& box) {
  if (!box.state) throw ContractViolation("environment has not been reset");
  return *box.state;
}

void copy_obs(const std::vector<Observation>& obs, std::uint8_t* out) {
  if (!out) return;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    std::memcpy(out + i * kObsCells, obs[i].cells.data(), kObsCells);
  }
}

}  // namespace

extern "C" {

const char* ssd_v1_last_error(void) { return g_last_error.c_str(); }

const char* ssd_v1_status_name(int status) {
  switch (status) {
    case SSD_OK: return "ok";
    case SSD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SSD_ERR_PARSE: return "parse error";
    case SSD_ERR_CLOSED: return "closed handle";
    case SSD_ERR_ACTION_RANGE: return "action out of range";
    case SSD_ERR_IO: return "i/o error";
    case SSD_ERR_INTERNAL: return "internal error";
    default: return "unknown status";
  }
}

int ssd_v1_default_config(const char* env_name, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(env_name != nullptr, "env_name is null");
    RunConfig run{make_env(env_name), {}};
    const std::string text = to_config_text(run);
    if (len) *len = text.size();
    if (buf && cap > 0) {
      const std::size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

int ssd_v1_create(const char* config_text, ssd_env* out) {
  return guarded([&] {
    require(config_text != nullptr && out != nullptr, "null argument");
    auto box = std::make_shared<EnvBox>();
    box->run = parse_config_text(config_text);
    box->config = std::make_shared<const EnvConfig>(box->run.env);
    *out = registry().add(std::move(box));
  });
}

int ssd_v1_close(ssd_env env) {
  return guarded([&] { registry().close_env(env); });
}

size_t ssd_v1_live_handles(void) { return registry().live(); }

int ssd_v1_num_agents(ssd_env env, int32_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = registry().env(env)->config->num_agents;
  });
}

int ssd_v1_action_count(ssd_env env, int32_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = registry().env(env)->config->actions();
  });
}

int ssd_v1_episode_len(ssd_env env, int32_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = registry().env(env)->config->episode_len;
  });
}

int ssd_v1_map_size(ssd_env env, int32_t* width, int32_t* height) {
  return guarded([&] {
    require(width != nullptr && height != nullptr, "null argument");
    const auto box = registry().env(env);
    *width = box->config->map.width;
    *height = box->config->map.height;
  });
}

int ssd_v1_reset(ssd_env env, uint64_t seed, uint8_t* obs) {
  return guarded([&] {
    const auto box = registry().env(env);
    std::lock_guard lock(box->mutex);
    auto result = reset(box->config, seed);
    box->state = std::move(result.state);
    box->last = StepOutput{};
    box->last.obs = std::move(result.obs);
    box->last.rewards.assign(box->last.obs.size(), 0.0);
    copy_obs(box->last.obs, obs);
  });
}

int ssd_v1_step(ssd_env env, const int32_t* actions, size_t num_actions, uint8_t* obs, double* rewards,
                int32_t* done) {
  return guarded([&] {
    const auto box = registry().env(env);
    std::lock_guard lock(box->mutex);
    auto& state = live_state(*box);
    const auto n = static_cast<std::size_t>(state.num_agents());
    require(actions != nullptr, "actions is null");
    if (num_actions != n) {
      throw ContractViolation("expected " + std::to_string(n) + " actions, got " + std::to_string(num_actions));
    }
    const int count = box->config->actions();
    for (std::size_t i = 0; i < n; ++i) {
      if (actions[i] < 0 || actions[i] >= count) {
        throw ActionRange("action " + std::to_string(actions[i]) + " of agent " + std::to_string(i) +
                          " outside [0, " + std::to_string(count) + ")");
      }
    }
    const std::vector<ActionId> acts(actions, actions + n);
    step_into(state, acts, box->last);
    if (box->run.reward.kind != RewardKind::Individual) {
      box->last.rewards = shape_rewards(box->run.reward, box->last.rewards);
    }
    copy_obs(box->last.obs, obs);
    if (rewards) std::copy(box->last.rewards.begin(), box->last.rewards.end(), rewards);
    if (done) *done = box->last.done ? 1 : 0;
  });
}

int ssd_v1_events(ssd_env env, ssd_event* out, size_t cap, size_t* count) {
  return guarded([&] {
    const auto box = registry().env(env);
    std::lock_guard lock(box->mutex);
    const auto& events = box->last.events;
    if (count) *count = events.size();
    if (!out) return;
    for (std::size_t i = 0; i < std::min(cap, events.size()); ++i) {
      out[i] = ssd_event{static_cast<int32_t>(events[i].kind), events[i].agent, events[i].step, events[i].amount};
    }
  });
}

const char* ssd_v1_event_kind_name(int32_t kind) {
  if (kind < 0 || kind > static_cast<int32_t>(MetricKind::CoopCollected)) return "";
  return metric_kind_name(static_cast<MetricKind>(kind)).data();
}

int ssd_v1_inventory(ssd_env env, int32_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto box = registry().env(env);
    std::lock_guard lock(box->mutex);
    const auto& state = live_state(*box);
    for (std::size_t i = 0; i < state.inventory.size(); ++i) {
      std::copy(state.inventory[i].begin(), state.inventory[i].end(), out + i * SSD_INVENTORY_SLOTS);
    }
  });
}

int ssd_v1_state_hash(ssd_env env, uint64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto box = registry().env(env);
    std::lock_guard lock(box->mutex);
    *out = state_hash(live_state(*box));
  });
}

int ssd_v1_render_rgb(ssd_env env, int32_t scale, uint8_t* buf, size_t cap) {
  return guarded([&] {
    require(buf != nullptr, "null argument");
    const auto box = registry().env(env);
    std::lock_guard lock(box->mutex);
    const auto image = render_grid(live_state(*box).grid, scale);
    require(cap >= image.rgb.size(), "render buffer too small");
    std::memcpy(buf, image.rgb.data(), image.rgb.size());
  });
}

int ssd_v1_policy_create(ssd_env env, const char* role, uint64_t seed, ssd_policy* out) {
  return guarded([&] {
    require(role != nullptr && out != nullptr, "null argument");
    const auto box = registry().env(env);
    const auto policy = scripted_policy(box->config->name(), parse_role(role));
    auto p = std::make_shared<PolicyBox>();
    const int n = box->config->num_agents;
    for (int i = 0; i < n; ++i) {
      p->policies.push_back(policy);
      p->memory.push_back(PolicyMemory{i, n, 0, 0});
      p->rngs.emplace_back(derive_seed(seed, 0x504F4C, static_cast<std::uint64_t>(i)));
    }
    *out = registry().add(std::move(p));
  });
}

int ssd_v1_policy_act(ssd_policy policy, ssd_env env, int32_t* actions, size_t num_actions) {
  return guarded([&] {
    require(actions != nullptr, "null argument");
    const auto p = registry().policy(policy);
    const auto box = registry().env(env);
    std::scoped_lock lock(p->mutex, box->mutex);
    live_state(*box);
    const auto& obs = box->last.obs;
    if (num_actions != obs.size() || p->policies.size() != obs.size()) {
      throw ContractViolation("policy and environment disagree on the agent count");
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
      actions[i] = p->policies[i]->act(obs[i], p->memory[i], p->rngs[i]);
    }
  });
}

int ssd_v1_policy_close(ssd_policy policy) {
  return guarded([&] { registry().close_policy(policy); });
}

int ssd_v1_bench(const char* config_text, int32_t num_envs, int64_t steps, uint64_t seed, int32_t workers,
                 ssd_bench_result* out) {
  return guarded([&] {
    require(config_text != nullptr && out != nullptr, "null argument");
    const auto run = parse_config_text(config_text);
    const std::size_t w = workers > 0 ? static_cast<std::size_t>(workers) : default_workers();
    const auto report = bench(run.env, num_envs, steps, seed, w);
    *out = ssd_bench_result{report.seconds, report.steps_per_second, report.final_hash};
  });
}

int ssd_v1_schelling(const char* config_text, int32_t episodes, uint64_t seed, size_t n, double* rc,
                     double* rd, double* stderr_c, double* stderr_d, ssd_dilemma* verdict) {
  return guarded([&] {
    require(config_text != nullptr && rc != nullptr && rd != nullptr, "null argument");
    const auto run = parse_config_text(config_text);
    require(n == static_cast<std::size_t>(run.env.num_agents), "curve arrays must hold num_agents entries");
    const auto name = run.env.name();
    const auto curves = schelling_curves(run.env, scripted_policy(name, Role::Cooperator),
                                         scripted_policy(name, Role::Defector), episodes, seed, run.reward);
    std::copy(curves.rc.begin(), curves.rc.end(), rc);
    std::copy(curves.rd.begin(), curves.rd.end(), rd);
    if (stderr_c) std::copy(curves.stderr_c.begin(), curves.stderr_c.end(), stderr_c);
    if (stderr_d) std::copy(curves.stderr_d.begin(), curves.stderr_d.end(), stderr_d);
    if (verdict) {
      const auto r = certify(curves);
      *verdict = ssd_dilemma{r.cond1, r.cond2, r.fear, r.greed, r.is_ssd()};
    }
  });
}

}  // extern "C"
