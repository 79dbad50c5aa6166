// ssdsim: benchmark, roll out, render and analyse the environments through
// the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssd/ssd.h"

namespace {

using nlohmann::json;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(int status, const char* what) {
  if (status != SSD_OK) {
    throw Failure(std::string(what) + ": " + ssd_v1_status_name(status) + ": " + ssd_v1_last_error());
  }
}

class Env {
 public:
  explicit Env(const std::string& config_text) {
    check(ssd_v1_create(config_text.c_str(), &handle_), "create");
    check(ssd_v1_num_agents(handle_, &agents_), "num_agents");
    check(ssd_v1_action_count(handle_, &actions_), "action_count");
    check(ssd_v1_episode_len(handle_, &episode_len_), "episode_len");
  }
  ~Env() { ssd_v1_close(handle_); }
  Env(const Env&) = delete;
  Env& operator=(const Env&) = delete;

  ssd_env handle() const { return handle_; }
  int agents() const { return agents_; }
  int actions() const { return actions_; }
  int episode_len() const { return episode_len_; }

 private:
  ssd_env handle_ = 0;
  int32_t agents_ = 0;
  int32_t actions_ = 0;
  int32_t episode_len_ = 0;
};

class Policy {
 public:
  Policy(const Env& env, const std::string& role, uint64_t seed) {
    check(ssd_v1_policy_create(env.handle(), role.c_str(), seed, &handle_), "policy_create");
  }
  ~Policy() { ssd_v1_policy_close(handle_); }
  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  void act(const Env& env, std::vector<int32_t>& actions) const {
    check(ssd_v1_policy_act(handle_, env.handle(), actions.data(), actions.size()), "policy_act");
  }

 private:
  ssd_policy handle_ = 0;
};

// Options shared by subcommands that build a config.
struct EnvOptions {
  std::string env = "coins";
  std::string config_file;
  std::vector<std::string> set;
  std::string reward_mode = "individual";
  double svo_angle = 45.0;
  double svo_w = 0.0;

  void add_to(CLI::App* app) {
    app->add_option("--env", env, "environment name");
    app->add_option("--config", config_file, "config file (overrides --env)");
    app->add_option("--set", set, "extra 'key=value' config lines");
    app->add_option("--reward-mode", reward_mode, "reward shaping")
        ->check(CLI::IsMember({"individual", "common", "svo"}));
    app->add_option("--svo-angle-deg", svo_angle, "SVO target angle in degrees");
    app->add_option("--svo-w", svo_w, "SVO weight");
  }

  std::string text() const {
    std::string base;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw Failure("cannot read config file '" + config_file + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      base = ss.str();
    } else {
      size_t len = 0;
      check(ssd_v1_default_config(env.c_str(), nullptr, 0, &len), "default_config");
      std::string buf(len + 1, '\0');
      check(ssd_v1_default_config(env.c_str(), buf.data(), buf.size(), &len), "default_config");
      buf.resize(len);
      base = buf;
    }
    std::ostringstream out;
    out << base << "\n";
    for (const auto& line : set) out << line << "\n";
    if (reward_mode != "individual" || config_file.empty()) out << "reward_mode = " << reward_mode << "\n";
    if (reward_mode == "svo") {
      out.precision(17);
      out << "svo_ideal_angle_degrees = " << svo_angle << "\nsvo_w = " << svo_w << "\n";
    }
    return out.str();
  }
};

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Failure("cannot write '" + path + "'");
  return out;
}

json events_json(const Env& env) {
  size_t count = 0;
  check(ssd_v1_events(env.handle(), nullptr, 0, &count), "events");
  std::vector<ssd_event> events(count);
  check(ssd_v1_events(env.handle(), events.data(), events.size(), &count), "events");
  json arr = json::array();
  for (const auto& e : events) {
    arr.push_back({{"kind", ssd_v1_event_kind_name(e.kind)}, {"agent", e.agent}, {"amount", e.amount}});
  }
  return arr;
}

json obs_json(const std::vector<uint8_t>& obs, int agents) {
  json arr = json::array();
  for (int i = 0; i < agents; ++i) {
    arr.push_back(std::vector<int>(obs.begin() + i * SSD_OBS_CELLS, obs.begin() + (i + 1) * SSD_OBS_CELLS));
  }
  return arr;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  EnvOptions env;
  std::vector<int> num_envs{1};
  int64_t steps = 1000;
  uint64_t seed = 0;
  int workers = 0;
  std::string out;
};

void run_bench(const BenchArgs& a) {
  const std::string text = a.env.text();
  std::ostringstream csv;
  csv << "env,num_envs,steps_per_second\n";
  for (int n : a.num_envs) {
    ssd_bench_result r{};
    check(ssd_v1_bench(text.c_str(), n, a.steps, a.seed, a.workers, &r), "bench");
    csv << (a.env.config_file.empty() ? a.env.env : a.env.config_file) << ',' << n << ',' << r.steps_per_second
        << '\n';
    std::cerr << "num_envs=" << n << " steps=" << a.steps << " seconds=" << r.seconds
              << " hash=" << std::hex << r.final_hash << std::dec << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    open_out(a.out) << csv.str();
  }
}

// --- rollout ---------------------------------------------------------------

struct RolloutArgs {
  EnvOptions env;
  std::string policy = "random";
  uint64_t seed = 0;
  int64_t steps = -1;
  bool with_obs = false;
  std::string out;
};

void write_rollout(const RolloutArgs& a, std::ostream& out) {
  const std::string text = a.env.text();
  Env env(text);
  Policy policy(env, a.policy, a.seed);
  const int n = env.agents();
  std::vector<uint8_t> obs(static_cast<size_t>(n) * SSD_OBS_CELLS);
  std::vector<int32_t> actions(static_cast<size_t>(n));
  std::vector<double> rewards(static_cast<size_t>(n));
  check(ssd_v1_reset(env.handle(), a.seed, obs.data()), "reset");
  out << json{{"config", text}, {"seed", a.seed}, {"policy", a.policy}, {"num_agents", n}}.dump() << '\n';
  const int64_t steps = a.steps >= 0 ? a.steps : env.episode_len();
  for (int64_t t = 0; t < steps; ++t) {
    policy.act(env, actions);
    int32_t done = 0;
    check(ssd_v1_step(env.handle(), actions.data(), actions.size(), obs.data(), rewards.data(), &done), "step");
    json rec = {{"step", t}, {"actions", actions}, {"rewards", rewards}, {"done", done != 0},
                {"events", events_json(env)}};
    if (a.with_obs) rec["obs"] = obs_json(obs, n);
    out << rec.dump() << '\n';
  }
}

void run_rollout(const RolloutArgs& a) {
  if (a.out.empty() || a.out == "-") {
    write_rollout(a, std::cout);
  } else {
    auto f = open_out(a.out);
    write_rollout(a, f);
  }
}

// --- render ----------------------------------------------------------------

struct RenderArgs {
  EnvOptions env;
  std::string trajectory;
  std::string policy = "random";
  uint64_t seed = 0;
  int64_t steps = 100;
  int scale = 8;
  std::string out = "frames";
};

void write_frame(const Env& env, int scale, const std::filesystem::path& dir, int64_t index) {
  int32_t w = 0;
  int32_t h = 0;
  check(ssd_v1_map_size(env.handle(), &w, &h), "map_size");
  const size_t pw = static_cast<size_t>(w) * scale;
  const size_t ph = static_cast<size_t>(h) * scale;
  std::vector<uint8_t> rgb(pw * ph * 3);
  check(ssd_v1_render_rgb(env.handle(), scale, rgb.data(), rgb.size()), "render");
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%05lld.ppm", static_cast<long long>(index));
  auto f = open_out((dir / name).string(), true);
  f << "P6\n" << pw << ' ' << ph << "\n255\n";
  f.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!f) throw Failure("cannot write frame " + std::string(name));
}

void run_render(const RenderArgs& a) {
  const std::filesystem::path dir(a.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw Failure("cannot create output directory '" + a.out + "'");
  int64_t frames = 0;
  if (!a.trajectory.empty()) {
    std::ifstream in(a.trajectory);
    if (!in) throw Failure("cannot read trajectory '" + a.trajectory + "'");
    std::string line;
    if (!std::getline(in, line)) throw Failure("empty trajectory");
    const json header = json::parse(line);
    Env env(header.at("config").get<std::string>());
    check(ssd_v1_reset(env.handle(), header.at("seed").get<uint64_t>(), nullptr), "reset");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json rec = json::parse(line);
      const auto actions = rec.at("actions").get<std::vector<int32_t>>();
      check(ssd_v1_step(env.handle(), actions.data(), actions.size(), nullptr, nullptr, nullptr), "step");
      write_frame(env, a.scale, dir, frames++);
    }
  } else {
    Env env(a.env.text());
    Policy policy(env, a.policy, a.seed);
    std::vector<int32_t> actions(static_cast<size_t>(env.agents()));
    check(ssd_v1_reset(env.handle(), a.seed, nullptr), "reset");
    for (int64_t t = 0; t < a.steps; ++t) {
      policy.act(env, actions);
      check(ssd_v1_step(env.handle(), actions.data(), actions.size(), nullptr, nullptr, nullptr), "step");
      write_frame(env, a.scale, dir, frames++);
    }
  }
  std::cerr << frames << " frames written to " << a.out << '\n';
}

// --- schelling -------------------------------------------------------------

struct SchellingArgs {
  EnvOptions env;
  int episodes = 30;
  uint64_t seed = 0;
  std::string out;
};

void run_schelling(const SchellingArgs& a) {
  const std::string text = a.env.text();
  int32_t n = 0;
  {
    Env env(text);
    n = env.agents();
  }
  const auto size = static_cast<size_t>(n);
  std::vector<double> rc(size), rd(size), sc(size), sd(size);
  ssd_dilemma v{};
  check(ssd_v1_schelling(text.c_str(), a.episodes, a.seed, size, rc.data(), rd.data(), sc.data(), sd.data(), &v),
        "schelling");
  std::ostringstream csv;
  csv.precision(17);
  csv << "l,Rc,Rd,stderr_c,stderr_d\n";
  for (size_t l = 0; l < size; ++l) csv << l << ',' << rc[l] << ',' << rd[l] << ',' << sc[l] << ',' << sd[l] << '\n';
  auto flag = [](int32_t b) { return b ? "true" : "false"; };
  std::ostringstream report;
  report << "env = " << a.env.env << "\nepisodes = " << a.episodes << "\nseed = " << a.seed
         << "\ncond1 = " << flag(v.cond1) << "\ncond2 = " << flag(v.cond2) << "\nfear = " << flag(v.fear)
         << "\ngreed = " << flag(v.greed) << "\nssd = " << flag(v.ssd) << "\ndominance = ";
  for (size_t l = 0; l < size; ++l) report << (l ? "," : "") << (rd[l] > rc[l] ? 1 : 0);
  report << '\n';
  if (a.out.empty()) {
    std::cout << csv.str() << '\n';
  } else {
    open_out(a.out) << csv.str();
  }
  std::cout << report.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential social dilemma gridworlds"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "random-action throughput");
  bench.env.add_to(b);
  b->add_option("--num-envs", bench.num_envs, "batch sizes to measure")->check(CLI::PositiveNumber);
  b->add_option("--steps", bench.steps, "steps per instance")->check(CLI::NonNegativeNumber);
  b->add_option("--seed", bench.seed);
  b->add_option("--workers", bench.workers, "worker threads (0 = all cores)");
  b->add_option("--out", bench.out, "CSV output path");

  RolloutArgs rollout;
  auto* r = app.add_subcommand("rollout", "one episode as line-delimited JSON");
  rollout.env.add_to(r);
  r->add_option("--policy", rollout.policy)->check(CLI::IsMember({"random", "coop", "defect"}));
  r->add_option("--seed", rollout.seed);
  r->add_option("--steps", rollout.steps, "steps (default: episode length)");
  r->add_flag("--obs", rollout.with_obs, "include observations");
  r->add_option("--out", rollout.out, "output path ('-' for stdout)");

  RenderArgs render;
  auto* rd = app.add_subcommand("render", "PPM frames from a trajectory or a live run");
  render.env.add_to(rd);
  rd->add_option("--trajectory", render.trajectory, "rollout file to replay");
  rd->add_option("--policy", render.policy)->check(CLI::IsMember({"random", "coop", "defect"}));
  rd->add_option("--seed", render.seed);
  rd->add_option("--steps", render.steps)->check(CLI::NonNegativeNumber);
  rd->add_option("--scale", render.scale)->check(CLI::PositiveNumber);
  rd->add_option("--out", render.out, "frame directory");

  SchellingArgs schelling;
  auto* s = app.add_subcommand("schelling", "Schelling curves with scripted policies");
  schelling.env.add_to(s);
  s->add_option("--episodes", schelling.episodes)->check(CLI::PositiveNumber);
  s->add_option("--seed", schelling.seed);
  s->add_option("--out", schelling.out, "CSV output path");

  CLI11_PARSE(app, argc, argv);
  try {
    if (b->parsed()) run_bench(bench);
    if (r->parsed()) run_rollout(rollout);
    if (rd->parsed()) run_render(render);
    if (s->parsed()) run_schelling(schelling);
  } catch (const std::exception& e) {
    std::cerr << "ssdsim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
