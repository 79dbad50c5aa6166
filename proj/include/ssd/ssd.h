#ifndef SSD_SSD_H
#define SSD_SSD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSD_API __declspec(dllexport)
#else
#define SSD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every call. ssd_v1_last_error() holds a message
   for the most recent failure on the calling thread. */
enum {
  SSD_OK = 0,
  SSD_ERR_INVALID_ARGUMENT = 1,
  SSD_ERR_PARSE = 2,
  SSD_ERR_CLOSED = 3,
  SSD_ERR_ACTION_RANGE = 4,
  SSD_ERR_IO = 5,
  SSD_ERR_INTERNAL = 6
};

#define SSD_OBS_SIDE 11
#define SSD_OBS_CELLS 121
#define SSD_INVENTORY_SLOTS 3

typedef uint64_t ssd_env;
typedef uint64_t ssd_policy;

typedef struct {
  int32_t kind; /* see ssd_v1_event_kind_name */
  int32_t agent; /* -1 when not tied to one agent */
  int64_t step;
  double amount;
} ssd_event;

typedef struct {
  double seconds;
  double steps_per_second;
  uint64_t final_hash;
} ssd_bench_result;

typedef struct {
  int32_t cond1;
  int32_t cond2;
  int32_t fear;
  int32_t greed;
  int32_t ssd;
} ssd_dilemma;

SSD_API const char* ssd_v1_last_error(void);
SSD_API const char* ssd_v1_status_name(int status);

/* Writes the default config text of env_name into buf (NUL-terminated when
   it fits). *len receives the full length without the terminator. */
SSD_API int ssd_v1_default_config(const char* env_name, char* buf, size_t cap, size_t* len);

/* Config text is "key = value" lines; `env` is required. */
SSD_API int ssd_v1_create(const char* config_text, ssd_env* out);
/* Idempotent; closing an unknown or closed handle is not an error. */
SSD_API int ssd_v1_close(ssd_env env);
/* Number of open environment and policy handles. */
SSD_API size_t ssd_v1_live_handles(void);

SSD_API int ssd_v1_num_agents(ssd_env env, int32_t* out);
SSD_API int ssd_v1_action_count(ssd_env env, int32_t* out);
SSD_API int ssd_v1_episode_len(ssd_env env, int32_t* out);
SSD_API int ssd_v1_map_size(ssd_env env, int32_t* width, int32_t* height);

/* obs, if non-null, receives num_agents * 121 codes, row-major. */
SSD_API int ssd_v1_reset(ssd_env env, uint64_t seed, uint8_t* obs);
/* actions holds num_agents entries. Rewards are shaped per the config's
   reward mode. On error the state is unchanged. */
SSD_API int ssd_v1_step(ssd_env env, const int32_t* actions, size_t num_actions, uint8_t* obs,
                        double* rewards, int32_t* done);
/* Metric events of the last step. */
SSD_API int ssd_v1_events(ssd_env env, ssd_event* out, size_t cap, size_t* count);
SSD_API const char* ssd_v1_event_kind_name(int32_t kind);
/* num_agents * 3 entries. */
SSD_API int ssd_v1_inventory(ssd_env env, int32_t* out);
SSD_API int ssd_v1_state_hash(ssd_env env, uint64_t* out);
/* Top-down RGB image of the map; cap must be at least width*height*3*scale^2. */
SSD_API int ssd_v1_render_rgb(ssd_env env, int32_t scale, uint8_t* buf, size_t cap);

/* Scripted policies for every agent of env. role: "coop", "defect" or "random". */
SSD_API int ssd_v1_policy_create(ssd_env env, const char* role, uint64_t seed, ssd_policy* out);
/* Actions for the env's current observations. */
SSD_API int ssd_v1_policy_act(ssd_policy policy, ssd_env env, int32_t* actions, size_t num_actions);
SSD_API int ssd_v1_policy_close(ssd_policy policy);

SSD_API int ssd_v1_bench(const char* config_text, int32_t num_envs, int64_t steps, uint64_t seed,
                         int32_t workers, ssd_bench_result* out);
/* Schelling curves with scripted policies. Each array holds num_agents
   entries; stderr arrays may be null. */
SSD_API int ssd_v1_schelling(const char* config_text, int32_t episodes, uint64_t seed, size_t n,
                             double* rc, double* rd, double* stderr_c, double* stderr_d,
                             ssd_dilemma* verdict);

#ifdef __cplusplus
}
#endif

#endif
