/*
 * v2xsim — parallel V2X broadcast-propagation simulator.
 *
 * C API over the simulation core: opaque handles, status codes, and a
 * thread-local detail message via v2x_last_error(). All functions returning
 * v2x_status set that message on failure. Handles are freed with the matching
 * *_free function; passing NULL to a *_free is a no-op.
 */
#ifndef V2XSIM_H
#define V2XSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum v2x_status {
    V2X_OK = 0,
    V2X_ERR_ARGUMENT = 1, /* bad argument (NULL handle, unknown name, ...) */
    V2X_ERR_PARSE = 2,    /* malformed XML, CSV, config or sweep input */
    V2X_ERR_IO = 3,       /* file open/read/write failure */
    V2X_ERR_GEOMETRY = 4, /* invalid obstacle geometry */
    V2X_ERR_SPEC = 5,     /* infeasible scenario specification */
    V2X_ERR_CONFIG = 6,   /* invalid or conflicting configuration */
    V2X_ERR_INTERNAL = 7
} v2x_status;

const char* v2x_version(void);
const char* v2x_status_name(v2x_status status);

/* Message describing the most recent failure on the calling thread. */
const char* v2x_last_error(void);

/* ----------------------------------------------------------------------- */
/* Scenario configuration                                                   */

typedef struct v2x_config v2x_config;

/* A fresh config carries the built-in defaults: 2 km grid, 100 vehicles,
 * 100 s simulated at 0.1 s beacon interval, dielectric loss model, one
 * worker. */
v2x_config* v2x_config_create(void);
void v2x_config_free(v2x_config* cfg);

/* Applies a flat "key = value" file ('#' comments). */
v2x_status v2x_config_load_file(v2x_config* cfg, const char* path);

/* Sets one key; the key set mirrors the config file keys. */
v2x_status v2x_config_set(v2x_config* cfg, const char* key, const char* value);

/* Reads back one resolved value as text. Returns V2X_ERR_ARGUMENT if the
 * buffer is too small; the required size (including the terminator) is
 * written to *size in that case. */
v2x_status v2x_config_get(const v2x_config* cfg, const char* key, char* buffer, size_t* size);

/* ----------------------------------------------------------------------- */
/* Obstacle environments                                                    */

typedef struct v2x_env v2x_env;

v2x_status v2x_env_load_file(const char* path, v2x_env** out_env);
v2x_status v2x_env_load_string(const char* xml, v2x_env** out_env);
void v2x_env_free(v2x_env* env);
size_t v2x_env_obstacle_count(const v2x_env* env);
size_t v2x_env_material_count(const v2x_env* env);

/* ----------------------------------------------------------------------- */
/* Simulation runs                                                          */

typedef struct v2x_run v2x_run;

/* Runs the configured scenario. When receptions_csv_path is non-NULL every
 * link outcome is streamed to that CSV while the run executes; writing time
 * is excluded from the reported wall time. */
v2x_status v2x_run_simulation(const v2x_config* cfg, const char* receptions_csv_path,
                              v2x_run** out_run);

/* Same, but obstacles come from env instead of the configured source. */
v2x_status v2x_run_simulation_with_env(const v2x_config* cfg, const v2x_env* env,
                                       const char* receptions_csv_path, v2x_run** out_run);

void v2x_run_free(v2x_run* run);

/* Wall time of the engine loop in seconds (mobility + link evaluation). */
double v2x_run_wall_time_s(const v2x_run* run);

/* Counter access; names: links_considered, links_culled, obstacle_tests,
 * intersections_found, transmissions, link_results. */
v2x_status v2x_run_stat(const v2x_run* run, const char* name, uint64_t* out_value);

/* Full machine-readable run description (JSON): resolved config echo,
 * counters, wall time and timing scope. */
v2x_status v2x_run_write_metadata(const v2x_run* run, const char* path);

/* ----------------------------------------------------------------------- */
/* Benchmark sweeps                                                         */

typedef struct v2x_sweep v2x_sweep;

v2x_status v2x_sweep_load_file(const char* path, v2x_sweep** out_sweep);
void v2x_sweep_free(v2x_sweep* sweep);

/* Runs the sweep against the base config and writes one bench CSV row per
 * (value x worker_count x repetition), flushed incrementally. A failed run
 * aborts the sweep; rows already written are preserved. metadata_path is
 * optional (may be NULL). */
v2x_status v2x_sweep_run(const v2x_sweep* sweep, const v2x_config* base,
                         const char* bench_csv_path, const char* metadata_path);

#ifdef __cplusplus
}
#endif

#endif /* V2XSIM_H */
