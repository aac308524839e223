/*
 * Copyright 2026 The vsauction Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
/*
 * vsauction C interface.
 *
 * Every function that can fail returns a vsa_status. On failure the message
 * for the calling thread is available from vsa_last_error() until the next
 * failing call on that thread. Handles are opaque; each *_create has a
 * matching *_destroy that accepts NULL.
 */
#ifndef VSA_VSA_H
#define VSA_VSA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VSA_API __declspec(dllexport)
#else
#define VSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vsa_status {
  VSA_OK = 0,
  VSA_ERR_INVALID_ARGUMENT = 1, /* bad config key/value, shape, or pointer */
  VSA_ERR_DOMAIN = 2,           /* metric undefined for the given data */
  VSA_ERR_IO = 3,               /* file could not be read or written */
  VSA_ERR_RUNTIME = 4,          /* simulation failure (e.g. divergence) */
  VSA_ERR_INCOMPLETE = 5        /* figure tables written with cells missing */
} vsa_status;

typedef struct vsa_config vsa_config;
typedef struct vsa_env vsa_env;
typedef struct vsa_agent vsa_agent;

VSA_API const char* vsa_version(void);
VSA_API const char* vsa_last_error(void);
VSA_API const char* vsa_status_string(vsa_status status);

/* ---- configuration ---------------------------------------------------- */

/* A config starts at the reference defaults (5 VSPs, 60 blocks, 500 x 250
 * schedule, DDPG agent, seed 1). */
VSA_API vsa_status vsa_config_create(vsa_config** out);
VSA_API void vsa_config_destroy(vsa_config* config);
VSA_API vsa_status vsa_config_load(vsa_config* config, const char* path);
VSA_API vsa_status vsa_config_set(vsa_config* config, const char* key,
                                  const char* value);
VSA_API vsa_status vsa_config_validate(const vsa_config* config);

/* Current value of one key, same sizing rules as vsa_config_render. */
VSA_API vsa_status vsa_config_get(const vsa_config* config, const char* key,
                                  char* buffer, size_t capacity,
                                  size_t* needed);

/* Writes the resolved config as key = value text. `needed` (optional)
 * receives the size including the terminator; a short buffer yields
 * VSA_ERR_INVALID_ARGUMENT and leaves `buffer` untouched. */
VSA_API vsa_status vsa_config_render(const vsa_config* config, char* buffer,
                                     size_t capacity, size_t* needed);

/* ---- batch runs --------------------------------------------------------- */

/* Runs every seed and sweep point of `config`, writing artifacts under its
 * output directory. With `verbose`, one progress line per run goes to
 * stderr. */
VSA_API vsa_status vsa_run(const vsa_config* config, int verbose);

/* Builds the four median-across-seeds tables under `output_dir`. Returns
 * VSA_ERR_INCOMPLETE when cells are missing; their names are then listed,
 * one per line, in `missing` (optional, same sizing rules as render). */
VSA_API vsa_status vsa_figure_tables(const char* output_dir, char* missing,
                                     size_t capacity, size_t* needed);

/* ---- environment -------------------------------------------------------- */

VSA_API vsa_status vsa_env_create(const vsa_config* config, vsa_env** out);
VSA_API void vsa_env_destroy(vsa_env* env);
VSA_API size_t vsa_env_state_dim(const vsa_env* env);
VSA_API size_t vsa_env_action_dim(const vsa_env* env);
VSA_API vsa_status vsa_env_reset(vsa_env* env, uint64_t seed, double* state,
                                 size_t state_len);

/* Clears the current frame with coefficient scales `action`. `triggered`
 * (optional) reports whether the auction ran. */
VSA_API vsa_status vsa_env_step(vsa_env* env, const double* action,
                                size_t action_len, double* next_state,
                                size_t state_len, double* reward,
                                int* triggered);

/* ---- agent ---------------------------------------------------------------- */

VSA_API vsa_status vsa_agent_create(const vsa_config* config, uint64_t seed,
                                    vsa_agent** out);
VSA_API void vsa_agent_destroy(vsa_agent* agent);
VSA_API vsa_status vsa_agent_act(vsa_agent* agent, const double* state,
                                 size_t state_len, int explore, double* action,
                                 size_t action_len);
VSA_API vsa_status vsa_agent_save(const vsa_agent* agent, const char* path);
VSA_API vsa_status vsa_agent_load(const char* path, vsa_agent** out);

/* ---- winner determination ----------------------------------------------- */

/* Exact knapsack winners and Clarke payments for `n` bidders. `eligible`
 * and `priorities` may be NULL (all eligible, equal priority). Ties go to
 * the smaller priority value, then the lower index. */
VSA_API vsa_status vsa_solve_winners(size_t n, const double* weighted_bids,
                                     const int* demands, const int* eligible,
                                     const int* priorities, int capacity,
                                     int* winners, double* payments);

#ifdef __cplusplus
}
#endif

#endif /* VSA_VSA_H */
