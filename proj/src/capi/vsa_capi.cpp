// Copyright 2026 The vsauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vsa/vsa.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "core/auction.hpp"
#include "core/config.hpp"
#include "core/experiment.hpp"

struct vsa_config {
  vsa::RunConfig config;
};

struct vsa_env {
  vsa::Environment env;
};

struct vsa_agent {
  vsa::DdpgAgent agent;
};

namespace {

thread_local std::string g_last_error;

vsa_status fail(vsa_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps whatever the core threw onto a status code.
template <typename F>
vsa_status guarded(F&& body) {
  try {
    return body();
  } catch (const vsa::ContractError& e) {
    return fail(VSA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const vsa::DomainError& e) {
    return fail(VSA_ERR_DOMAIN, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(VSA_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VSA_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(VSA_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(VSA_ERR_RUNTIME, "unknown error");
  }
}

vsa_status require(bool ok, const char* message) {
  return ok ? VSA_OK : fail(VSA_ERR_INVALID_ARGUMENT, message);
}

vsa_status copy_text(const std::string& text, char* buffer, size_t capacity,
                     size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buffer) return VSA_OK;
  if (capacity < text.size() + 1) {
    return fail(VSA_ERR_INVALID_ARGUMENT, "buffer too small");
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return VSA_OK;
}

}  // namespace

extern "C" {

const char* vsa_version(void) { return VSA_VERSION; }

const char* vsa_last_error(void) { return g_last_error.c_str(); }

const char* vsa_status_string(vsa_status status) {
  switch (status) {
    case VSA_OK:
      return "ok";
    case VSA_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case VSA_ERR_DOMAIN:
      return "undefined metric";
    case VSA_ERR_IO:
      return "i/o error";
    case VSA_ERR_RUNTIME:
      return "runtime failure";
    case VSA_ERR_INCOMPLETE:
      return "incomplete";
  }
  return "unknown status";
}

vsa_status vsa_config_create(vsa_config** out) {
  if (!out) return fail(VSA_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] {
    *out = new vsa_config{};
    return VSA_OK;
  });
}

void vsa_config_destroy(vsa_config* config) { delete config; }

vsa_status vsa_config_load(vsa_config* config, const char* path) {
  if (auto s = require(config && path, "config and path must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    std::ifstream in(path);
    if (!in) return fail(VSA_ERR_IO, std::string("cannot open ") + path);
    vsa::RunConfig copy = config->config;
    vsa::apply_config_stream(copy, in);
    config->config = std::move(copy);
    return VSA_OK;
  });
}

vsa_status vsa_config_set(vsa_config* config, const char* key,
                          const char* value) {
  if (auto s = require(config && key && value,
                       "config, key and value must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    vsa::apply_setting(config->config, key, value);
    return VSA_OK;
  });
}

vsa_status vsa_config_validate(const vsa_config* config) {
  if (auto s = require(config, "config is NULL")) return s;
  return guarded([&] {
    config->config.validate();
    return VSA_OK;
  });
}

vsa_status vsa_config_get(const vsa_config* config, const char* key,
                          char* buffer, size_t capacity, size_t* needed) {
  if (auto s = require(config && key, "config and key must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    return copy_text(vsa::get_setting(config->config, key), buffer, capacity,
                     needed);
  });
}

vsa_status vsa_config_render(const vsa_config* config, char* buffer,
                             size_t capacity, size_t* needed) {
  if (auto s = require(config, "config is NULL")) return s;
  return guarded([&] {
    return copy_text(vsa::render_config(config->config), buffer, capacity,
                     needed);
  });
}

vsa_status vsa_run(const vsa_config* config, int verbose) {
  if (auto s = require(config, "config is NULL")) return s;
  return guarded([&] {
    vsa::run_batch(config->config, verbose ? &std::cerr : nullptr);
    return VSA_OK;
  });
}

vsa_status vsa_figure_tables(const char* output_dir, char* missing,
                             size_t capacity, size_t* needed) {
  if (auto s = require(output_dir, "output_dir is NULL")) return s;
  return guarded([&] {
    const auto report = vsa::figure_tables(output_dir);
    std::string text;
    for (const auto& m : report.missing) text += m + '\n';
    if (auto s = copy_text(text, missing, capacity, needed)) return s;
    if (report.missing.empty()) return VSA_OK;
    return fail(VSA_ERR_INCOMPLETE,
                std::to_string(report.missing.size()) + " cell(s) missing");
  });
}

vsa_status vsa_env_create(const vsa_config* config, vsa_env** out) {
  if (auto s = require(config && out, "config and out must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    *out = new vsa_env{vsa::Environment(config->config.env)};
    return VSA_OK;
  });
}

void vsa_env_destroy(vsa_env* env) { delete env; }

size_t vsa_env_state_dim(const vsa_env* env) {
  return env ? static_cast<size_t>(env->env.config().state_dim()) : 0;
}

size_t vsa_env_action_dim(const vsa_env* env) {
  return env ? static_cast<size_t>(env->env.config().vsp_count()) : 0;
}

vsa_status vsa_env_reset(vsa_env* env, uint64_t seed, double* state,
                         size_t state_len) {
  if (auto s = require(env && state, "env and state must be non-NULL")) {
    return s;
  }
  if (auto s = require(state_len == vsa_env_state_dim(env),
                       "state_len != state dimension")) {
    return s;
  }
  return guarded([&] {
    const auto s = env->env.reset(seed);
    std::copy(s.begin(), s.end(), state);
    return VSA_OK;
  });
}

vsa_status vsa_env_step(vsa_env* env, const double* action, size_t action_len,
                        double* next_state, size_t state_len, double* reward,
                        int* triggered) {
  if (auto s = require(env && action && next_state && reward,
                       "env, action, next_state and reward must be non-NULL")) {
    return s;
  }
  if (auto s = require(state_len == vsa_env_state_dim(env),
                       "state_len != state dimension")) {
    return s;
  }
  return guarded([&] {
    const auto step = env->env.step(std::span<const double>(action, action_len));
    std::copy(step.next_state.begin(), step.next_state.end(), next_state);
    *reward = step.reward;
    if (triggered) *triggered = step.outcome.triggered ? 1 : 0;
    return VSA_OK;
  });
}

vsa_status vsa_agent_create(const vsa_config* config, uint64_t seed,
                            vsa_agent** out) {
  if (auto s = require(config && out, "config and out must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    const auto& c = config->config;
    *out = new vsa_agent{
        vsa::DdpgAgent(c.env.state_dim(), c.vsp_count(), c.ddpg, seed)};
    return VSA_OK;
  });
}

void vsa_agent_destroy(vsa_agent* agent) { delete agent; }

vsa_status vsa_agent_act(vsa_agent* agent, const double* state,
                         size_t state_len, int explore, double* action,
                         size_t action_len) {
  if (auto s = require(agent && state && action,
                       "agent, state and action must be non-NULL")) {
    return s;
  }
  if (auto s = require(action_len ==
                           static_cast<size_t>(agent->agent.action_dim()),
                       "action_len != action dimension")) {
    return s;
  }
  return guarded([&] {
    const auto a =
        agent->agent.act(std::span<const double>(state, state_len), explore);
    std::copy(a.begin(), a.end(), action);
    return VSA_OK;
  });
}

vsa_status vsa_agent_save(const vsa_agent* agent, const char* path) {
  if (auto s = require(agent && path, "agent and path must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(VSA_ERR_IO, std::string("cannot write ") + path);
    agent->agent.save(out);
    out.flush();
    if (!out) return fail(VSA_ERR_IO, std::string("write failed: ") + path);
    return VSA_OK;
  });
}

vsa_status vsa_agent_load(const char* path, vsa_agent** out) {
  if (auto s = require(path && out, "path and out must be non-NULL")) return s;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(VSA_ERR_IO, std::string("cannot open ") + path);
    *out = new vsa_agent{vsa::DdpgAgent::load(in)};
    return VSA_OK;
  });
}

vsa_status vsa_solve_winners(size_t n, const double* weighted_bids,
                             const int* demands, const int* eligible,
                             const int* priorities, int capacity, int* winners,
                             double* payments) {
  if (auto s = require(n == 0 || (weighted_bids && demands && winners),
                       "weighted_bids, demands and winners must be non-NULL")) {
    return s;
  }
  return guarded([&] {
    std::vector<vsa::Bidder> bidders(n);
    for (size_t i = 0; i < n; ++i) {
      bidders[i] = vsa::Bidder{weighted_bids[i], demands[i],
                               eligible ? eligible[i] != 0 : true,
                               priorities ? priorities[i] : 1};
    }
    const auto x = vsa::determine_winners(bidders, capacity);
    std::copy(x.begin(), x.end(), winners);
    if (payments) {
      const auto p = vsa::clarke_payments(bidders, capacity, x);
      std::copy(p.begin(), p.end(), payments);
    }
    return VSA_OK;
  });
}

}  // extern "C"
