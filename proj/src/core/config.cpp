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

#include "core/config.hpp"

#include "core/optimizer.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace vsa {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ContractError("config: bad value '" + value + "' for " + key);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(x)) bad_value(key, value);
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, value);
  }
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
  Int x{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

template <typename Int>
std::vector<Int> parse_list(const std::string& key, const std::string& value) {
  std::vector<Int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_int<Int>(key, trim(item)));
  }
  if (out.empty()) bad_value(key, value);
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename Int>
std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

struct Key {
  const char* name;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define VSA_DOUBLE(name, field)                                              \
  Key {                                                                      \
    name,                                                                    \
        [](RunConfig& c, const std::string& k, const std::string& v) {       \
          c.field = parse_double(k, v);                                      \
        },                                                                   \
        [](const RunConfig& c) { return fmt(c.field); }                      \
  }
#define VSA_INT(name, field)                                                 \
  Key {                                                                      \
    name,                                                                    \
        [](RunConfig& c, const std::string& k, const std::string& v) {       \
          c.field = parse_int<int>(k, v);                                    \
        },                                                                   \
        [](const RunConfig& c) { return std::to_string(c.field); }           \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table{
      Key{"run.agent",
          [](RunConfig& c, const std::string&, const std::string& v) {
            c.agent = policy_kind_from_string(v);
          },
          [](const RunConfig& c) { return std::string(to_string(c.agent)); }},
      Key{"run.seeds",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.seeds = parse_list<std::uint64_t>(k, v);
          },
          [](const RunConfig& c) { return join(c.seeds); }},
      Key{"run.output_dir",
          [](RunConfig& c, const std::string&, const std::string& v) {
            c.output_dir = v;
          },
          [](const RunConfig& c) { return c.output_dir; }},
      Key{"run.sweep",
          [](RunConfig& c, const std::string&, const std::string& v) {
            c.sweep = sweep_kind_from_string(v);
          },
          [](const RunConfig& c) { return std::string(to_string(c.sweep)); }},
      Key{"run.block_count_sweep",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.block_count_sweep = parse_list<int>(k, v);
          },
          [](const RunConfig& c) { return join(c.block_count_sweep); }},
      Key{"run.vsp_count_sweep",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.vsp_count_sweep = parse_list<int>(k, v);
          },
          [](const RunConfig& c) { return join(c.vsp_count_sweep); }},
      Key{"run.log_auctions",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.log_auctions = parse_bool(k, v);
          },
          [](const RunConfig& c) {
            return std::string(c.log_auctions ? "true" : "false");
          }},
      Key{"env.vsp_count",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            const int n = parse_int<int>(k, v);
            if (n < 1) bad_value(k, v);
            c.set_vsp_count(n);
          },
          [](const RunConfig& c) { return std::to_string(c.vsp_count()); }},
      VSA_DOUBLE("env.total_bandwidth_hz", env.total_bandwidth),
      VSA_DOUBLE("env.block_bandwidth_hz", env.block_bandwidth),
      Key{"env.block_count",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            const int n = parse_int<int>(k, v);
            if (n < 1) bad_value(k, v);
            c.set_block_count(n);
          },
          [](const RunConfig& c) { return std::to_string(c.block_count()); }},
      VSA_DOUBLE("env.bw_fraction_lo", env.bw_fraction.lo),
      VSA_DOUBLE("env.bw_fraction_hi", env.bw_fraction.hi),
      VSA_INT("env.demand_max", env.demand_max),
      VSA_DOUBLE("env.value_lo", env.value_range.lo),
      VSA_DOUBLE("env.value_hi", env.value_range.hi),
      VSA_DOUBLE("env.per_block_rate", env.per_block_rate),
      VSA_DOUBLE("env.qos_weight", env.coefficients.qos_weight),
      VSA_DOUBLE("env.truth_weight", env.coefficients.truth_weight),
      VSA_INT("ddpg.buffer_capacity", ddpg.buffer_capacity),
      VSA_INT("ddpg.batch_size", ddpg.batch_size),
      VSA_DOUBLE("ddpg.actor_lr", ddpg.actor_lr),
      VSA_DOUBLE("ddpg.critic_lr", ddpg.critic_lr),
      VSA_DOUBLE("ddpg.polyak", ddpg.polyak),
      Key{"ddpg.optimizer",
          [](RunConfig& c, const std::string&, const std::string& v) {
            c.ddpg.optimizer = optimizer_kind_from_string(v);
          },
          [](const RunConfig& c) {
            return std::string(to_string(c.ddpg.optimizer));
          }},
      VSA_DOUBLE("ddpg.discount", ddpg.discount),
      Key{"ddpg.actor_hidden",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.ddpg.actor_hidden = parse_list<int>(k, v);
          },
          [](const RunConfig& c) { return join(c.ddpg.actor_hidden); }},
      Key{"ddpg.critic_hidden",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.ddpg.critic_hidden = parse_list<int>(k, v);
          },
          [](const RunConfig& c) { return join(c.ddpg.critic_hidden); }},
      VSA_DOUBLE("ddpg.exploration_noise_std", ddpg.exploration_noise_std),
      VSA_DOUBLE("ddpg.noise_decay", ddpg.noise_decay),
      VSA_DOUBLE("ddpg.noise_min", ddpg.noise_min),
      VSA_DOUBLE("ddpg.max_coefficient", ddpg.max_coefficient),
      VSA_DOUBLE("ddpg.reward_scale", ddpg.reward_scale),
      VSA_DOUBLE("ddpg.reward_shift", ddpg.reward_shift),
      VSA_DOUBLE("ddpg.grad_clip", ddpg.grad_clip),
      Key{"ddpg.normalize_rewards",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.ddpg.normalize_rewards = parse_bool(k, v);
          },
          [](const RunConfig& c) {
            return std::string(c.ddpg.normalize_rewards ? "true" : "false");
          }},
      Key{"ddpg.decay_per_episode",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.ddpg.decay_per_episode = parse_bool(k, v);
          },
          [](const RunConfig& c) {
            return std::string(c.ddpg.decay_per_episode ? "true" : "false");
          }},
      Key{"ddpg.episodes",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.ddpg.episodes = parse_int<int>(k, v);
          },
          [](const RunConfig& c) { return std::to_string(c.ddpg.episodes); }},
      Key{"ddpg.frames_per_episode",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.ddpg.frames_per_episode = parse_int<int>(k, v);
            c.env.frames_per_episode = c.ddpg.frames_per_episode;
          },
          [](const RunConfig& c) {
            return std::to_string(c.ddpg.frames_per_episode);
          }},
  };
  return table;
}

#undef VSA_DOUBLE
#undef VSA_INT

}  // namespace

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kNone:
      return "none";
    case SweepKind::kBlocks:
      return "blocks";
    case SweepKind::kVsps:
      return "vsps";
  }
  return "none";
}

SweepKind sweep_kind_from_string(const std::string& name) {
  if (name == "none") return SweepKind::kNone;
  if (name == "blocks") return SweepKind::kBlocks;
  if (name == "vsps") return SweepKind::kVsps;
  throw ContractError("unknown sweep '" + name + "'");
}

int RunConfig::block_count() const {
  return vsa::block_count(env.total_bandwidth, env.block_bandwidth);
}

void RunConfig::set_vsp_count(int count) {
  env.profiles = replicated_profiles(count);
}

void RunConfig::set_block_count(int blocks) {
  if (blocks < 1) throw ContractError("block count must be >= 1");
  env.total_bandwidth = blocks * env.block_bandwidth;
}

void RunConfig::validate() const {
  env.validate();
  ddpg.validate();
  if (seeds.empty()) throw ContractError("run.seeds must not be empty");
  if (output_dir.empty()) throw ContractError("run.output_dir is empty");
  if (block_count_sweep.empty() || vsp_count_sweep.empty()) {
    throw ContractError("sweeps must not be empty");
  }
  for (int b : block_count_sweep) {
    if (b < 1) throw ContractError("run.block_count_sweep entries must be >= 1");
  }
  for (int n : vsp_count_sweep) {
    if (n < 1) throw ContractError("run.vsp_count_sweep entries must be >= 1");
  }
  if (env.frames_per_episode != ddpg.frames_per_episode) {
    throw ContractError("env and ddpg frames_per_episode differ");
  }
}

void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value) {
  for (const auto& k : keys()) {
    if (key == k.name) {
      k.set(config, key, value);
      return;
    }
  }
  throw ContractError("config: unknown key '" + key + "'");
}

void apply_config_stream(RunConfig& config, std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ContractError("config line " + std::to_string(number) +
                          ": expected key = value");
    }
    try {
      apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ContractError& e) {
      throw ContractError("config line " + std::to_string(number) + ": " +
                          e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("config: cannot open '" + path + "'");
  apply_config_stream(config, in);
}

std::string get_setting(const RunConfig& config, const std::string& key) {
  for (const auto& k : keys()) {
    if (key == k.name) return k.get(config);
  }
  throw ContractError("config: unknown key '" + key + "'");
}

std::string render_config(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) {
    out += k.name;
    out += " = ";
    out += k.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace vsa
