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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/environment.hpp"
#include "core/runner.hpp"

namespace vsa {

enum class SweepKind { kNone, kBlocks, kVsps };

const char* to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

/// Everything needed to reproduce a batch of runs.
///
/// Profiles are not listed key by key: `env.vsp_count` selects how many rows
/// of the reference QoS table are cycled through.
struct RunConfig {
  EnvConfig env;
  DdpgConfig ddpg;
  PolicyKind agent = PolicyKind::kDdpg;
  std::vector<std::uint64_t> seeds{1};
  std::string output_dir = "vsa_out";
  SweepKind sweep = SweepKind::kNone;
  std::vector<int> block_count_sweep{60, 120, 180, 240};
  std::vector<int> vsp_count_sweep{5, 20};
  bool log_auctions = true;

  int vsp_count() const { return env.vsp_count(); }
  int block_count() const;
  void set_vsp_count(int count);
  void set_block_count(int blocks);

  /// Throws ContractError naming the first offending key.
  void validate() const;
};

/// Assigns one `key = value` pair. Unknown keys and unparsable values throw
/// ContractError.
void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value);

std::string get_setting(const RunConfig& config, const std::string& key);

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
/// Errors carry the line number.
void apply_config_stream(RunConfig& config, std::istream& in);
void apply_config_file(RunConfig& config, const std::string& path);

/// Every key with its resolved value, in a fixed order, as config-file text.
std::string render_config(const RunConfig& config);

}  // namespace vsa
