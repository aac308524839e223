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

// Command-line front end over the C interface.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsa/vsa.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

using ConfigPtr = std::unique_ptr<vsa_config, decltype(&vsa_config_destroy)>;

int report(vsa_status status, const std::string& what) {
  std::cerr << "vsauction: " << what << ": " << vsa_last_error() << '\n';
  return status == VSA_ERR_INVALID_ARGUMENT ? kExitConfig : kExitRuntime;
}

// Rendered config (key == nullptr) or one value.
std::string text(const vsa_config* config, const char* key) {
  std::size_t size = 0;
  auto fetch = [&](char* buf, std::size_t cap, std::size_t* needed) {
    return key ? vsa_config_get(config, key, buf, cap, needed)
               : vsa_config_render(config, buf, cap, needed);
  };
  if (fetch(nullptr, 0, &size) != VSA_OK) return {};
  std::string out(size, '\0');
  fetch(out.data(), size, nullptr);
  out.pop_back();
  return out;
}

std::string join(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seeds[i]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Priority-weighted spectrum auctions with a DDPG broker"};
  app.set_version_flag("--version", std::string(vsa_version()));

  std::string config_path;
  std::optional<std::string> agent;
  std::vector<std::uint64_t> seeds;
  std::optional<int> episodes;
  std::optional<int> frames;
  std::optional<int> blocks;
  std::optional<int> vsps;
  std::optional<std::string> out_dir;
  std::optional<std::string> sweep;
  std::vector<std::string> overrides;
  bool tables_only = false;
  bool print_config = false;
  bool quiet = false;

  app.add_option("--config", config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--agent", agent, "policy to run")
      ->check(CLI::IsMember({"ddpg", "greedy", "unit"}));
  app.add_option("--seed", seeds, "run seed (repeatable)")->take_all();
  app.add_option("--episodes", episodes, "episodes per run")
      ->check(CLI::PositiveNumber);
  app.add_option("--frames", frames, "frames per episode")
      ->check(CLI::PositiveNumber);
  app.add_option("--blocks", blocks, "spectrum blocks in the full band")
      ->check(CLI::PositiveNumber);
  app.add_option("--vsps", vsps, "number of bidders")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--sweep", sweep, "sweep over block or bidder counts")
      ->check(CLI::IsMember({"blocks", "vsps", "none"}));
  app.add_option("--set", overrides, "extra key=value setting (repeatable)");
  app.add_flag("--tables-only", tables_only,
               "only rebuild the figure tables from finished runs");
  app.add_flag("--print-config", print_config,
               "print the resolved configuration and exit");
  app.add_flag("--quiet", quiet, "no per-run progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  vsa_config* raw = nullptr;
  if (vsa_config_create(&raw) != VSA_OK) {
    return report(VSA_ERR_RUNTIME, "creating config");
  }
  ConfigPtr config(raw, &vsa_config_destroy);

  if (!config_path.empty()) {
    if (auto s = vsa_config_load(config.get(), config_path.c_str())) {
      return report(s == VSA_ERR_IO ? VSA_ERR_INVALID_ARGUMENT : s,
                    config_path);
    }
  }
  // Flags override the file.
  std::vector<std::pair<std::string, std::string>> settings;
  if (agent) settings.emplace_back("run.agent", *agent);
  if (!seeds.empty()) settings.emplace_back("run.seeds", join(seeds));
  if (episodes) settings.emplace_back("ddpg.episodes", std::to_string(*episodes));
  if (frames) {
    settings.emplace_back("ddpg.frames_per_episode", std::to_string(*frames));
  }
  if (vsps) settings.emplace_back("env.vsp_count", std::to_string(*vsps));
  if (blocks) settings.emplace_back("env.block_count", std::to_string(*blocks));
  if (out_dir) settings.emplace_back("run.output_dir", *out_dir);
  if (sweep) settings.emplace_back("run.sweep", *sweep);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "vsauction: --set expects key=value, got '" << kv << "'\n";
      return kExitConfig;
    }
    settings.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& [key, value] : settings) {
    if (auto s = vsa_config_set(config.get(), key.c_str(), value.c_str())) {
      return report(s, key);
    }
  }
  if (auto s = vsa_config_validate(config.get())) {
    return report(s, "invalid configuration");
  }

  if (print_config) {
    std::cout << text(config.get(), nullptr);
    return kExitOk;
  }
  const std::string output = text(config.get(), "run.output_dir");

  if (!tables_only) {
    if (auto s = vsa_run(config.get(), quiet ? 0 : 1)) {
      return report(s, "run failed");
    }
  }

  std::size_t needed = 0;
  auto s = vsa_figure_tables(output.c_str(), nullptr, 0, &needed);
  if (s == VSA_ERR_INCOMPLETE) {
    std::string missing(needed, '\0');
    vsa_figure_tables(output.c_str(), missing.data(), needed, nullptr);
    missing.pop_back();
    if (!quiet) {
      std::cerr << "vsauction: figure tables written; cells without runs:\n"
                << missing;
    }
  } else if (s != VSA_OK) {
    return report(s, "figure tables");
  }
  return kExitOk;
}
