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

#include <gtest/gtest.h>

#include <sstream>

namespace vsa {
namespace {

TEST(Config, DefaultsValidate) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.vsp_count(), 5);
  EXPECT_EQ(c.block_count(), 60);
  EXPECT_EQ(c.agent, PolicyKind::kDdpg);
}

TEST(Config, RenderParsesBackToSameText) {
  RunConfig c;
  apply_setting(c, "env.vsp_count", "20");
  apply_setting(c, "env.block_count", "180");
  apply_setting(c, "ddpg.actor_lr", "0.000123");
  apply_setting(c, "ddpg.optimizer", "adam");
  apply_setting(c, "run.seeds", "3,1,4");
  const std::string text = render_config(c);

  RunConfig back;
  std::istringstream in(text);
  apply_config_stream(back, in);
  EXPECT_EQ(render_config(back), text);
  EXPECT_EQ(back.vsp_count(), 20);
  EXPECT_EQ(back.block_count(), 180);
  EXPECT_EQ(back.ddpg.actor_lr, 0.000123);
  EXPECT_EQ(back.ddpg.optimizer, OptimizerKind::kAdam);
  EXPECT_EQ(back.seeds, (std::vector<std::uint64_t>{3, 1, 4}));
}

TEST(Config, FramesKeyKeepsBothSidesInStep) {
  RunConfig c;
  apply_setting(c, "ddpg.frames_per_episode", "40");
  EXPECT_EQ(c.env.frames_per_episode, 40);
  EXPECT_EQ(c.ddpg.frames_per_episode, 40);
  EXPECT_EQ(get_setting(c, "ddpg.frames_per_episode"), "40");
}

TEST(Config, CommentsAndBlankLinesAreSkipped) {
  RunConfig c;
  std::istringstream in(
      "# header\n"
      "\n"
      "run.agent = greedy   # trailing\n"
      "  ddpg.episodes=7\n");
  apply_config_stream(c, in);
  EXPECT_EQ(c.agent, PolicyKind::kGreedy);
  EXPECT_EQ(c.ddpg.episodes, 7);
}

TEST(Config, ErrorsNameTheLine) {
  RunConfig c;
  std::istringstream in("run.agent = unit\nbogus.key = 1\n");
  try {
    apply_config_stream(c, in);
    FAIL() << "expected ContractError";
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream no_eq("run.agent unit\n");
  EXPECT_THROW(apply_config_stream(c, no_eq), ContractError);
}

TEST(Config, RejectsBadValues) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "ddpg.episodes", "ten"), ContractError);
  EXPECT_THROW(apply_setting(c, "ddpg.episodes", "10x"), ContractError);
  EXPECT_THROW(apply_setting(c, "run.agent", "dqn"), ContractError);
  EXPECT_THROW(apply_setting(c, "run.sweep", "both"), ContractError);
  EXPECT_THROW(apply_setting(c, "ddpg.optimizer", "rmsprop"), ContractError);
  EXPECT_THROW(apply_setting(c, "env.block_count", "0"), ContractError);
  EXPECT_THROW(get_setting(c, "nope"), ContractError);
}

TEST(Config, ValidateCatchesInconsistency) {
  RunConfig c;
  c.env.frames_per_episode = 10;
  EXPECT_THROW(c.validate(), ContractError);
  RunConfig empty_seeds;
  empty_seeds.seeds.clear();
  EXPECT_THROW(empty_seeds.validate(), ContractError);
  RunConfig bad_sweep;
  bad_sweep.block_count_sweep = {60, 0};
  EXPECT_THROW(bad_sweep.validate(), ContractError);
}

TEST(Config, SweepNamesRoundTrip) {
  for (auto k : {SweepKind::kNone, SweepKind::kBlocks, SweepKind::kVsps}) {
    EXPECT_EQ(sweep_kind_from_string(to_string(k)), k);
  }
}

}  // namespace
}  // namespace vsa
