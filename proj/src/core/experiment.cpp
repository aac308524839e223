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

#include "core/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "core/metrics.hpp"
#include "core/serialization.hpp"

#ifndef VSA_VERSION
#define VSA_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace vsa {
namespace {

constexpr const char* kAuctionsHeader =
    "episode,frame,triggered,J_f,vsp_id,bid,value,demand,theta,coefficient,"
    "weighted_bid,won,rate,payment_weighted,payment_raw";
constexpr const char* kEpisodesHeader =
    "episode,mean_reward,utilization,jain,noise_std,critic_loss_mean,"
    "actor_loss_mean";
constexpr const char* kSummaryHeader =
    "agent,seed,vsp_count,block_count,episodes,frames_per_episode,"
    "triggered_auctions,final_utilization,utilization_all,jain_final,"
    "reward_first,reward_last,convergence_episode";
constexpr const char* kVspsHeader = "vsp_id,qci_priority,win_pct";

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void schema_line(std::ostream& out, const char* table) {
  out << "# vsauction " << table << " v" << kSchemaVersion << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

class AuctionLog : public RunObserver {
 public:
  explicit AuctionLog(const fs::path& path) : path_(path), out_(open_out(path)) {
    schema_line(out_, "auctions");
    out_ << kAuctionsHeader << '\n';
  }

  void on_frame(int episode, const StepResult& step) override {
    const auto& requests = step.frame.requests();
    const auto& o = step.outcome;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      const auto& r = requests[i];
      const double raw = o.coefficients[i] > 0 ? o.payments[i] / o.coefficients[i]
                                               : 0.0;
      out_ << episode << ',' << step.frame.frame_index() << ','
           << (o.triggered ? 1 : 0) << ',' << step.frame.block_count() << ','
           << r.vsp_id() << ',' << num(r.bid()) << ',' << num(r.value()) << ','
           << r.demand() << ',' << num(truthfulness(r.bid(), r.value())) << ','
           << num(o.coefficients[i]) << ',' << num(o.weighted_bids[i]) << ','
           << o.winners[i] << ',' << num(r.rate()) << ',' << num(o.payments[i])
           << ',' << num(raw) << '\n';
    }
  }

  void close() { close_out(out_, path_); }

 private:
  fs::path path_;
  std::ofstream out_;
};

void write_episodes(const fs::path& path, const RunHistory& history) {
  auto out = open_out(path);
  schema_line(out, "episodes");
  out << kEpisodesHeader << '\n';
  for (const auto& e : history.episodes) {
    out << e.episode << ',' << num(e.mean_reward) << ',' << num(e.utilization)
        << ',' << num(e.jain) << ',' << num(e.noise_std) << ','
        << num(e.critic_loss_mean) << ',' << num(e.actor_loss_mean) << '\n';
  }
  close_out(out, path);
}

void write_summary(const fs::path& dir, const RunSummary& s,
                   const RunConfig& resolved) {
  const fs::path path = dir / "summary.csv";
  auto out = open_out(path);
  schema_line(out, "summary");
  out << kSummaryHeader << '\n';
  out << to_string(s.point.agent) << ',' << s.point.seed << ','
      << s.point.vsp_count << ',' << s.point.block_count << ',' << s.episodes
      << ',' << s.frames_per_episode << ',' << s.triggered_auctions << ','
      << num(s.final_utilization) << ',' << num(s.utilization_all) << ','
      << num(s.jain_final) << ',' << num(s.reward_first) << ','
      << num(s.reward_last) << ',' << s.convergence_episode << '\n';
  close_out(out, path);

  const fs::path vsps_path = dir / "vsps.csv";
  auto vsps = open_out(vsps_path);
  schema_line(vsps, "vsps");
  vsps << kVspsHeader << '\n';
  for (std::size_t i = 0; i < s.win_pct.size(); ++i) {
    vsps << i + 1 << ',' << resolved.env.profiles[i].qci_priority() << ','
         << num(s.win_pct[i]) << '\n';
  }
  close_out(vsps, vsps_path);
}

void write_metadata(const fs::path& dir, const RunConfig& resolved,
                    const RunPoint& point) {
  const fs::path path = dir / "metadata.txt";
  auto out = open_out(path);
  schema_line(out, "metadata");
  out << "# code_version = " << VSA_VERSION << '\n'
      << "# seed = " << point.seed << '\n'
      << "# state_scale = " << num(resolved.env.value_range.hi) << ','
      << num(resolved.env.value_range.hi) << ',' << resolved.env.demand_max
      << '\n'
      << render_config(resolved);
  close_out(out, path);
}

// Mean over a window that is clipped to the available episodes.
double window_mean(const std::vector<double>& rewards, bool from_end) {
  const auto n = static_cast<int>(rewards.size());
  const int k = std::min(n, kRewardWindow);
  const auto begin = from_end ? rewards.end() - k : rewards.begin();
  return mean_episode_reward(std::vector<double>(begin, begin + k));
}

double safe_utilization(std::span<const FrameSummary> frames) {
  long long available = 0;
  for (const auto& f : frames) available += f.block_count;
  if (frames.empty() || available == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return spectrum_utilization(frames);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Data rows of a schema-headed CSV file (schema and column lines skipped).
std::vector<std::vector<std::string>> read_rows(const fs::path& path,
                                                const char* header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("# vsauction", 0) != 0) {
    throw std::runtime_error(path.string() + ": missing schema line");
  }
  std::getline(in, line);
  if (line != header) {
    throw std::runtime_error(path.string() + ": unexpected columns");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(split(line));
  }
  return rows;
}

double to_double(const std::string& s) {
  return s == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
}

struct FinishedRun {
  RunSummary summary;
  fs::path dir;
};

std::vector<FinishedRun> finished_runs(const fs::path& root) {
  std::vector<FinishedRun> runs;
  if (!fs::exists(root)) return runs;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().filename() == "summary.csv") {
      dirs.push_back(entry.path().parent_path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    if (fs::exists(dir / kIncompleteMarker)) continue;
    const auto rows = read_rows(dir / "summary.csv", kSummaryHeader);
    if (rows.size() != 1 || rows[0].size() != 13) {
      throw std::runtime_error((dir / "summary.csv").string() + ": bad row");
    }
    const auto& r = rows[0];
    RunSummary s;
    s.point.agent = policy_kind_from_string(r[0]);
    s.point.seed = std::stoull(r[1]);
    s.point.vsp_count = std::stoi(r[2]);
    s.point.block_count = std::stoi(r[3]);
    s.episodes = std::stoi(r[4]);
    s.frames_per_episode = std::stoi(r[5]);
    s.triggered_auctions = std::stoll(r[6]);
    s.final_utilization = to_double(r[7]);
    s.utilization_all = to_double(r[8]);
    s.jain_final = to_double(r[9]);
    s.reward_first = to_double(r[10]);
    s.reward_last = to_double(r[11]);
    s.convergence_episode = std::stoi(r[12]);
    for (const auto& v : read_rows(dir / "vsps.csv", kVspsHeader)) {
      s.win_pct.push_back(to_double(v.at(2)));
    }
    runs.push_back({std::move(s), dir});
  }
  return runs;
}

std::vector<double> episode_rewards(const fs::path& dir) {
  std::vector<double> out;
  for (const auto& r : read_rows(dir / "episodes.csv", kEpisodesHeader)) {
    out.push_back(to_double(r.at(1)));
  }
  return out;
}

// Median that ignores NaN entries; NaN when nothing is left.
double median_finite(std::vector<double> values) {
  std::erase_if(values, [](double x) { return std::isnan(x); });
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return median(std::move(values));
}

}  // namespace

std::string RunPoint::label() const {
  return "vsps" + std::to_string(vsp_count) + "_blocks" +
         std::to_string(block_count);
}

std::vector<RunPoint> plan_runs(const RunConfig& config) {
  std::vector<std::pair<int, int>> cells;  // (vsps, blocks)
  switch (config.sweep) {
    case SweepKind::kNone:
      cells.emplace_back(config.vsp_count(), config.block_count());
      break;
    case SweepKind::kBlocks:
      for (int b : config.block_count_sweep) {
        cells.emplace_back(config.vsp_count(), b);
      }
      break;
    case SweepKind::kVsps:
      for (int n : config.vsp_count_sweep) {
        cells.emplace_back(n, config.block_count());
      }
      break;
  }
  std::vector<RunPoint> points;
  for (const auto& [vsps, blocks] : cells) {
    for (std::uint64_t seed : config.seeds) {
      points.push_back(RunPoint{config.agent, vsps, blocks, seed});
    }
  }
  return points;
}

RunConfig resolve(const RunConfig& config, const RunPoint& point) {
  RunConfig r = config;
  r.agent = point.agent;
  r.seeds = {point.seed};
  r.sweep = SweepKind::kNone;
  if (point.vsp_count != r.vsp_count()) r.set_vsp_count(point.vsp_count);
  r.set_block_count(point.block_count);
  r.env.seed = point.seed;
  r.validate();
  return r;
}

fs::path run_directory(const fs::path& root, const RunPoint& point) {
  return root / to_string(point.agent) / point.label() /
         ("seed" + std::to_string(point.seed));
}

RunHistory simulate(const RunConfig& resolved, const RunPoint& point,
                    RunObserver* observer, std::string* checkpoint) {
  Environment env(resolved.env);
  const int episodes = resolved.ddpg.episodes;
  const int frames = resolved.ddpg.frames_per_episode;
  if (point.agent != PolicyKind::kDdpg) {
    return run_baseline(point.agent, env, episodes, frames, point.seed,
                        observer);
  }
  // The agent draws from its own stream so that baselines and DDPG see the
  // same environment sequence for a given seed.
  DdpgAgent agent(resolved.env.state_dim(), resolved.vsp_count(),
                  resolved.ddpg, derive_seed(point.seed, 0xa9e17ULL));
  RunHistory history = train(agent, env, episodes, frames, point.seed,
                             observer);
  if (!agent.parameters_finite()) {
    throw std::runtime_error("training diverged: non-finite parameters");
  }
  if (checkpoint) {
    std::ostringstream out;
    agent.save(out);
    *checkpoint = out.str();
  }
  return history;
}

RunSummary summarize_run(const RunPoint& point, const RunHistory& history,
                         int frames_per_episode) {
  RunSummary s;
  s.point = point;
  s.episodes = static_cast<int>(history.episodes.size());
  s.frames_per_episode = frames_per_episode;
  for (const auto& f : history.frames) s.triggered_auctions += f.triggered;

  const auto last = last_triggered(history.frames, kUtilizationWindow);
  s.final_utilization = safe_utilization(last);

  long long used = 0;
  long long available = 0;
  for (const auto& f : history.frames) {
    used += f.blocks_used;
    available += f.block_count;
  }
  s.utilization_all = available > 0 ? static_cast<double>(used) / available
                                     : std::numeric_limits<double>::quiet_NaN();

  const int tail_episodes = std::min(s.episodes, kRewardWindow);
  const int first_episode = s.episodes - tail_episodes + 1;
  std::vector<FrameSummary> tail;
  for (const auto& f : history.frames) {
    if (f.episode >= first_episode) tail.push_back(f);
  }
  const auto totals = allocated_rate_totals(tail);
  double total = 0.0;
  for (double t : totals) total += t;
  s.jain_final = total > 0 ? jain_fairness(totals)
                           : std::numeric_limits<double>::quiet_NaN();

  std::vector<double> rewards;
  for (const auto& e : history.episodes) rewards.push_back(e.mean_reward);
  s.reward_first = window_mean(rewards, false);
  s.reward_last = window_mean(rewards, true);
  const int window = std::min(s.episodes, kConvergenceSmoothing);
  s.convergence_episode = convergence_episode(
      rewards, window, std::min(s.episodes, kRewardWindow), 0.9);

  const auto wins = last_triggered(history.frames, kWinWindow);
  for (int v = 1; v <= point.vsp_count; ++v) {
    s.win_pct.push_back(wins.empty() ? std::numeric_limits<double>::quiet_NaN()
                                     : winning_percentage(wins, v));
  }
  return s;
}

RunSummary execute(const RunConfig& config, const RunPoint& point) {
  const RunConfig resolved = resolve(config, point);
  const fs::path dir = run_directory(resolved.output_dir, point);
  fs::create_directories(dir);
  const fs::path marker = dir / kIncompleteMarker;
  {
    auto out = open_out(marker);
    out << "run started; removed on completion\n";
  }
  for (const char* stale : {"summary.csv", "vsps.csv", "checkpoint.txt"}) {
    fs::remove(dir / stale);
  }
  write_metadata(dir, resolved, point);

  std::string checkpoint;
  RunHistory history;
  if (resolved.log_auctions) {
    AuctionLog log(dir / "auctions.csv");
    history = simulate(resolved, point, &log,
                       point.agent == PolicyKind::kDdpg ? &checkpoint : nullptr);
    log.close();
  } else {
    fs::remove(dir / "auctions.csv");
    history = simulate(resolved, point, nullptr,
                       point.agent == PolicyKind::kDdpg ? &checkpoint : nullptr);
  }
  write_episodes(dir / "episodes.csv", history);
  const RunSummary summary =
      summarize_run(point, history, resolved.ddpg.frames_per_episode);
  write_summary(dir, summary, resolved);
  if (!checkpoint.empty()) {
    const fs::path path = dir / "checkpoint.txt";
    auto out = open_out(path);
    out << checkpoint;
    close_out(out, path);
  }
  fs::remove(marker);
  return summary;
}

std::vector<RunSummary> run_batch(const RunConfig& config, std::ostream* log) {
  config.validate();
  std::vector<RunSummary> out;
  const auto points = plan_runs(config);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    out.push_back(execute(config, p));
    if (log) {
      const auto& s = out.back();
      *log << "[" << i + 1 << "/" << points.size() << "] " << to_string(p.agent)
           << ' ' << p.label() << " seed " << p.seed
           << ": utilization " << num(s.final_utilization) << ", jain "
           << num(s.jain_final) << ", reward " << num(s.reward_first) << " -> "
           << num(s.reward_last) << '\n';
    }
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

FigureReport figure_tables(const fs::path& root) {
  const RunConfig defaults;
  const int base_vsps = defaults.vsp_count();
  const int base_blocks = defaults.block_count();
  const auto runs = finished_runs(root);
  FigureReport report;

  auto select = [&](PolicyKind agent, int vsps, int blocks) {
    std::vector<const FinishedRun*> out;
    for (const auto& r : runs) {
      const auto& p = r.summary.point;
      if (p.agent == agent && p.vsp_count == vsps && p.block_count == blocks) {
        out.push_back(&r);
      }
    }
    if (out.empty()) {
      report.missing.push_back(std::string(to_string(agent)) + ' ' +
                               RunPoint{agent, vsps, blocks, 0}.label());
    }
    return out;
  };
  fs::create_directories(root);
  auto table = [&](const char* name, const char* schema, const char* header) {
    const fs::path path = root / name;
    auto out = open_out(path);
    schema_line(out, schema);
    out << header << '\n';
    report.written.push_back(path);
    return out;
  };

  {
    auto out = table("fig2_win_percentage.csv", "fig2", "vsp_id,win_pct");
    const auto base = select(PolicyKind::kDdpg, base_vsps, base_blocks);
    for (int v = 0; v < base_vsps && !base.empty(); ++v) {
      std::vector<double> pct;
      for (const auto* r : base) pct.push_back(r->summary.win_pct.at(v));
      out << v + 1 << ',' << num(median_finite(pct)) << '\n';
    }
    close_out(out, report.written.back());
  }
  {
    auto out = table("fig3_mean_reward.csv", "fig3",
                     "episode,mean_reward,vsp_count");
    for (int vsps : defaults.vsp_count_sweep) {
      const auto group = select(PolicyKind::kDdpg, vsps, base_blocks);
      std::vector<std::vector<double>> curves;
      for (const auto* r : group) curves.push_back(episode_rewards(r->dir));
      std::size_t len = curves.empty() ? 0 : curves[0].size();
      for (const auto& c : curves) len = std::min(len, c.size());
      for (std::size_t e = 0; e < len; ++e) {
        std::vector<double> at;
        for (const auto& c : curves) at.push_back(c[e]);
        out << e + 1 << ',' << num(median_finite(at)) << ',' << vsps << '\n';
      }
    }
    close_out(out, report.written.back());
  }
  {
    auto out = table("fig4_utilization.csv", "fig4", "method,utilization");
    for (PolicyKind kind :
         {PolicyKind::kDdpg, PolicyKind::kGreedy, PolicyKind::kUnit}) {
      const auto group = select(kind, base_vsps, base_blocks);
      if (group.empty()) continue;
      std::vector<double> u;
      for (const auto* r : group) u.push_back(r->summary.final_utilization);
      out << to_string(kind) << ',' << num(median_finite(u)) << '\n';
    }
    close_out(out, report.written.back());
  }
  {
    auto out = table("fig5_fairness.csv", "fig5", "block_count,jain_index");
    for (int blocks : defaults.block_count_sweep) {
      const auto group = select(PolicyKind::kDdpg, base_vsps, blocks);
      if (group.empty()) continue;
      std::vector<double> j;
      for (const auto* r : group) j.push_back(r->summary.jain_final);
      out << blocks << ',' << num(median_finite(j)) << '\n';
    }
    close_out(out, report.written.back());
  }
  // fig2 and fig3 both look up the base DDPG cell; report it once.
  std::sort(report.missing.begin(), report.missing.end());
  report.missing.erase(std::unique(report.missing.begin(), report.missing.end()),
                       report.missing.end());
  return report;
}

}  // namespace vsa
