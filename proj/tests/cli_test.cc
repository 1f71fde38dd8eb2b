// Copyright 2026 The FADTK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "fadtk/csv.h"
#include "fadtk/embedding.h"
#include "fadtk/gaussian_stats.h"
#include "fadtk/synthetic.h"
#include "test_util.h"

namespace fadtk {
namespace {

using testing::TempDir;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string command =
      std::string(FADTK_CLI_PATH) + " " + args + " 2>&1";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return run;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) run.out.append(buffer, n);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string Strip(const std::string& text) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line[0] != '#') out += line + "\n";
    pos = end + 1;
  }
  return out;
}

TEST(Cli, HelpVersionAndUsageErrors) {
  const CliRun help = Cli("--help");
  EXPECT_EQ(help.code, 0);
  for (const char* sub : {"distort", "sweep", "embed", "stats", "fad",
                          "signal-metrics", "pipeline", "rank", "correlate",
                          "dispersion", "step-study"}) {
    EXPECT_NE(help.out.find(sub), std::string::npos) << sub;
  }
  const CliRun version = Cli("--version");
  EXPECT_EQ(version.code, 0);
  EXPECT_NE(version.out.find("0.1.0"), std::string::npos);
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("fad --background x --eval y --bogus 1").code, 2);
  EXPECT_EQ(Cli("pipeline --help").code, 0);
}

TEST(Cli, FatalErrorsExitOne) {
  EXPECT_EQ(Cli("fad --background /nonexistent --eval /nonexistent").code, 1);
}

TEST(Cli, DistortEmbedStatsFad) {
  TempDir dir("cli");
  SyntheticCorpusOptions options;
  options.clips = 3;
  options.seconds = 2.0;
  WriteSyntheticCorpus(dir.path(), options);
  const std::string d = dir.path().string();

  EXPECT_EQ(Cli("--seed 3 distort --in " + d + "/clip_000.wav --out " + d +
                "/noisy.wav --family gaussian_noise --param stddev=0.1")
                .code,
            0);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "noisy.wav"));
  EXPECT_EQ(Cli("distort --in " + d + "/clip_000.wav --out " + d +
                "/x.wav --family gaussian_noise")
                .code,
            2);

  ASSERT_EQ(Cli("--threads 2 embed --manifest " + d + "/manifest.csv --out " +
                d + "/e.bin")
                .code,
            0);
  EXPECT_EQ(LoadEmbeddings(dir.path() / "e.bin").entries.size(), 9u);
  ASSERT_EQ(Cli("stats --embeddings " + d + "/e.bin --out " + d + "/s.bin").code, 0);
  EXPECT_EQ(LoadStats(dir.path() / "s.bin").backend_id, "patch-stats");
  const CliRun fad = Cli("fad --background " + d + "/s.bin --eval " + d + "/s.bin");
  EXPECT_EQ(fad.code, 0);
  EXPECT_NE(fad.out.find("background,eval,fad"), std::string::npos);

  const CliRun metrics = Cli("signal-metrics --reference " + d +
                          "/clip_000.wav --estimate " + d + "/noisy.wav");
  EXPECT_EQ(metrics.code, 0);
  EXPECT_NE(metrics.out.find("clip_id,sdr_db"), std::string::npos);
}

TEST(Cli, PipelineDeterministicAcrossThreads) {
  TempDir dir("clipipe");
  SyntheticCorpusOptions options;
  options.clips = 4;
  options.seconds = 2.0;
  WriteSyntheticCorpus(dir.path(), options);
  const std::string d = dir.path().string();
  const std::string base = "pipeline --manifest " + d +
                           "/manifest.csv --families quantization "
                           "--filter-taps 32 --out ";
  ASSERT_EQ(Cli("--threads 1 " + base + d + "/a.csv").code, 0);
  ASSERT_EQ(Cli("--threads 3 " + base + d + "/b.csv").code, 0);
  const std::string a = ReadFile(dir.path() / "a.csv");
  EXPECT_EQ(a, ReadFile(dir.path() / "b.csv"));
  const CsvTable table = ParseCsv(a);
  EXPECT_EQ(table.rows.size(), 8u);
  EXPECT_NE(a.find("# command=pipeline"), std::string::npos);

  const CliRun empty = Cli("pipeline --manifest " + d +
                        "/manifest.csv --grid " + d + "/grid.csv");
  EXPECT_NE(empty.code, 0);  // missing grid file
  WriteFile(dir.path() / "grid.csv", "family,params,seed\n");
  const CliRun header = Cli("pipeline --manifest " + d + "/manifest.csv --grid " +
                         d + "/grid.csv");
  EXPECT_EQ(header.code, 0);
  EXPECT_EQ(Strip(header.out),
            "family,params,fad,sdr_db,si_sdr_db,cosine_distance,magnitude_l2\n");
}

TEST(Cli, RankAndCorrelate) {
  TempDir dir("clirank");
  WriteFile(dir.path() / "c.csv",
            "item_a,item_b,outcome\nA,B,a\nA,B,a\nA,B,a\nA,B,b\n");
  const CliRun rank = Cli("rank --comparisons " + (dir.path() / "c.csv").string());
  EXPECT_EQ(rank.code, 0);
  const CsvTable table = ParseCsv(Strip(rank.out));
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0][1], "0");
  EXPECT_NEAR(ParseDouble(table.rows[1][1]), -std::log(3.0), 1e-6);

  const CliRun corr = Cli(
      "correlate --csv builtin:table2 --x worth --y fad --method both");
  EXPECT_EQ(corr.code, 0);
  EXPECT_NE(corr.out.find("pearson"), std::string::npos);
  EXPECT_NE(corr.out.find("spearman"), std::string::npos);
  EXPECT_EQ(Cli("correlate --csv builtin:table2 --x worth --y fad --method kendall").code,
            2);
  EXPECT_EQ(Cli("correlate --csv builtin:table2 --x worth --y nope").code, 2);
}

}  // namespace
}  // namespace fadtk
