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

// Command-line entry point: one subcommand per toolkit operation.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fadtk/audio_io.h"
#include "fadtk/csv.h"
#include "fadtk/distortion.h"
#include "fadtk/embedding.h"
#include "fadtk/error.h"
#include "fadtk/gaussian_stats.h"
#include "fadtk/parallel.h"
#include "fadtk/pipeline.h"
#include "fadtk/ranking.h"
#include "fadtk/signal_metrics.h"
#include "fadtk/studies.h"
#include "fadtk/synthetic.h"
#include "fadtk/version.h"

namespace fadtk {
namespace {

constexpr int kExitFatal = 1;
constexpr int kExitUsage = 2;

struct Globals {
  int threads = 0;
  uint64_t seed = 0;
};

// Resolved flags echoed as `# key=value` lines ahead of every CSV report.
class ConfigEcho {
 public:
  explicit ConfigEcho(std::string command) { Add("command", command); }

  void Add(const std::string& key, const std::string& value) {
    lines_ << "# " << key << "=" << value << "\n";
  }
  void Add(const std::string& key, double value) {
    Add(key, FormatDouble(value));
  }
  std::string str() const { return lines_.str(); }

 private:
  std::ostringstream lines_;
};

void Log(const std::string& message) { std::cerr << "fadtk: " << message << "\n"; }

void Emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    WriteFile(out_path, text);
    Log("wrote " + out_path);
  }
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SweepGrid ResolveGrid(const std::string& grid, const std::string& families,
                      uint64_t seed) {
  SweepGrid sweep = grid == "builtin" ? BuiltinGrid(seed) : LoadGrid(grid);
  std::vector<DistortionFamily> wanted;
  for (const std::string& name : SplitList(families)) {
    wanted.push_back(ParseFamily(name));
  }
  return sweep.Filter(wanted);
}

struct CorpusFlags {
  std::string manifest;
  std::string grid = "builtin";
  std::string families;
  std::string backend = "patch-stats";
  std::string frontend_config;
  double step = 0.5;

  void Register(CLI::App* cmd, bool with_grid) {
    cmd->add_option("--manifest", manifest, "Corpus manifest CSV")
        ->required();
    if (with_grid) {
      cmd->add_option("--grid", grid,
                      "Distortion grid CSV, or 'builtin'")
          ->capture_default_str();
      cmd->add_option("--families", families,
                      "Comma-separated families to keep (default all)");
    }
    cmd->add_option("--backend", backend, "patch-stats | file:<path>")
        ->capture_default_str();
    cmd->add_option("--frontend-config", frontend_config,
                    "key=value file overriding log-mel settings");
  }

  void Echo(ConfigEcho* echo, bool with_grid, bool with_step) const {
    echo->Add("manifest", manifest);
    if (with_grid) {
      echo->Add("grid", grid);
      echo->Add("families", families.empty() ? "all" : families);
    }
    echo->Add("backend", backend);
    if (!frontend_config.empty()) echo->Add("frontend_config", frontend_config);
    if (with_step) echo->Add("step", step);
  }

  std::unique_ptr<EmbeddingBackend> Backend() const {
    const FrontendConfig config = frontend_config.empty()
                                      ? FrontendConfig{}
                                      : LoadFrontendConfig(frontend_config);
    return MakeBackend(backend, config);
  }
};

void ReportFailures(const ClipSet& set) {
  for (const auto& [id, message] : set.failures) {
    Log("skipped " + id + ": " + message);
  }
}

struct Corpora {
  ClipSet background;
  ClipSet evaluation;
};

Corpora LoadCorpora(const std::string& manifest_path, int threads) {
  const CorpusManifest manifest = LoadManifest(manifest_path);
  ValidateManifest(manifest);
  Corpora c;
  c.evaluation =
      LoadClipSet(manifest.WithRole(ClipRole::kEvaluation), threads);
  c.background = LoadClipSet(BackgroundEntries(manifest), threads);
  ReportFailures(c.evaluation);
  Log("loaded " + std::to_string(c.evaluation.size()) +
      " evaluation and " + std::to_string(c.background.size()) +
      " background clips");
  return c;
}

void AddDistort(CLI::App& app, const Globals& g,
                std::function<int()>* action) {
  auto* cmd = app.add_subcommand("distort", "Apply one distortion to a WAV");
  static std::string in, out, family;
  static std::vector<std::string> params;
  cmd->add_option("--in", in, "Input WAV")->required();
  cmd->add_option("--out", out, "Output WAV")->required();
  cmd->add_option("--family", family, "Distortion family")->required();
  cmd->add_option("--param,--params", params,
                  "name=value (repeatable, or ';'-separated)");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      std::string joined;
      for (const std::string& p : params) {
        if (!joined.empty()) joined += ";";
        joined += p;
      }
      const DistortionSpec spec = MakeSpec(family, joined, g.seed);
      spec.Validate();
      SaveWav(ApplyDistortion(LoadCanonical(in), spec), out);
      return 0;
    };
  });
}

void AddSweep(CLI::App& app, const Globals& g, std::function<int()>* action) {
  auto* cmd = app.add_subcommand("sweep", "Write distorted copies of a corpus");
  static std::string manifest, grid = "builtin", families, out_dir, report;
  cmd->add_option("--manifest", manifest, "Corpus manifest CSV")->required();
  cmd->add_option("--grid", grid, "Grid CSV or 'builtin'")
      ->capture_default_str();
  cmd->add_option("--families", families, "Comma-separated families");
  cmd->add_option("--out-dir", out_dir, "Output directory")->required();
  cmd->add_option("--report", report, "Report CSV (default stdout)");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      const CorpusManifest m = LoadManifest(manifest);
      ValidateManifest(m);
      const ClipSet clips =
          LoadClipSet(m.WithRole(ClipRole::kEvaluation), g.threads);
      ReportFailures(clips);
      const SweepGrid sweep = ResolveGrid(grid, families, g.seed);
      const auto records = RunSweep(clips, sweep, out_dir, g.threads);
      size_t failed = 0;
      for (const auto& r : records) failed += r.status != "ok";
      Log(std::to_string(records.size()) + " outputs, " +
          std::to_string(failed) + " failed");
      ConfigEcho echo("sweep");
      echo.Add("manifest", manifest);
      echo.Add("grid", grid);
      echo.Add("families", families.empty() ? "all" : families);
      echo.Add("seed", std::to_string(g.seed));
      Emit(report, echo.str() + FormatSweepReport(records));
      return 0;
    };
  });
}

void AddEmbed(CLI::App& app, const Globals& g, std::function<int()>* action) {
  auto* cmd = app.add_subcommand("embed", "Embed every window of a corpus");
  static CorpusFlags flags;
  static std::string out;
  flags.Register(cmd, false);
  cmd->add_option("--step", flags.step, "Window step in seconds")
      ->capture_default_str();
  cmd->add_option("--out", out, "Embeddings file")->required();
  cmd->callback([&g, action]() {
    *action = [&g]() {
      const CorpusManifest m = LoadManifest(flags.manifest);
      ValidateManifest(m);
      WindowingPolicy policy;
      policy.step_seconds = flags.step;
      policy.Validate();
      const auto backend = flags.Backend();
      CorpusEmbeddings result =
          EmbedCorpus(m.entries, *backend, policy, g.threads);
      for (const auto& [id, message] : result.failures) {
        Log("skipped " + id + ": " + message);
      }
      EmbeddingSet set{backend->dimension(), std::move(result.embeddings)};
      SaveEmbeddings(set, out);
      Log("wrote " + std::to_string(set.entries.size()) + " embeddings (" +
          std::to_string(result.failures.size()) + " clips failed)");
      return 0;
    };
  });
}

void AddStats(CLI::App& app, std::function<int()>* action) {
  auto* cmd = app.add_subcommand("stats", "Fit a Gaussian to embeddings");
  static std::string embeddings, out, backend_id = "patch-stats";
  cmd->add_option("--embeddings", embeddings, "Embeddings file")->required();
  cmd->add_option("--out", out, "Stats file")->required();
  cmd->add_option("--backend-id", backend_id,
                  "Backend id recorded in the stats")
      ->capture_default_str();
  cmd->callback([action]() {
    *action = []() {
      const GaussianStats stats =
          EstimateGaussian(LoadEmbeddings(embeddings).entries, backend_id);
      SaveStats(stats, out);
      Log("fitted " + std::to_string(stats.count) + " embeddings");
      return 0;
    };
  });
}

void AddFad(CLI::App& app, std::function<int()>* action) {
  auto* cmd = app.add_subcommand("fad", "Frechet distance of two stats files");
  static std::string background, eval;
  cmd->add_option("--background", background, "Background stats")
      ->required();
  cmd->add_option("--eval", eval, "Evaluation stats")->required();
  cmd->callback([action]() {
    *action = []() {
      const double score = FadScore(LoadStats(background), LoadStats(eval));
      std::cout << "FAD " << FormatDouble(score) << "\n"
                << "background,eval,fad\n"
                << CsvLine({background, eval, FormatDouble(score)});
      return 0;
    };
  });
}

void AddSignalMetrics(CLI::App& app, const Globals& g,
                      std::function<int()>* action) {
  auto* cmd = app.add_subcommand(
      "signal-metrics", "SDR, SI-SDR, cosine and magnitude distances");
  static std::string reference, estimate, pairs, out;
  static int taps = kDefaultFilterTaps;
  cmd->add_option("--reference", reference, "Reference WAV");
  cmd->add_option("--estimate", estimate, "Estimate WAV");
  cmd->add_option("--pairs", pairs,
                  "CSV clip_id,reference,estimate for batch mode");
  cmd->add_option("--filter-taps", taps, "SDR distortion filter length")
      ->capture_default_str();
  cmd->add_option("--out", out, "Report CSV (default stdout)");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      std::vector<std::vector<std::string>> jobs;
      if (!pairs.empty()) {
        const CsvTable table = ReadCsv(pairs);
        const size_t id = table.Column("clip_id");
        const size_t ref = table.Column("reference");
        const size_t est = table.Column("estimate");
        const auto base = std::filesystem::path(pairs).parent_path();
        for (const auto& row : table.rows) {
          jobs.push_back({row[id], (base / row[ref]).string(),
                          (base / row[est]).string()});
        }
      } else if (!reference.empty() && !estimate.empty()) {
        jobs.push_back({std::filesystem::path(estimate).stem().string(),
                        reference, estimate});
      } else {
        throw Error(ErrorCode::kArgument,
                    "need --reference and --estimate, or --pairs");
      }
      std::vector<MetricReport> reports(jobs.size());
      ParallelFor(jobs.size(), g.threads, [&](size_t i) {
        reports[i] = ComputeMetrics(jobs[i][0], LoadCanonical(jobs[i][1]),
                                    LoadCanonical(jobs[i][2]), taps);
      });
      ConfigEcho echo("signal-metrics");
      echo.Add("filter_taps", std::to_string(taps));
      std::string text = echo.str() +
          "clip_id,sdr_db,si_sdr_db,cosine_distance,magnitude_l2\n";
      for (const MetricReport& r : reports) {
        text += CsvLine({r.clip_id, FormatDouble(SdrForReport(r.sdr_db)),
                         FormatDouble(SdrForReport(r.si_sdr_db)),
                         FormatDouble(r.cosine_distance),
                         FormatDouble(r.magnitude_l2)});
      }
      Emit(out, text);
      return 0;
    };
  });
}

void AddPipeline(CLI::App& app, const Globals& g,
                 std::function<int()>* action) {
  auto* cmd = app.add_subcommand(
      "pipeline", "Distort, embed and score a corpus over a grid");
  static CorpusFlags flags;
  static std::string out;
  static int taps = kDefaultFilterTaps;
  static bool no_metrics = false;
  flags.Register(cmd, true);
  cmd->add_option("--step", flags.step, "Window step in seconds")
      ->capture_default_str();
  cmd->add_option("--filter-taps", taps, "SDR distortion filter length")
      ->capture_default_str();
  cmd->add_flag("--no-signal-metrics", no_metrics,
                "Skip SDR and the other signal metrics");
  cmd->add_option("--out", out, "Report CSV (default stdout)");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      const SweepGrid sweep = ResolveGrid(flags.grid, flags.families, g.seed);
      const auto backend = flags.Backend();
      PipelineOptions options;
      options.policy.step_seconds = flags.step;
      options.filter_taps = taps;
      options.threads = g.threads;
      options.signal_metrics = !no_metrics;
      ConfigEcho echo("pipeline");
      flags.Echo(&echo, true, true);
      echo.Add("filter_taps", std::to_string(taps));
      echo.Add("signal_metrics", no_metrics ? "off" : "on");
      echo.Add("seed", std::to_string(g.seed));
      std::vector<PipelineRow> rows;
      if (!sweep.entries.empty()) {
        const Corpora corpora = LoadCorpora(flags.manifest, g.threads);
        rows = RunPipeline(corpora.background, corpora.evaluation, sweep,
                           *backend, options);
      }
      Emit(out, echo.str() + FormatPipelineReport(rows));
      return 0;
    };
  });
}

void AddRank(CLI::App& app, std::function<int()>* action) {
  auto* cmd = app.add_subcommand(
      "rank", "Fit log-worths to pairwise comparisons");
  static std::string comparisons, out;
  static int max_iters = 10000;
  static double tol = 1e-8;
  cmd->add_option("--comparisons", comparisons, "CSV item_a,item_b,outcome")
      ->required();
  cmd->add_option("--max-iters", max_iters, "Iteration cap")
      ->capture_default_str();
  cmd->add_option("--tol", tol, "Convergence tolerance on log-worths")
      ->capture_default_str();
  cmd->add_option("--out", out, "Report CSV (default stdout)");
  cmd->callback([action]() {
    *action = []() {
      const WorthVector fit =
          FitPlackettLuce(LoadComparisons(comparisons), max_iters, tol);
      static const char* kStatus[] = {"converged", "max_iterations",
                                      "partial"};
      const char* status = kStatus[static_cast<int>(fit.status)];
      if (fit.status == FitStatus::kPartial) {
        Log("warning: comparison graph has " +
            std::to_string(fit.components.size()) +
            " components; worths comparable only within a component");
      }
      std::map<std::string, size_t> component;
      for (size_t c = 0; c < fit.components.size(); ++c) {
        for (const auto& item : fit.components[c]) component[item] = c;
      }
      ConfigEcho echo("rank");
      echo.Add("comparisons", comparisons);
      echo.Add("status", status);
      echo.Add("iterations", std::to_string(fit.iterations));
      std::string text = echo.str() + "item,log_worth,component\n";
      for (const auto& [item, worth] : fit.log_worth) {
        text += CsvLine({item, FormatDouble(worth),
                         std::to_string(component[item])});
      }
      Emit(out, text);
      return 0;
    };
  });
}

void AddCorrelate(CLI::App& app, std::function<int()>* action) {
  auto* cmd = app.add_subcommand("correlate",
                                 "Correlation between two CSV columns");
  static std::string csv, x, y, method = "pearson";
  cmd->add_option("--csv", csv, "CSV file or builtin:table2")->required();
  cmd->add_option("--x", x, "First column")->required();
  cmd->add_option("--y", y, "Second column")->required();
  cmd->add_option("--method", method, "pearson | spearman | both")
      ->check(CLI::IsMember({"pearson", "spearman", "both"}))
      ->capture_default_str();
  cmd->callback([action]() {
    *action = []() {
      const CsvTable table =
          csv == "builtin:table2" ? ParseCsv(Table2Csv()) : ReadCsv(csv);
      const size_t xi = table.Column(x);
      const size_t yi = table.Column(y);
      std::vector<double> xs, ys;
      for (const auto& row : table.rows) {
        xs.push_back(ParseDouble(row[xi]));
        ys.push_back(ParseDouble(row[yi]));
      }
      std::cout << "x,y,method,n,r\n";
      const std::string n = std::to_string(xs.size());
      if (method != "spearman") {
        std::cout << CsvLine({x, y, "pearson", n,
                              FormatDouble(Pearson(xs, ys))});
      }
      if (method != "pearson") {
        std::cout << CsvLine({x, y, "spearman", n,
                              FormatDouble(Spearman(xs, ys))});
      }
      return 0;
    };
  });
}

std::vector<size_t> ParseSizes(const std::string& text) {
  std::vector<size_t> sizes;
  for (const std::string& s : SplitList(text)) {
    const long long v = ParseInt(s);
    if (v < 1) throw Error(ErrorCode::kArgument, "sizes must be positive");
    sizes.push_back(static_cast<size_t>(v));
  }
  return sizes;
}

void AddDispersion(CLI::App& app, const Globals& g,
                   std::function<int()>* action) {
  auto* cmd = app.add_subcommand(
      "dispersion", "Index of dispersion of FAD versus evaluation-set size");
  static CorpusFlags flags;
  static std::string sizes = "50,100,300", out;
  static int repeats = 20;
  flags.Register(cmd, true);
  cmd->add_option("--step", flags.step, "Window step in seconds")
      ->capture_default_str();
  cmd->add_option("--sizes", sizes, "Comma-separated subset sizes")
      ->capture_default_str();
  cmd->add_option("--repeats", repeats, "Subsets per size")
      ->capture_default_str();
  cmd->add_option("--out", out, "Report CSV (default stdout)");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      DispersionOptions options;
      options.sizes = ParseSizes(sizes);
      options.repeats = repeats;
      options.seed = g.seed;
      options.policy.step_seconds = flags.step;
      options.threads = g.threads;
      const SweepGrid sweep = ResolveGrid(flags.grid, flags.families, g.seed);
      const auto backend = flags.Backend();
      const Corpora corpora = LoadCorpora(flags.manifest, g.threads);
      const DispersionReport report = DispersionStudy(
          corpora.background, corpora.evaluation, sweep, *backend, options);
      ConfigEcho echo("dispersion");
      flags.Echo(&echo, true, true);
      echo.Add("sizes", sizes);
      echo.Add("repeats", std::to_string(repeats));
      echo.Add("seed", std::to_string(g.seed));
      Emit(out, echo.str() + FormatDispersionReport(report));
      return 0;
    };
  });
}

void AddStepStudy(CLI::App& app, const Globals& g,
                  std::function<int()>* action) {
  auto* cmd = app.add_subcommand(
      "step-study", "FAD versus embedding window step length");
  static CorpusFlags flags;
  static std::string steps = "1.0,0.5,0.25", out;
  flags.Register(cmd, true);
  cmd->add_option("--steps", steps, "Comma-separated steps in seconds")
      ->capture_default_str();
  cmd->add_option("--out", out, "Report CSV (default stdout)");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      std::vector<double> values;
      for (const std::string& s : SplitList(steps)) {
        values.push_back(ParseDouble(s));
      }
      const SweepGrid sweep = ResolveGrid(flags.grid, flags.families, g.seed);
      const auto backend = flags.Backend();
      std::vector<StepStudyRow> rows;
      if (!sweep.entries.empty()) {
        const Corpora corpora = LoadCorpora(flags.manifest, g.threads);
        rows = StepLengthStudy(corpora.background, corpora.evaluation, sweep,
                               *backend, values, g.threads);
      }
      ConfigEcho echo("step-study");
      flags.Echo(&echo, true, false);
      echo.Add("steps", steps);
      echo.Add("seed", std::to_string(g.seed));
      Emit(out, echo.str() + FormatStepStudy(rows));
      return 0;
    };
  });
}

void AddSynth(CLI::App& app, const Globals& g, std::function<int()>* action) {
  auto* cmd = app.add_subcommand(
      "synth", "Write a seeded synthetic music corpus and manifest");
  static std::string out_dir;
  static SyntheticCorpusOptions options;
  cmd->add_option("--out-dir", out_dir, "Output directory")->required();
  cmd->add_option("--clips", options.clips, "Number of clips")
      ->capture_default_str();
  cmd->add_option("--seconds", options.seconds, "Clip length")
      ->capture_default_str();
  cmd->add_flag("--background-copies", options.background_copies,
                "Also list each clip with role=background");
  cmd->callback([&g, action]() {
    *action = [&g]() {
      options.seed = g.seed;
      const CorpusManifest m = WriteSyntheticCorpus(out_dir, options);
      Log("wrote " + std::to_string(m.entries.size()) + " manifest entries");
      return 0;
    };
  });
}

int Main(int argc, char** argv) {
  CLI::App app{"Frechet Audio Distance toolkit", "fadtk"};
  app.set_version_flag("--version", std::string("fadtk ") + kVersion);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads,
                 "Worker threads (0: FADTK_THREADS or all cores)")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Global 64-bit seed")
      ->capture_default_str();

  std::function<int()> action;
  AddDistort(app, g, &action);
  AddSweep(app, g, &action);
  AddEmbed(app, g, &action);
  AddStats(app, &action);
  AddFad(app, &action);
  AddSignalMetrics(app, g, &action);
  AddPipeline(app, g, &action);
  AddRank(app, &action);
  AddCorrelate(app, &action);
  AddDispersion(app, g, &action);
  AddStepStudy(app, g, &action);
  AddSynth(app, g, &action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }
  g.threads = ResolveThreads(g.threads);
  try {
    return action ? action() : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "fadtk: " << e.what() << "\n";
    return (e.code() == ErrorCode::kArgument || e.code() == ErrorCode::kSpec)
               ? kExitUsage
               : kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "fadtk: " << e.what() << "\n";
    return kExitFatal;
  }
}

}  // namespace
}  // namespace fadtk

int main(int argc, char** argv) { return fadtk::Main(argc, argv); }
