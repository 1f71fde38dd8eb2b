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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <sys/wait.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fadtk/butterworth.h"
#include "fadtk/csv.h"
#include "fadtk/distortion.h"
#include "fadtk/fft.h"
#include "fadtk/gaussian_stats.h"
#include "fadtk/griffin_lim.h"
#include "fadtk/pipeline.h"
#include "fadtk/ranking.h"
#include "fadtk/signal_metrics.h"
#include "fadtk/stft.h"
#include "fadtk/studies.h"
#include "fadtk/synthetic.h"

namespace fadtk {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Suite {
 public:
  void Run(int id, const std::string& name, double limit_seconds,
           const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict outcome;
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    bool pass = outcome.pass;
    if (limit_seconds > 0 && seconds > limit_seconds) {
      pass = false;
      outcome.detail += "; runtime over limit";
    }
    char line[64];
    std::snprintf(line, sizeof(line), "[%s] %2d %-28s", pass ? "PASS" : "FAIL",
                  id, name.c_str());
    char timing[64];
    if (limit_seconds > 0) {
      std::snprintf(timing, sizeof(timing), " (%.2f s, limit %.0f s)", seconds,
                    limit_seconds);
    } else {
      std::snprintf(timing, sizeof(timing), " (%.2f s)", seconds);
    }
    std::printf("%s %s%s\n", line, outcome.detail.c_str(), timing);
    std::fflush(stdout);
    failures_ += !pass;
    ++total_;
  }

  int Finish() const {
    std::printf("%d/%d criteria passed\n", total_ - failures_, total_);
    return failures_ == 0 ? 0 : 1;
  }

 private:
  int failures_ = 0;
  int total_ = 0;
};

std::string Num(double v) { return FormatDouble(v); }

Eigen::MatrixXd RandomSpd(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = normal(gen);
  }
  return a * a.transpose() / d + 0.05 * Eigen::MatrixXd::Identity(d, d);
}

Eigen::VectorXd RandomVector(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = normal(gen);
  return v;
}

GaussianStats Stats(Eigen::VectorXd mean, Eigen::MatrixXd cov) {
  return GaussianStats{std::move(mean), std::move(cov), 100, "acceptance"};
}

std::vector<double> RandomSignal(size_t n, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> x(n);
  for (double& v : x) v = u(gen);
  return x;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double PearsonOracle(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = x.size();
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) /
                             std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

Verdict FrechetExactness() {
  const double one_d = FrechetDistance(
      Stats(Eigen::VectorXd::Constant(1, 0.0), Eigen::MatrixXd::Constant(1, 1, 1.0)),
      Stats(Eigen::VectorXd::Constant(1, 3.0), Eigen::MatrixXd::Constant(1, 1, 4.0)));
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> var(0.01, 4.0);
  double diag_err = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd va(16), vb(16);
    for (int i = 0; i < 16; ++i) {
      va(i) = var(gen);
      vb(i) = var(gen);
    }
    const Eigen::VectorXd ma = RandomVector(16, gen), mb = RandomVector(16, gen);
    double expect = 0;
    for (int i = 0; i < 16; ++i) {
      expect += (ma(i) - mb(i)) * (ma(i) - mb(i)) +
                std::pow(std::sqrt(va(i)) - std::sqrt(vb(i)), 2);
    }
    const double got = FrechetDistance(Stats(ma, va.asDiagonal().toDenseMatrix()),
                                       Stats(mb, vb.asDiagonal().toDenseMatrix()));
    diag_err = std::max(diag_err, std::abs(got - expect));
  }
  double dense_rel = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GaussianStats a = Stats(RandomVector(8, gen), RandomSpd(8, gen));
    const GaussianStats b = Stats(RandomVector(8, gen), RandomSpd(8, gen));
    // Oracle: eigenvalues of the nonsymmetric product Sa Sb.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a.covariance * b.covariance);
    double trace_sqrt = 0;
    for (const auto& ev : solver.eigenvalues()) trace_sqrt += std::sqrt(ev.real());
    const double oracle = (a.mean - b.mean).squaredNorm() + a.covariance.trace() +
                          b.covariance.trace() - 2 * trace_sqrt;
    dense_rel = std::max(dense_rel,
                         std::abs(FrechetDistance(a, b) - oracle) / std::abs(oracle));
  }
  const bool pass = std::abs(one_d - 10.0) <= 1e-9 && diag_err <= 1e-9 &&
                    dense_rel <= 1e-7;
  return {pass, "1-D=" + Num(one_d) + " diag16 max err=" + Num(diag_err) +
                    " dense8 max rel err=" + Num(dense_rel)};
}

Verdict EqualCovariance() {
  std::mt19937_64 gen(202);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd cov = RandomSpd(12, gen);
    const Eigen::VectorXd ma = RandomVector(12, gen), mb = RandomVector(12, gen);
    worst = std::max(worst, std::abs(FrechetDistance(Stats(ma, cov), Stats(mb, cov)) -
                                     (ma - mb).squaredNorm()));
  }
  return {worst <= 1e-9, "100 trials, max |F - ||dmu||^2| = " + Num(worst)};
}

Verdict Table2Reproduction() {
  std::vector<double> worth, fad, sdr;
  for (const auto& row : Table2Fixture()) {
    worth.push_back(row.worth);
    fad.push_back(row.fad);
    sdr.push_back(row.sdr);
  }
  const double r_fad = Pearson(worth, fad);
  const double r_sdr = Pearson(worth, sdr);
  const double e_fad = std::abs(r_fad - PearsonOracle(worth, fad));
  const double e_sdr = std::abs(r_sdr - PearsonOracle(worth, sdr));
  const bool pass = r_fad < 0 && std::abs(r_fad) > std::abs(r_sdr) &&
                    e_fad <= 1e-12 && e_sdr <= 1e-12;
  const bool in_band = std::abs(std::abs(r_fad) - 0.52) <= 0.15;
  return {pass, std::to_string(worth.size()) + " rows, r(worth,FAD)=" +
                    Num(r_fad) + " r(worth,SDR)=" + Num(r_sdr) +
                    "; |r| vs 0.52 +-0.15: " + (in_band ? "within" : "outside")};
}

Verdict PlackettLuceRecovery() {
  std::vector<PairwiseComparison> two = {
      {"A", "B", fadtk::Outcome::kAWins}, {"A", "B", fadtk::Outcome::kAWins},
      {"A", "B", fadtk::Outcome::kAWins}, {"A", "B", fadtk::Outcome::kBWins}};
  const WorthVector fit = FitPlackettLuce(two);
  const double gap_err = std::abs(fit.log_worth.at("A") - fit.log_worth.at("B") -
                                  std::log(3.0));
  const std::vector<std::string> items = {"x", "y", "z"};
  const std::vector<double> worth = {1.0, 0.5, 0.25};
  int ordered = 0;
  double error = 0;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(1000 + seed);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<PairwiseComparison> data;
    for (int k = 0; k < 2000; ++k) {
      const int i = static_cast<int>(gen() % 3);
      const int j = (i + 1 + static_cast<int>(gen() % 2)) % 3;
      data.push_back({items[i], items[j],
                      u(gen) < worth[i] / (worth[i] + worth[j])
                          ? fadtk::Outcome::kAWins
                          : fadtk::Outcome::kBWins});
    }
    const WorthVector w = FitPlackettLuce(data);
    const double lx = w.log_worth.at("x"), ly = w.log_worth.at("y"),
                 lz = w.log_worth.at("z");
    ordered += lx > ly && ly > lz;
    // Anchored at the best item, the true log-worths are (0, log .5, log .25).
    error += (std::abs(lx) + std::abs(ly - std::log(0.5)) +
              std::abs(lz - std::log(0.25))) / 3;
  }
  const double mean_error = error / 20;
  const bool pass = gap_err <= 1e-6 && ordered >= 19 && mean_error <= 0.1;
  return {pass, "two-item gap err=" + Num(gap_err) + ", order recovered " +
                    std::to_string(ordered) + "/20, mean |log-worth err|=" +
                    Num(mean_error)};
}

Verdict SdrContract(const AudioClip& music) {
  const std::vector<double>& ref = music.samples;
  std::vector<double> e = RandomSignal(ref.size(), 303);
  const double proj = Dot(e, ref) / Dot(ref, ref);
  for (size_t i = 0; i < e.size(); ++i) e[i] -= proj * ref[i];
  const double scale = std::sqrt(Dot(ref, ref) / 100.0 / Dot(e, e));
  AudioClip noisy = music;
  for (size_t i = 0; i < ref.size(); ++i) noisy.samples[i] += scale * e[i];
  const double sdr20 = Sdr(music, noisy, 1);

  std::vector<double> fir = RandomSignal(100, 304);
  auto filtered = Convolve(ref, fir);
  filtered.resize(ref.size());
  const double sdr_fir = Sdr(music, AudioClip{filtered, music.sample_rate}, 512);
  const bool pass = std::abs(sdr20 - 20.0) <= 0.5 && sdr_fir >= 60.0;
  return {pass, "orthogonal 20 dB -> " + Num(sdr20) + " dB; 100-tap FIR -> " +
                    Num(sdr_fir) + " dB"};
}

Verdict MetricTrivia(const AudioClip& music) {
  AudioClip neg = music;
  for (double& v : neg.samples) v = -v;
  AudioClip s{std::vector<double>(16000), 16000}, c = s;
  for (size_t i = 0; i < 16000; ++i) {
    s.samples[i] = std::sin(2 * kPi * 50 * i / 16000.0);
    c.samples[i] = std::cos(2 * kPi * 50 * i / 16000.0);
  }
  AudioClip tripled = music;
  for (double& v : tripled.samples) v *= 3;
  const double same = CosineDistance(music, music);
  const double opposite = CosineDistance(music, neg);
  const double orth = CosineDistance(s, c);
  const double mag = MagnitudeL2(music, music);
  const double si = SdrForReport(SiSdr(music, tripled));
  const bool pass = std::abs(same) <= 1e-9 && std::abs(opposite - 2) <= 1e-9 &&
                    std::abs(orth - 1) <= 1e-9 && mag == 0.0 &&
                    si == kInfiniteSdrSentinelDb;
  return {pass, "cos(x,x)=" + Num(same) + " cos(x,-x)=" + Num(opposite) +
                    " cos(sin,cos)=" + Num(orth) + " magL2(x,x)=" + Num(mag) +
                    " SI-SDR(x,3x)=" + Num(si)};
}

SweepGrid Family(const SweepGrid& grid, DistortionFamily family) {
  return grid.Filter({family});
}

struct Corpus {
  ClipSet clips;
  std::filesystem::path manifest;
};

Corpus MakeCorpus(const std::filesystem::path& dir, int clips, double seconds,
                  uint64_t seed) {
  SyntheticCorpusOptions options;
  options.clips = clips;
  options.seconds = seconds;
  options.seed = seed;
  const CorpusManifest m = WriteSyntheticCorpus(dir, options);
  return {LoadClipSet(m.entries, 1), dir / "manifest.csv"};
}

Verdict Monotonicity(const ClipSet& corpus, const SweepGrid& grid) {
  PatchStatsBackend backend;
  PipelineOptions options;
  options.signal_metrics = false;
  const GaussianStats clean = StatsOf(
      EmbedClips(corpus.ids, corpus.clips, backend, options.policy, 1), backend.id());
  const double clean_fad = FadScore(clean, clean);
  std::string detail = "clean=" + Num(clean_fad);
  bool pass = clean_fad < 1e-6;
  for (auto family : {DistortionFamily::kGaussianNoise, DistortionFamily::kQuantization}) {
    const auto rows =
        RunPipeline(corpus, corpus, Family(grid, family), backend, options);
    bool monotone = true;
    for (size_t i = 1; i < rows.size(); ++i) monotone &= rows[i].fad >= rows[i - 1].fad;
    pass &= monotone && rows.size() == 8;
    detail += std::string("; ") + std::string(FamilyName(family)) + " " +
              (monotone ? "nondecreasing" : "NOT monotone") + " " +
              Num(rows.front().fad) + ".." + Num(rows.back().fad);
  }
  return {pass, detail};
}

Verdict SdrBreaking(const ClipSet& corpus) {
  PatchStatsBackend backend;
  PipelineOptions options;
  SweepGrid grid;
  grid.entries = {MakeSpec("speed", "factor=0.95", 0),
                  MakeSpec("pitch", "semitones=0.25", 0),
                  MakeSpec("pitch", "semitones=-0.25", 0),
                  MakeSpec("gaussian_noise", "stddev=0.31", 0)};
  const auto rows = RunPipeline(corpus, corpus, grid, backend, options);
  const double noise_fad = rows[3].fad;
  bool pass = true;
  std::string detail;
  for (size_t i = 0; i < 3; ++i) {
    pass &= rows[i].sdr_db < 0 && rows[i].fad < noise_fad;
    detail += rows[i].family + "(" + rows[i].params + ") SDR=" +
              Num(rows[i].sdr_db) + " FAD=" + Num(rows[i].fad) + "; ";
  }
  detail += "noise 0.31 FAD=" + Num(noise_fad);
  return {pass, detail};
}

Verdict StepStability(const ClipSet& corpus, const SweepGrid& grid) {
  PatchStatsBackend backend;
  const auto rows = StepLengthStudy(corpus, corpus,
                                    Family(grid, DistortionFamily::kGaussianNoise),
                                    backend, {0.5, 0.25}, 1);
  const size_t n = rows.size() / 2;
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(rows[n + i].fad - rows[i].fad) / rows[i].fad);
  }
  return {n == 8 && worst < 0.1,
          std::to_string(n) + " configs, max relative change " + Num(worst)};
}

Verdict DispersionTrend(const std::filesystem::path& dir) {
  const Corpus corpus = MakeCorpus(dir, 400, 5.0, 4242);
  PatchStatsBackend backend;
  DispersionOptions options;
  options.sizes = {50, 100, 200};
  options.repeats = 10;
  options.seed = 7;
  const SweepGrid grid =
      Family(BuiltinGrid(0), DistortionFamily::kGaussianNoise);
  const DispersionReport report =
      DispersionStudy(corpus.clips, corpus.clips, grid, backend, options);
  const double d50 = report.average_dispersion.at(50);
  const double d100 = report.average_dispersion.at(100);
  const double d200 = report.average_dispersion.at(200);
  return {d50 > d100 && d100 > d200,
          std::to_string(grid.entries.size()) + " configs, average D: 50->" + Num(d50) + " 100->" + Num(d100) + " 200->" + Num(d200)};
}

Verdict DspFoundations() {
  const auto x = RandomSignal(16000, 505);
  const AudioClip y = Istft(Stft(x, kDistortionStft));
  double rt = 0;
  for (size_t i = 1024; i + 1024 < y.size(); ++i) {
    rt = std::max(rt, std::abs(y.samples[i] - x[i]));
  }
  int gl_ok = 0;
  for (int k = 0; k < 10; ++k) {
    const AudioClip clip = SynthesizeMusicClip(600 + k, 1.0);
    const Eigen::MatrixXd mag = Stft(clip, kDistortionStft).Magnitude();
    const auto r = GriffinLimDetailed(mag, kDistortionStft, 200,
                                      PhaseInit::kRandom, 700 + k);
    gl_ok += r.convergence[200] <= r.convergence[5];
  }
  double bw_worst = 0;
  const double fs = 16000, fc = 1000;
  const ButterworthFilter filter(FilterKind::kLowpass, fc, 5, 16000);
  std::vector<double> impulse(32768, 0.0);
  impulse[0] = 1;
  const auto h = filter.Apply(impulse);
  for (int p = 0; p < 20; ++p) {
    const double f = 40.0 * std::pow(3000.0 / 40.0, p / 19.0);
    std::complex<double> resp = 0;
    for (size_t t = 0; t < h.size(); ++t) {
      resp += h[t] * std::polar(1.0, -2 * kPi * f * t / fs);
    }
    const double ratio = std::tan(kPi * f / fs) / std::tan(kPi * fc / fs);
    const double analytic = 1.0 / std::sqrt(1.0 + std::pow(ratio, 10));
    bw_worst = std::max(bw_worst, std::abs(20 * std::log10(std::abs(resp)) -
                                           20 * std::log10(analytic)));
  }
  return {rt <= 1e-6 && gl_ok == 10 && bw_worst <= 0.5,
          "istft(stft) err=" + Num(rt) + ", GL 200<=5 in " +
              std::to_string(gl_ok) + "/10, Butterworth max dev=" +
              Num(bw_worst) + " dB"};
}

int Shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict Determinism(const std::filesystem::path& dir) {
  MakeCorpus(dir, 3, 2.0, 99);
  const std::vector<DistortionFamily> families = {
      DistortionFamily::kGaussianNoise, DistortionFamily::kPops,
      DistortionFamily::kGriffinLim};
  const size_t expected_rows = BuiltinGrid(0).Filter(families).entries.size();
  const std::string cli = FADTK_CLI_PATH;
  const std::string common = " --seed 17 pipeline --manifest " +
                             (dir / "manifest.csv").string() +
                             " --families gaussian_noise,pops,griffin_lim --out ";
  std::vector<std::string> outputs;
  for (const auto& [threads, name] :
       std::vector<std::pair<int, std::string>>{{1, "a.csv"}, {1, "b.csv"}, {3, "c.csv"}}) {
    const auto path = dir / name;
    if (Shell(cli + " --threads " + std::to_string(threads) + common +
              path.string() + " 2>/dev/null") != 0) {
      return {false, "pipeline run failed"};
    }
    outputs.push_back(ReadFile(path));
  }
  const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2];
  std::istringstream lines(outputs[0]);
  size_t rows = 0;
  for (std::string line; std::getline(lines, line);) {
    rows += !line.empty() && line[0] != '#';
  }
  rows -= rows > 0;
  return {same && rows == expected_rows,
          std::to_string(rows) + " config rows; threads 1/1/3 " +
              (same ? "byte-identical" : "DIFFER")};
}

int Main() {
  const auto root = std::filesystem::temp_directory_path() /
                    ("fadtk_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(root);
  Suite suite;
  suite.Run(1, "frechet-exactness", 1, FrechetExactness);
  suite.Run(2, "equal-covariance-identity", 1, EqualCovariance);
  suite.Run(3, "table2-correlation", 0, Table2Reproduction);
  suite.Run(4, "plackett-luce-recovery", 10, PlackettLuceRecovery);
  const AudioClip music = SynthesizeMusicClip(77, 5.0);
  suite.Run(5, "sdr-contract", 30, [&] { return SdrContract(music); });
  suite.Run(6, "signal-metric-trivia", 0, [&] { return MetricTrivia(music); });

  Corpus corpus;
  const auto setup = std::chrono::steady_clock::now();
  corpus = MakeCorpus(root / "corpus30", 30, 6.0, 2024);
  std::printf("       synthetic corpus: %zu clips x 6 s (%.2f s)\n",
              corpus.clips.size(),
              std::chrono::duration<double>(std::chrono::steady_clock::now() - setup)
                  .count());
  const SweepGrid grid = BuiltinGrid(0);
  suite.Run(7, "fad-monotonicity", 120,
            [&] { return Monotonicity(corpus.clips, grid); });
  suite.Run(8, "sdr-breaking-taxonomy", 120,
            [&] { return SdrBreaking(corpus.clips); });
  suite.Run(9, "window-step-stability", 0,
            [&] { return StepStability(corpus.clips, grid); });
  suite.Run(10, "dispersion-trend", 300,
            [&] { return DispersionTrend(root / "corpus400"); });
  suite.Run(11, "dsp-foundations", 0, DspFoundations);
  suite.Run(12, "determinism", 0, [&] { return Determinism(root / "det"); });
  std::error_code ec;
  std::filesystem::remove_all(root, ec);
  return suite.Finish();
}

}  // namespace
}  // namespace fadtk

int main() { return fadtk::Main(); }
