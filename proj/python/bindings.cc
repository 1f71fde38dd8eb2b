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


#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "fadtk/audio_io.h"
#include "fadtk/distortion.h"
#include "fadtk/embedding.h"
#include "fadtk/error.h"
#include "fadtk/gaussian_stats.h"
#include "fadtk/griffin_lim.h"
#include "fadtk/ranking.h"
#include "fadtk/signal_metrics.h"
#include "fadtk/stft.h"
#include "fadtk/synthetic.h"
#include "fadtk/version.h"

namespace py = pybind11;

namespace fadtk {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> ToVector(const Array& array) {
  if (array.ndim() != 1) throw Error(ErrorCode::kArgument, "expected a 1-D array");
  return std::vector<double>(array.data(), array.data() + array.size());
}

Array ToArray(const std::vector<double>& values) {
  return Array(static_cast<py::ssize_t>(values.size()), values.data());
}

Outcome ParseOutcome(const std::string& text) {
  if (text == "a") return Outcome::kAWins;
  if (text == "b") return Outcome::kBWins;
  if (text == "tie") return Outcome::kTie;
  throw Error(ErrorCode::kArgument, "outcome must be 'a', 'b' or 'tie'");
}

std::string StatusName(FitStatus status) {
  switch (status) {
    case FitStatus::kConverged: return "converged";
    case FitStatus::kMaxIterations: return "max_iterations";
    case FitStatus::kPartial: return "partial";
  }
  return "unknown";
}

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fréchet Audio Distance toolkit";
  m.attr("__version__") = kVersion;
  m.attr("INFINITE_SDR_SENTINEL_DB") = kInfiniteSdrSentinelDb;

  static py::exception<Error> error_type(m, "FadtkError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  py::class_<AudioClip>(m, "AudioClip")
      .def(py::init([](const Array& samples, int sample_rate) {
             return AudioClip{ToVector(samples), sample_rate};
           }),
           py::arg("samples"), py::arg("sample_rate") = kCanonicalSampleRate)
      .def_property_readonly(
          "samples", [](const AudioClip& c) { return ToArray(c.samples); })
      .def_readonly("sample_rate", &AudioClip::sample_rate)
      .def_property_readonly("duration_seconds", &AudioClip::duration_seconds)
      .def("__len__", &AudioClip::size)
      .def("__repr__", [](const AudioClip& c) {
        return "AudioClip(samples=" + std::to_string(c.size()) +
               ", sample_rate=" + std::to_string(c.sample_rate) + ")";
      });

  m.def("load_wav", &LoadWav, py::arg("path"));
  m.def("load_canonical", &LoadCanonical, py::arg("path"),
        "Loads a WAV file as mono 16 kHz.");
  m.def("save_wav", &SaveWav, py::arg("clip"), py::arg("path"));
  m.def("resample", &Resample, py::arg("clip"), py::arg("target_rate"));
  m.def("synthesize_music_clip", &SynthesizeMusicClip, py::arg("seed"),
        py::arg("seconds"), py::arg("sample_rate") = kCanonicalSampleRate);

  m.def("families", [] {
    std::vector<std::string> names;
    for (DistortionFamily f : AllFamilies()) names.emplace_back(FamilyName(f));
    return names;
  });
  m.def(
      "builtin_grid",
      [](uint64_t seed) {
        std::vector<std::tuple<std::string, std::string, uint64_t>> rows;
        for (const DistortionSpec& s : BuiltinGrid(seed).entries) {
          rows.emplace_back(std::string(FamilyName(s.family)), s.ParamString(),
                            s.seed);
        }
        return rows;
      },
      py::arg("seed") = 0, "Returns (family, params, seed) tuples.");
  m.def(
      "apply_distortion",
      [](const AudioClip& clip, const std::string& family,
         const std::string& params, uint64_t seed) {
        py::gil_scoped_release release;
        return ApplyDistortion(clip, MakeSpec(family, params, seed));
      },
      py::arg("clip"), py::arg("family"), py::arg("params"),
      py::arg("seed") = 0);

  m.def("sdr", &Sdr, py::arg("reference"), py::arg("estimate"),
        py::arg("filter_taps") = kDefaultFilterTaps,
        py::call_guard<py::gil_scoped_release>());
  m.def("si_sdr", &SiSdr, py::arg("reference"), py::arg("estimate"));
  m.def("cosine_distance", &CosineDistance, py::arg("reference"),
        py::arg("estimate"));
  m.def(
      "magnitude_l2",
      [](const AudioClip& r, const AudioClip& e) { return MagnitudeL2(r, e); },
      py::arg("reference"), py::arg("estimate"));
  m.def("sdr_for_report", &SdrForReport, py::arg("sdr_db"));

  m.def(
      "stft_magnitude",
      [](const AudioClip& clip) { return Stft(clip, kDistortionStft).Magnitude(); },
      py::arg("clip"), "Magnitude spectrogram (bins x frames), 1024/256 Hann.");
  m.def(
      "griffin_lim",
      [](const Eigen::MatrixXd& magnitude, int iterations,
         const std::string& init, uint64_t seed) {
        if (init != "random" && init != "zero") {
          throw Error(ErrorCode::kArgument, "init must be 'random' or 'zero'");
        }
        const PhaseInit phase = init == "zero" ? PhaseInit::kZero : PhaseInit::kRandom;
        const GriffinLimResult r = GriffinLimDetailed(
            magnitude, kDistortionStft, iterations, phase, seed);
        return py::make_tuple(r.audio, ToArray(r.convergence));
      },
      py::arg("magnitude"), py::arg("iterations") = 32,
      py::arg("init") = "random", py::arg("seed") = 0,
      "Returns (clip, spectral convergence per iteration).");

  m.def(
      "embed_clip",
      [](const AudioClip& clip, double window_seconds, double step_seconds) {
        const PatchStatsBackend backend;
        const auto rows = backend.EmbedClip(
            "clip", clip, WindowingPolicy{window_seconds, step_seconds});
        Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                            backend.dimension());
        for (size_t i = 0; i < rows.size(); ++i) {
          for (int j = 0; j < backend.dimension(); ++j) {
            out(static_cast<Eigen::Index>(i), j) = rows[i].values[j];
          }
        }
        return out;
      },
      py::arg("clip"), py::arg("window_seconds") = 1.0,
      py::arg("step_seconds") = 0.5,
      "Patch-statistics embeddings, one row per window.");

  py::class_<GaussianStats>(m, "GaussianStats")
      .def(py::init([](Eigen::VectorXd mean, Eigen::MatrixXd cov, uint64_t count,
                       std::string backend_id) {
             GaussianStats s{std::move(mean), std::move(cov), count,
                             std::move(backend_id)};
             s.Validate();
             return s;
           }),
           py::arg("mean"), py::arg("covariance"), py::arg("count"),
           py::arg("backend_id") = "python")
      .def_readonly("mean", &GaussianStats::mean)
      .def_readonly("covariance", &GaussianStats::covariance)
      .def_readonly("count", &GaussianStats::count)
      .def_readonly("backend_id", &GaussianStats::backend_id)
      .def_property_readonly("dimension", &GaussianStats::dimension);

  m.def(
      "estimate_gaussian",
      [](const Eigen::MatrixXd& rows, const std::string& backend_id) {
        return EstimateGaussian(rows, backend_id);
      },
      py::arg("rows"), py::arg("backend_id") = "python");
  m.def("frechet_distance", &FrechetDistance, py::arg("a"), py::arg("b"));
  m.def("fad_score", &FadScore, py::arg("background"), py::arg("evaluation"));
  m.def("save_stats", &SaveStats, py::arg("stats"), py::arg("path"));
  m.def("load_stats", &LoadStats, py::arg("path"));

  m.def(
      "fit_plackett_luce",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>&
             comparisons,
         int max_iters, double tol) {
        std::vector<PairwiseComparison> data;
        for (const auto& [a, b, outcome] : comparisons) {
          data.push_back({a, b, ParseOutcome(outcome)});
        }
        const WorthVector w = FitPlackettLuce(data, max_iters, tol);
        py::dict result;
        result["log_worth"] = w.log_worth;
        result["status"] = StatusName(w.status);
        result["iterations"] = w.iterations;
        result["components"] = w.components;
        return result;
      },
      py::arg("comparisons"), py::arg("max_iters") = 10000,
      py::arg("tol") = 1e-8,
      "comparisons: (item_a, item_b, 'a' | 'b' | 'tie') tuples.");
  m.def(
      "pearson",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return Pearson(x, y);
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "spearman",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return Spearman(x, y);
      },
      py::arg("x"), py::arg("y"));
  m.def("table2_csv", &Table2Csv);
}

}  // namespace
}  // namespace fadtk
