# Copyright 2026 The FADTK Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Fréchet Audio Distance toolkit: distortions, signal metrics and FAD."""

from fadtk._core import (
    INFINITE_SDR_SENTINEL_DB,
    AudioClip,
    FadtkError,
    GaussianStats,
    __version__,
    apply_distortion,
    builtin_grid,
    cosine_distance,
    embed_clip,
    estimate_gaussian,
    fad_score,
    families,
    fit_plackett_luce,
    frechet_distance,
    griffin_lim,
    load_canonical,
    load_stats,
    load_wav,
    magnitude_l2,
    pearson,
    resample,
    save_stats,
    save_wav,
    sdr,
    sdr_for_report,
    si_sdr,
    spearman,
    stft_magnitude,
    synthesize_music_clip,
    table2_csv,
)

__all__ = [
    "INFINITE_SDR_SENTINEL_DB",
    "AudioClip",
    "FadtkError",
    "GaussianStats",
    "__version__",
    "apply_distortion",
    "builtin_grid",
    "cosine_distance",
    "embed_clip",
    "estimate_gaussian",
    "fad_score",
    "families",
    "fit_plackett_luce",
    "frechet_distance",
    "griffin_lim",
    "load_canonical",
    "load_stats",
    "load_wav",
    "magnitude_l2",
    "pearson",
    "resample",
    "save_stats",
    "save_wav",
    "sdr",
    "sdr_for_report",
    "si_sdr",
    "spearman",
    "stft_magnitude",
    "synthesize_music_clip",
    "table2_csv",
]
