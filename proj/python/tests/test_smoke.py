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

"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import fadtk


def _clip(seed=3, seconds=2.0):
    return fadtk.synthesize_music_clip(seed, seconds)


def test_version():
    assert fadtk.__version__ == "0.1.0"


def test_wav_round_trip(tmp_path):
    clip = _clip()
    path = tmp_path / "a.wav"
    fadtk.save_wav(clip, path)
    loaded = fadtk.load_wav(path)
    assert loaded.sample_rate == 16000
    assert len(loaded) == len(clip)
    assert np.max(np.abs(loaded.samples - clip.samples)) < 1.0 / 32767


def test_distortion_is_seeded():
    clip = _clip()
    a = fadtk.apply_distortion(clip, "gaussian_noise", "stddev=0.01", seed=5)
    b = fadtk.apply_distortion(clip, "gaussian_noise", "stddev=0.01", seed=5)
    c = fadtk.apply_distortion(clip, "gaussian_noise", "stddev=0.01", seed=6)
    np.testing.assert_array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)


def test_bad_spec_raises():
    with pytest.raises(fadtk.FadtkError):
        fadtk.apply_distortion(_clip(), "gaussian_noise", "", seed=0)
    with pytest.raises(fadtk.FadtkError):
        fadtk.apply_distortion(_clip(), "warble", "depth=1", seed=0)


def test_builtin_grid():
    grid = fadtk.builtin_grid()
    assert {family for family, _, _ in grid} == set(fadtk.families())


def test_signal_metrics():
    clip = _clip()
    negated = fadtk.AudioClip(-clip.samples, clip.sample_rate)
    assert fadtk.cosine_distance(clip, clip) == pytest.approx(0.0, abs=1e-9)
    assert fadtk.cosine_distance(clip, negated) == pytest.approx(2.0, abs=1e-9)
    assert fadtk.magnitude_l2(clip, clip) == 0.0
    assert math.isinf(fadtk.sdr(clip, clip))
    assert fadtk.sdr_for_report(fadtk.sdr(clip, clip)) == (
        fadtk.INFINITE_SDR_SENTINEL_DB)
    noisy = fadtk.apply_distortion(clip, "gaussian_noise", "stddev=0.1", seed=1)
    assert fadtk.si_sdr(clip, noisy) < 20


def test_frechet_matches_closed_form():
    a = fadtk.GaussianStats(np.zeros(1), np.eye(1), 10)
    b = fadtk.GaussianStats(np.full(1, 3.0), np.full((1, 1), 4.0), 10)
    assert fadtk.frechet_distance(a, b) == pytest.approx(10.0, abs=1e-9)


def test_fad_from_embeddings(tmp_path):
    clean = [_clip(seed) for seed in range(4)]
    rows = np.vstack([fadtk.embed_clip(c) for c in clean])
    background = fadtk.estimate_gaussian(rows, "patch-stats")
    assert fadtk.fad_score(background, background) < 1e-6
    noisy = np.vstack([
        fadtk.embed_clip(
            fadtk.apply_distortion(c, "gaussian_noise", "stddev=0.1", seed=i))
        for i, c in enumerate(clean)])
    assert fadtk.fad_score(
        background, fadtk.estimate_gaussian(noisy, "patch-stats")) > 1.0
    path = tmp_path / "bg.stats"
    fadtk.save_stats(background, path)
    restored = fadtk.load_stats(path)
    np.testing.assert_array_equal(restored.covariance, background.covariance)


def test_griffin_lim_converges():
    magnitude = fadtk.stft_magnitude(_clip(seconds=1.0))
    clip, convergence = fadtk.griffin_lim(magnitude, iterations=20, seed=2)
    assert len(convergence) == 21
    assert convergence[-1] <= convergence[0]
    assert clip.sample_rate == 16000


def test_plackett_luce_two_items():
    fit = fadtk.fit_plackett_luce([("a", "b", "a")] * 3 + [("a", "b", "b")])
    worth = fit["log_worth"]
    assert worth["a"] == 0.0
    assert worth["a"] - worth["b"] == pytest.approx(math.log(3.0), abs=1e-6)
    assert fit["status"] == "converged"


def test_correlations():
    x = [1.0, 2.0, 3.0, 4.0]
    assert fadtk.pearson(x, [2.0, 4.0, 6.0, 8.0]) == pytest.approx(1.0)
    assert fadtk.spearman(x, [10.0, 1.0, 0.5, 0.1]) == pytest.approx(-1.0)
    assert fadtk.table2_csv().count("\n") == 22
