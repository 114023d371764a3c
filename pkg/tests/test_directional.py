"""End-to-end direction check on synthetic texts.

A text whose topic drifts across many timescales at once has slowly,
power-law-like decaying autocorrelations; resampling the same text with
a first-order chain keeps only one effective timescale, so its decay
turns exponential-like and the metric moves up. The generators are
seeded, so the asserted ordering is reproducible.
"""

import numpy as np
import pytest

from ltg import EmbeddingTable, analyze_text


def sticky_signs(n, half_life, rng):
    """+-1 sequence that flips with probability 1/half_life per step."""
    flips = rng.random(n) < 1.0 / half_life
    return np.where(np.cumsum(flips) % 2 == 0, 1, -1)


@pytest.fixture(scope="module")
def spectrum_table():
    """50 words ordered along one axis, plus a shared positive component."""
    rng = np.random.default_rng(20240515)
    size, dim = 50, 16
    matrix = np.zeros((size, dim))
    matrix[:, 0] = 0.35
    matrix[:, 1] = 0.8 * (np.arange(size) / (size - 1) - 0.5)
    matrix += 0.3 * rng.standard_normal((size, dim))
    return EmbeddingTable("spectrum", [f"v{i:02d}" for i in range(size)], matrix)


@pytest.fixture(scope="module")
def texts(spectrum_table):
    rng = np.random.default_rng(20240515)
    size = len(spectrum_table)

    n_structured = 300_000
    scales = [10 * 4**k for k in range(8)]
    level = sum(sticky_signs(n_structured, s, rng) for s in scales)
    structured_ids = np.clip(
        np.round((level + len(scales)) / (2 * len(scales)) * (size - 1)).astype(int),
        0, size - 1,
    )

    n_markov = 100_000
    counts = np.zeros((size, size))
    np.add.at(counts, (structured_ids[:-1], structured_ids[1:]), 1)
    row_totals = np.maximum(counts.sum(axis=1, keepdims=True), 1.0)
    cumulative = np.cumsum(counts / row_totals, axis=1)
    markov_ids = np.empty(n_markov, dtype=int)
    markov_ids[0] = structured_ids[0]
    draws = rng.random(n_markov)
    for i in range(1, n_markov):
        markov_ids[i] = np.searchsorted(cumulative[markov_ids[i - 1]], draws[i])

    to_text = lambda ids: " ".join(f"v{i:02d}" for i in ids)  # noqa: E731
    return to_text(structured_ids), to_text(markov_ids)


def test_markov_resample_scores_less_structured(spectrum_table, texts):
    structured_text, markov_text = texts
    structured = analyze_text(structured_text, spectrum_table)
    markov = analyze_text(markov_text, spectrum_table)
    assert structured.gapelmaper < 1.0
    assert markov.gapelmaper > structured.gapelmaper


def test_structured_curve_beats_exponential_fit(spectrum_table, texts):
    structured = analyze_text(texts[0], spectrum_table)
    assert structured.mape_power < structured.mape_exp
