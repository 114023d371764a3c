"""Autocorrelation of a unit-vector sequence.

For a sequence of N unit vectors U_1..U_N, the autocorrelation at lag
tau is the average dot product (= cosine similarity, since the vectors
are unit norm) between vectors tau positions apart:

    C(tau) = 1/(N - tau) * sum_{i=1..N-tau} U_i . U_{i+tau}

Two implementations share this contract: a direct per-lag summation
used as the reference oracle, and a transform-based one that computes
all lags in O(d * N log N) for long texts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .embeddings import UnitVectorSequence
from .errors import TextTooShort

VALUE_TOL = 1e-9

# Dimensions are transformed in blocks of this size; keeps the padded
# FFT work buffers bounded (~chunk * 2N * 40 bytes).
_FFT_DIM_CHUNK = 16


@dataclass(frozen=True)
class AutocorrelationCurve:
    """C(tau) sampled at strictly increasing positive integer lags."""

    lags: np.ndarray
    values: np.ndarray
    n_source: int

    def __post_init__(self) -> None:
        lags = np.asarray(self.lags, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.float64)
        if lags.ndim != 1 or lags.shape != values.shape:
            raise ValueError("lags and values must be 1-D arrays of equal length")
        if lags.size:
            if lags[0] < 1 or np.any(np.diff(lags) <= 0):
                raise ValueError("lags must be strictly increasing positive integers")
            if lags[-1] > self.n_source - 1:
                raise ValueError("max lag must be at most n_source - 1")
            if np.any(np.abs(values) > 1.0 + VALUE_TOL):
                raise ValueError("autocorrelation values must lie in [-1, 1]")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.lags.size

    @property
    def max_lag(self) -> int:
        return int(self.lags[-1]) if self.lags.size else 0

    def values_at(self, lags: np.ndarray) -> np.ndarray:
        """Values for the requested lags; every lag must be on the curve."""
        lags = np.asarray(lags, dtype=np.int64)
        pos = np.searchsorted(self.lags, lags)
        if np.any(pos >= self.lags.size) or np.any(self.lags[pos] != lags):
            missing = lags[(pos >= self.lags.size) | (self.lags[np.minimum(pos, self.lags.size - 1)] != lags)]
            raise ValueError(f"lags not on curve: {missing[:5].tolist()}")
        return self.values[pos]


def _validate(seq: UnitVectorSequence, tau_max: int) -> None:
    if tau_max < 1:
        raise ValueError("tau_max must be at least 1")
    if seq.n < 2 or tau_max >= seq.n:
        raise TextTooShort(
            f"need at least tau_max + 1 = {tau_max + 1} vectors, have {seq.n}"
        )


def autocorrelation_naive(
    seq: UnitVectorSequence, tau_max: int
) -> AutocorrelationCurve:
    """Reference implementation: direct summation, one lag at a time.

    Cost is O(d * N * tau_max); use :func:`autocorrelation_fft` for long
    texts. Kept independent of the transform path so the two can check
    each other.
    """
    _validate(seq, tau_max)
    u = seq.vectors
    n = seq.n
    values = np.empty(tau_max, dtype=np.float64)
    for tau in range(1, tau_max + 1):
        values[tau - 1] = np.einsum("ij,ij->", u[: n - tau], u[tau:]) / (n - tau)
    return AutocorrelationCurve(np.arange(1, tau_max + 1), values, n)


def autocorrelation_fft(
    seq: UnitVectorSequence, tau_max: int
) -> AutocorrelationCurve:
    """Same contract as :func:`autocorrelation_naive`, via real FFTs.

    Each dimension's scalar sequence is zero-padded to at least 2N so
    the circular correlation has no wraparound, transformed, multiplied
    by its conjugate, and inverse-transformed; the per-dimension lag
    sums are then added in fixed dimension order (pairwise, to bound
    rounding error) and divided by N - tau.
    """
    _validate(seq, tau_max)
    u = seq.vectors
    n, d = seq.n, seq.d
    nfft = scipy.fft.next_fast_len(2 * n, real=True)
    per_dim = np.empty((d, tau_max), dtype=np.float64)
    for lo in range(0, d, _FFT_DIM_CHUNK):
        block = np.ascontiguousarray(u[:, lo : lo + _FFT_DIM_CHUNK].T)
        spec = scipy.fft.rfft(block, n=nfft, axis=1, workers=-1)
        np.multiply(spec, spec.conj(), out=spec)
        corr = scipy.fft.irfft(spec, n=nfft, axis=1, workers=-1)
        per_dim[lo : lo + block.shape[0]] = corr[:, 1 : tau_max + 1]
    raw = np.sum(per_dim, axis=0)
    values = raw / (n - np.arange(1, tau_max + 1, dtype=np.float64))
    # Unit-vector inputs bound |C| by 1; shave accumulated roundoff so
    # the curve invariant holds exactly at the +-1 extremes.
    np.clip(values, -1.0, 1.0, out=values)
    return AutocorrelationCurve(np.arange(1, tau_max + 1), values, n)
