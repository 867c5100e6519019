"""The 18-moment registry and its three aggregation schemes.

Registry layout (canonical order everywhere: CSV columns, weighting matrices,
robustness subsets):

====== =========== ====================================================
index  label       statistic
====== =========== ====================================================
1      abs_mean    mean absolute return
2      sq_mean     mean squared return
3      kurtosis    excess kurtosis of the per-series standardized returns
4      hill_025    Hill tail index, top 2.5% of absolute returns
5      hill_050    Hill tail index, top 5% of absolute returns
6      ac_raw_l1   autocorrelation of raw returns, lag 1
7..18  ac_{abs,sq}_l{1,5,10,25,50,100}  autocorrelation coefficients of
       absolute and squared returns at the six registry lags
====== =========== ====================================================

Autocorrelations are the centered, variance-normalized sample coefficients
(full-sample mean and variance in the denominator).  The kurtosis entry is
isolated in :func:`excess_kurtosis` so its standardization convention can be
swapped without touching callers.

Aggregation schemes: a time average over one realization
(:func:`moment_vector`), the entrywise mean of per-series vectors over an
ensemble (:func:`ensemble_moment_vector`), and the pooled computation over
the concatenated sample (:func:`pooled_moment_vector`).  Linear entries agree
between the last two; Hill and autocorrelation entries generically do not,
which is exactly the order-of-averaging effect the experiment harness
measures.  Precomputation sharing (|r|, r^2, centered arrays, sorted tails)
is an internal contract: results are bit-identical to naive per-moment
recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (EmptySeriesError, DegenerateTailError, InsufficientTailError,
                     MomentError, SetMismatchError, ZeroVarianceError)

AC_LAGS = (1, 5, 10, 25, 50, 100)
TRANSFORMS = ("raw", "abs", "square")


@dataclass(frozen=True)
class MomentId:
    """One registry entry; index in 1..18, label unique."""

    index: int
    label: str


def _build_registry():
    ids = [MomentId(1, "abs_mean"), MomentId(2, "sq_mean"), MomentId(3, "kurtosis"),
           MomentId(4, "hill_025"), MomentId(5, "hill_050"), MomentId(6, "ac_raw_l1")]
    spec = {1: ("abs_mean",), 2: ("raw", 2), 3: ("kurt",),
            4: ("hill", 0.025), 5: ("hill", 0.05), 6: ("ac", 1, "raw")}
    idx = 7
    for lag in AC_LAGS:
        ids.append(MomentId(idx, f"ac_abs_l{lag}"))
        spec[idx] = ("ac", lag, "abs")
        ids.append(MomentId(idx + 1, f"ac_sq_l{lag}"))
        spec[idx + 1] = ("ac", lag, "square")
        idx += 2
    return tuple(ids), spec


MOMENTS, _SPEC = _build_registry()
BY_INDEX = {m.index: m for m in MOMENTS}
BY_LABEL = {m.label: m for m in MOMENTS}
N_MOMENTS = len(MOMENTS)


@dataclass(frozen=True)
class MomentSet:
    """Ordered subset of the registry, identified by indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) == 0:
            raise ValueError("moment set must be non-empty")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"duplicate indices in {self.indices}")
        for i in self.indices:
            if i not in BY_INDEX:
                raise ValueError(f"unknown moment index {i}")
        if tuple(sorted(self.indices)) != self.indices:
            raise ValueError("moment set must be ordered by index")

    @classmethod
    def full(cls) -> "MomentSet":
        return cls(tuple(range(1, N_MOMENTS + 1)))

    @classmethod
    def of(cls, *indices: int) -> "MomentSet":
        return cls(tuple(sorted(indices)))

    def excluding(self, *indices: int) -> "MomentSet":
        drop = set(indices)
        return MomentSet(tuple(i for i in self.indices if i not in drop))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(BY_INDEX[i].label for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return (BY_INDEX[i] for i in self.indices)

    def positions_in(self, other: "MomentSet") -> np.ndarray:
        """Positions of this set's members inside ``other`` (must contain them)."""
        lookup = {idx: pos for pos, idx in enumerate(other.indices)}
        try:
            return np.array([lookup[i] for i in self.indices])
        except KeyError as exc:
            raise SetMismatchError(f"moment {exc} not present in the larger set")


@dataclass(frozen=True)
class MomentVector:
    """Values of a moment set, aligned with the set by position."""

    values: np.ndarray
    mset: MomentSet

    def __post_init__(self):
        if self.values.shape != (len(self.mset),):
            raise ValueError(f"values shape {self.values.shape} does not match "
                             f"set of size {len(self.mset)}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("moment vector contains non-finite entries")

    def as_dict(self) -> dict[str, float]:
        return {lab: float(v) for lab, v in zip(self.mset.labels, self.values)}


# ---------------------------------------------------------------------------
# Shared-precompute batch engine
# ---------------------------------------------------------------------------

def _as_matrix(ensemble) -> np.ndarray:
    """Coerce a series, array or sequence of series to a C-contiguous matrix."""
    if hasattr(ensemble, "values"):
        arr = np.asarray(ensemble.values, dtype=np.float64)
    else:
        if isinstance(ensemble, (list, tuple)):
            rows = [s.values if hasattr(s, "values") else np.asarray(s) for s in ensemble]
            lengths = {r.shape[0] for r in rows}
            if len(lengths) > 1:
                raise ValueError(f"ensemble series lengths differ: {sorted(lengths)}")
            arr = np.asarray(rows, dtype=np.float64)
        else:
            arr = np.asarray(ensemble, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"expected 1-D or 2-D input, got shape {arr.shape}")
    if arr.shape[1] == 0:
        raise EmptySeriesError("empty series")
    return np.ascontiguousarray(arr)


class _Batch:
    """Lazy shared precomputations over an (n_series, t_len) matrix."""

    def __init__(self, values: np.ndarray):
        self.v = values
        self.n, self.t = values.shape
        self._absr = None
        self._sq = None
        self._centered = {}   # transform -> (deviations, per-row sum of squares)
        self._tops = None     # per-row descending sorted tail of |r|, zeros dropped
        self._tops_k = -1

    @property
    def absr(self) -> np.ndarray:
        if self._absr is None:
            self._absr = np.abs(self.v)
        return self._absr

    @property
    def sq(self) -> np.ndarray:
        if self._sq is None:
            self._sq = self.v * self.v
        return self._sq

    def transformed(self, transform: str) -> np.ndarray:
        if transform == "raw":
            return self.v
        if transform == "abs":
            return self.absr
        if transform == "square":
            return self.sq
        raise ValueError(f"unknown transform {transform!r}")

    def centered(self, transform: str):
        if transform not in self._centered:
            y = self.transformed(transform)
            d = y - y.mean(axis=1, keepdims=True)
            den = np.einsum("ij,ij->i", d, d)
            self._centered[transform] = (d, den)
        return self._centered[transform]

    # -- per-moment kernels ------------------------------------------------

    def abs_mean(self) -> np.ndarray:
        return self.absr.mean(axis=1)

    def raw_moment(self, k: int) -> np.ndarray:
        if k == 2:
            return self.sq.mean(axis=1)
        if k == 4:
            sq = self.sq
            return (sq * sq).mean(axis=1)
        raise ValueError(f"raw moment order must be 2 or 4, got {k}")

    def excess_kurtosis(self) -> np.ndarray:
        mu = self.v.mean(axis=1, keepdims=True)
        c = self.v - mu
        c2 = c * c
        s2 = c2.mean(axis=1)
        if np.any(s2 == 0.0):
            row = int(np.flatnonzero(s2 == 0.0)[0])
            raise ZeroVarianceError("constant series has no kurtosis",
                                    moment="kurtosis", series_index=row)
        c4 = (c2 * c2).mean(axis=1)
        return c4 / (s2 * s2) - 3.0

    def autocorr(self, lag: int, transform: str) -> np.ndarray:
        if lag == 0:
            return np.ones(self.n)
        if lag >= self.t:
            raise MomentError(f"lag {lag} requires series longer than {lag}",
                              moment=f"ac_{transform}_l{lag}")
        d, den = self.centered(transform)
        if np.any(den == 0.0):
            row = int(np.flatnonzero(den == 0.0)[0])
            raise ZeroVarianceError(
                f"constant {transform}-transformed series has undefined "
                f"autocorrelation", moment=f"ac_{transform}_l{lag}",
                series_index=row)
        return np.einsum("ij,ij->i", d[:, lag:], d[:, :-lag]) / den

    def _top_tails(self, k_need: int) -> list[np.ndarray]:
        """Per-row descending sorted positive |r| values, at least k_need+1 each."""
        if self._tops is None or self._tops_k < k_need:
            tops = []
            for i in range(self.n):
                row = self.absr[i]
                pos = row[row > 0.0]
                if pos.shape[0] <= k_need:
                    raise InsufficientTailError(
                        f"series {i} has {pos.shape[0]} positive observations; "
                        f"tail of size {k_need}+1 required",
                        moment="hill", series_index=i)
                cut = pos.shape[0] - (k_need + 1)
                tops.append(np.sort(np.partition(pos, cut)[cut:])[::-1])
            self._tops = tops
            self._tops_k = k_need
        return self._tops

    def hill(self, q: float) -> np.ndarray:
        k = int(np.floor(q * self.t))
        if k < 1:
            raise InsufficientTailError(
                f"tail fraction {q} of length {self.t} gives an empty tail",
                moment="hill")
        label = "hill_025" if q == 0.025 else ("hill_050" if q == 0.05 else "hill")
        tops = self._top_tails(k)
        out = np.empty(self.n)
        for i, top in enumerate(tops):
            threshold = top[k]
            if threshold <= 0.0:
                raise DegenerateTailError("zero tail threshold", moment=label,
                                          series_index=i)
            out[i] = 1.0 / (np.mean(np.log(top[:k])) - np.log(threshold))
        return out

    def compute(self, index: int) -> np.ndarray:
        spec = _SPEC[index]
        kind = spec[0]
        try:
            if kind == "abs_mean":
                return self.abs_mean()
            if kind == "raw":
                return self.raw_moment(spec[1])
            if kind == "kurt":
                return self.excess_kurtosis()
            if kind == "hill":
                return self.hill(spec[1])
            return self.autocorr(spec[1], spec[2])
        except MomentError as exc:
            if exc.moment is None or exc.moment == "hill":
                exc.moment = BY_INDEX[index].label
            raise

    def matrix(self, mset: MomentSet) -> np.ndarray:
        # Prime the tail cache at the largest requested k so both Hill
        # entries reuse one partition pass.
        hill_ks = [int(np.floor(_SPEC[i][1] * self.t))
                   for i in mset.indices if _SPEC[i][0] == "hill"]
        if hill_ks and max(hill_ks) >= 1:
            self._top_tails(max(hill_ks))
        cols = [self.compute(i) for i in mset.indices]
        return np.column_stack(cols)


# ---------------------------------------------------------------------------
# Single-series operations
# ---------------------------------------------------------------------------

def abs_mean(series) -> float:
    """Mean absolute value: (1/T) sum |r_t|."""
    return float(_Batch(_as_matrix(series)).abs_mean()[0])


def raw_moment(series, k: int) -> float:
    """Raw return moment (1/T) sum r_t^k for k in {2, 4}."""
    return float(_Batch(_as_matrix(series)).raw_moment(k)[0])


def excess_kurtosis(series) -> float:
    """Excess kurtosis: mean(z^4) - 3, z the demeaned series over its
    population standard deviation.  The registry's kurtosis entry."""
    return float(_Batch(_as_matrix(series)).excess_kurtosis()[0])


def hill_tail(series, q: float) -> float:
    """Hill tail-index estimator over the top ``q`` fraction of |r|.

    With the absolute values sorted descending and k = floor(q*T), returns
    [(1/k) sum_{i<=k} (ln x_(i) - ln x_(k+1))]^-1.  Zeros are excluded from
    the tail sample; fewer than k+1 positive observations is an error.
    """
    return float(_Batch(_as_matrix(series)).hill(q)[0])


def autocorr(series, lag: int, transform: str = "raw") -> float:
    """Centered sample autocorrelation coefficient at ``lag``.

    transform: "raw", "abs" or "square" applied to the returns first.  The
    denominator is the full-sample sum of squared deviations, so the value is
    bounded by [-1, 1]; lag 0 returns exactly 1.
    """
    return float(_Batch(_as_matrix(series)).autocorr(lag, transform)[0])


def moment_vector(series, mset: MomentSet | None = None) -> MomentVector:
    """Time-average moment vector of one realization, in registry order."""
    mset = mset or MomentSet.full()
    batch = _Batch(_as_matrix(series))
    return MomentVector(batch.matrix(mset)[0], mset)


# ---------------------------------------------------------------------------
# Ensemble aggregation
# ---------------------------------------------------------------------------

def moment_matrix(ensemble, mset: MomentSet | None = None) -> np.ndarray:
    """Per-series moment vectors of an ensemble as an (N, M) matrix."""
    mset = mset or MomentSet.full()
    return _Batch(_as_matrix(ensemble)).matrix(mset)


def ensemble_moment_vector(ensemble, mset: MomentSet | None = None) -> MomentVector:
    """Entrywise mean of the per-series moment vectors of an ensemble."""
    mset = mset or MomentSet.full()
    return MomentVector(moment_matrix(ensemble, mset).mean(axis=0), mset)


def pooled_moment_vector(ensemble, mset: MomentSet | None = None) -> MomentVector:
    """Moment vector of the pooled N*T sample.

    Means pool across all observations; the Hill tail is taken over the
    pooled absolute returns with k = floor(q*N*T); autocorrelation lagged
    products never straddle a series boundary while the mean and variance
    pool; the kurtosis entry standardizes each series by its own scale (the
    per-series convention of the registry) before pooling fourth powers.
    """
    mset = mset or MomentSet.full()
    batch = _Batch(_as_matrix(ensemble))
    values = np.empty(len(mset))
    for pos, index in enumerate(mset.indices):
        values[pos] = _pooled_single(batch, index)
    return MomentVector(values, mset)


def _pooled_single(batch: _Batch, index: int) -> float:
    spec = _SPEC[index]
    kind = spec[0]
    if kind == "abs_mean":
        return float(batch.absr.mean())
    if kind == "raw":
        if spec[1] == 2:
            return float(batch.sq.mean())
        sq = batch.sq
        return float((sq * sq).mean())
    if kind == "kurt":
        # Per-series standardization, pooled fourth powers; with equal
        # lengths this is the mean of the per-series values.
        return float(batch.excess_kurtosis().mean())
    if kind == "hill":
        q = spec[1]
        flat = batch.absr.reshape(-1)
        pos = flat[flat > 0.0]
        k = int(np.floor(q * flat.shape[0]))
        if k < 1 or pos.shape[0] <= k:
            raise InsufficientTailError(
                f"pooled sample has {pos.shape[0]} positive observations; "
                f"tail of size {k}+1 required", moment=BY_INDEX[index].label)
        cut = pos.shape[0] - (k + 1)
        top = np.sort(np.partition(pos, cut)[cut:])[::-1]
        if top[k] <= 0.0:
            raise DegenerateTailError("zero tail threshold",
                                      moment=BY_INDEX[index].label)
        return float(1.0 / (np.mean(np.log(top[:k])) - np.log(top[k])))
    lag, transform = spec[1], spec[2]
    y = batch.transformed(transform)
    if lag >= batch.t:
        raise MomentError(f"lag {lag} requires series longer than {lag}",
                          moment=BY_INDEX[index].label)
    d = y - y.mean()
    den = float(np.einsum("ij,ij->", d, d))
    if den == 0.0:
        raise ZeroVarianceError("constant pooled sample",
                                moment=BY_INDEX[index].label)
    num = float(np.einsum("ij,ij->", d[:, lag:], d[:, :-lag]))
    return num / den


def order_condition_ok(mset: MomentSet, n_params: int) -> bool:
    """Order condition: at least as many moments as estimated parameters."""
    return len(mset) >= n_params


def subset_indices(rng: np.random.Generator, size: int,
                   pool: Iterable[int]) -> MomentSet:
    """Draw a random subset of ``pool`` of the given size, registry-ordered."""
    pool = list(pool)
    chosen = rng.choice(len(pool), size=size, replace=False)
    return MomentSet(tuple(sorted(pool[i] for i in chosen)))
