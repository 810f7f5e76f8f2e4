"""Topological mixture estimation on 1D grids.

A nonnegative grid function is unimodal when every superlevel set is an index
interval: it rises to a single (possibly flat) peak and then falls.  The
sweep decomposition walks the grid left to right maintaining a set of live
components: a rise extends the current rising component (or starts a new one
when none is rising), and a fall is absorbed by already-descending components
first so the rising one survives as long as possible.  That greedy choice
makes the number of produced components equal to the unimodal category of the
grid, the minimum number of unimodal summands.

Bandwidth selection scans a log-spaced bandwidth grid, computes the unimodal
category of the kernel density estimate at each, and keeps the most common
category; the returned bandwidth is the geometric midpoint of the longest
run of bandwidths attaining it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError


@dataclass(frozen=True)
class DensityGrid:
    """Nonnegative values on a uniform ascending grid."""

    xs: np.ndarray
    fs: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        fs = np.asarray(self.fs, dtype=float)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "fs", fs)
        if xs.ndim != 1 or xs.shape != fs.shape:
            raise ValueError("xs and fs must be 1D arrays of equal length")
        if len(xs) >= 2:
            steps = np.diff(xs)
            if steps.min() <= 0 or not np.allclose(steps, steps[0], rtol=1e-9):
                raise ValueError("xs must be strictly increasing with constant step")
        if np.any(fs < 0):
            raise ValueError("density values must be nonnegative")

    @property
    def dx(self) -> float:
        return float(self.xs[1] - self.xs[0]) if len(self.xs) >= 2 else 1.0

    @property
    def mass(self) -> float:
        return float(self.fs.sum() * self.dx)


@dataclass(frozen=True)
class UnimodalDecomposition:
    """Unimodal pieces summing bin-for-bin to the decomposed grid."""

    components: tuple[DensityGrid, ...]
    weights: tuple[float, ...]


@dataclass(frozen=True)
class BandwidthScan:
    bandwidths: tuple[float, ...]
    ucats: tuple[int, ...]
    modal_ucat: int
    chosen_bandwidth: float


def kde(samples, bandwidth: float, bins: int = 512) -> DensityGrid:
    """Gaussian kernel density estimate on a uniform grid of ``bins`` points.

    The grid spans three bandwidths beyond the sample range and the result is
    normalized to unit mass.
    """
    data = np.asarray(list(samples), dtype=float)
    if data.size < 2:
        raise ValueError("need at least two samples")
    if not bandwidth > 0:
        raise ValueError("bandwidth must be positive")
    if bins < 2:
        raise ValueError("need at least two bins")
    lo = data.min() - 3 * bandwidth
    hi = data.max() + 3 * bandwidth
    if hi <= lo:
        raise ValueError("degenerate sample range")
    xs = np.linspace(lo, hi, bins)
    z = (xs[None, :] - data[:, None]) / bandwidth
    fs = np.exp(-0.5 * z * z).sum(axis=0)
    total = fs.sum() * (xs[1] - xs[0])
    if total <= 0:
        raise ValueError("density estimate vanished; bandwidth too small")
    return DensityGrid(xs, fs / total)


class _Component:
    __slots__ = ("values", "value", "rising")

    def __init__(self, n: int, start: int, value: float):
        self.values = np.zeros(n)
        self.values[start] = value
        self.value = value
        self.rising = True


def _sweep(fs: np.ndarray) -> list[np.ndarray]:
    n = len(fs)
    live: list[_Component] = []   # newest last; at most one is rising
    done: list[np.ndarray] = []
    prev = 0.0
    for i, v in enumerate(fs):
        if v >= prev:
            rise = v - prev
            riser = live[-1] if live and live[-1].rising else None
            if rise > 0:
                if riser is None:
                    live.append(_Component(n, i, rise))
                else:
                    riser.value += rise
        else:
            fall = prev - v
            # cut descending components first (newest first), then the riser
            for comp in [c for c in reversed(live) if not c.rising] + [
                c for c in live if c.rising
            ]:
                cut = min(fall, comp.value)
                comp.value -= cut
                fall -= cut
                if cut > 0:
                    comp.rising = False
                if comp.value == 0:
                    comp.values[i] = 0.0
                    done.append(comp.values)
                    live.remove(comp)
                if fall == 0:
                    break
        for comp in live:
            comp.values[i] = comp.value
        prev = v
    done.extend(comp.values for comp in live)
    return done


def sweep_decompose(f: DensityGrid) -> UnimodalDecomposition:
    """Greedy minimal unimodal decomposition of a nonnegative grid.

    Components sum to the input exactly (up to float rounding per bin) and
    each has interval superlevel sets.  An all-zero input has no components.
    """
    fs = np.asarray(f.fs, dtype=float)
    if np.any(fs < 0):
        raise ValueError("cannot decompose negative values")
    parts = [p for p in _sweep(fs) if p.max() > 0]
    parts.sort(key=lambda p: int(np.flatnonzero(p > 0)[0]))
    total = float(fs.sum())
    comps = tuple(DensityGrid(f.xs, p) for p in parts)
    weights = tuple(float(p.sum()) / total for p in parts)
    return UnimodalDecomposition(comps, weights)


def unimodal_category(f) -> int:
    """Minimum number of unimodal summands of a nonnegative grid function."""
    if isinstance(f, DensityGrid):
        fs = f.fs
    else:
        fs = np.asarray(f, dtype=float)
        if np.any(fs < 0):
            raise ValueError("cannot decompose negative values")
    return len([p for p in _sweep(np.asarray(fs, dtype=float)) if p.max() > 0])


def is_unimodal(values) -> bool:
    """Every superlevel set of the (nonnegative) array is an index interval."""
    vals = np.asarray(values, dtype=float)
    for y in np.unique(vals[vals > 0]):
        idx = np.flatnonzero(vals >= y)
        if idx.size and idx[-1] - idx[0] + 1 != idx.size:
            return False
    return True


def select_bandwidth(
    samples, n_bandwidths: int = 64, bins: int = 512
) -> tuple[BandwidthScan, UnimodalDecomposition]:
    """Pick a kernel bandwidth by the most common unimodal category.

    Bandwidths are log-spaced from the larger of one bin width and the 1st
    percentile of the positive nearest-neighbor gaps up to the sample range,
    so the top of the scan always oversmooths down to one mode.  Ties in the
    category count go to the smaller category; the chosen bandwidth is the
    geometric midpoint of the longest (first, if tied) run attaining it.
    """
    data = np.sort(np.asarray(list(samples), dtype=float))
    if data.size < 2:
        raise ValueError("need at least two samples")
    span = float(data[-1] - data[0])
    if span <= 0:
        raise ValueError("all samples are identical")
    if n_bandwidths < 1:
        raise ValueError("need at least one bandwidth")
    gaps = np.diff(data)
    gaps = gaps[gaps > 0]
    lo = float(np.percentile(gaps, 1))
    lo = min(max(lo, span / bins), span)
    hi = span
    if n_bandwidths == 1 or lo >= hi:
        bandwidths = [hi]
    else:
        bandwidths = list(np.geomspace(lo, hi, n_bandwidths))
    ucats = [unimodal_category(kde(data, h, bins)) for h in bandwidths]

    counts: dict[int, int] = {}
    for u in ucats:
        counts[u] = counts.get(u, 0) + 1
    best = max(counts.values())
    modal = min(u for u, c in counts.items() if c == best)

    run_start, run_len = 0, 0
    i = 0
    while i < len(ucats):
        if ucats[i] != modal:
            i += 1
            continue
        j = i
        while j < len(ucats) and ucats[j] == modal:
            j += 1
        if j - i > run_len:
            run_start, run_len = i, j - i
        i = j
    chosen = math.sqrt(
        bandwidths[run_start] * bandwidths[run_start + run_len - 1]
    )
    scan = BandwidthScan(tuple(bandwidths), tuple(ucats), modal, chosen)
    return scan, sweep_decompose(kde(data, chosen, bins))


def read_samples(text: str):
    """One real per line, or a single-column CSV with a header."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().rstrip(",")
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            if lineno == 1:  # tolerate a single header line
                continue
            raise ParseError(f"bad sample value: {line!r}", line=lineno) from None
    return np.asarray(values, dtype=float)
