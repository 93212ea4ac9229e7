"""Catalogs of nontrivial-zero ordinates with multiplicities.

A ZeroSet holds the positive ordinates gamma (zeros of xi(1/2 + it) up to a
truncation height T); the full symmetric family {+-gamma} is produced by
iterate_symmetric. Ordinates come either from a published plain-text table
(one decimal per line, ascending) or from a sign-change sweep of xi along
the critical line refined by bracketed bisection/secant.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import special_fn as sf

__all__ = [
    "ZeroSet", "CountingReport", "load_zeros", "compute_zeros",
    "counting_check", "iterate_symmetric", "tail_coefficient",
]

MAX_HEIGHT = 120.0
_SCAN_STEP = 0.25


@dataclass(frozen=True)
class ZeroSet:
    """Ascending positive ordinates with multiplicities, truncated at height_T."""
    ordinates: Tuple[float, ...]
    multiplicities: Tuple[int, ...]
    height_T: float
    source: str   # 'table' | 'computed'

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=float)
        m = self.multiplicities
        if len(g) != len(m):
            raise ValueError("ordinates and multiplicities must align")
        if len(g) and not np.all(np.diff(g) > 0):
            raise ValueError("ordinates must be strictly ascending")
        if len(g) and (g[0] <= 0 or g[-1] > self.height_T + 1e-9):
            raise ValueError("ordinates must be positive and <= height_T")
        if any(int(mi) != mi or mi < 1 for mi in m):
            raise ValueError("multiplicities must be integers >= 1")
        if self.source not in ("table", "computed"):
            raise ValueError("source must be 'table' or 'computed'")
        object.__setattr__(self, "ordinates", tuple(float(x) for x in g))
        object.__setattr__(self, "multiplicities", tuple(int(x) for x in m))

    def __len__(self) -> int:
        return len(self.ordinates)


@dataclass(frozen=True)
class CountingReport:
    count: int
    estimate: float
    discrepancy: float
    passed: bool


def load_zeros(path, T: float) -> ZeroSet:
    """Parse a plain-text ordinate table (one decimal per line, ascending)."""
    ordinates: List[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                val = float(line)
            except ValueError:
                raise ValueError("malformed ordinate at line %d: %r" % (lineno, line))
            if val <= 0:
                raise ValueError("nonpositive ordinate at line %d" % lineno)
            if ordinates and val <= ordinates[-1]:
                raise ValueError("non-ascending ordinate at line %d" % lineno)
            ordinates.append(val)
    kept = [g for g in ordinates if g <= T]
    if not kept:
        warnings.warn("zero table contains no ordinates below T = %g" % T)
    return ZeroSet(tuple(kept), tuple([1] * len(kept)), float(T), "table")


def _refine_root(f, a: float, b: float, fa: float, fb: float,
                 tol: float = 1e-11) -> float:
    """Bracketed secant with bisection fallback."""
    for _ in range(200):
        if b - a < tol:
            break
        denom = fb - fa
        if denom != 0.0:
            x = b - fb * (b - a) / denom
        else:
            x = 0.5 * (a + b)
        if not (a < x < b):
            x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if (fa < 0) == (fx < 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    return 0.5 * (a + b)


def compute_zeros(T: float, cache_dir=None) -> ZeroSet:
    """Sign-change sweep of t -> xi(1/2 + it) on (0, T], refined per bracket.

    Results are cached (one %.9f ordinate per line) keyed by T when a cache
    directory is given; the cache file is byte-stable across runs.
    """
    if T > MAX_HEIGHT:
        raise ValueError("compute_zeros supports T <= %g" % MAX_HEIGHT)
    cache_path = None
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        cache_path = os.path.join(cache_dir, "zeros_T%s.txt" % ("%g" % T))
        if os.path.exists(cache_path):
            zs = load_zeros(cache_path, T)
            return ZeroSet(zs.ordinates, zs.multiplicities, float(T), "computed")

    t_grid = np.arange(2.0, T + _SCAN_STEP, _SCAN_STEP)
    t_grid = t_grid[t_grid <= T]
    vals = np.real(sf.xi_on_critical_line(t_grid))

    def f(t):
        return float(np.real(sf.xi_on_critical_line(np.array([t]))[0]))

    roots: List[float] = []
    for i in range(len(t_grid) - 1):
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(t_grid[i]))
        elif (fa < 0) != (fb < 0):
            roots.append(_refine_root(f, float(t_grid[i]), float(t_grid[i + 1]),
                                      fa, fb))
    roots = [r for r in roots if r <= T]

    if cache_path is not None:
        with open(cache_path, "w", encoding="utf-8", newline="\n") as fh:
            for r in roots:
                fh.write("%.9f\n" % r)
        # serve the round-tripped values so later cache hits are bit-identical
        zs = load_zeros(cache_path, T)
        return ZeroSet(zs.ordinates, zs.multiplicities, float(T), "computed")
    return ZeroSet(tuple(roots), tuple([1] * len(roots)), float(T), "computed")


def counting_check(zs: ZeroSet) -> CountingReport:
    """Compare the catalog size against (T/2pi) log(T/2pi e) + 7/8."""
    if len(zs) == 0:
        raise ValueError("counting_check requires a nonempty catalog")
    T = zs.height_T
    est = (T / (2 * math.pi)) * math.log(T / (2 * math.pi * math.e)) + 7.0 / 8.0
    disc = abs(len(zs) - est)
    return CountingReport(len(zs), est, disc, disc <= 2.0)


def iterate_symmetric(zs) -> List[Tuple[float, int]]:
    """(gamma, m) pairs over {-gamma_n .. -gamma_1, gamma_1 .. gamma_n}, ascending.

    Accepts a ZeroSet or an explicit iterable of (gamma, m) pairs (the latter
    is passed through unchanged so synthetic catalogs, including non-real
    ones, can exercise the same code paths)."""
    if not isinstance(zs, ZeroSet):
        return [(g, int(m)) for g, m in zs]
    pos = list(zip(zs.ordinates, zs.multiplicities))
    neg = [(-g, m) for g, m in reversed(pos)]
    return neg + pos


def tail_coefficient(zs: ZeroSet) -> float:
    """Conservative bound for sum_{gamma > T} m/gamma^2: log(T)/T."""
    T = max(zs.height_T, 2.0)
    return math.log(T) / T
