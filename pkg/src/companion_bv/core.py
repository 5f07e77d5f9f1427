"""Piecewise-monotone piecewise-polynomial functions of bounded variation.

A :class:`PwmFunction` is a contiguous chain of monotone polynomial segments
on ``[a, b]``, possibly with jumps at the joins. Values at interior
breakpoints are taken from the right-hand segment (right-continuity); the
value at ``b`` is the last polynomial evaluated at ``b``.

With that convention every quantity used by the bounds is exact up to
rounding: the total variation over ``[c, d]`` is ``V(d) - V(c)`` where
``V(t)`` is the variation over ``[a, t]``, which includes a jump sitting at
``t`` itself but none sitting at ``a``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _poly
from .errors import ArgumentError, ConstructionError, DomainError

MAX_DEGREE = 8
DEFAULT_ATOL = 1e-9
DEFAULT_RTOL = 1e-9

# Monotonicity is decided from exact derivative roots up to this degree and
# from a Chebyshev sample above it.
_EXACT_MONOTONE_DEGREE = 3
_MONOTONE_SAMPLES = 129


def close(u: float, v: float, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL) -> bool:
    return abs(u - v) <= atol + rtol * max(abs(u), abs(v))


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ConstructionError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise ConstructionError(f"interval needs a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def mid(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def quarter(self) -> float:
        """The point (3a+b)/4."""
        return 0.75 * self.a + 0.25 * self.b

    def reflect(self, t: float) -> float:
        """a + b - t clamped to [a, b]; exact at a, b and the midpoint."""
        return min(self.b, max(self.a, (self.a + self.b) - t))

    def contains(self, t: float) -> bool:
        return self.a <= t <= self.b

    def left_half(self, x: float) -> float:
        """Validate x in [a, (a+b)/2]; snap values a rounding step past the midpoint."""
        m = self.mid
        if self.a <= x <= m:
            return float(x)
        if m < x <= m + 4e-16 * max(abs(m), self.length):
            return m
        raise DomainError(f"x={x} outside [{self.a}, {m}]")

    def shifted(self, s: float) -> Interval:
        return Interval(self.a + s, self.b + s)


def _monotone_direction(coeffs: Sequence[float], left: float, right: float) -> int | None:
    """Return +1/-1/0 for a monotone polynomial on [left, right], None otherwise."""
    d = _poly.deriv(coeffs)
    degree = len(coeffs) - 1
    if degree <= _EXACT_MONOTONE_DEGREE:
        knots = [left, *_poly.real_roots_in(d, left, right), right]
        probes = [0.5 * (u + w) for u, w in zip(knots[:-1], knots[1:])]
    else:
        k = np.arange(_MONOTONE_SAMPLES)
        nodes = np.cos(np.pi * (k + 0.5) / _MONOTONE_SAMPLES)
        probes = np.concatenate(([left, right], left + 0.5 * (nodes + 1.0) * (right - left)))
    probes = np.asarray(probes, dtype=float)
    vals = _poly.horner_array(d, probes)
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    # derivative values below the rounding noise of the absolute-t
    # coefficients carry no sign information
    noise = 64 * np.finfo(float).eps * float(np.max(_poly.horner_array(np.abs(d), np.abs(probes)))) if vals.size else 0.0
    band = max(1e-9 * scale, noise)
    has_pos = bool(np.any(vals > band))
    has_neg = bool(np.any(vals < -band))
    if has_pos and has_neg:
        return None
    rise = _poly.horner(coeffs, right) - _poly.horner(coeffs, left)
    if rise > 0:
        return 1
    if rise < 0:
        return -1
    return 0


@dataclass(frozen=True)
class PolySegment:
    """Monotone polynomial on ``[left, right]``; coefficients ascending in ``t``.

    ``check=False`` skips the monotonicity test; used for sub-segments of a
    segment that already passed it.
    """

    left: float
    right: float
    coeffs: tuple[float, ...]
    check: bool = field(default=True, compare=False, repr=False)
    direction: int = field(init=False, compare=False)

    def __post_init__(self):
        left, right = float(self.left), float(self.right)
        if not (math.isfinite(left) and math.isfinite(right)) or not left < right:
            raise ConstructionError(f"segment needs finite left < right, got [{left}, {right}]")
        coeffs = _poly.trim(self.coeffs)
        if not all(math.isfinite(c) for c in coeffs):
            raise ConstructionError(f"non-finite coefficient in {coeffs}")
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ConstructionError(f"degree {len(coeffs) - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "coeffs", coeffs)
        direction = _monotone_direction(coeffs, left, right) if self.check else None
        if direction is None:
            if self.check:
                raise ConstructionError(
                    f"polynomial {coeffs} is not monotone on [{left}, {right}]"
                )
            rise = _poly.horner(coeffs, right) - _poly.horner(coeffs, left)
            direction = (rise > 0) - (rise < 0)
        object.__setattr__(self, "direction", direction)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: float) -> float:
        return _poly.horner(self.coeffs, t)

    @property
    def left_value(self) -> float:
        return _poly.horner(self.coeffs, self.left)

    @property
    def right_value(self) -> float:
        return _poly.horner(self.coeffs, self.right)


def _padded(rows: Sequence[Sequence[float]]) -> np.ndarray:
    width = max(len(r) for r in rows)
    out = np.zeros((len(rows), width))
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return out


def _horner_rows(mat: np.ndarray, idx: np.ndarray, t: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(t, dtype=float)
    for k in range(mat.shape[1] - 1, -1, -1):
        acc = acc * t + mat[idx, k]
    return acc


@dataclass(frozen=True)
class PiecewisePoly:
    """Breakpoint-delimited polynomials on an interval.

    Point evaluation is right-continuous at interior breakpoints; integrals
    are exact through per-piece antiderivatives.
    """

    interval: Interval
    breaks: tuple[float, ...]
    coeffs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.breaks) != len(self.coeffs) + 1 or not self.coeffs:
            raise ConstructionError("need len(breaks) == len(coeffs) + 1 >= 2")
        if self.breaks[0] != self.interval.a or self.breaks[-1] != self.interval.b:
            raise ConstructionError("breaks must span the interval")
        if any(u >= w for u, w in zip(self.breaks[:-1], self.breaks[1:])):
            raise ConstructionError("breaks must be strictly increasing")

    @cached_property
    def _anti(self) -> tuple[tuple[tuple[float, ...], ...], tuple[float, ...]]:
        antis = tuple(_poly.antideriv(c) for c in self.coeffs)
        cum = [0.0]
        for i, an in enumerate(antis):
            cum.append(cum[-1] + _poly.horner(an, self.breaks[i + 1]) - _poly.horner(an, self.breaks[i]))
        return antis, tuple(cum)

    def _index(self, t: float) -> int:
        i = bisect.bisect_right(self.breaks, t) - 1
        return min(max(i, 0), len(self.coeffs) - 1)

    def __call__(self, t: float) -> float:
        if not self.interval.contains(t):
            raise DomainError(f"t={t} outside [{self.interval.a}, {self.interval.b}]")
        return _poly.horner(self.coeffs[self._index(t)], t)

    def left_limit(self, t: float) -> float:
        i = bisect.bisect_left(self.breaks, t) - 1
        i = min(max(i, 0), len(self.coeffs) - 1)
        return _poly.horner(self.coeffs[i], t)

    def eval_many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        idx = np.clip(np.searchsorted(self.breaks, ts, side="right") - 1, 0, len(self.coeffs) - 1)
        return _horner_rows(_padded(self.coeffs), idx, ts)

    def primitive(self, t: float) -> float:
        """Integral from the left end of the interval to ``t``."""
        antis, cum = self._anti
        i = self._index(t)
        return cum[i] + _poly.horner(antis[i], t) - _poly.horner(antis[i], self.breaks[i])

    def integral(self, c: float, d: float) -> float:
        if c > d:
            raise ArgumentError(f"integral needs c <= d, got c={c}, d={d}")
        return self.primitive(d) - self.primitive(c)

    @property
    def jumps(self) -> list[tuple[float, float]]:
        out = []
        for i in range(1, len(self.coeffs)):
            t = self.breaks[i]
            h = _poly.horner(self.coeffs[i], t) - _poly.horner(self.coeffs[i - 1], t)
            if h != 0.0:
                out.append((t, h))
        return out

    def pieces(self) -> Iterable[tuple[float, float, tuple[float, ...]]]:
        for i, c in enumerate(self.coeffs):
            yield self.breaks[i], self.breaks[i + 1], c


@dataclass(frozen=True)
class PwmFunction:
    """Piecewise-monotone polynomial function on ``interval``."""

    interval: Interval
    segments: tuple[PolySegment, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ConstructionError("a function needs at least one segment")
        if segs[0].left != self.interval.a:
            raise ConstructionError(f"first segment starts at {segs[0].left}, not a={self.interval.a}")
        if segs[-1].right != self.interval.b:
            raise ConstructionError(f"last segment ends at {segs[-1].right}, not b={self.interval.b}")
        for i, (s, nxt) in enumerate(zip(segs[:-1], segs[1:])):
            if s.right != nxt.left:
                raise ConstructionError(f"gap or overlap between segments {i} and {i + 1}")

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for derived tables computed by other modules."""
        return {}

    # -- construction helpers -------------------------------------------
    @classmethod
    def from_pieces(cls, interval: Interval, pieces: Sequence[tuple[float, Sequence[float]]]) -> PwmFunction:
        """Build from ``(right, coeffs)`` pairs; each piece starts where the previous ended."""
        segs = []
        left = interval.a
        for right, coeffs in pieces:
            segs.append(PolySegment(left, float(right), tuple(coeffs)))
            left = float(right)
        return cls(interval, tuple(segs))

    # -- cached tables ----------------------------------------------------
    @cached_property
    def _table(self):
        segs = self.segments
        lefts = [s.left for s in segs]
        breaks = tuple(lefts + [segs[-1].right])
        lvals = [s.left_value for s in segs]
        rvals = [s.right_value for s in segs]
        jumps = [0.0] + [lvals[i] - rvals[i - 1] for i in range(1, len(segs))]
        # V at each segment's left end, jump there included
        vleft = [0.0]
        for i in range(1, len(segs)):
            vleft.append(vleft[-1] + abs(rvals[i - 1] - lvals[i - 1]) + abs(jumps[i]))
        total = vleft[-1] + abs(rvals[-1] - lvals[-1])
        antis = [_poly.antideriv(s.coeffs) for s in segs]
        icum = [0.0]
        for s, an in zip(segs, antis):
            icum.append(icum[-1] + _poly.horner(an, s.right) - _poly.horner(an, s.left))
        return {
            "breaks": breaks,
            "lvals": lvals,
            "jumps": jumps,
            "vleft": vleft,
            "total": total,
            "antis": antis,
            "icum": icum,
            "coef_matrix": _padded([s.coeffs for s in segs]),
        }

    def _index(self, t: float) -> int:
        i = bisect.bisect_right(self._table["breaks"], t) - 1
        return min(max(i, 0), len(self.segments) - 1)

    def _check_domain(self, t: float) -> None:
        if not self.interval.contains(t):
            raise DomainError(f"t={t} outside [{self.interval.a}, {self.interval.b}]")

    # -- evaluation -------------------------------------------------------
    def __call__(self, t: float) -> float:
        self._check_domain(t)
        return self.segments[self._index(t)](t)

    def left_limit(self, t: float) -> float:
        """Value approached from the left (``f(a)`` at ``t = a``)."""
        self._check_domain(t)
        i = bisect.bisect_left(self._table["breaks"], t) - 1
        return self.segments[min(max(i, 0), len(self.segments) - 1)](t)

    def eval_many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if ts.size and (ts.min() < self.interval.a or ts.max() > self.interval.b):
            raise DomainError("evaluation points outside the interval")
        tab = self._table
        idx = np.clip(np.searchsorted(tab["breaks"], ts, side="right") - 1, 0, len(self.segments) - 1)
        return _horner_rows(tab["coef_matrix"], idx, ts)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior segment joins."""
        return self._table["breaks"][1:-1]

    @property
    def jumps(self) -> list[tuple[float, float]]:
        tab = self._table
        return [(tab["breaks"][i], h) for i, h in enumerate(tab["jumps"]) if i > 0 and h != 0.0]

    @property
    def max_abs(self) -> float:
        """Sup of |f| over [a, b], left limits included."""
        vals = []
        for s in self.segments:
            vals += [abs(s.left_value), abs(s.right_value)]
        return max(vals)

    @cached_property
    def rounding_floor(self) -> float:
        """Absolute rounding level of values derived from the coefficients.

        Coefficients are stored in absolute ``t``, so evaluating a segment
        costs about ``eps * sum |c_i| |t|^i``; summed over segments this bounds
        the noise in variations and integrals of the profile.
        """
        total = 0.0
        for s in self.segments:
            r = max(abs(s.left), abs(s.right))
            total += sum(abs(c) * r**i for i, c in enumerate(s.coeffs))
        return 64 * np.finfo(float).eps * total

    # -- variation --------------------------------------------------------
    def cumulative_value(self, t: float) -> float:
        """V(t): total variation of f over [a, t]."""
        self._check_domain(t)
        tab = self._table
        i = self._index(t)
        s = self.segments[i]
        return tab["vleft"][i] + s.direction * (s(t) - tab["lvals"][i])

    @property
    def total_variation(self) -> float:
        return self._table["total"]

    def variation(self, c: float, d: float) -> float:
        if c > d:
            raise ArgumentError(f"variation needs c <= d, got c={c}, d={d}")
        if c == d:
            self._check_domain(c)
            return 0.0
        return max(self.cumulative_value(d) - self.cumulative_value(c), 0.0)

    def cumulative_variation(self) -> PiecewisePoly:
        return self._cumulative

    @cached_property
    def _cumulative(self) -> PiecewisePoly:
        tab = self._table
        rows = []
        for i, s in enumerate(self.segments):
            c = _poly.scale(s.coeffs, float(s.direction))
            c = (c[0] + tab["vleft"][i] - s.direction * tab["lvals"][i],) + c[1:]
            rows.append(_poly.trim(c))
        return PiecewisePoly(self.interval, tab["breaks"], tuple(rows))

    def variation_profile(self) -> PiecewisePoly:
        return self._profile

    @cached_property
    def _profile(self) -> PiecewisePoly:
        iv = self.interval
        a, b, m = iv.a, iv.b, iv.mid
        brk = self._table["breaks"]
        pts = {a, m}
        pts.update(c for c in brk if a < c < m)
        pts.update(iv.reflect(c) for c in brk if m < c < b)
        pts = sorted(pts)
        # merge reflections that only differ by rounding
        eps = 1e-13 * iv.length
        knots = [pts[0]]
        for t in pts[1:]:
            if t - knots[-1] > eps:
                knots.append(t)
        knots[-1] = m
        vcum = self._cumulative
        rows = []
        for t0, t1 in zip(knots[:-1], knots[1:]):
            tm = 0.5 * (t0 + t1)
            inner = vcum.coeffs[vcum._index(tm)]
            outer = vcum.coeffs[vcum._index(iv.reflect(tm))]
            reflected = _poly.compose_affine(outer, a + b, -1.0)
            rows.append(_poly.trim(_poly.add(reflected, _poly.scale(inner, -1.0))))
        return PiecewisePoly(Interval(a, m), tuple(knots), tuple(rows))

    def profile_value(self, x: float) -> float:
        """Exact variation over [x, a+b-x] for x in [a, (a+b)/2]."""
        iv = self.interval
        x = iv.left_half(x)
        return self.variation(x, iv.reflect(x))

    # -- integration ------------------------------------------------------
    def primitive(self, t: float) -> float:
        self._check_domain(t)
        tab = self._table
        i = self._index(t)
        an = tab["antis"][i]
        return tab["icum"][i] + _poly.horner(an, t) - _poly.horner(an, self.segments[i].left)

    def integral(self, c: float | None = None, d: float | None = None) -> float:
        c = self.interval.a if c is None else c
        d = self.interval.b if d is None else d
        if c > d:
            raise ArgumentError(f"integral needs c <= d, got c={c}, d={d}")
        return self.primitive(d) - self.primitive(c)

    def mean(self) -> float:
        return self.integral() / self.interval.length

    # -- symmetry ---------------------------------------------------------
    def is_symmetric(self, tol: float = DEFAULT_ATOL) -> bool:
        if tol < 0:
            raise ArgumentError("tol must be >= 0")
        iv = self.interval
        grid = np.linspace(iv.a, iv.b, 1025)
        extra = np.array(self._table["breaks"])
        ts = np.clip(np.concatenate([grid, extra, iv.a + iv.b - extra]), iv.a, iv.b)
        diff = np.abs(self.eval_many(ts) - self.eval_many(np.clip((iv.a + iv.b) - ts, iv.a, iv.b)))
        return bool(np.all(diff <= tol))

    # -- derived functions -----------------------------------------------
    def restrict(self, c: float, d: float) -> PwmFunction:
        """Restriction to [c, d]; a jump sitting at ``c`` belongs to the right part."""
        if not (self.interval.a <= c < d <= self.interval.b):
            raise ArgumentError(f"restriction needs a <= c < d <= b, got [{c}, {d}]")
        segs = []
        for s in self.segments:
            if s.right <= c or s.left >= d:
                continue
            segs.append(PolySegment(max(s.left, c), min(s.right, d), s.coeffs, check=False))
        return PwmFunction(Interval(c, d), tuple(segs))

    def scaled(self, k: float) -> PwmFunction:
        segs = tuple(PolySegment(s.left, s.right, _poly.scale(s.coeffs, k), check=False) for s in self.segments)
        return PwmFunction(self.interval, segs)

    def shifted(self, shift: float) -> PwmFunction:
        """g(t) = f(t - shift) on the translated interval."""
        iv = self.interval.shifted(shift)
        segs = []
        for i, s in enumerate(self.segments):
            left = iv.a if i == 0 else s.left + shift
            right = iv.b if i == len(self.segments) - 1 else s.right + shift
            segs.append(PolySegment(left, right, _poly.compose_affine(s.coeffs, -shift, 1.0), check=False))
        return PwmFunction(iv, tuple(segs))


def constant(value: float, interval: Interval) -> PwmFunction:
    return PwmFunction(interval, (PolySegment(interval.a, interval.b, (float(value),)),))


def polynomial(coeffs: Sequence[float], interval: Interval) -> PwmFunction:
    return PwmFunction(interval, (PolySegment(interval.a, interval.b, tuple(coeffs)),))


def step(at: float, interval: Interval, low: float = 0.0, high: float = 1.0) -> PwmFunction:
    """``low`` on [a, at), ``high`` on [at, b]."""
    if not interval.a < at < interval.b:
        raise ArgumentError(f"step location {at} must be interior")
    return PwmFunction.from_pieces(interval, [(at, (low,)), (interval.b, (high,))])


def box(center: float, width: float, interval: Interval, height: float = 1.0) -> PwmFunction:
    """``height`` on [center - width/2, center + width/2), zero elsewhere."""
    lo, hi = center - 0.5 * width, center + 0.5 * width
    if not interval.a < lo < hi < interval.b:
        raise ArgumentError("box must sit strictly inside the interval")
    return PwmFunction.from_pieces(interval, [(lo, (0.0,)), (hi, (height,)), (interval.b, (0.0,))])


def evaluate(f: PwmFunction, t: float) -> float:
    return f(t)


def variation(f: PwmFunction, c: float, d: float) -> float:
    return f.variation(c, d)


def cumulative_variation(f: PwmFunction) -> PiecewisePoly:
    return f.cumulative_variation()


def variation_profile(f: PwmFunction) -> PiecewisePoly:
    return f.variation_profile()


def integral(f: PwmFunction, c: float, d: float) -> float:
    return f.integral(c, d)


def is_symmetric(f: PwmFunction, tol: float = DEFAULT_ATOL) -> bool:
    return f.is_symmetric(tol)
