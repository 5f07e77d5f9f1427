"""Verification harness: random corpora, Stieltjes oracles and chain checks.

The oracles here never touch the variation profile. They integrate against
the Lebesgue-Stieltjes measure of ``V(t)`` directly: ``|f'(t)| dt`` on each
segment plus an atom ``|jump|`` at every jump of ``f``.  Agreement between
these and the closed forms in :mod:`companion_bv.bounds` is what the
harness certifies.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import roots_jacobi

from . import _poly, bounds
from .bounds import HolderExponent, _holder
from .core import Interval, PolySegment, PwmFunction, box
from .errors import ArgumentError, ChainViolationError, ConstructionError, DomainError
from .prob import CdfModel, check_prob_chain

CHAIN_RTOL = bounds.CHAIN_RTOL
MATCH_RTOL = 1e-9


# ---------------------------------------------------------------------------
# piecewise weights
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class PiecewiseWeight:
    """Piecewise polynomial ``u`` whose pieces are closed on the right.

    The first piece is ``[breaks[0], breaks[1]]``, later pieces are
    ``(breaks[i], breaks[i+1]]``; this is the convention of the companion
    kernel ``K(x, .)``.
    """

    breaks: tuple[float, ...]
    coeffs: tuple[tuple[float, ...], ...]

    @classmethod
    def kernel(cls, x: float, iv: Interval) -> PiecewiseWeight:
        x = bounds._check_half(x, iv)
        a, b, m = iv.a, iv.b, iv.mid
        y = iv.reflect(x)
        knots = [a, x, y, b]
        polys = [(-a, 1.0), (-m, 1.0), (-b, 1.0)]
        keep_b, keep_c = [a], []
        for (lo, hi), c in zip(zip(knots[:-1], knots[1:]), polys):
            if hi > lo:
                keep_b.append(hi)
                keep_c.append(c)
        return cls(tuple(keep_b), tuple(keep_c))

    @classmethod
    def polynomial(cls, coeffs: Sequence[float], iv: Interval) -> PiecewiseWeight:
        return cls((iv.a, iv.b), (_poly.trim(coeffs),))

    @classmethod
    def constant(cls, value: float, iv: Interval) -> PiecewiseWeight:
        return cls((iv.a, iv.b), ((float(value),),))

    def _index(self, t: float) -> int:
        i = bisect.bisect_left(self.breaks, t) - 1
        return min(max(i, 0), len(self.coeffs) - 1)

    def __call__(self, t: float) -> float:
        return _poly.horner(self.coeffs[self._index(t)], t)

    def eval_many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        idx = np.clip(np.searchsorted(self.breaks, ts, side="left") - 1, 0, len(self.coeffs) - 1)
        out = np.empty_like(ts)
        for i, c in enumerate(self.coeffs):
            sel = idx == i
            out[sel] = _poly.horner_array(c, ts[sel])
        return out

    def _extreme(self, coeffs_of, crit_of) -> float:
        best = 0.0
        for lo, hi, c in zip(self.breaks[:-1], self.breaks[1:], self.coeffs):
            g = coeffs_of(c)
            pts = [lo, hi, *_poly.real_roots_in(crit_of(c), lo, hi)]
            best = max(best, max(abs(_poly.horner(g, t)) for t in pts))
        return best

    def sup_abs(self) -> float:
        """Sup of |u| over the closures of the pieces."""
        return self._extreme(lambda c: c, _poly.deriv)

    def lipschitz(self) -> float:
        """Largest |u'| inside any piece."""
        return self._extreme(_poly.deriv, lambda c: _poly.deriv(_poly.deriv(c)))


def kernel_weight(x: float, iv: Interval) -> PiecewiseWeight:
    return PiecewiseWeight.kernel(x, iv)


# ---------------------------------------------------------------------------
# Stieltjes oracles
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class StieltjesSum:
    value: float
    error_bound: float
    mesh: float


def stieltjes_sum(u: PiecewiseWeight, f: PwmFunction, n: int) -> StieltjesSum:
    """Midpoint-tagged Riemann-Stieltjes sum of ``u df`` on a refined uniform partition.

    The partition contains every breakpoint of ``u`` and ``f``, so each cell
    sees one polynomial piece of each; the sum is then within
    ``Lip(u) * mesh * total_variation(f)`` of the integral.
    """
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    iv = f.interval
    pts = np.union1d(np.linspace(iv.a, iv.b, n + 1), np.array([*f.breakpoints, *u.breaks]))
    pts = pts[(pts >= iv.a) & (pts <= iv.b)]
    fv = f.eval_many(pts)
    tags = 0.5 * (pts[:-1] + pts[1:])
    value = float(np.dot(u.eval_many(tags), np.diff(fv)))
    mesh = float(np.max(np.diff(pts)))
    return StieltjesSum(value, u.lipschitz() * mesh * f.total_variation, mesh)


def _cells(w: PiecewiseWeight, f: PwmFunction, split_roots: bool) -> list[float]:
    iv = f.interval
    pts = {iv.a, iv.b, *f.breakpoints}
    pts.update(t for t in w.breaks if iv.a < t < iv.b)
    if split_roots:
        for lo, hi, c in zip(w.breaks[:-1], w.breaks[1:], w.coeffs):
            pts.update(_poly.real_roots_in(c, max(lo, iv.a), min(hi, iv.b)))
    return sorted(pts)


@lru_cache(maxsize=None)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return leggauss(n)


@lru_cache(maxsize=None)
def _jacobi(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    return roots_jacobi(n, alpha, beta)


def _gauss(func, lo: float, hi: float, n: int) -> float:
    u, wts = _legendre(n)
    half = 0.5 * (hi - lo)
    return half * float(np.dot(wts, func(lo + half * (u + 1.0))))


def _root_weighted(g: tuple, root: float, power: float, lo: float, hi: float, n: int) -> float:
    """Exact integral over [lo, hi] of |t - root|^power * g(t), root outside (lo, hi)."""

    def from_root(end: float) -> float:
        # integral between root and end; the weight vanishes at root
        if end == root:
            return 0.0
        half = 0.5 * (end - root)
        u, wts = _jacobi(n, 0.0, power)  # weight (1 + u)^power, u = -1 at the root
        t = root + half * (u + 1.0)
        return half * abs(half) ** power * float(np.dot(wts, _poly.horner_array(g, t)))

    return from_root(hi) - from_root(lo)


def _linear_power_integral(w: tuple, power: float, g: tuple, lo: float, hi: float) -> tuple[float, float]:
    """Integral over [lo, hi] of |w|^power * g for linear w of constant sign on the cell."""
    alpha = w[0]
    beta = w[1] if len(w) > 1 else 0.0
    n = len(g) // 2 + 2
    if beta == 0.0:
        return abs(alpha) ** power * _gauss(lambda t: _poly.horner_array(g, t), lo, hi, n), 0.0
    root = -alpha / beta
    dist = min(abs(lo - root), abs(hi - root))
    if dist <= hi - lo:
        return abs(beta) ** power * _root_weighted(g, root, power, lo, hi, n), 0.0
    # far from the root the integrand is analytic on a wide ellipse
    func = lambda t: np.abs(alpha + beta * t) ** power * _poly.horner_array(g, t)
    coarse = _gauss(func, lo, hi, 24)
    fine = _gauss(func, lo, hi, 40)
    return fine, abs(fine - coarse)


def weighted_variation_integral(
    w: PiecewiseWeight,
    f: PwmFunction,
    power: float | None = None,
    return_error: bool = False,
):
    """Lebesgue-Stieltjes integral of ``w`` (or ``|w|**power``) against dV.

    Polynomial integrands (``power`` omitted or integral) use Gauss-Legendre
    rules of sufficient order to be exact; linear ``w`` with real powers uses
    Gauss-Jacobi rules anchored at the root of ``w``. Anything else falls back
    to adaptive Gauss-Kronrod, whose accumulated error estimate is returned
    with ``return_error=True``.
    """
    use_abs = power is not None
    pw = 1.0 if power is None else float(power)
    integer = pw == int(pw)
    total = 0.0
    err = 0.0
    pts = _cells(w, f, split_roots=use_abs)
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi <= lo:
            continue
        tm = 0.5 * (lo + hi)
        seg = f.segments[f._index(tm)]
        if seg.direction == 0:
            continue
        wc = w.coeffs[w._index(tm)]
        g = _poly.scale(_poly.deriv(seg.coeffs), float(seg.direction))
        if not use_abs:
            n = (len(wc) + len(g)) // 2 + 1
            u, _ = _legendre(n)
            vals = _poly.horner_array(wc, lo + 0.5 * (hi - lo) * (u + 1.0))
            if vals.min() < -1e-12 * max(1.0, np.abs(vals).max()):
                raise ArgumentError(f"weight is negative on [{lo}, {hi}]")
            total += _gauss(lambda t: _poly.horner_array(wc, t) * _poly.horner_array(g, t), lo, hi, n)
        elif integer:
            k = int(pw)
            n = ((len(wc) - 1) * k + len(g)) // 2 + 1
            total += _gauss(lambda t: np.abs(_poly.horner_array(wc, t)) ** k * _poly.horner_array(g, t), lo, hi, n)
        elif len(wc) <= 2:
            val, e = _linear_power_integral(wc, pw, g, lo, hi)
            total += val
            err += e
        else:
            sign = 1.0 if _poly.horner(wc, tm) >= 0 else -1.0
            val, e = integrate.quad(
                lambda t: max(sign * _poly.horner(wc, t), 0.0) ** pw * _poly.horner(g, t),
                lo,
                hi,
                epsabs=1e-15,
                epsrel=1e-13,
                limit=200,
            )
            total += val
            err += e
    for loc, h in f.jumps:
        wv = w(loc)
        if not use_abs and wv < 0:
            raise ArgumentError(f"weight is negative at jump t={loc}")
        total += (abs(wv) ** pw if use_abs else wv) * abs(h)
    return (total, err) if return_error else total


# ---------------------------------------------------------------------------
# chain checks
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ChainViolation:
    fn_id: str
    x: float
    p: float | None
    member_pair: str
    lhs: float
    rhs: float
    slack: float

    def row(self) -> list[str]:
        return [
            self.fn_id,
            repr(self.x),
            "" if self.p is None else repr(self.p),
            self.member_pair,
            repr(self.lhs),
            repr(self.rhs),
            repr(self.slack),
        ]

    def sort_key(self):
        return (self.fn_id, self.x, -1.0 if self.p is None else self.p, self.member_pair)


CSV_COLUMNS = ("fn_id", "x", "p", "member_pair", "lhs", "rhs", "slack")


@dataclass
class LemmaReport:
    stieltjes: float
    stieltjes_error: float
    weighted: float
    holder: float
    sup_bound: float
    p: float
    violations: list[ChainViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_lemma_chain(
    u: PiecewiseWeight,
    f: PwmFunction,
    h: HolderExponent | float,
    n: int = 4096,
    fn_id: str = "f",
    x: float = float("nan"),
) -> LemmaReport:
    """|int u df| <= int |u| dV <= W^(1/q) (int |u|^p dV)^(1/p) <= max|u| W."""
    ss = stieltjes_sum(u, f, n)
    weighted = weighted_variation_integral(u, f, power=1.0)
    return _lemma_chain(u, f, _holder(h), ss, weighted, fn_id, x)


def _lemma_chain(u, f, h: HolderExponent, ss: StieltjesSum, weighted: float, fn_id: str, x: float) -> LemmaReport:
    total = f.total_variation
    rp, rp_err = weighted_variation_integral(u, f, power=h.p, return_error=True)
    holder = total ** (1.0 / h.q) * max(rp, 0.0) ** (1.0 / h.p) if total > 0 else 0.0
    sup_bound = u.sup_abs() * total
    base = CHAIN_RTOL * (1.0 + sup_bound)
    # d/dr of W^(1/q) r^(1/p) is (1/p) W^(1/q) r^(1/p - 1); carry the quadrature error through it
    holder_err = 0.0
    if rp_err and rp > 0:
        holder_err = total ** (1.0 / h.q) * rp ** (1.0 / h.p - 1.0) * rp_err / h.p
    report = LemmaReport(abs(ss.value), ss.error_bound, weighted, holder, sup_bound, h.p)
    steps = (
        ("stieltjes<=weighted", abs(ss.value), weighted, base + ss.error_bound),
        ("weighted<=holder", weighted, holder, base + holder_err),
        ("holder<=sup", holder, sup_bound, base + holder_err),
    )
    for name, lo, hi, slack in steps:
        if lo > hi + slack:
            report.violations.append(ChainViolation(fn_id, x, h.p, name, lo, hi, slack))
    return report


@dataclass(frozen=True)
class IdentityReport:
    stieltjes_side: float
    rule_side: float
    slack: float

    @property
    def ok(self) -> bool:
        return abs(self.stieltjes_side - self.rule_side) <= self.slack


def check_kernel_identity(f: PwmFunction, x: float, n: int = 4096) -> IdentityReport:
    """(1/(b-a)) int K(x,t) df(t) against companion rule minus mean."""
    return _identity(f, x, stieltjes_sum(kernel_weight(x, f.interval), f, n))


def _identity(f: PwmFunction, x: float, ss: StieltjesSum) -> IdentityReport:
    iv = f.interval
    rule = bounds.companion_rule(f, x) - f.mean()
    slack = ss.error_bound / iv.length + CHAIN_RTOL * (1.0 + f.total_variation)
    return IdentityReport(ss.value / iv.length, rule, slack)


# ---------------------------------------------------------------------------
# sharpness and kernel adjudication
# ---------------------------------------------------------------------------
PROBE_FAMILIES = ("outer_quarter", "midpoint_half", "trapezoid_type_quarter")


def sharpness_witness(which: str, epsilon: float, iv: Interval = Interval(0.0, 1.0)) -> PwmFunction:
    if not 0 < epsilon < iv.length / 8:
        raise ArgumentError(f"epsilon must lie in (0, {iv.length / 8}), got {epsilon}")
    if which in ("outer_quarter", "trapezoid_type_quarter"):
        lo, hi = iv.quarter, iv.reflect(iv.quarter)
        e = 0.5 * epsilon
        pieces = [(lo - e, (0.0,)), (lo + e, (1.0,)), (hi - e, (0.0,)), (hi + e, (1.0,)), (iv.b, (0.0,))]
        return PwmFunction.from_pieces(iv, pieces)
    if which == "midpoint_half":
        return box(iv.mid, epsilon, iv)
    raise ArgumentError(f"unknown probe family {which!r}; choose from {PROBE_FAMILIES}")


def sharpness_probe(which: str, epsilon: float, iv: Interval = Interval(0.0, 1.0)) -> float:
    """Ratio of the attained deviation to the sharp-constant bound on a box witness."""
    f = sharpness_witness(which, epsilon, iv)
    if which == "outer_quarter":
        x = iv.quarter
        return bounds.companion_deviation(f, x) / bounds.outer_bound(x, f.total_variation, iv)
    if which == "trapezoid_type_quarter":
        x = iv.quarter
        return bounds.companion_deviation(f, x) / (0.25 * f.total_variation)
    x = iv.mid
    return abs(f(x) - f.mean()) / bounds.ostrowski_bv_bound(f, x)


@dataclass(frozen=True)
class DiscrepancyReport:
    x: float
    p: float
    oracle: float
    corrected: float
    printed: float
    degenerate: bool

    def _matches(self, value: float) -> bool:
        return abs(value - self.oracle) <= MATCH_RTOL * abs(self.oracle) + 1e-300 or value == self.oracle

    @property
    def corrected_matches(self) -> bool:
        return self._matches(self.corrected)

    @property
    def printed_matches(self) -> bool:
        return self._matches(self.printed)

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["corrected_matches"] = self.corrected_matches
        doc["printed_matches"] = self.printed_matches
        doc["matching_kernel"] = (
            "both" if self.corrected_matches and self.printed_matches
            else "corrected" if self.corrected_matches
            else "printed" if self.printed_matches
            else "neither"
        )
        return doc


def kernel_discrepancy_report(f: PwmFunction, x: float, p: float) -> DiscrepancyReport:
    """R(x) three ways: Stieltjes oracle, corrected closed form, printed closed form."""
    iv = f.interval
    x = bounds._check_half(x, iv)
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    oracle = weighted_variation_integral(kernel_weight(x, iv), f, power=p)
    corrected = bounds.holder_remainder(f, x, p, "corrected")
    printed = bounds.holder_remainder(f, x, p, "printed")
    vcum = f.cumulative_variation()
    open_var = vcum.left_limit(iv.reflect(x)) - vcum(x) if x < iv.mid else 0.0
    degenerate = x >= iv.mid or open_var <= 1e-14 * max(f.total_variation, 1e-300)
    return DiscrepancyReport(x, float(p), oracle, corrected, printed, degenerate)


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class CorpusConfig:
    seed: int
    count: int
    max_segments: int = 8
    max_degree: int = 3
    jump_probability: float = 0.3
    interval: Interval = Interval(0.0, 1.0)

    def __post_init__(self):
        if self.seed < 0:
            raise ArgumentError("seed must be non-negative")
        if self.count < 1 or self.max_segments < 1:
            raise ArgumentError("count and max_segments must be positive")
        if not 1 <= self.max_degree <= 8:
            raise ArgumentError("max_degree must lie in [1, 8]")
        if not 0.0 <= self.jump_probability <= 1.0:
            raise ArgumentError("jump_probability must lie in [0, 1]")


def _bernstein_primitive(weights: np.ndarray) -> np.ndarray:
    """Power-basis coefficients (in s on [0,1]) of int_0^s sum w_k B_k; normalised to 1 at s=1."""
    n = len(weights) - 1
    acc = np.zeros(1)
    for k, wk in enumerate(weights):
        if wk == 0:
            continue
        term = P.polymul(P.polypow([0.0, 1.0], k), P.polypow([1.0, -1.0], n - k)) * math.comb(n, k) * wk
        acc = P.polyadd(acc, term)
    prim = P.polyint(acc)
    return prim / P.polyval(1.0, prim)


def _breaks(rng: np.random.Generator, cfg: CorpusConfig) -> list[float]:
    iv = cfg.interval
    nseg = int(rng.integers(1, cfg.max_segments + 1))
    # short segments make absolute-variable coefficients ill-conditioned
    min_gap = iv.length / 32
    for _ in range(100):
        if rng.random() < 0.3:
            # dyadic knots line up with the special evaluation points and their reflections
            grid = iv.a + iv.length * np.arange(1, 16) / 16.0
            inner = rng.choice(grid, size=min(nseg - 1, 15), replace=False)
            inner = np.asarray(inner, dtype=float)
        else:
            inner = rng.uniform(iv.a, iv.b, size=nseg - 1)
        knots = sorted({iv.a, iv.b, *inner.tolist()})
        if all(w - u >= min_gap for u, w in zip(knots[:-1], knots[1:])):
            return knots
    return [iv.a, iv.b]


def _segment(rng, left, right, start, degree, direction, amplitude) -> PolySegment:
    if degree == 0 or direction == 0:
        return PolySegment(left, right, (start,))
    weights = rng.uniform(0.0, 1.0, size=degree)
    weights[rng.random(degree) < 0.3] = 0.0
    if not weights.any():
        weights[int(rng.integers(degree))] = 1.0
    g = _bernstein_primitive(weights) * (direction * amplitude)
    g[0] += start
    h = right - left
    return PolySegment(left, right, _poly.compose_affine(g.tolist(), -left / h, 1.0 / h))


def _random_function(rng: np.random.Generator, cfg: CorpusConfig, monotone: bool) -> PwmFunction:
    knots = _breaks(rng, cfg)
    segs = []
    value = float(rng.normal())
    for i, (lo, hi) in enumerate(zip(knots[:-1], knots[1:])):
        if i > 0 and rng.random() < cfg.jump_probability:
            jump = float(rng.normal())
            value += abs(jump) if monotone else jump
        degree = int(rng.integers(0, cfg.max_degree + 1)) if rng.random() < 0.1 else int(rng.integers(1, cfg.max_degree + 1))
        if monotone:
            direction = 0 if rng.random() < 0.1 else 1
        else:
            direction = int(rng.choice([-1, 1])) if rng.random() >= 0.1 else 0
        amplitude = float(rng.uniform(0.05, 2.0))
        for _ in range(20):
            try:
                seg = _segment(rng, lo, hi, value, degree, direction, amplitude)
                break
            except ConstructionError:
                continue
        else:
            seg = PolySegment(lo, hi, (value,))
        segs.append(seg)
        value = seg.right_value
    return PwmFunction(cfg.interval, tuple(segs))


def gen_corpus(cfg: CorpusConfig) -> list[PwmFunction]:
    rng = np.random.default_rng(cfg.seed)
    return [_random_function(rng, cfg, monotone=False) for _ in range(cfg.count)]


def _normalise_cdf(g: PwmFunction) -> PwmFunction | None:
    iv = g.interval
    lo, hi = g(iv.a), g(iv.b)
    span = hi - lo
    if not span > 0:
        return None
    segs = []
    for s in g.segments:
        c = list(s.coeffs)
        c[0] -= lo
        segs.append(PolySegment(s.left, s.right, tuple(v / span for v in c), check=False))
    return PwmFunction(iv, tuple(segs))


def gen_cdf_corpus(cfg: CorpusConfig) -> list[CdfModel]:
    rng = np.random.default_rng(cfg.seed + 0x9E3779B9)
    out: list[CdfModel] = []
    while len(out) < cfg.count:
        F = _normalise_cdf(_random_function(rng, cfg, monotone=True))
        if F is None:
            continue
        out.append(CdfModel(F))
    return out


def symmetrize(f: PwmFunction) -> PwmFunction:
    """Mirror the left half of a continuous ``f`` about the midpoint."""
    iv = f.interval
    m = iv.mid
    left = f.restrict(iv.a, m)
    mirrored = []
    for s in reversed(left.segments):
        mirrored.append(
            PolySegment(iv.reflect(s.right), iv.reflect(s.left), _poly.compose_affine(s.coeffs, iv.a + iv.b, -1.0), check=False)
        )
    mirrored[0] = PolySegment(m, mirrored[0].right, mirrored[0].coeffs, check=False)
    mirrored[-1] = PolySegment(mirrored[-1].left, iv.b, mirrored[-1].coeffs, check=False)
    return PwmFunction(iv, left.segments + tuple(mirrored))


def x_grid(f: PwmFunction, m: int = 65) -> list[float]:
    """m uniform points on [a, (a+b)/2] plus breakpoints folded into that half."""
    iv = f.interval
    h = iv.mid
    pts = {iv.a + (h - iv.a) * k / (m - 1) for k in range(m)} if m > 1 else {iv.a}
    pts.update({iv.a, iv.quarter, h})
    for c in f.breakpoints:
        if c <= h:
            pts.add(c)
        else:
            pts.add(max(iv.reflect(c), iv.a))
    return sorted(pts)


# ---------------------------------------------------------------------------
# corpus verification
# ---------------------------------------------------------------------------
@dataclass
class VerifySummary:
    functions: int = 0
    cdfs: int = 0
    symmetric: int = 0
    checks: int = 0
    identity_checks: int = 0
    lemma_checks: int = 0
    discrepancy_cases: int = 0
    corrected_match: int = 0
    printed_mismatch_nondegenerate: int = 0
    nondegenerate: int = 0
    violations: list[ChainViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _report_violations(fn_id, report, p, out):
    slack = report.slack()
    for lo, hi, u, w in report.violations(slack):
        out.append(ChainViolation(fn_id, report.x, p, f"{lo}<={hi}", u, w, slack))


def check_function(
    f: PwmFunction,
    fn_id: str,
    grid: int = 65,
    p_list: Sequence[float] = (1.5, 2.0, 3.0, 4.0),
    lemma_points: int = 9,
    n_sum: int = 4096,
    summary: VerifySummary | None = None,
    rng: np.random.Generator | None = None,
) -> list[ChainViolation]:
    """Every chain for one function; returns the violations found."""
    summary = summary if summary is not None else VerifySummary()
    iv = f.interval
    out: list[ChainViolation] = []
    holders = [HolderExponent(p) for p in p_list]
    for x in x_grid(f, grid):
        rep = bounds.chain_report(f, x)
        _report_violations(fn_id, rep, None, out)
        summary.checks += 1
        for h in holders:
            rep.p = h.p
            rep.q_holder = bounds.q_holder_bound(f, x, h)
            rep.coarse_holder = bounds.coarse_holder_bound(f, x, h)
            for lo, hi, u, w in rep.violations():
                if "holder" in lo or "holder" in hi:
                    out.append(ChainViolation(fn_id, x, h.p, f"{lo}<={hi}", u, w, rep.slack()))
            summary.checks += 1
    # classical bound over the whole interval
    mean = f.mean()
    total = f.total_variation
    for k in range(grid):
        x = iv.a + iv.length * k / (grid - 1)
        lhs = abs(f(x) - mean)
        rhs = bounds.ostrowski_bv_bound(f, x)
        slack = CHAIN_RTOL * (1.0 + rhs)
        summary.checks += 1
        if lhs > rhs + slack:
            out.append(ChainViolation(fn_id, x, None, "ostrowski_lhs<=ostrowski_bv", lhs, rhs, slack))
    # Stieltjes-side checks at a few points
    for k in range(lemma_points):
        x = iv.a + (iv.mid - iv.a) * k / max(lemma_points - 1, 1)
        u = kernel_weight(x, iv)
        ss = stieltjes_sum(u, f, n_sum)
        ident = _identity(f, x, ss)
        summary.identity_checks += 1
        if not ident.ok:
            out.append(ChainViolation(fn_id, x, None, "kernel_identity", ident.stieltjes_side, ident.rule_side, ident.slack))
        q_oracle = weighted_variation_integral(u, f, power=1.0)
        q_closed = bounds.q_bound(f, x) * iv.length
        slack = CHAIN_RTOL * (1.0 + total * iv.length)
        if abs(q_oracle - q_closed) > slack:
            out.append(ChainViolation(fn_id, x, None, "q_bound==stieltjes", q_closed, q_oracle, slack))
        for h in holders:
            lem = _lemma_chain(u, f, h, ss, q_oracle, fn_id, x)
            out.extend(lem.violations)
            summary.lemma_checks += 1
    if rng is not None:
        u = PiecewiseWeight.polynomial(rng.normal(size=int(rng.integers(1, 5))).tolist(), iv)
        ss = stieltjes_sum(u, f, n_sum)
        weighted = weighted_variation_integral(u, f, power=1.0)
        for h in holders:
            lem = _lemma_chain(u, f, h, ss, weighted, fn_id, float("nan"))
            out.extend(lem.violations)
            summary.lemma_checks += 1
    return out


def check_symmetric(f: PwmFunction, fn_id: str, grid: int = 65) -> list[ChainViolation]:
    """|f(x) - mean| <= Q(x) for symmetric f, plus the endpoint special case."""
    out = []
    mean = f.mean()
    for x in x_grid(f, grid):
        lhs = abs(f(x) - mean)
        q = bounds.q_bound(f, x)
        slack = CHAIN_RTOL * (1.0 + bounds.outer_bound(x, f.total_variation, f.interval))
        if lhs > q + slack:
            out.append(ChainViolation(fn_id, x, None, "symmetric_lhs<=q_bound", lhs, q, slack))
    rep = bounds.special_case_bounds(f, "symmetric_endpoint", 2.0)
    _report_violations(fn_id, rep, 2.0, out)
    return out


def check_cdf(cdf: CdfModel, fn_id: str, grid: int = 65, p_list: Sequence[float] = (1.5, 2.0, 3.0, 4.0)):
    out = []
    checks = 0
    for x in x_grid(cdf.F, grid):
        for p in (None, *p_list):
            checks += 1
            try:
                rep = check_prob_chain(cdf, x, p)
            except ChainViolationError as exc:
                _report_violations(fn_id, exc.report, p, out)
                continue
            t = rep.q_bound
            spread_q = bounds.q_bound(cdf.F, x)
            if t != spread_q:
                out.append(ChainViolation(fn_id, x, p, "t_bound==q_bound", t, spread_q, 0.0))
    return out, checks


def verify_corpus(
    cfg: CorpusConfig,
    cdf_count: int | None = None,
    grid: int = 65,
    p_list: Sequence[float] = (1.5, 2.0, 3.0, 4.0),
    lemma_points: int = 9,
    n_sum: int = 4096,
    discrepancy_p: Sequence[int] = (2, 3, 4),
) -> VerifySummary:
    """Run every chain over a seeded corpus of functions, symmetric functions and CDFs."""
    summary = VerifySummary()
    rng = np.random.default_rng(cfg.seed + 1)
    funcs = gen_corpus(cfg)
    violations: list[ChainViolation] = []
    iv = cfg.interval
    disc_x = [iv.a + (iv.mid - iv.a) * k / 8 for k in range(9)]
    for i, f in enumerate(funcs):
        fn_id = f"fn{i:05d}"
        violations += check_function(f, fn_id, grid, p_list, lemma_points, n_sum, summary, rng)
        for x in disc_x:
            for p in discrepancy_p:
                rep = kernel_discrepancy_report(f, x, p)
                summary.discrepancy_cases += 1
                if rep.corrected_matches:
                    summary.corrected_match += 1
                else:
                    violations.append(ChainViolation(fn_id, x, float(p), "corrected_kernel==oracle", rep.corrected, rep.oracle, MATCH_RTOL * abs(rep.oracle)))
                if not rep.degenerate:
                    summary.nondegenerate += 1
                    summary.printed_mismatch_nondegenerate += not rep.printed_matches
    summary.functions = len(funcs)
    # symmetric members built from the continuous part of the corpus
    sym_cfg = CorpusConfig(cfg.seed + 2, max(1, cfg.count // 10), cfg.max_segments, cfg.max_degree, 0.0, cfg.interval)
    for i, g in enumerate(gen_corpus(sym_cfg)):
        violations += check_symmetric(symmetrize(g), f"sym{i:05d}", grid)
        summary.symmetric += 1
    cdf_cfg = CorpusConfig(cfg.seed, cdf_count if cdf_count is not None else max(1, cfg.count // 5),
                           cfg.max_segments, cfg.max_degree, cfg.jump_probability, cfg.interval)
    for i, cdf in enumerate(gen_cdf_corpus(cdf_cfg)):
        found, checks = check_cdf(cdf, f"cdf{i:05d}", grid, p_list)
        violations += found
        summary.checks += checks
        summary.cdfs += 1
    summary.violations = sorted(violations, key=ChainViolation.sort_key)
    return summary
