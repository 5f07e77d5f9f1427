"""Companion-rule bounds specialised to cumulative distribution functions.

For a CDF ``F`` on ``[a, b]`` the variation over ``[c, d]`` is simply
``F(d) - F(c)`` and the total variation is 1, so the generic bounds collapse
to expressions in ``F`` alone. ``E(X) = b - int_a^b F``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bounds
from .bounds import BoundReport, HolderExponent, _check_half, _holder
from .core import Interval, PwmFunction, polynomial, step
from .errors import ChainViolationError, PreconditionError

ENDPOINT_TOL = 1e-12
# rounding in the coefficients of continuous joins, relative to the unit range
SHAPE_TOL = 1e-9


@dataclass(frozen=True)
class CdfModel:
    F: PwmFunction

    def __post_init__(self):
        F, iv = self.F, self.F.interval
        if abs(F(iv.a)) > ENDPOINT_TOL:
            raise PreconditionError(f"CDF must vanish at a: F(a) = {F(iv.a)}")
        if abs(F(iv.b) - 1.0) > ENDPOINT_TOL:
            raise PreconditionError(f"CDF must reach 1 at b: F(b) = {F(iv.b)}")
        for i, s in enumerate(F.segments):
            if s.direction < 0 and s.left_value - s.right_value > SHAPE_TOL:
                raise PreconditionError(f"CDF decreases on segment {i} [{s.left}, {s.right}]")
        for loc, h in F.jumps:
            if h < -SHAPE_TOL:
                raise PreconditionError(f"CDF has a downward jump of {h} at t={loc}")

    @property
    def interval(self) -> Interval:
        return self.F.interval

    @classmethod
    def uniform(cls, iv: Interval) -> CdfModel:
        return cls(polynomial([-iv.a / iv.length, 1.0 / iv.length], iv))

    @classmethod
    def point_mass(cls, at: float, iv: Interval) -> CdfModel:
        return cls(step(at, iv))


def expectation(cdf: CdfModel) -> float:
    return cdf.interval.b - cdf.F.integral()


def prob_lhs(cdf: CdfModel, x: float) -> float:
    """|(F(x) + F(a+b-x))/2 - (b - E(X))/(b - a)|."""
    iv = cdf.interval
    x = _check_half(x, iv)
    F = cdf.F
    return abs(0.5 * (F(x) + F(iv.reflect(x))) - (iv.b - expectation(cdf)) / iv.length)


def t_bound(cdf: CdfModel, x: float) -> float:
    return bounds.q_bound(cdf.F, x)


def t_middle(cdf: CdfModel, x: float) -> float:
    """Second member of the T chain: uses only F(a+b-x) - F(x)."""
    iv = cdf.interval
    x = _check_half(x, iv)
    F = cdf.F
    spread = F(iv.reflect(x)) - F(x)
    return (2.0 * (iv.quarter - x) * spread + (x - iv.a)) / iv.length


def t_outer(cdf: CdfModel, x: float) -> float:
    iv = cdf.interval
    return 0.25 + abs(x - iv.quarter) / iv.length


def t_holder_bound(cdf: CdfModel, x: float, h: HolderExponent | float) -> float:
    return bounds.q_holder_bound(cdf.F, x, h)


def t_holder_middle(cdf: CdfModel, x: float, h: HolderExponent | float) -> float:
    h = _holder(h)
    iv = cdf.interval
    x = _check_half(x, iv)
    F = cdf.F
    spread = F(iv.reflect(x)) - F(x)
    braced = ((iv.mid - x) ** h.p - (x - iv.a) ** h.p) * spread + (x - iv.a) ** h.p
    return max(braced, 0.0) ** (1.0 / h.p) / iv.length


def check_prob_chain(cdf: CdfModel, x: float, h: HolderExponent | float | None = None) -> BoundReport:
    """Evaluate the CDF chain at ``x``; raise :class:`ChainViolationError` if it breaks."""
    x = _check_half(x, cdf.interval)
    report = BoundReport(
        x=x,
        lhs=prob_lhs(cdf, x),
        q_bound=t_bound(cdf, x),
        coarse=t_middle(cdf, x),
        outer=t_outer(cdf, x),
        ostrowski_lhs=abs(cdf.F(x) - cdf.F.mean()),
        ostrowski_bv=bounds.ostrowski_bv_bound(cdf.F, x),
    )
    if h is not None:
        h = _holder(h)
        report.p = h.p
        report.q_holder = t_holder_bound(cdf, x, h)
        report.coarse_holder = t_holder_middle(cdf, x, h)
    if x == cdf.interval.quarter:
        report.which = "trapezoid_type"
    bad = report.violations()
    if bad:
        lines = ", ".join(f"{lo}={u:.17g} > {hi}={w:.17g}" for lo, hi, u, w in bad)
        raise ChainViolationError(f"CDF chain broken at x={x}: {lines}", report)
    return report
