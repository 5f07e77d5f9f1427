"""Error bounds for the companion rule ``(f(x) + f(a+b-x)) / 2``.

For ``x`` in ``[a, (a+b)/2]`` the deviation of the companion rule from the
integral mean is bounded by a chain of increasingly coarse quantities::

    lhs <= q_bound <= coarse_bound <= outer_bound
    q_bound <= q_holder_bound <= coarse_holder_bound <= outer_bound

All members are evaluated in closed form from the variation profile
``v(t)`` (variation of ``f`` over ``[t, a+b-t]``) and its integrals.

The Hölder member uses the weight ``((a+b)/2 - t)**(p-1)`` on
``(x, (a+b)/2]``.  A weight frozen at ``((a+b)/2 - x)**(p-1)`` does not
reproduce ``R(x) = int |K(x,t)|^p dV(t)``; it is available through
``holder_remainder(..., kernel="printed")`` for comparison only.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Literal

from . import _poly
from .core import Interval, PwmFunction
from .errors import ConsistencyError, DomainError, PreconditionError

CHAIN_RTOL = 1e-9
SPECIAL_POINTS = ("trapezoid_type", "trapezoid", "midpoint", "symmetric_endpoint")


@dataclass(frozen=True)
class HolderExponent:
    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not p > 1.0 or not math.isfinite(p):
            raise DomainError(f"Hölder exponent needs p > 1, got {self.p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", p / (p - 1.0))


def _holder(h: HolderExponent | float) -> HolderExponent:
    return h if isinstance(h, HolderExponent) else HolderExponent(h)


def _check_half(x: float, iv: Interval) -> float:
    return iv.left_half(x)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------
def kernel_K(x: float, t: float, iv: Interval) -> float:
    """Peano kernel of the companion rule; branches closed on the right."""
    x = _check_half(x, iv)
    if not iv.contains(t):
        raise DomainError(f"t={t} outside [{iv.a}, {iv.b}]")
    if t <= x:
        return t - iv.a
    if t <= iv.reflect(x):
        return t - iv.mid
    return t - iv.b


def r_p_kernel(x: float, t: float, p: float, iv: Interval, printed: bool = False) -> float:
    """Hölder weight on [a, (a+b)/2]: ``(t-a)^(p-1)`` up to x, ``((a+b)/2-t)^(p-1)`` after.

    ``printed=True`` freezes the second branch at ``((a+b)/2 - x)^(p-1)``.
    """
    x = _check_half(x, iv)
    if not p > 1.0:
        raise DomainError(f"p must exceed 1, got {p}")
    if not iv.a <= t <= iv.mid:
        raise DomainError(f"t={t} outside [{iv.a}, {iv.mid}]")
    if t <= x:
        return (t - iv.a) ** (p - 1.0)
    return (iv.mid - (x if printed else t)) ** (p - 1.0)


# ---------------------------------------------------------------------------
# profile integrals
# ---------------------------------------------------------------------------
class _PowerTable:
    """Exact integrals of ``(t-a)^(p-1) v(t)`` and ``(m-t)^(p-1) v(t)`` over [a, m].

    Each profile piece is re-expanded around ``a`` (resp. ``m``), which makes
    the integrand a finite sum of real powers; this holds for any real p.
    """

    def __init__(self, f: PwmFunction, p: float):
        prof = f.variation_profile()
        a, m = f.interval.a, f.interval.mid
        self.p = p
        self.a, self.m = a, m
        self.breaks = prof.breaks
        self.from_a = [_poly.compose_affine(c, a, 1.0) for c in prof.coeffs]
        self.from_m = [_poly.compose_affine(c, m, -1.0) for c in prof.coeffs]
        n = len(prof.coeffs)
        self.cum_a = [0.0]
        for i in range(n):
            self.cum_a.append(self.cum_a[-1] + self._part_a(i, self.breaks[i + 1]))
        self.tail_m = [0.0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.tail_m[i] = self.tail_m[i + 1] + self._part_m(i, self.breaks[i])

    def _part_a(self, i: int, y: float) -> float:
        """Integral over [breaks[i], y] of (t-a)^(p-1) v."""
        p = self.p
        u1, u0 = y - self.a, self.breaks[i] - self.a
        return sum(c * (u1 ** (p + k) - u0 ** (p + k)) / (p + k) for k, c in enumerate(self.from_a[i]))

    def _part_m(self, i: int, y: float) -> float:
        """Integral over [y, breaks[i+1]] of (m-t)^(p-1) v."""
        p = self.p
        w1, w0 = self.m - y, max(self.m - self.breaks[i + 1], 0.0)
        return sum(c * (w1 ** (p + k) - w0 ** (p + k)) / (p + k) for k, c in enumerate(self.from_m[i]))

    def _index(self, x: float) -> int:
        import bisect

        i = bisect.bisect_right(self.breaks, x) - 1
        return min(max(i, 0), len(self.from_a) - 1)

    def left(self, x: float) -> float:
        i = self._index(x)
        return self.cum_a[i] + self._part_a(i, x)

    def right(self, x: float) -> float:
        i = self._index(x)
        return self._part_m(i, x) + self.tail_m[i + 1]


def _power_table(f: PwmFunction, p: float) -> _PowerTable:
    key = ("power", p)
    tab = f.memo.get(key)
    if tab is None:
        tab = f.memo[key] = _PowerTable(f, p)
    return tab


def profile_integral(f: PwmFunction, c: float, d: float) -> float:
    """Integral of the variation profile over [c, d] within [a, (a+b)/2]."""
    return f.variation_profile().integral(c, d)


# ---------------------------------------------------------------------------
# chain members
# ---------------------------------------------------------------------------
def companion_rule(f: PwmFunction, x: float) -> float:
    x = _check_half(x, f.interval)
    return 0.5 * (f(x) + f(f.interval.reflect(x)))


def companion_deviation(f: PwmFunction, x: float) -> float:
    """|companion rule - integral mean|, the quantity every bound controls."""
    return abs(companion_rule(f, x) - f.mean())


def q_bound(f: PwmFunction, x: float) -> float:
    iv = f.interval
    x = _check_half(x, iv)
    prof = f.variation_profile()
    vx = f.profile_value(x)
    cx = prof.primitive(x)
    cm = prof.primitive(iv.mid)
    return (2.0 * (iv.quarter - x) * vx + 2.0 * cx - cm) / iv.length


def holder_remainder(
    f: PwmFunction, x: float, p: float, kernel: Literal["corrected", "printed"] = "corrected"
) -> float:
    """The braced quantity of the Hölder bound; equals int |K(x,t)|^p dV(t) when corrected."""
    iv = f.interval
    x = _check_half(x, iv)
    if not p > 1.0:
        raise DomainError(f"p must exceed 1, got {p}")
    vx = f.profile_value(x)
    head = ((iv.mid - x) ** p - (x - iv.a) ** p) * vx
    tab = _power_table(f, p)
    if kernel == "corrected":
        tail = tab.right(x)
    elif kernel == "printed":
        prof = f.variation_profile()
        tail = (iv.mid - x) ** (p - 1.0) * prof.integral(x, iv.mid)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    return head + p * (tab.left(x) - tail)


def _remainder_scale(f: PwmFunction, p: float) -> float:
    return (0.5 * f.interval.length) ** p * f.total_variation


def _remainder_floor(f: PwmFunction, p: float) -> float:
    # rounding in the profile is set by the coefficients, not by the variation
    return (0.5 * f.interval.length) ** p * f.rounding_floor


def q_holder_bound(f: PwmFunction, x: float, h: HolderExponent | float) -> float:
    h = _holder(h)
    total = f.total_variation
    r = holder_remainder(f, x, h.p)
    scale = _remainder_scale(f, h.p)
    if r < -CHAIN_RTOL * scale - _remainder_floor(f, h.p):
        raise ConsistencyError(f"negative Hölder remainder {r} at x={x}, p={h.p}")
    if total == 0.0:
        return 0.0
    return total ** (1.0 / h.q) * max(r, 0.0) ** (1.0 / h.p) / f.interval.length


def _three_variations(f: PwmFunction, x: float) -> tuple[float, float, float]:
    iv = f.interval
    y = iv.reflect(x)
    vx = f.cumulative_value(x)
    vy = f.cumulative_value(y)
    return vx, max(vy - vx, 0.0), max(f.total_variation - vy, 0.0)


def coarse_bound(f: PwmFunction, x: float) -> float:
    iv = f.interval
    x = _check_half(x, iv)
    left, middle, right = _three_variations(f, x)
    return ((x - iv.a) * left + (iv.mid - x) * middle + (x - iv.a) * right) / iv.length


def coarse_holder_bound(f: PwmFunction, x: float, h: HolderExponent | float) -> float:
    h = _holder(h)
    iv = f.interval
    x = _check_half(x, iv)
    total = f.total_variation
    if total == 0.0:
        return 0.0
    left, middle, right = _three_variations(f, x)
    d = (x - iv.a) ** h.p
    braced = d * left + (iv.mid - x) ** h.p * middle + d * right
    return total ** (1.0 / h.q) * braced ** (1.0 / h.p) / iv.length


def outer_bound(x: float, total_var: float, iv: Interval) -> float:
    return (0.25 + abs(x - iv.quarter) / iv.length) * total_var


def ostrowski_bv_bound(f: PwmFunction, x: float) -> float:
    iv = f.interval
    if not iv.contains(x):
        raise DomainError(f"x={x} outside [{iv.a}, {iv.b}]")
    return (0.5 + abs(x - iv.mid) / iv.length) * f.total_variation


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------
_CHAIN = (
    ("lhs", "q_bound"),
    ("q_bound", "coarse"),
    ("coarse", "outer"),
    ("q_bound", "q_holder"),
    ("q_holder", "coarse_holder"),
    ("coarse_holder", "outer"),
    ("ostrowski_lhs", "ostrowski_bv"),
)


@dataclass
class BoundReport:
    """Every member of the bound chain at one evaluation point."""

    x: float
    lhs: float
    q_bound: float
    coarse: float
    outer: float
    ostrowski_lhs: float
    ostrowski_bv: float
    p: float | None = None
    q_holder: float | None = None
    coarse_holder: float | None = None
    which: str | None = None

    def slack(self) -> float:
        return CHAIN_RTOL * (1.0 + self.outer)

    def violations(self, slack: float | None = None) -> list[tuple[str, str, float, float]]:
        """Chain comparisons ``lo <= hi`` that fail by more than ``slack``."""
        slack = self.slack() if slack is None else slack
        out = []
        for lo, hi in _CHAIN:
            u, w = getattr(self, lo), getattr(self, hi)
            if u is None or w is None:
                continue
            if u > w + slack:
                out.append((lo, hi, u, w))
        for name in ("lhs", "q_bound", "coarse", "outer", "ostrowski_bv", "q_holder", "coarse_holder"):
            val = getattr(self, name)
            if val is not None and val < -slack:
                out.append((name, "zero", val, 0.0))
        return out

    @property
    def ok(self) -> bool:
        return not self.violations()

    def to_dict(self) -> dict:
        return asdict(self)


def chain_report(f: PwmFunction, x: float, h: HolderExponent | float | None = None) -> BoundReport:
    iv = f.interval
    x = _check_half(x, iv)
    mean = f.mean()
    report = BoundReport(
        x=x,
        lhs=abs(companion_rule(f, x) - mean),
        q_bound=q_bound(f, x),
        coarse=coarse_bound(f, x),
        outer=outer_bound(x, f.total_variation, iv),
        ostrowski_lhs=abs(f(x) - mean),
        ostrowski_bv=ostrowski_bv_bound(f, x),
    )
    if h is not None:
        h = _holder(h)
        report.p = h.p
        report.q_holder = q_holder_bound(f, x, h)
        report.coarse_holder = coarse_holder_bound(f, x, h)
    return report


def _special_point(which: str, iv: Interval) -> float:
    if which == "trapezoid_type":
        return iv.quarter
    if which in ("trapezoid", "symmetric_endpoint"):
        return iv.a
    if which == "midpoint":
        return iv.mid
    raise ValueError(f"unknown special case {which!r}; choose from {SPECIAL_POINTS}")


def _special_closed_forms(f: PwmFunction, which: str, p: float | None) -> tuple[float, float | None]:
    """The special-case bounds written out directly (refined, Hölder)."""
    iv = f.interval
    prof = f.variation_profile()
    total = f.total_variation
    length = iv.length
    whole = prof.integral(iv.a, iv.mid)
    if which == "midpoint":
        refined = whole / length
    elif which == "trapezoid_type":
        refined = (2.0 * prof.primitive(iv.quarter) - whole) / length
    else:
        refined = 0.5 * total - whole / length
    if p is None:
        return refined, None
    tab = _power_table(f, p)
    if which == "midpoint":
        braced = p * tab.left(iv.mid)
    elif which == "trapezoid_type":
        x = iv.quarter
        braced = p * (tab.left(x) - tab.right(x))
    else:
        braced = (0.5 * length) ** p * total - p * tab.right(iv.a)
    if total == 0.0:
        return refined, 0.0
    q = p / (p - 1.0)
    return refined, total ** (1.0 / q) * max(braced, 0.0) ** (1.0 / p) / length


def special_case_bounds(
    f: PwmFunction, which: str, h: HolderExponent | float | None = None
) -> BoundReport:
    """Bound chain at the trapezoid-type, trapezoid, midpoint or symmetric-endpoint point."""
    iv = f.interval
    x = _special_point(which, iv)
    if which == "symmetric_endpoint" and not f.is_symmetric(1e-9 * (1.0 + f.max_abs)):
        raise PreconditionError("symmetric_endpoint needs f(a+b-t) = f(t)")
    report = chain_report(f, x, h)
    report.which = which
    if which == "symmetric_endpoint":
        report.lhs = abs(f(iv.a) - f.mean())
    refined, holder = _special_closed_forms(f, which, report.p)
    scale = 1.0 + report.outer
    if abs(refined - report.q_bound) > CHAIN_RTOL * scale:
        raise ConsistencyError(f"{which}: refined bound {report.q_bound} != closed form {refined}")
    if holder is not None and abs(holder - report.q_holder) > CHAIN_RTOL * scale:
        raise ConsistencyError(f"{which}: Hölder bound {report.q_holder} != closed form {holder}")
    return report
