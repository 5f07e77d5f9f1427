"""Small helpers over ascending-order coefficient tuples.

Scalar paths use a plain Horner loop; numpy's polyval overhead dominates
for the degree <= 8 polynomials handled here.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

Coeffs = tuple[float, ...]


def trim(coeffs: Sequence[float]) -> Coeffs:
    out = [float(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0.0:
        out.pop()
    return tuple(out) if out else (0.0,)


def horner(coeffs: Sequence[float], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def horner_array(coeffs: Sequence[float], t: np.ndarray) -> np.ndarray:
    acc = np.full_like(t, coeffs[-1], dtype=float)
    for c in coeffs[-2::-1]:
        acc = acc * t + c
    return acc


def deriv(coeffs: Sequence[float]) -> Coeffs:
    if len(coeffs) <= 1:
        return (0.0,)
    return tuple(k * coeffs[k] for k in range(1, len(coeffs)))


def antideriv(coeffs: Sequence[float]) -> Coeffs:
    """Antiderivative with zero constant term."""
    return (0.0,) + tuple(c / (k + 1) for k, c in enumerate(coeffs))


def mul(p: Sequence[float], q: Sequence[float]) -> Coeffs:
    out = [0.0] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        for j, w in enumerate(q):
            out[i + j] += u * w
    return tuple(out)


def add(p: Sequence[float], q: Sequence[float]) -> Coeffs:
    if len(p) < len(q):
        p, q = q, p
    return tuple(u + (q[k] if k < len(q) else 0.0) for k, u in enumerate(p))


def scale(p: Sequence[float], k: float) -> Coeffs:
    return tuple(k * c for c in p)


def compose_affine(coeffs: Sequence[float], alpha: float, beta: float) -> Coeffs:
    """Coefficients of t -> p(alpha + beta * t)."""
    out = [0.0]
    for c in reversed(coeffs):
        # out <- out * (alpha + beta t) + c
        nxt = [alpha * v for v in out] + [0.0]
        for k, v in enumerate(out):
            nxt[k + 1] += beta * v
        nxt[0] += c
        out = nxt
    return tuple(out[: len(coeffs)]) if coeffs else (0.0,)


def power_of_linear(alpha: float, beta: float, n: int) -> Coeffs:
    """Coefficients of (alpha + beta * t) ** n for integer n >= 0."""
    return tuple(P.polypow([alpha, beta], n).tolist())


def integrate(coeffs: Sequence[float], lo: float, hi: float) -> float:
    anti = antideriv(coeffs)
    return horner(anti, hi) - horner(anti, lo)


def real_roots_in(coeffs: Sequence[float], lo: float, hi: float) -> list[float]:
    """Real roots strictly inside (lo, hi), sorted."""
    c = trim(coeffs)
    if len(c) <= 1:
        return []
    if len(c) == 2:
        roots = [-c[0] / c[1]]
    elif len(c) == 3:
        a2, a1, a0 = c[2], c[1], c[0]
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            roots = []
        else:
            sq = math.sqrt(disc)
            # stable quadratic formula
            qv = -0.5 * (a1 + math.copysign(sq, a1))
            roots = [qv / a2] if qv == 0.0 else [qv / a2, a0 / qv]
    else:
        r = P.polyroots(c)
        roots = [z.real for z in r if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real))]
    span = hi - lo
    eps = 1e-14 * max(span, abs(lo), abs(hi))
    return sorted(x for x in roots if lo + eps < x < hi - eps)
