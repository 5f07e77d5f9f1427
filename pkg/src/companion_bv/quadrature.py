"""Composite and adaptive companion-rule quadrature with certified error bounds.

Each cell ``[a_i, b_i]`` of width ``h_i`` is integrated by
``h_i * (f(x_i) + f(a_i + b_i - x_i)) / 2`` with ``x_i = a_i + lam * h_i``.
The cell error is at most ``h_i * B_i`` where ``B_i`` is either the refined
profile bound or the outer bound of the restriction of ``f`` to the cell,
so the sum of ``h_i * B_i`` encloses the true integral.
"""

from __future__ import annotations

import heapq
from dataclasses import asdict, dataclass
from typing import Literal

from .bounds import companion_rule, outer_bound, q_bound
from .core import PwmFunction
from .errors import ArgumentError

CertLevel = Literal["coarse", "refined"]


@dataclass(frozen=True)
class CellRule:
    """Relative position of the evaluation point inside each cell."""

    lam: float = 0.25

    def __post_init__(self):
        if not 0.0 <= self.lam <= 0.5:
            raise ArgumentError(f"lambda must lie in [0, 1/2], got {self.lam}")


@dataclass(frozen=True)
class Cell:
    left: float
    right: float
    estimate: float
    bound: float

    @property
    def width(self) -> float:
        return self.right - self.left


@dataclass
class QuadratureResult:
    estimate: float
    error_bound: float
    cells: list[Cell]
    cert_level: str
    converged: bool = True
    tol: float | None = None

    @property
    def enclosure(self) -> tuple[float, float]:
        return self.estimate - self.error_bound, self.estimate + self.error_bound

    def contains(self, value: float, slack: float = 0.0) -> bool:
        lo, hi = self.enclosure
        return lo - slack <= value <= hi + slack

    def to_dict(self, with_cells: bool = True) -> dict:
        doc = {
            "estimate": self.estimate,
            "error_bound": self.error_bound,
            "cert_level": self.cert_level,
            "converged": self.converged,
            "tol": self.tol,
            "n_cells": len(self.cells),
        }
        if with_cells:
            doc["cells"] = [asdict(c) for c in self.cells]
        return doc


def _cell(f: PwmFunction, lo: float, hi: float, rule: CellRule, cert: CertLevel) -> tuple[Cell, PwmFunction]:
    part = f.restrict(lo, hi) if (lo, hi) != (f.interval.a, f.interval.b) else f
    h = hi - lo
    x = lo + rule.lam * h
    local = h * companion_rule(part, x)
    if cert == "refined":
        b = q_bound(part, x)
    elif cert == "coarse":
        b = outer_bound(x, part.total_variation, part.interval)
    else:
        raise ArgumentError(f"cert must be 'coarse' or 'refined', got {cert!r}")
    # Q is nonnegative in exact arithmetic; a rounding-level negative value
    # must not shrink the enclosure.
    return Cell(lo, hi, local, h * max(b, 0.0)), part


def _assemble(cells: list[Cell], cert: str, converged: bool = True, tol: float | None = None) -> QuadratureResult:
    cells = sorted(cells, key=lambda c: c.left)
    return QuadratureResult(
        estimate=sum(c.estimate for c in cells),
        error_bound=sum(c.bound for c in cells),
        cells=cells,
        cert_level=cert,
        converged=converged,
        tol=tol,
    )


def composite_integrate(
    f: PwmFunction, n: int, rule: CellRule = CellRule(), cert: CertLevel = "refined"
) -> QuadratureResult:
    if not isinstance(n, int) or n < 1:
        raise ArgumentError(f"need at least one cell, got n={n}")
    iv = f.interval
    edges = [iv.a + iv.length * k / n for k in range(n)] + [iv.b]
    cells = [_cell(f, lo, hi, rule, cert)[0] for lo, hi in zip(edges[:-1], edges[1:])]
    return _assemble(cells, cert)


def adaptive_integrate(
    f: PwmFunction,
    tol: float,
    rule: CellRule = CellRule(),
    cert: CertLevel = "refined",
    max_cells: int = 65536,
) -> QuadratureResult:
    """Bisect the cell with the largest bound until the total bound is within ``tol``.

    Ties go to the leftmost cell. If ``max_cells`` is reached first the
    result is returned with ``converged=False``; the enclosure stays valid.
    """
    if not tol > 0:
        raise ArgumentError(f"tol must be positive, got {tol}")
    if max_cells < 1:
        raise ArgumentError(f"max_cells must be positive, got {max_cells}")
    iv = f.interval
    first, part = _cell(f, iv.a, iv.b, rule, cert)
    heap = [(-first.bound, first.left, first, part)]
    total = first.bound
    while total > tol and len(heap) < max_cells:
        _, _, cell, part = heapq.heappop(heap)
        mid = 0.5 * (cell.left + cell.right)
        if not cell.left < mid < cell.right:
            heapq.heappush(heap, (0.0, cell.left, cell, part))
            break
        total -= cell.bound
        for lo, hi in ((cell.left, mid), (mid, cell.right)):
            child, sub = _cell(part, lo, hi, rule, cert)
            total += child.bound
            heapq.heappush(heap, (-child.bound, child.left, child, sub))
    cells = [item[2] for item in heap]
    result = _assemble(cells, cert, tol=tol)
    result.converged = result.error_bound <= tol
    return result
