"""Exact rational linear algebra and a small simplex solver.

Feasibility of a homogeneous system {E w = 0, S w < 0} is decided by
maximizing an auxiliary slack t subject to S w + t <= 0 and t <= 1: the
optimum is 1 exactly when the open cone is nonempty (scale any strict
solution), and the optimal vertex yields an interior rational witness.
Bland's rule guarantees termination on the degenerate start.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

__all__ = [
    "UnboundedNormalizationError",
    "exact_rank",
    "null_space_basis",
    "primitive",
    "eliminate",
    "add_pivot",
    "lift_witness",
    "ExactLPProblem",
    "strict_feasibility",
]

Row = tuple[int, ...]


class UnboundedNormalizationError(RuntimeError):
    """The slack-bounded LP reported unbounded; internal inconsistency."""


def primitive(row: Sequence[int]) -> Row:
    """Divide an integer row by the gcd of its entries (0 row unchanged)."""
    g = 0
    for x in row:
        g = gcd(g, abs(x))
        if g == 1:
            return tuple(row)
    if g <= 1:
        return tuple(row)
    return tuple(x // g for x in row)


def eliminate(row: Sequence[int], pivots: dict[int, Row]) -> Row:
    """Reduce an integer row against integer pivot rows (exact, fraction-free)."""
    r = list(row)
    for c in sorted(pivots):
        if r[c]:
            p = pivots[c]
            rc, pc = r[c], p[c]
            r = [a * pc - b * rc for a, b in zip(r, p)]
    return primitive(r)


def add_pivot(pivots: dict[int, Row], row: Sequence[int]) -> Optional[int]:
    """Insert a reduced nonzero row; returns its pivot column (None if zero)."""
    r = eliminate(row, pivots)
    if not any(r):
        return None
    c = next(i for i, x in enumerate(r) if x)
    if r[c] < 0:
        r = tuple(-x for x in r)
    for col, p in list(pivots.items()):
        if p[c]:
            pc, rc = p[c], r[c]
            pivots[col] = primitive([a * rc - b * pc for a, b in zip(p, r)])
    pivots[c] = r
    return c


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    pivots: dict[int, Row] = {}
    for row in rows:
        add_pivot(pivots, row)
    return len(pivots)


def null_space_basis(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[Fraction, ...]]:
    """Exact basis of {w : rows . w = 0}, one vector per free column."""
    pivots: dict[int, Row] = {}
    for row in rows:
        add_pivot(pivots, row)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for c, p in pivots.items():
            v[c] = Fraction(-p[f], p[c])
        basis.append(tuple(v))
    return basis


def _simplex_max_t(strict_rows: Sequence[Sequence[Fraction]], d: int) -> tuple[Fraction, list[Fraction]]:
    """max t s.t. row.z + t <= 0 for each row, t <= 1, z free; Bland's rule."""
    m = len(strict_rows)
    nvars = 2 * d + 1  # z+, z-, t
    width = nvars + m + 1 + 1  # + slacks + rhs
    tab: list[list[Fraction]] = []
    zero = Fraction(0)
    one = Fraction(1)
    for i, row in enumerate(strict_rows):
        r = [Fraction(x) for x in row] + [Fraction(-x) for x in row] + [one]
        r += [one if j == i else zero for j in range(m + 1)]
        r.append(zero)
        tab.append(r)
    last = [zero] * (2 * d) + [one] + [one if j == m else zero for j in range(m + 1)] + [one]
    tab.append(last)
    nrows = m + 1
    basis = [nvars + i for i in range(nrows)]
    cost = [zero] * width
    cost[2 * d] = Fraction(-1)  # maximize t

    while True:
        enter = -1
        for j in range(nvars + nrows):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best: Optional[Fraction] = None
        for i in range(nrows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise UnboundedNormalizationError("t <= 1 should bound the program")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        prow = tab[leave]
        for i in range(nrows):
            if i != leave:
                f = tab[i][enter]
                if f:
                    tab[i] = [a - f * p for a, p in zip(tab[i], prow)]
        f = cost[enter]
        if f:
            cost = [a - f * p for a, p in zip(cost, prow)]
        basis[leave] = enter

    x = [zero] * (nvars + nrows)
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    t = x[2 * d]
    z = [x[j] - x[d + j] for j in range(d)]
    return t, z


@dataclass(frozen=True)
class ExactLPProblem:
    """Homogeneous strict-feasibility program over Q^dim.

    equalities : integer rows e with e.w = 0 required
    stricts    : integer rows s with s.w < 0 required
    """

    equalities: tuple[Row, ...]
    stricts: tuple[Row, ...]
    dim: int

    def solve(self) -> Optional[tuple[Fraction, ...]]:
        """An interior rational witness, or None when infeasible."""
        return strict_feasibility(self.equalities, self.stricts, self.dim)


def strict_feasibility(
    equalities: Sequence[Sequence[int]],
    stricts: Sequence[Sequence[int]],
    dim: int,
) -> Optional[tuple[Fraction, ...]]:
    pivots: dict[int, Row] = {}
    for row in equalities:
        add_pivot(pivots, row)
    free = [c for c in range(dim) if c not in pivots]
    reduced = []
    for s in stricts:
        r = eliminate(s, pivots)
        if not any(r):
            return None  # forced to 0, can never be < 0
        reduced.append(r)
    if not reduced:
        w = [Fraction(0)] * dim
        return tuple(w)
    if not free:
        return None
    proj = [tuple(r[f] for f in free) for r in reduced]
    t, z = _simplex_max_t(proj, len(free))
    if t <= 0:
        return None
    return lift_witness(z, pivots, free, dim)


def lift_witness(
    z: Sequence[Fraction], pivots: dict[int, Row], free: Sequence[int], dim: int
) -> tuple[Fraction, ...]:
    w = [Fraction(0)] * dim
    for f, zf in zip(free, z):
        w[f] = zf
    for c, p in pivots.items():
        acc = Fraction(0)
        for f, zf in zip(free, z):
            if p[f]:
                acc += Fraction(p[f]) * zf
        w[c] = -acc / p[c]
    return tuple(w)
