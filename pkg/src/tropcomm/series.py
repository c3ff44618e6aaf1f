"""Finite series in rational powers of t with rational coefficients.

These are exact elements of the (Puiseux-style) field used to lift tropical
matrices: the valuation of a series is its least exponent, and entrywise
valuation turns a classical matrix into a tropical one.  Arithmetic is exact
polynomial arithmetic on (exponent, coefficient) pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import INF, TropMatrix, TropScalar

__all__ = [
    "SeriesPoly",
    "SeriesMatrix",
    "LiftPreconditionError",
    "parse_series",
    "val_matrix",
    "LiftCheck",
    "verify_lift",
    "lift_2x2",
]


class LiftPreconditionError(ValueError):
    """lift_2x2 requires membership in the 2x2 tropical commuting variety."""


@dataclass(frozen=True)
class SeriesPoly:
    """Canonical finite sum of c * t^e, sorted by exponent, no zero c."""

    terms: tuple[tuple[Fraction, Fraction], ...]  # (exponent, coefficient)

    @staticmethod
    def from_terms(terms: Iterable[tuple[Fraction, Fraction]]) -> "SeriesPoly":
        acc: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e, c = Fraction(e), Fraction(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        return SeriesPoly(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @staticmethod
    def zero() -> "SeriesPoly":
        return SeriesPoly(())

    @staticmethod
    def one() -> "SeriesPoly":
        return SeriesPoly.term(1, 0)

    @staticmethod
    def term(coeff, exponent) -> "SeriesPoly":
        c, e = Fraction(coeff), Fraction(exponent)
        return SeriesPoly(((e, c),) if c != 0 else ())

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def valuation(self) -> TropScalar:
        """Least exponent; +inf for the zero series."""
        return INF if not self.terms else TropScalar(self.terms[0][0])

    def __add__(self, other: "SeriesPoly") -> "SeriesPoly":
        return SeriesPoly.from_terms(self.terms + other.terms)

    def __neg__(self) -> "SeriesPoly":
        return SeriesPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "SeriesPoly") -> "SeriesPoly":
        return self + (-other)

    def __mul__(self, other: "SeriesPoly") -> "SeriesPoly":
        out: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SeriesPoly(tuple(sorted((e, c) for e, c in out.items() if c != 0)))

    def shift(self, exponent) -> "SeriesPoly":
        """Multiply by t^exponent."""
        d = Fraction(exponent)
        return SeriesPoly(tuple((e + d, c) for e, c in self.terms))

    def coefficient(self, exponent) -> Fraction:
        e = Fraction(exponent)
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def __str__(self) -> str:
        return format_series(self)


def _fmt_frac(q: Fraction) -> str:
    return str(q)


def _fmt_exp(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"({e})"


def format_series(s: SeriesPoly) -> str:
    if not s.terms:
        return "0"
    chunks = []
    for i, (e, c) in enumerate(s.terms):
        sign = "-" if c < 0 else ("+" if i else "")
        mag = abs(c)
        if e == 0:
            body = _fmt_frac(mag)
        else:
            tpart = "t" if e == 1 else f"t^{_fmt_exp(e)}"
            body = tpart if mag == 1 else f"{_fmt_frac(mag)}*{tpart}"
        chunks.append(f"{sign} {body}".strip() if i else f"{sign}{body}")
    return " ".join(chunks)


_TERM_RE = re.compile(
    r"""^\s*
    (?P<sign>[+-])?\s*
    (?P<coeff>\d+(?:/\d+)?(?:\.\d+)?)?           # optional rational magnitude
    \s*\*?\s*
    (?P<t>t(?:\^(?P<exp>\(?-?\d+(?:/\d+)?\)?))?)?
    \s*$""",
    re.VERBOSE,
)


def _split_terms(text: str) -> list[str]:
    """Split on top-level +/-; a sign after '^', '(', '*' or 'e' stays inside."""
    out = []
    depth = 0
    cur = ""
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and prev not in "^(*":
            out.append(cur)
            cur = ch if ch == "-" else ""
            prev = ch
            continue
        cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        out.append(cur)
    return out


def parse_series(text: str) -> SeriesPoly:
    """Parse sums of ``c*t^(p/q)`` terms: ``1+t``, ``t^4``, ``-2*t^(1/2)``."""
    text = text.strip()
    if not text or text == "0":
        return SeriesPoly.zero()
    terms = []
    for chunk in _split_terms(text):
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and m.group("t") is None):
            raise ValueError(f"bad series term: {chunk!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("sign") == "-":
            coeff = -coeff
        if m.group("t") is None:
            exp = Fraction(0)
        elif m.group("exp") is None:
            exp = Fraction(1)
        else:
            exp = Fraction(m.group("exp").strip("()"))
        terms.append((exp, coeff))
    return SeriesPoly.from_terms(terms)


@dataclass(frozen=True)
class SeriesMatrix:
    """A square matrix of series; products are classical (ring) products."""

    rows: tuple[tuple[SeriesPoly, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix is not square")

    @staticmethod
    def parse(grid: Iterable[Iterable[str]]) -> "SeriesMatrix":
        return SeriesMatrix(
            tuple(tuple(parse_series(s) for s in row) for row in grid)
        )

    @staticmethod
    def identity(n: int) -> "SeriesMatrix":
        return SeriesMatrix(
            tuple(
                tuple(SeriesPoly.one() if i == j else SeriesPoly.zero() for j in range(n))
                for i in range(n)
            )
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> SeriesPoly:
        return self.rows[ij[0]][ij[1]]

    def __mul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        n = self.n
        if other.n != n:
            raise ValueError("size mismatch")
        return SeriesMatrix(
            tuple(
                tuple(
                    _series_sum(self.rows[i][k] * other.rows[k][j] for k in range(n))
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        n = self.n
        if other.n != n:
            raise ValueError("size mismatch")
        return SeriesMatrix(
            tuple(
                tuple(self.rows[i][j] + other.rows[i][j] for j in range(n))
                for i in range(n)
            )
        )

    def scale(self, s: SeriesPoly) -> "SeriesMatrix":
        return SeriesMatrix(tuple(tuple(s * e for e in row) for row in self.rows))

    def to_grid(self) -> list[list[str]]:
        return [[format_series(e) for e in row] for row in self.rows]


def _series_sum(items: Iterable[SeriesPoly]) -> SeriesPoly:
    out = SeriesPoly.zero()
    for s in items:
        out = out + s
    return out


def val_matrix(x: SeriesMatrix) -> TropMatrix:
    """Entrywise valuation; the zero series maps to +inf."""
    return TropMatrix(tuple(tuple(e.valuation for e in row) for row in x.rows))


@dataclass(frozen=True)
class LiftCheck:
    ok: bool
    failures: tuple[tuple[str, tuple[int, int]], ...]  # (kind, 1-based entry)


def verify_lift(x: SeriesMatrix, y: SeriesMatrix, a: TropMatrix, b: TropMatrix) -> LiftCheck:
    """x*y == y*x exactly, val(x) == a, and val(y) == b; failures pinpointed."""
    fails: list[tuple[str, tuple[int, int]]] = []
    xy = x * y
    yx = y * x
    n = x.n
    for i in range(n):
        for j in range(n):
            if xy.rows[i][j] != yx.rows[i][j]:
                fails.append(("commutation", (i + 1, j + 1)))
    for kind, mat, target in (("valuation-X", x, a), ("valuation-Y", y, b)):
        vm = val_matrix(mat)
        for i in range(n):
            for j in range(n):
                if vm.rows[i][j] != target.rows[i][j]:
                    fails.append((kind, (i + 1, j + 1)))
    return LiftCheck(ok=not fails, failures=tuple(fails))


def lift_2x2(a: TropMatrix, b: TropMatrix) -> Optional[tuple[SeriesMatrix, SeriesMatrix]]:
    """A commuting series lift (X, Y) with val X = a, val Y = b.

    Uses the ansatz Y = alpha*I + t^v * X with X monomial off the diagonal:
    v is pinned by the off-diagonal valuations (the exchange relation makes
    the two requirements agree), and the diagonal of X carries at most one
    extra term so cancellation against alpha produces the demanded
    valuations.  Every returned pair is verified; None means the bounded
    ansatz found nothing (never a non-existence proof).
    """
    from .commuting import in_tc2

    if not in_tc2(a, b):
        raise LiftPreconditionError("pair fails the 2x2 variety membership test")

    av = [[e.value for e in row] for row in a.rows]
    bv = [[e.value for e in row] for row in b.rows]
    v = bv[0][1] - av[0][1]
    w = [v + av[0][0], v + av[1][1]]
    diag = [bv[0][0], bv[1][1]]

    # per-entry requirement on val(alpha): a point, or a ray [w_i, +inf]
    req: list[Optional[Fraction]] = []
    rays: list[Fraction] = []
    for i in (0, 1):
        if diag[i] < w[i]:
            req.append(diag[i])
        elif diag[i] > w[i]:
            req.append(w[i])
        else:
            req.append(None)
            rays.append(w[i])
    forced = [r for r in req if r is not None]
    alpha: SeriesPoly
    if not forced:
        alpha = SeriesPoly.zero()
        a_val: Optional[Fraction] = None
    else:
        if len(forced) == 2 and forced[0] != forced[1]:
            return None
        a_val = forced[0]
        if any(a_val < r for r in rays):
            return None
        alpha = SeriesPoly.term(1, a_val)

    # diagonal entries of t^v * X, one per row
    u: list[SeriesPoly] = []
    for i in (0, 1):
        if diag[i] > w[i]:
            u.append(SeriesPoly.term(1, diag[i]) - alpha)
        elif diag[i] == w[i]:
            c = 1 if alpha.coefficient(w[i]) != -1 else 2
            u.append(SeriesPoly.term(c, w[i]))
        else:
            u.append(SeriesPoly.term(1, w[i]))

    x = SeriesMatrix(
        (
            (u[0].shift(-v), SeriesPoly.term(1, av[0][1])),
            (SeriesPoly.term(1, av[1][0]), u[1].shift(-v)),
        )
    )
    y = SeriesMatrix.identity(2).scale(alpha) + x.scale(SeriesPoly.term(1, v))
    check = verify_lift(x, y, a, b)
    if not check.ok:
        return None
    return x, y
