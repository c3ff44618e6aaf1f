"""Exact min-plus (tropical) scalar and matrix arithmetic.

Tropical addition is min, tropical multiplication is ordinary +, and the
additive identity is +infinity.  Every finite value is an exact rational
(``fractions.Fraction``), so equality -- in particular "the minimum is
attained twice" -- is decidable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

__all__ = [
    "TropScalar",
    "TropMatrix",
    "TropVector",
    "INF",
    "ZERO",
    "SizeMismatchError",
    "NegativeCycleError",
    "AllInfiniteError",
    "MatrixFormatError",
    "trop_add",
    "trop_mul",
    "trop_pow",
    "kleene_star",
    "mat_vec",
    "normalize_tp",
    "scalar_from_text",
    "scalar_to_text",
    "format_rational",
    "matrix_to_json",
    "matrix_from_json",
    "pair_from_json",
    "pair_to_json",
]

ScalarLike = Union["TropScalar", Fraction, int, str, None]


class SizeMismatchError(ValueError):
    """Two matrices of different sizes were combined."""


class NegativeCycleError(ValueError):
    """A cycle of negative total weight exists; the Kleene star diverges."""


class AllInfiniteError(ValueError):
    """A tropical vector with no finite entry cannot be normalized."""


class MatrixFormatError(ValueError):
    """Malformed matrix/pair input (JSON structure or entry syntax)."""


def scalar_from_text(text: str) -> "TropScalar":
    """Parse ``"4.10"``, ``"41/10"`` or ``"inf"`` into an exact scalar."""
    text = text.strip()
    if text in ("inf", "+inf", "Inf", "INF"):
        return INF
    try:
        return TropScalar(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise MatrixFormatError(f"bad entry {text!r}: {exc}") from None


def scalar_to_text(s: "TropScalar") -> str:
    """Lowest-terms fraction string, or ``"inf"``."""
    return "inf" if s.value is None else str(s.value)


def format_rational(q: Fraction) -> str:
    """Render exactly: as a decimal when the denominator divides 100."""
    if 100 % q.denominator == 0:
        scaled = q * 100
        whole, cents = divmod(abs(scaled.numerator), 100)
        sign = "-" if q < 0 else ""
        if cents == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{cents:02d}".rstrip("0")
    return str(q)


@dataclass(frozen=True, order=False)
class TropScalar:
    """An exact rational, or +infinity (``value is None``)."""

    value: Fraction | None = None

    @staticmethod
    def of(x: ScalarLike) -> "TropScalar":
        if isinstance(x, TropScalar):
            return x
        if x is None:
            return INF
        if isinstance(x, str):
            return scalar_from_text(x)
        return TropScalar(Fraction(x))

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __add__(self, other: "TropScalar") -> "TropScalar":
        # classical +, i.e. tropical multiplication; inf absorbs
        if self.value is None or other.value is None:
            return INF
        return TropScalar(self.value + other.value)

    def __lt__(self, other: "TropScalar") -> bool:
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __le__(self, other: "TropScalar") -> bool:
        return self == other or self < other

    def min(self, other: "TropScalar") -> "TropScalar":
        # tropical addition
        return self if self <= other else other

    def __str__(self) -> str:
        return scalar_to_text(self)


INF = TropScalar(None)
ZERO = TropScalar(Fraction(0))


def _tmin(values: Iterable[TropScalar]) -> TropScalar:
    out = INF
    for v in values:
        if v < out:
            out = v
    return out


@dataclass(frozen=True)
class TropVector:
    """A point of R^n over the min-plus semiring (entries may be +inf)."""

    entries: tuple[TropScalar, ...]

    @staticmethod
    def of(values: Iterable[ScalarLike]) -> "TropVector":
        return TropVector(tuple(TropScalar.of(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> TropScalar:
        return self.entries[i]

    def __iter__(self) -> Iterator[TropScalar]:
        return iter(self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class TropMatrix:
    """A square matrix over the min-plus semiring."""

    rows: tuple[tuple[TropScalar, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise SizeMismatchError("matrix is not square")

    @staticmethod
    def of(rows: Iterable[Iterable[ScalarLike]]) -> "TropMatrix":
        return TropMatrix(tuple(tuple(TropScalar.of(v) for v in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "TropMatrix":
        return TropMatrix(
            tuple(
                tuple(ZERO if i == j else INF for j in range(n))
                for i in range(n)
            )
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> TropScalar:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> TropVector:
        return TropVector(tuple(self.rows[i][j] for i in range(self.n)))

    def all_finite(self) -> bool:
        return all(e.is_finite for row in self.rows for e in row)

    def __add__(self, other: "TropMatrix") -> "TropMatrix":
        return trop_add(self, other)

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        return trop_mul(self, other)

    def entrywise_le(self, other: "TropMatrix") -> bool:
        _check_sizes(self, other)
        return all(
            self.rows[i][j] <= other.rows[i][j]
            for i in range(self.n)
            for j in range(self.n)
        )

    def __str__(self) -> str:
        return "\n".join("  ".join(str(e) for e in row) for row in self.rows)


def _check_sizes(a: TropMatrix, b: TropMatrix) -> None:
    if a.n != b.n:
        raise SizeMismatchError(f"size mismatch: {a.n} vs {b.n}")


def trop_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Entrywise min."""
    _check_sizes(a, b)
    return TropMatrix(
        tuple(
            tuple(a.rows[i][j].min(b.rows[i][j]) for j in range(a.n))
            for i in range(a.n)
        )
    )


def trop_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Min-plus product: out[i][j] = min_s a[i][s] + b[s][j]."""
    _check_sizes(a, b)
    n = a.n
    return TropMatrix(
        tuple(
            tuple(
                _tmin(a.rows[i][s] + b.rows[s][j] for s in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
    )


def trop_pow(a: TropMatrix, m: int) -> TropMatrix:
    """m-fold min-plus product, m >= 1."""
    if m < 1:
        raise ValueError("exponent must be >= 1")
    out = a
    for _ in range(m - 1):
        out = trop_mul(out, a)
    return out


def mat_vec(a: TropMatrix, x: TropVector) -> TropVector:
    """Min-plus matrix-vector action: out[i] = min_s a[i][s] + x[s]."""
    if a.n != x.n:
        raise SizeMismatchError(f"size mismatch: {a.n} vs {x.n}")
    return TropVector(
        tuple(_tmin(a.rows[i][s] + x[s] for s in range(a.n)) for i in range(a.n))
    )


def kleene_star(a: TropMatrix) -> TropMatrix:
    """I + a + a^2 + ... + a^n, via an all-pairs shortest-path closure.

    Raises :class:`NegativeCycleError` when some cycle has negative total
    weight (the geometric series diverges).  The closure is the standard
    in-place n^3 relaxation; the result R satisfies R = R@R and has zero
    diagonal.
    """
    n = a.n
    d: list[list[TropScalar]] = [list(row) for row in a.rows]
    for k in range(n):
        for i in range(n):
            dik = d[i][k]
            if not dik.is_finite:
                continue
            row_k = d[k]
            row_i = d[i]
            for j in range(n):
                alt = dik + row_k[j]
                if alt < row_i[j]:
                    row_i[j] = alt
    for i in range(n):
        if d[i][i] < ZERO:
            raise NegativeCycleError("negative-weight cycle; star diverges")
    return trop_add(TropMatrix.identity(n), TropMatrix(tuple(tuple(r) for r in d)))


def normalize_tp(v: TropVector) -> TropVector:
    """Shift so the first finite coordinate becomes 0 (projective rep)."""
    pivot = next((e for e in v if e.is_finite), None)
    if pivot is None:
        raise AllInfiniteError("vector has no finite entry")
    shift = TropScalar(-pivot.value)  # type: ignore[operator]
    return TropVector(tuple(e + shift for e in v))


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def matrix_to_json(a: TropMatrix) -> dict:
    """``{"n": n, "entries": [[...lowest-terms strings...]]}``."""
    return {
        "n": a.n,
        "entries": [[scalar_to_text(e) for e in row] for row in a.rows],
    }


def _entries_from_obj(entries: object, n: int, what: str) -> TropMatrix:
    if (
        not isinstance(entries, list)
        or len(entries) != n
        or any(not isinstance(r, list) or len(r) != n for r in entries)
    ):
        raise MatrixFormatError(f"{what}: expected {n}x{n} entry grid")
    try:
        return TropMatrix.of(entries)
    except MatrixFormatError:
        raise
    except Exception as exc:
        raise MatrixFormatError(f"{what}: {exc}") from None


def matrix_from_json(obj: object) -> TropMatrix:
    """Parse the ``{"n": ..., "entries": ...}`` matrix object exactly."""
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise MatrixFormatError('expected {"n": int, "entries": [[...]]}')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise MatrixFormatError("n must be a positive integer")
    return _entries_from_obj(obj["entries"], n, "entries")


def pair_from_json(obj: object) -> tuple[TropMatrix, TropMatrix]:
    """Parse ``{"n": int, "A": [[...]], "B": [[...]]}``."""
    if not isinstance(obj, dict) or not {"n", "A", "B"} <= set(obj):
        raise MatrixFormatError('expected {"n": int, "A": [[...]], "B": [[...]]}')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise MatrixFormatError("n must be a positive integer")
    return _entries_from_obj(obj["A"], n, "A"), _entries_from_obj(obj["B"], n, "B")


def pair_to_json(a: TropMatrix, b: TropMatrix) -> dict:
    _check_sizes(a, b)
    return {
        "n": a.n,
        "A": [[scalar_to_text(e) for e in row] for row in a.rows],
        "B": [[scalar_to_text(e) for e in row] for row in b.rows],
    }


def load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from None
