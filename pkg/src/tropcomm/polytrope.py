"""Premetrics, polytropes, and commutativity criteria for them.

A premetric has zero diagonal and strictly positive finite off-diagonal
entries; a polytrope is a premetric satisfying the triangle inequality,
equivalently an idempotent premetric (A = A@A), equivalently a Kleene star.
The image of a polytrope in the tropical projective torus is a classically
convex tropical polytope, and the matrix acts on the torus as the projection
onto that image.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    INF,
    ZERO,
    SizeMismatchError,
    TropMatrix,
    TropScalar,
    TropVector,
    kleene_star,
    mat_vec,
    normalize_tp,
    trop_add,
    trop_mul,
)

__all__ = [
    "NotPolytropeError",
    "NotInImageError",
    "CommutClassification",
    "PreimageDescription",
    "is_premetric",
    "is_polytrope",
    "commutes",
    "first_difference",
    "classify_polytrope_pair",
    "preimage",
    "image_vertices",
    "star_image_contains",
    "random_premetric",
    "random_polytrope",
]


class NotPolytropeError(ValueError):
    """An operation requiring polytrope inputs received something else."""


class NotInImageError(ValueError):
    """The target vector is not fixed by the matrix, hence not in its image."""


def is_premetric(a: TropMatrix) -> bool:
    """Zero diagonal, strictly positive finite off-diagonal entries."""
    for i in range(a.n):
        for j in range(a.n):
            e = a.rows[i][j]
            if i == j:
                if e != ZERO:
                    return False
            elif not e.is_finite or e <= ZERO:
                return False
    return True


def is_polytrope(a: TropMatrix) -> bool:
    """Premetric + triangle inequality a[i][j] <= a[i][k] + a[k][j]."""
    if not is_premetric(a):
        return False
    n = a.n
    for i in range(n):
        for j in range(n):
            aij = a.rows[i][j]
            for k in range(n):
                if a.rows[i][k] + a.rows[k][j] < aij:
                    return False
    return True


def first_difference(a: TropMatrix, b: TropMatrix) -> Optional[tuple[int, int]]:
    """First row-major entry where the matrices differ, 1-based; None if equal."""
    if a.n != b.n:
        raise SizeMismatchError(f"size mismatch: {a.n} vs {b.n}")
    for i in range(a.n):
        for j in range(a.n):
            if a.rows[i][j] != b.rows[i][j]:
                return (i + 1, j + 1)
    return None


def commutes(a: TropMatrix, b: TropMatrix) -> bool:
    """Exact test of A@B == B@A (works for arbitrary real matrices)."""
    return trop_mul(a, b) == trop_mul(b, a)


@dataclass(frozen=True)
class CommutClassification:
    """The four commutativity conditions for a pair of polytropes.

    ``star_condition``  : A+B == (A+B)*          (implies commutes)
    ``commutes``        : A@B == B@A             (implies square_condition)
    ``square_condition``: (A+B)@(A+B) == (A+B)*
    ``product_condition``: A@B == A+B            (one-sided)

    ``witnesses`` maps each failed condition name to the first row-major
    1-based entry where its equality breaks, together with the two differing
    values; ``witness_entry`` is the witness of the first failed condition in
    the order commutes, star, square, product.
    """

    commutes: bool
    star_condition: bool
    square_condition: bool
    product_condition: bool
    witness_entry: Optional[tuple[int, int]]
    witnesses: dict[str, tuple[tuple[int, int], TropScalar, TropScalar]] = field(
        default_factory=dict
    )


def _witness(
    lhs: TropMatrix, rhs: TropMatrix
) -> Optional[tuple[tuple[int, int], TropScalar, TropScalar]]:
    at = first_difference(lhs, rhs)
    if at is None:
        return None
    i, j = at
    return at, lhs.rows[i - 1][j - 1], rhs.rows[i - 1][j - 1]


def classify_polytrope_pair(a: TropMatrix, b: TropMatrix) -> CommutClassification:
    """Evaluate all four conditions exactly; record per-condition witnesses."""
    if not (is_polytrope(a) and is_polytrope(b)):
        raise NotPolytropeError("both inputs must be polytropes")
    ab = trop_mul(a, b)
    ba = trop_mul(b, a)
    s = trop_add(a, b)
    star = kleene_star(s)
    square = trop_mul(s, s)

    checks = {
        "commutes": _witness(ab, ba),
        "star": _witness(s, star),
        "square": _witness(square, star),
        "product": _witness(ab, s),
    }
    witnesses = {k: v for k, v in checks.items() if v is not None}
    head = next((witnesses[k][0] for k in checks if k in witnesses), None)
    return CommutClassification(
        commutes=checks["commutes"] is None,
        star_condition=checks["star"] is None,
        square_condition=checks["square"] is None,
        product_condition=checks["product"] is None,
        witness_entry=head,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class PreimageDescription:
    """The solution set of A@x = b: {base + sum_{j in free} t_j e_j, t_j >= 0}.

    ``free_directions`` holds 1-based coordinate indices.
    """

    base: TropVector
    free_directions: frozenset[int]


def preimage(a: TropMatrix, b: TropVector) -> PreimageDescription:
    """Describe {x : A@x = b} for a polytrope A and b in im(A).

    Direction j is free exactly when deleting coordinate j still covers b:
    for every row k, min over i != j of (a[k][i] + b[i]) equals b[k].
    """
    if not is_polytrope(a):
        raise NotPolytropeError("preimage requires a polytrope")
    if mat_vec(a, b) != b:
        raise NotInImageError("A @ b != b, so b is not in the image of A")
    n = a.n
    free = []
    for j in range(n):
        ok = True
        for k in range(n):
            best = INF
            for i in range(n):
                if i == j:
                    continue
                v = a.rows[k][i] + b[i]
                if v < best:
                    best = v
            if best != b[k]:
                ok = False
                break
        if ok:
            free.append(j + 1)
    return PreimageDescription(base=b, free_directions=frozenset(free))


def image_vertices(a: TropMatrix) -> list[TropVector]:
    """Normalized columns with exact duplicates removed, in column order."""
    out: list[TropVector] = []
    for j in range(a.n):
        v = normalize_tp(a.column(j))
        if v not in out:
            out.append(v)
    return out


def star_image_contains(star: TropMatrix, x: TropVector) -> bool:
    """Membership in im(M) for a Kleene star M: x_i - x_j <= M[i][j] for all i,j.

    Requires x finite; M must satisfy M == M* (not checked).
    """
    n = star.n
    if x.n != n:
        raise SizeMismatchError(f"size mismatch: {n} vs {x.n}")
    if not all(e.is_finite for e in x):
        return False
    for i in range(n):
        for j in range(n):
            m = star.rows[i][j]
            if not m.is_finite:
                continue
            if x[i].value - x[j].value > m.value:  # type: ignore[operator]
                return False
    return True


def random_premetric(
    rng: random.Random, n: int, hi: int = 1000, denominator: int = 100
) -> TropMatrix:
    """Random premetric: off-diagonal entries k/denominator, 1 <= k <= hi."""
    return TropMatrix(
        tuple(
            tuple(
                ZERO if i == j else TropScalar(Fraction(rng.randint(1, hi), denominator))
                for j in range(n)
            )
            for i in range(n)
        )
    )


def random_polytrope(rng: random.Random, n: int) -> TropMatrix:
    """Kleene star of a random premetric (always a polytrope)."""
    return kleene_star(random_premetric(rng, n))
