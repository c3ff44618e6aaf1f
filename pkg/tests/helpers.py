"""Shared fixtures: published example matrices and independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from tropcomm import TropMatrix, TropVector, trop_add, trop_mul
from tropcomm.core import TropScalar, ZERO


def M(rows) -> TropMatrix:
    return TropMatrix.of(rows)


# 4x4 polytrope pair: commutes, but A+B is not its own star (fails at (1,3)).
EX5_A = M([
    ["0.00", "4.10", "3.43", "0.95"],
    ["4.94", "0.00", "1.20", "5.89"],
    ["3.74", "4.44", "0.00", "4.69"],
    ["3.39", "6.92", "2.48", "0.00"],
])
EX5_B = M([
    ["0.00", "1.11", "8.21", "9.02"],
    ["6.74", "0.00", "7.61", "9.82"],
    ["9.96", "9.56", "0.00", "9.77"],
    ["1.03", "2.14", "1.36", "0.00"],
])

# 4x4 polytrope pair: square condition holds but the pair does not commute.
EX6_A = M([
    ["0.00", "1.09", "4.02", "3.33"],
    ["6.77", "0.00", "2.93", "3.47"],
    ["7.77", "8.00", "0.00", "6.20"],
    ["3.30", "1.85", "1.39", "0.00"],
])
EX6_B = M([
    ["0.00", "5.02", "1.45", "2.58"],
    ["3.53", "0.00", "2.01", "2.12"],
    ["7.10", "3.57", "0.00", "1.13"],
    ["7.71", "6.04", "2.47", "0.00"],
])

# 3x3 polytrope pair: A@B equals A+B yet B@A differs at (1,3): 2.79 vs 5.04.
EX7_A = M([
    ["0.00", "6.4", "6.10"],
    ["3.01", "0.0", "0.54"],
    ["5.41", "2.4", "0.00"],
])
EX7_B = M([
    ["0.00", "2.25", "5.04"],
    ["6.81", "0.00", "2.79"],
    ["4.02", "6.27", "0.00"],
])

# separating 3x3 pairs: (a) in TS and Tpre; (b) TS only; (c) Tpre only
P7A_A = M([[0, 2, 0], [2, 0, 8], [0, 4, 0]])
P7A_B = M([[12, 0, 1], [0, 2, 0], [1, 0, 6]])
P7B_C = M([[0, 1, 4], [1, 0, 4], [4, 4, 0]])
P7B_D = M([[0, 2, 4], [1, 0, 4], [4, 4, 0]])
P7C_E = M([[0, 1, 0], [3, 0, 1], [0, 3, 0]])
P7C_F = M([[1, 0, 3], [0, 1, 0], [1, 0, 3]])

# 2x2 pairs: commuting but outside the prevariety / inside the variety
S31_A = M([[0, 2], [1, 0]])
S31_B = M([[0, 1], [1, 0]])
TC2_A = M([[0, 4], [2, 0]])
TC2_B = M([[0, 3], [1, -1]])

# the published commuting lift of (TC2_A, TC2_B)
LIFT_X = [["1+t", "t^4"], ["t^2", "2"]]
LIFT_Y = [["1", "t^3"], ["t", "t^-1"]]


def star_power_sum(a: TropMatrix) -> TropMatrix:
    """Naive I + a + a^2 + ... + a^n; the independent Kleene-star oracle."""
    out = TropMatrix.identity(a.n)
    power = a
    for _ in range(a.n):
        out = trop_add(out, power)
        power = trop_mul(power, a)
    return out


def random_vector(rng: random.Random, n: int, lo: int = -1000, hi: int = 1000) -> TropVector:
    return TropVector.of([Fraction(rng.randint(lo, hi), 100) for _ in range(n)])


def random_finite_matrix(rng: random.Random, n: int, lo: int = -1000, hi: int = 1000) -> TropMatrix:
    return TropMatrix.of(
        [[Fraction(rng.randint(lo, hi), 100) for _ in range(n)] for _ in range(n)]
    )


def scaled_commuting_polytropes(rng: random.Random, n: int) -> tuple[TropMatrix, TropMatrix]:
    """A pair (c*P, d*P) for a random polytrope P: the min is again its own
    star, so the pair commutes (a non-vacuous star-condition family)."""
    from tropcomm import random_polytrope

    p = random_polytrope(rng, n)
    c = Fraction(rng.randint(100, 300), 100)
    d = Fraction(rng.randint(100, 300), 100)

    def scale(mat: TropMatrix, k: Fraction) -> TropMatrix:
        return TropMatrix(
            tuple(
                tuple(
                    ZERO if i == j else TropScalar(e.value * k)
                    for j, e in enumerate(row)
                )
                for i, row in enumerate(mat.rows)
            )
        )

    return scale(p, c), scale(p, d)


def random_tc2_pair(rng: random.Random) -> tuple[TropMatrix, TropMatrix]:
    """A random 2x2 pair in the tropical commuting variety.

    Realizes one of the four tie patterns compatible with commuting on the
    exchange hyperplane (see random_prevariety_2x2_pair) and keeps the draw
    when the membership test confirms it.
    """
    from tropcomm import in_tc2

    while True:
        a, b = random_prevariety_2x2_pair(rng)
        if in_tc2(a, b):
            return a, b


def random_prevariety_2x2_pair(rng: random.Random) -> tuple[TropMatrix, TropMatrix]:
    """A 2x2 pair engineered onto the prevariety.

    On the exchange hyperplane the remaining generator ties reduce to: the
    minimum of {b11, b22, v+a11, v+a22} (v = b12 - a12) is attained both in
    {v+a11, b22} and in {b11, v+a22}; realize one of the four cross-free tie
    patterns at a random level m.
    """
    den = 100
    r = lambda: Fraction(rng.randint(-1000, 1000), den)
    a12, a21, b12 = r(), r(), r()
    v = b12 - a12
    m = r()
    above = lambda: m + Fraction(rng.randint(0, 300), den)
    kind = rng.randrange(4)
    b11, b22, w1, w2 = {
        0: (m, m, above(), above()),          # tie {b11, b22}
        1: (above(), above(), m, m),          # tie {w1, w2}
        2: (m, above(), m, above()),          # tie {b11, w1}
        3: (above(), m, above(), m),          # tie {b22, w2}
    }[kind]
    a = TropMatrix.of([[w1 - v, a12], [a21, w2 - v]])
    b = TropMatrix.of([[b11, b12], [a21 + b12 - a12, b22]])
    return a, b
