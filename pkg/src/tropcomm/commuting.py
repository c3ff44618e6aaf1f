"""Commuting-ideal generators and tropical membership certificates.

The commutator ideal in the 2n^2 variables {x_ij, y_ij} is generated by the
entries of XY - YX.  This module evaluates its generators tropically (is the
minimum attained twice?), decides membership in the tropical commuting set
and prevariety, tests the homogeneity space, and searches for non-membership
certificates for the n=3 tropical commuting variety: polynomials of the
ideal whose minimum at a given weight is attained by a unique term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import gcd
from typing import Optional, Sequence

from .core import SizeMismatchError, TropMatrix
from .polynomials import Monomial, SparsePoly, matrix_variables, monomial, monomial_str, symmetric_variables
from .polytrope import commutes, first_difference

__all__ = [
    "WeightVector",
    "TropEvaluation",
    "GroupElement",
    "NonMembershipCertificate",
    "PairClassification",
    "TpreResult",
    "commutator_entry",
    "labeled_generators",
    "generators",
    "symmetric_generators",
    "weight_of_pair",
    "evaluate_tropically",
    "trop_satisfied",
    "in_ts",
    "in_tpre",
    "in_tc2",
    "homogeneity_membership",
    "homogeneity_dimension",
    "group_elements",
    "variable_permutation",
    "apply_group",
    "witness_deg3",
    "witness_deg4",
    "witness_family",
    "find_monomial_initial_form",
    "certify_not_in_tc3",
    "classify_pair",
]

WeightVector = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def commutator_entry(n: int, k: int, l: int) -> SparsePoly:
    """(XY - YX)[k][l] over the 2n^2 variables, 1-based entry indices."""
    names = matrix_variables(n)
    terms: list[tuple[Monomial, int]] = []
    for s in range(1, n + 1):
        terms.append((monomial(names, f"x{k}{s}", f"y{s}{l}"), 1))
        terms.append((monomial(names, f"y{k}{s}", f"x{s}{l}"), -1))
    return SparsePoly.from_terms(terms)


def labeled_generators(n: int) -> list[tuple[tuple[int, int], SparsePoly]]:
    """Nonzero commutator entries in row-major order, sign-duplicates dropped.

    For n=2 the (2,2) entry is exactly minus the (1,1) entry (the commutator
    has zero trace), so three generators remain.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    out: list[tuple[tuple[int, int], SparsePoly]] = []
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            g = commutator_entry(n, k, l)
            if not g:
                continue
            if any(g.same_support_up_to_sign(prev) for _, prev in out):
                continue
            out.append(((k, l), g))
    return out


def generators(n: int) -> list[SparsePoly]:
    return [g for _, g in labeled_generators(n)]


def symmetric_generators() -> list[SparsePoly]:
    """The three 6-term generators of the symmetric 3x3 commuting ideal.

    Entry (k,l) of XY - YX with X, Y symmetric, written in the 12 variables
    x_ij, y_ij (i <= j); the diagonal entries vanish identically.
    """
    names = symmetric_variables()

    def var(p: str, i: int, j: int) -> str:
        return f"{p}{min(i, j)}{max(i, j)}"

    out = []
    for (k, l) in ((1, 2), (1, 3), (2, 3)):
        terms: list[tuple[Monomial, int]] = []
        for s in range(1, 4):
            terms.append((monomial(names, var("x", k, s), var("y", s, l)), 1))
            terms.append((monomial(names, var("y", k, s), var("x", s, l)), -1))
        out.append(SparsePoly.from_terms(terms))
    return out


def weight_of_pair(a: TropMatrix, b: TropMatrix) -> WeightVector:
    """Row-major (vec A, vec B); requires finite entries."""
    if a.n != b.n:
        raise SizeMismatchError(f"size mismatch: {a.n} vs {b.n}")
    vals: list[Fraction] = []
    for m in (a, b):
        for row in m.rows:
            for e in row:
                if not e.is_finite:
                    raise ValueError("weight vectors require finite entries")
                vals.append(e.value)  # type: ignore[arg-type]
    return tuple(vals)


# ---------------------------------------------------------------------------
# tropical evaluation
# ---------------------------------------------------------------------------

def _value(m: Monomial, w: WeightVector) -> Fraction:
    v = Fraction(0)
    for i, k in enumerate(m):
        if k:
            v += k * w[i]
    return v


@dataclass(frozen=True)
class TropEvaluation:
    """Term weights of a polynomial at a weight vector."""

    min_value: Fraction
    argmin: tuple[Monomial, ...]
    runner_up: Optional[Fraction]
    values: tuple[tuple[Monomial, Fraction], ...]

    @property
    def satisfied(self) -> bool:
        return len(self.argmin) >= 2


def evaluate_tropically(f: SparsePoly, w: WeightVector) -> TropEvaluation:
    if not f:
        raise ValueError("empty polynomial")
    vals = tuple((m, _value(m, w)) for m, _ in f.terms)
    mn = min(v for _, v in vals)
    argmin = tuple(m for m, v in vals if v == mn)
    above = [v for _, v in vals if v > mn]
    return TropEvaluation(
        min_value=mn,
        argmin=argmin,
        runner_up=min(above) if above else None,
        values=vals,
    )


def trop_satisfied(f: SparsePoly, w: WeightVector) -> tuple[bool, TropEvaluation]:
    """Is the minimum term weight attained at least twice?"""
    ev = evaluate_tropically(f, w)
    return ev.satisfied, ev


# ---------------------------------------------------------------------------
# membership tests
# ---------------------------------------------------------------------------

def in_ts(a: TropMatrix, b: TropMatrix) -> bool:
    """Tropical commuting set: A@B == B@A (any real matrices)."""
    return commutes(a, b)


@dataclass(frozen=True)
class TpreResult:
    ok: bool
    failures: tuple[tuple[int, int], ...]


def in_tpre(a: TropMatrix, b: TropMatrix) -> TpreResult:
    """Prevariety membership: every commutator generator tropically satisfied."""
    w = weight_of_pair(a, b)
    fails = []
    for label, g in labeled_generators(a.n):
        ok, _ = trop_satisfied(g, w)
        if not ok:
            fails.append(label)
    return TpreResult(ok=not fails, failures=tuple(fails))


def in_tc2(a: TropMatrix, b: TropMatrix) -> bool:
    """Membership test for the 2x2 tropical commuting variety.

    A@B == B@A together with the exchange relation
    a12 + b21 == a21 + b12.  This is the standard generic-position test; on
    the boundary cells where the products disagree through cancelling lifts
    it can report False for points that do admit commuting lifts.
    """
    if a.n != 2 or b.n != 2:
        raise SizeMismatchError("in_tc2 is defined for 2x2 matrices")
    w = weight_of_pair(a, b)
    if not (a.all_finite() and b.all_finite()):
        raise ValueError("finite entries required")
    hyper = w[1] + w[6] == w[2] + w[5]  # x12 + y21 == x21 + y12
    return hyper and in_ts(a, b)


# ---------------------------------------------------------------------------
# homogeneity space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneityResult:
    member: bool
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[tuple[Fraction, ...]] = None


def homogeneity_membership(w: WeightVector, n: int) -> HomogeneityResult:
    """Does every generator have all term weights equal at w?

    For n >= 3 the space is cut out by: all x-diagonal weights equal (= a),
    all y-diagonal weights equal (= b), w[y_ij] = w[x_ij] - a + b, and
    w[x_ij] = c_i - c_j + a for some c (normalized c_1 = 0).  For n = 2 the
    same pattern without the c-relation (x12, x21 stay free).
    """
    if n < 2 or len(w) != 2 * n * n:
        raise ValueError("weight length must be 2*n*n")

    def x(i: int, j: int) -> Fraction:
        return w[(i - 1) * n + (j - 1)]

    def y(i: int, j: int) -> Fraction:
        return w[n * n + (i - 1) * n + (j - 1)]

    a = x(1, 1)
    b = y(1, 1)
    if any(x(i, i) != a or y(i, i) != b for i in range(2, n + 1)):
        return HomogeneityResult(False)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and y(i, j) != x(i, j) - a + b:
                return HomogeneityResult(False)
    if n == 2:
        return HomogeneityResult(True, a=a, b=b, c=(x(1, 2), x(2, 1)))
    # c_i - c_j = x(i,j) - a with c_1 = 0
    c = [Fraction(0)] * (n + 1)
    for i in range(2, n + 1):
        c[i] = x(i, 1) - a
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and x(i, j) != c[i] - c[j] + a:
                return HomogeneityResult(False)
    return HomogeneityResult(True, a=a, b=b, c=tuple(c[1:]))


def tie_rows(gens: Sequence[SparsePoly]) -> list[tuple[int, ...]]:
    """Difference vectors u - v for consecutive terms of each generator."""
    rows = []
    for g in gens:
        ms = g.monomials()
        for u, v in zip(ms, ms[1:]):
            rows.append(tuple(a - b for a, b in zip(u, v)))
    return rows


def homogeneity_dimension(n: int) -> int:
    """dim of the all-ties subspace, by exact rank (not by formula)."""
    from .simplex import exact_rank

    gens = generators(n)
    d = 2 * n * n
    return d - exact_rank(tie_rows(gens))


# ---------------------------------------------------------------------------
# the S3 x S2 action
# ---------------------------------------------------------------------------

GroupElement = tuple[tuple[int, ...], bool]  # (sigma as 1-based images, swap x<->y)


def group_elements(n: int = 3) -> list[GroupElement]:
    """All (sigma, swap) pairs, identity first, in lexicographic order."""
    return [(sigma, swap) for sigma in sorted(permutations(range(1, n + 1))) for swap in (False, True)]


def variable_permutation(g: GroupElement, names: tuple[str, ...], symmetric: bool = False) -> tuple[int, ...]:
    """Index permutation induced on a variable list by (sigma, swap)."""
    sigma, swap = g
    idx = {nm: i for i, nm in enumerate(names)}
    perm = []
    for nm in names:
        p, i, j = nm[0], int(nm[1]), int(nm[2])
        if swap:
            p = "y" if p == "x" else "x"
        a, b = sigma[i - 1], sigma[j - 1]
        if symmetric:
            a, b = min(a, b), max(a, b)
        perm.append(idx[f"{p}{a}{b}"])
    return tuple(perm)


def apply_group(f: SparsePoly, g: GroupElement, names: tuple[str, ...], symmetric: bool = False) -> SparsePoly:
    return f.permute_variables(variable_permutation(g, names, symmetric))


# ---------------------------------------------------------------------------
# witness polynomials (n = 3)
# ---------------------------------------------------------------------------

def witness_deg3(g: GroupElement = ((1, 2, 3), False)) -> SparsePoly:
    """(XY-YX)[1][2]*y21 - (XY-YX)[2][1]*y12, moved by the group element.

    After combining, two coefficients are +-2; ten terms remain.
    """
    names = matrix_variables(3)
    f = commutator_entry(3, 1, 2).mul_monomial(monomial(names, "y21")) - \
        commutator_entry(3, 2, 1).mul_monomial(monomial(names, "y12"))
    return apply_group(f, g, names)


def witness_deg4(g: GroupElement = ((1, 2, 3), False)) -> SparsePoly:
    """(XY-YX)[3][1]*y32*y21 - (XY-YX)[3][2]*y31*y21 - (XY-YX)[2][1]*y31*y32.

    Three pairs of terms cancel, leaving exactly 12 monomials.
    """
    names = matrix_variables(3)
    f = commutator_entry(3, 3, 1).mul_monomial(monomial(names, "y32", "y21")) - \
        commutator_entry(3, 3, 2).mul_monomial(monomial(names, "y31", "y21")) - \
        commutator_entry(3, 2, 1).mul_monomial(monomial(names, "y31", "y32"))
    return apply_group(f, g, names)


def witness_family() -> list[tuple[str, SparsePoly]]:
    """generators, then the deg-3 orbit, then the deg-4 orbit; deduplicated.

    Cheapest certificates first; orbit members equal up to sign are listed
    once, labeled by their construction.
    """
    family: list[tuple[str, SparsePoly]] = []
    seen: list[SparsePoly] = []

    def push(label: str, f: SparsePoly) -> None:
        if any(f.same_support_up_to_sign(p) for p in seen):
            return
        seen.append(f)
        family.append((label, f))

    for (k, l), g in labeled_generators(3):
        push(f"g{k}{l}", g)
    for ge in group_elements(3):
        push(f"deg3[{_gname(ge)}]", witness_deg3(ge))
    for ge in group_elements(3):
        push(f"deg4[{_gname(ge)}]", witness_deg4(ge))
    return family


def _gname(g: GroupElement) -> str:
    sigma, swap = g
    return "".join(map(str, sigma)) + ("s" if swap else "")


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NonMembershipCertificate:
    """An ideal element whose minimum at the weight is uniquely attained.

    The unique minimal term is a monomial initial form, so the weight lies
    outside the tropical variety of the ideal.
    """

    source: str
    polynomial: SparsePoly
    unique_min_monomial: Monomial
    min_value: Fraction
    runner_up_value: Fraction

    def monomial_name(self, n: int = 3) -> str:
        return monomial_str(self.unique_min_monomial, matrix_variables(n))


class _SparseElim:
    """Sparse exact row elimination with provenance over column ids."""

    def __init__(self) -> None:
        self.pivots: dict[Monomial, tuple[dict, dict]] = {}

    def reduce(self, row: dict, prov: dict) -> tuple[Optional[dict], dict]:
        row = dict(row)
        prov = dict(prov)
        while row:
            c = min(row)
            hit = self.pivots.get(c)
            if hit is None:
                inv = Fraction(1) / row[c]
                return (
                    {k: v * inv for k, v in row.items()},
                    {k: v * inv for k, v in prov.items()},
                )
            prow, pprov = hit
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, Fraction(0)) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            for k, v in pprov.items():
                nv = prov.get(k, Fraction(0)) - f * v
                if nv:
                    prov[k] = nv
                else:
                    prov.pop(k, None)
        return None, prov

    def add(self, row: dict, prov: dict) -> None:
        r, p = self.reduce(row, prov)
        if r is not None:
            self.pivots[min(r)] = (r, p)


def find_monomial_initial_form(
    a: TropMatrix, b: TropMatrix, *, degree: int = 4, max_values: int = 12
) -> Optional[NonMembershipCertificate]:
    """Complete search of one graded slice for a monomial initial form.

    The commutator ideal is homogeneous, so its degree-d piece is spanned by
    (degree d-2 monomial) x (generator).  A certificate with unique minimal
    term m of weight v exists iff the unit vector of m lies in the span of
    the value<=v parts of those products: exact sparse elimination decides
    this per candidate value, smallest values first (up to ``max_values``
    distinct values).  Complete for the chosen degree; finding nothing here
    proves no degree-d certificate exists at the scanned values.
    """
    n = a.n
    w = weight_of_pair(a, b)
    gens = generators(n)
    d = 2 * n * n
    gmin = [min(_value(m, w) for m in g.monomials()) for g in gens]

    extras: list[Monomial] = []
    for c in combinations_with_replacement(range(d), degree - 2):
        e = [0] * d
        for i in c:
            e[i] += 1
        extras.append(tuple(e))

    cand_values = sorted(
        {_value(m, w) + gv for m in extras for gv in gmin}
    )[:max_values]

    for v_lim in cand_values:
        elim = _SparseElim()
        cols: list[tuple[Monomial, int]] = []
        cand_monos: set[Monomial] = set()
        for gi, g in enumerate(gens):
            for m in extras:
                if _value(m, w) + gmin[gi] > v_lim:
                    continue
                low: dict[Monomial, Fraction] = {}
                for mm, c in g.terms:
                    pm = tuple(x + y for x, y in zip(mm, m))
                    pv = _value(pm, w)
                    if pv <= v_lim:
                        low[pm] = low.get(pm, Fraction(0)) + c
                        if pv == v_lim:
                            cand_monos.add(pm)
                low = {k: v for k, v in low.items() if v}
                if low:
                    cid = len(cols)
                    cols.append((m, gi))
                    elim.add(low, {cid: Fraction(1)})
        for target in sorted(cand_monos):
            rem, prov = elim.reduce({target: Fraction(1)}, {})
            if rem is not None:
                continue
            # e_target + sum(prov[c] * product_c) = 0; rebuild over Z
            f = _integral_combination(gens, cols, prov)
            ev = evaluate_tropically(f, w)
            if len(ev.argmin) == 1 and ev.argmin[0] == target and ev.runner_up is not None:
                return NonMembershipCertificate(
                    source=f"slice[deg={degree}]",
                    polynomial=f,
                    unique_min_monomial=target,
                    min_value=ev.min_value,
                    runner_up_value=ev.runner_up,
                )
    return None


def _integral_combination(
    gens: Sequence[SparsePoly], cols: Sequence[tuple[Monomial, int]], prov: dict
) -> SparsePoly:
    """Rebuild -sum(prov[c] * product_c) with integer coefficients."""
    denom = 1
    for v in prov.values():
        denom = denom * v.denominator // gcd(denom, v.denominator)
    f = SparsePoly.zero()
    for cid, coef in prov.items():
        m, gi = cols[cid]
        k = -coef * denom
        f = f + gens[gi].mul_monomial(m).scale(int(k))
    return f


def certify_not_in_tc3(
    a: TropMatrix, b: TropMatrix, *, deep: bool = True
) -> Optional[NonMembershipCertificate]:
    """First witness polynomial with a strictly unique argmin at (A, B).

    Searches the generator / deg-3 / deg-4 witness families in order; when
    they all tie and ``deep`` is set, falls back to the complete degree-4
    slice search.  Returns None when everything ties (inconclusive: this is
    never a membership proof).
    """
    if a.n != 3 or b.n != 3:
        raise SizeMismatchError("certificates are implemented for n = 3")
    w = weight_of_pair(a, b)
    for label, f in witness_family():
        ev = evaluate_tropically(f, w)
        if len(ev.argmin) == 1:
            assert ev.runner_up is not None
            return NonMembershipCertificate(
                source=label,
                polynomial=f,
                unique_min_monomial=ev.argmin[0],
                min_value=ev.min_value,
                runner_up_value=ev.runner_up,
            )
    if deep:
        return find_monomial_initial_form(a, b, degree=4)
    return None


# ---------------------------------------------------------------------------
# region classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairClassification:
    """Venn-region label of a matrix pair (n in {2, 3})."""

    n: int
    ts: bool
    ts_witness: Optional[tuple[int, int]]
    tpre: TpreResult
    tc_status: str  # "in" | "out" (n=2), "certified-out" | "unknown" (n=3)
    certificate: Optional[NonMembershipCertificate] = None


def classify_pair(a: TropMatrix, b: TropMatrix, *, deep: bool = True) -> PairClassification:
    if a.n != b.n:
        raise SizeMismatchError(f"size mismatch: {a.n} vs {b.n}")
    if a.n not in (2, 3):
        raise ValueError("classification is implemented for n in {2, 3}")
    from .core import trop_mul

    ts = in_ts(a, b)
    ts_wit = None if ts else first_difference(trop_mul(a, b), trop_mul(b, a))
    tpre = in_tpre(a, b)
    cert = None
    if a.n == 2:
        status = "in" if in_tc2(a, b) else "out"
    else:
        cert = certify_not_in_tc3(a, b, deep=deep)
        status = "certified-out" if cert is not None else "unknown"
    return PairClassification(
        n=a.n, ts=ts, ts_witness=ts_wit, tpre=tpre, tc_status=status, certificate=cert
    )
