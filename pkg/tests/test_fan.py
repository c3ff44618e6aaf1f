"""Prevariety complex enumeration: cells, f-vectors, lineality, feasibility."""

import random
from fractions import Fraction

import pytest

from tropcomm import (
    BudgetExceededError,
    enumerate_cells,
    f_vector,
    generators,
    lineality_space,
    named_config,
    trop_satisfied,
)
from tropcomm.fan import (
    KNOWN_FVECTOR_PREVARIETY_3_FULL,
    KNOWN_FVECTOR_VARIETY_3,
    argmin_subsets,
    candidate_count,
    cell_system,
    relative_interior_feasible,
)
from tropcomm.polynomials import SparsePoly


def test_lineality_dimensions():
    cfg = named_config("commuting:n=2")
    _, lin = lineality_space(list(cfg.gens), cfg.dim)
    assert lin == 4

    cfg = named_config("symmetric:n=3")
    _, lin = lineality_space(list(cfg.gens), cfg.dim)
    assert lin == 2

    tie_line = SparsePoly.from_terms({(1, 0): 1, (0, 1): -1})
    _, lin = lineality_space([tie_line], 2)
    assert lin == 1


def test_relative_interior_feasibility():
    gens = generators(2)
    # the all-ties pattern is the homogeneity space: feasible
    pattern = tuple(tuple(range(len(g))) for g in gens)
    eqs, stricts = cell_system(gens, pattern)
    assert stricts == []
    assert relative_interior_feasible(eqs, stricts, 8) is not None

    # requiring u - v = 0 and u - v < 0 simultaneously is infeasible
    assert relative_interior_feasible([(1, -1)], [(1, -1)], 2) is None


def test_pattern_feasibility_matches_grid_search():
    gens = generators(2)
    # pattern: both terms of the 2-term generator, first two terms of the others
    pattern = ((0, 1), (0, 1), (0, 1))
    eqs, stricts = cell_system(gens, pattern)
    witness = relative_interior_feasible(eqs, stricts, 8)

    rng = random.Random(31)
    grid_hit = None
    for _ in range(20000):
        w = tuple(Fraction(rng.randint(-6, 6)) for _ in range(8))
        ok = True
        for g, sub in zip(gens, pattern):
            vals = [sum(k * w[i] for i, k in enumerate(m) if k) for m, _ in g.terms]
            mn = min(vals)
            if tuple(t for t, v in enumerate(vals) if v == mn) != sub:
                ok = False
                break
        if ok:
            grid_hit = w
            break
    assert (witness is not None) == (grid_hit is not None)


def test_enumerate_n2():
    cfg = named_config("commuting:n=2")
    gens = list(cfg.gens)
    cells = enumerate_cells(gens, cfg.dim)
    assert len(cells) == 11
    _, lin = lineality_space(gens, cfg.dim)
    fv = f_vector(cells, lin)
    assert fv.lineality_dim == 4
    assert fv.counts == (1, 4, 6)
    # soundness: every witness realizes its cell's pattern exactly
    from tropcomm.commuting import evaluate_tropically

    for c in cells:
        for g, sub in zip(gens, c.pattern):
            ev = evaluate_tropically(g, c.witness)
            argmin = tuple(
                t for t, (m, _) in enumerate(g.terms) if ev.values[t][1] == ev.min_value
            )
            assert argmin == sub
    # disjointness: patterns are pairwise distinct
    assert len({c.pattern for c in cells}) == len(cells)
    # dimension sanity: top dimension is 6 = lineality + 2
    assert max(c.dim for c in cells) == 6


def test_enumerate_n2_is_parallel_deterministic():
    cfg = named_config("commuting:n=2")
    ser = enumerate_cells(list(cfg.gens), cfg.dim, jobs=1)
    par = enumerate_cells(list(cfg.gens), cfg.dim, jobs=2)
    assert [(c.pattern, c.dim, c.witness) for c in ser] == [
        (c.pattern, c.dim, c.witness) for c in par
    ]


def test_random_points_land_in_enumerated_cells():
    cfg = named_config("commuting:n=2")
    gens = list(cfg.gens)
    cells = enumerate_cells(gens, cfg.dim)
    patterns = {c.pattern for c in cells}
    rng = random.Random(37)
    hits = 0
    for _ in range(4000):
        w = tuple(Fraction(rng.randint(-3, 3)) for _ in range(8))
        pattern = []
        in_prevariety = True
        for g in gens:
            ok, ev = trop_satisfied(g, w)
            if not ok:
                in_prevariety = False
                break
            vals = [v for _, v in ev.values]
            pattern.append(tuple(t for t, v in enumerate(vals) if v == ev.min_value))
        if in_prevariety:
            hits += 1
            assert tuple(pattern) in patterns
    assert hits >= 50


def test_single_generator_tropical_line():
    g = SparsePoly.from_terms({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    cells = enumerate_cells([g], 3)
    assert len(cells) == 4
    _, lin = lineality_space([g], 3)
    assert lin == 1
    assert f_vector(cells, lin).counts == (1, 3)


def test_empty_generators():
    cells = enumerate_cells([], 5)
    _, lin = lineality_space([], 5)
    assert f_vector(cells, lin).counts == (1,)
    assert lin == 5


def test_budget_guard_for_full_3x3():
    cfg = named_config("commuting:n=3")
    gens = list(cfg.gens)
    count = candidate_count(gens)
    diag = 2 ** 4 - 4 - 1
    off = 2 ** 6 - 6 - 1
    assert count == diag ** 3 * off ** 6
    with pytest.raises(BudgetExceededError) as err:
        enumerate_cells(gens, cfg.dim)
    assert err.value.candidates == count


def test_reference_constants_are_not_recomputed():
    assert len(KNOWN_FVECTOR_VARIETY_3) == 9
    assert KNOWN_FVECTOR_VARIETY_3[1] == 1658
    assert KNOWN_FVECTOR_VARIETY_3[-1] == 235038
    assert len(KNOWN_FVECTOR_PREVARIETY_3_FULL) == 11
    assert KNOWN_FVECTOR_PREVARIETY_3_FULL[-1] == 58


def test_face_closure_spot_check():
    """Cells with componentwise larger argmin sets are faces: lower dimension,
    and their closure meets the cell (witness interpolation re-enters it)."""
    cfg = named_config("commuting:n=2")
    gens = list(cfg.gens)
    cells = enumerate_cells(gens, cfg.dim)
    checked = 0
    for c in cells:
        for face in cells:
            if face is c:
                continue
            if not all(set(f) >= set(s) for s, f in zip(c.pattern, face.pattern)):
                continue
            assert face.dim < c.dim
            # walking from the face witness toward the cell witness
            # immediately re-enters the cell
            eps = Fraction(1, 10 ** 6)
            mid = tuple(
                fw + eps * (cw - fw) for fw, cw in zip(face.witness, c.witness)
            )
            for g, sub2 in zip(gens, c.pattern):
                vals = [sum(k * mid[i] for i, k in enumerate(m) if k) for m, _ in g.terms]
                mn = min(vals)
                assert tuple(t for t, v in enumerate(vals) if v == mn) == sub2
            checked += 1
    assert checked >= 20


def test_argmin_subsets_order():
    subs = argmin_subsets(4)
    assert subs[0] == (0, 1)
    assert len(subs) == 2 ** 4 - 4 - 1
    sizes = [len(s) for s in subs]
    assert sizes == sorted(sizes)


def test_exact_lp_problem_api():
    from tropcomm.simplex import ExactLPProblem

    feasible = ExactLPProblem(equalities=((1, -1, 0),), stricts=((0, 1, -1),), dim=3)
    w = feasible.solve()
    assert w is not None
    assert w[0] == w[1] and w[1] < w[2]

    contradictory = ExactLPProblem(
        equalities=((1, -1, 0),), stricts=((1, -1, 0),), dim=3
    )
    assert contradictory.solve() is None


def test_relative_interior_feasible_accepts_cells():
    cfg = named_config("commuting:n=2")
    cells = enumerate_cells(list(cfg.gens), cfg.dim)
    for c in cells[:4]:
        w = relative_interior_feasible(c)
        assert w is not None
