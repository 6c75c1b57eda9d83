"""Coloring search tests: Schur fixtures, oracle equivalence, determinism."""

import itertools

import pytest

from rado_forge.poly import parse
from rado_forge.search import (
    BAD_COLORING,
    FORCED,
    INCONCLUSIVE,
    Coloring,
    SolutionConstraint,
    enumerate_constraints,
    find_bad_coloring,
    monochromatic_solution,
    rado_number,
)

SCHUR = parse("x + y - z")


# -- constraints ----------------------------------------------------------


def test_enumerate_constraints_examples():
    values = {c.values for c in enumerate_constraints(SCHUR, 4)}
    assert values == {(1, 1, 2), (1, 2, 3), (2, 1, 3), (1, 3, 4), (3, 1, 4), (2, 2, 4)}

    assert enumerate_constraints(SCHUR, 2, injective=True) == []

    p = parse("x1 + x2 - y1*y2")
    values = {c.values for c in enumerate_constraints(p, 6, injective=True)}
    assert (1, 5, 2, 3) in values


def test_constraints_lexicographic_and_verified():
    constraints = enumerate_constraints(SCHUR, 6)
    assert [c.values for c in constraints] == sorted(c.values for c in constraints)
    for c in constraints:
        assert SCHUR.evaluate(dict(zip(SCHUR.variables, c.values))) == 0


def test_solution_constraint_validates_injectivity():
    with pytest.raises(ValueError):
        SolutionConstraint((1, 1, 2), injective=True)


# -- find_bad_coloring ----------------------------------------------------------


def test_schur_bad_coloring_at_4():
    outcome = find_bad_coloring(SCHUR, 2, 4)
    assert outcome.kind == BAD_COLORING
    assert outcome.coloring.colors == (0, 1, 1, 0)
    assert outcome.coloring.classes() == [[1, 4], [2, 3]]


def test_schur_forced_at_5():
    outcome = find_bad_coloring(SCHUR, 2, 5)
    assert outcome.kind == FORCED


def test_three_color_schur_number():
    # classical value: 3-colorings of [1..13] can avoid monochromatic
    # x + y = z, colorings of [1..14] cannot
    assert find_bad_coloring(SCHUR, 3, 13).kind == BAD_COLORING
    assert find_bad_coloring(SCHUR, 3, 14).kind == FORCED
    assert rado_number(SCHUR, 3, 14) == 14


def test_single_color():
    # one color: forced exactly when a solution exists in [1..N]
    assert find_bad_coloring(SCHUR, 1, 2).kind == FORCED  # (1,1,2)
    assert find_bad_coloring(SCHUR, 1, 1).kind == BAD_COLORING


def test_budget_exhaustion_is_inconclusive():
    outcome = find_bad_coloring(SCHUR, 2, 9, injective=True, budget=5)
    assert outcome.kind == INCONCLUSIVE


def test_bad_coloring_has_no_monochromatic_solution():
    for n in (3, 4):
        outcome = find_bad_coloring(SCHUR, 2, n)
        assert outcome.kind == BAD_COLORING
        assert monochromatic_solution(SCHUR, outcome.coloring) is None


def test_forced_monotone_spot_check():
    assert find_bad_coloring(SCHUR, 2, 5).kind == FORCED
    assert find_bad_coloring(SCHUR, 2, 6).kind == FORCED


# -- monochromatic_solution ----------------------------------------------------------


def test_monochromatic_solution_examples():
    assert monochromatic_solution(SCHUR, Coloring((0, 0, 0))).values == (1, 1, 2)
    assert monochromatic_solution(SCHUR, Coloring((0, 1, 1, 0))) is None
    # no solutions at all in [1..1]
    assert monochromatic_solution(SCHUR, Coloring((0,))) is None


# -- rado_number ----------------------------------------------------------


def test_schur_threshold():
    assert rado_number(SCHUR, 2, 10) == 5


def test_weak_schur_threshold():
    assert rado_number(SCHUR, 2, 12, injective=True) == 9


def test_not_pr_polynomial_has_no_threshold():
    assert rado_number(parse("x + y - 3*z"), 2, 8) is None


def test_rado_number_nondecreasing_in_colors():
    two = rado_number(SCHUR, 2, 8)
    three = rado_number(SCHUR, 3, 8)
    assert two == 5
    assert three is None or three >= two


def test_injective_threshold_at_least_plain():
    plain = rado_number(SCHUR, 2, 12)
    injective = rado_number(SCHUR, 2, 12, injective=True)
    assert plain is not None and injective is not None
    assert injective >= plain


def test_hindman_shape_thresholds():
    p = parse("x1 + x2 - y1*y2")
    # 2+2 = 2*2 is a single-value solution, so N = 2 forces immediately
    assert rado_number(p, 2, 6) == 2
    # injective mode: no forced N up to 12 (recorded oracle outcome)
    assert rado_number(p, 2, 12, injective=True) is None


# -- full-enumeration oracle ----------------------------------------------------------


def _oracle_bad_coloring(p, r, n, injective=False):
    """Check all r^n colorings; first bad one in lexicographic order."""
    sets = {
        tuple(sorted(set(c.values)))
        for c in enumerate_constraints(p, n, injective)
    }
    for colors in itertools.product(range(r), repeat=n):
        if all(len({colors[v - 1] for v in s}) > 1 for s in sets):
            return colors
    return None


@pytest.mark.parametrize("n", range(1, 13))
def test_backtracking_matches_full_enumeration_schur(n):
    outcome = find_bad_coloring(SCHUR, 2, n)
    oracle = _oracle_bad_coloring(SCHUR, 2, n)
    if oracle is None:
        assert outcome.kind == FORCED
    else:
        assert outcome.kind == BAD_COLORING


@pytest.mark.parametrize(
    "text,n", [("x1 + x2 - y1*y2", 8), ("x + y - z^2", 10), ("x - y", 3)]
)
def test_backtracking_matches_full_enumeration_other(text, n):
    p = parse(text)
    for injective in (False, True):
        outcome = find_bad_coloring(p, 2, n, injective=injective)
        oracle = _oracle_bad_coloring(p, 2, n, injective)
        assert (outcome.kind == FORCED) == (oracle is None)


# -- determinism ----------------------------------------------------------


def _strip_ms(payload):
    payload = dict(payload)
    payload["stats"] = {k: v for k, v in payload["stats"].items() if k != "ms"}
    return payload


@pytest.mark.parametrize("text,n", [("x + y - z", 4), ("x + y - z", 5), ("x1 + x2 - y1*y2", 7)])
def test_outcomes_identical_across_workers(text, n):
    p = parse(text)
    payloads = [
        _strip_ms(
            find_bad_coloring(p, 2, n, workers=w).to_json(str(p), 2, n, False)
        )
        for w in (1, 2, 8)
    ]
    assert payloads[0] == payloads[1] == payloads[2]


def test_stats_fields():
    outcome = find_bad_coloring(SCHUR, 2, 5)
    assert outcome.stats.constraints == 10
    assert outcome.stats.nodes > 0
    payload = outcome.to_json("x + y - z", 2, 5, False)
    assert payload["outcome"] == "forced"
    assert payload["coloring"] is None
    assert payload["schema"] == 1
