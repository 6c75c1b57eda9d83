"""Explicit solution construction for certified polynomials.

Two lifting constructions produce exact positive-integer solutions:

  * ``reduct_lift``: from a zero-sum solution of the linear reduct of an
    l.e.v. polynomial, scaling each designated linear variable by the product
    of the y-values its monomial is missing, so every monomial picks up the
    full product and the linear cancellation survives verbatim.
  * ``nlp_lift``: from a solution of the polynomial with all nonlinear
    variables set to 1, multiplying the chosen exclusive degree-1 variables
    by staged products gamma_{i,j} that restore each monomial's missing
    nonlinear weight exactly (prod_j gamma_{i,j} = eta_i).

Both are verified exactly on construction, and ``*_formal_check`` re-derives
the underlying algebraic identity symbolically (y-values and g-values left as
formal variables) by exact cancellation.  ``brute_force_solutions`` is the
independent enumeration oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from .classify import (
    ExclusiveAssignment,
    NonlinearShape,
    exclusive_variables,
    lev_shape,
    negate_all_variables,
    nonlinear_shape,
    rado_condition,
)
from .poly import Polynomial

__all__ = [
    "NoExclusiveSetError",
    "NotAReductSolutionError",
    "NotAPTildeSolutionError",
    "GValuesNotDistinctError",
    "SearchSpaceTooLargeError",
    "HypothesisFailure",
    "Witness",
    "LevForm",
    "to_lev_form",
    "reduct_lift",
    "reduct_lift_formal_check",
    "nlp_lift",
    "nlp_lift_formal_check",
    "negate_transform",
    "brute_force_solutions",
    "find_reduct_solution",
    "primes_above",
    "witness_via_reduct",
    "witness_via_nlp",
    "build_witness",
    "DEFAULT_ENUM_BUDGET",
]

DEFAULT_ENUM_BUDGET = 5_000_000


class NoExclusiveSetError(ValueError):
    pass


class NotAReductSolutionError(ValueError):
    pass


class NotAPTildeSolutionError(ValueError):
    pass


class GValuesNotDistinctError(ValueError):
    pass


class SearchSpaceTooLargeError(RuntimeError):
    pass


class HypothesisFailure(RuntimeError):
    """A witness method's hypotheses do not hold for the polynomial."""

    def __init__(self, reasons: list[str]):
        self.reasons = reasons
        super().__init__("; ".join(reasons))


@dataclass(frozen=True)
class Witness:
    """A verified assignment: evaluate(polynomial, assignment) == 0 exactly."""

    assignment: dict[str, int]
    value: int
    provenance: str
    trace: dict[str, Any] = field(default_factory=dict)

    @property
    def injective(self) -> bool:
        values = list(self.assignment.values())
        return len(set(values)) == len(values)

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": 1,
            "assignment": dict(self.assignment),
            "value": self.value,
            "injective": self.injective,
            "provenance": self.provenance,
            "trace": {
                "eta": self.trace.get("eta"),
                "eta_i": self.trace.get("eta_i", []),
                "gamma": self.trace.get("gamma", {}),
                "I": self.trace.get("I", {}),
            },
        }


@dataclass(frozen=True)
class LevForm:
    """An l.e.v. polynomial rewritten as sum_i a_i * x_i * prod_{j in F_i} y_j.

    ``linear_vars[i]`` is the designated exclusive variable of canonical
    monomial i; ``product_vars`` are all remaining variables in name order;
    ``f_sets[i]`` holds the 1-based product indices dividing monomial i.
    """

    polynomial: Polynomial
    coefficients: tuple[int, ...]
    linear_vars: tuple[str, ...]
    product_vars: tuple[str, ...]
    f_sets: tuple[tuple[int, ...], ...]


def to_lev_form(p: Polynomial, exclusives: Optional[ExclusiveAssignment] = None) -> LevForm:
    """Designate the lexicographically smallest exclusive variable of each
    monomial as its linear variable; every other variable becomes a product
    variable."""
    from .classify import NotLevError

    if not p.is_lev:
        raise NotLevError(f"{p} is not linear in each variable")
    if exclusives is None:
        exclusives = exclusive_variables(p)
    if exclusives is None:
        raise NoExclusiveSetError(f"{p}: some monomial has no exclusive variable")
    designated, products, f_sets = lev_shape(p, exclusives)
    return LevForm(p, p.coefficients, designated, products, f_sets)


def reduct_lift(
    form: LevForm, alpha: Sequence[int], y_values: Sequence[int]
) -> Witness:
    """Lift a zero-sum solution of the reduct: x_i := alpha_i times the
    product of the y-values outside F_i, so that the whole polynomial equals
    (prod of all y-values) * sum(a_i * alpha_i) = 0."""
    k = len(form.coefficients)
    if len(alpha) != k:
        raise NotAReductSolutionError(f"need {k} alpha values, got {len(alpha)}")
    if any(a == 0 for a in alpha):
        raise NotAReductSolutionError("alpha values must be nonzero")
    residue = sum(a * x for a, x in zip(form.coefficients, alpha))
    if residue != 0:
        raise NotAReductSolutionError(
            f"sum(a_i * alpha_i) = {residue}, not an exact reduct solution"
        )
    if len(y_values) != len(form.product_vars):
        raise ValueError(
            f"need {len(form.product_vars)} y values, got {len(y_values)}"
        )
    if any(y < 1 for y in y_values):
        raise ValueError("y values must be positive")
    assignment: dict[str, int] = {}
    x_values = []
    for i, x_var in enumerate(form.linear_vars):
        scale = 1
        for j, y in enumerate(y_values, start=1):
            if j not in form.f_sets[i]:
                scale *= y
        assignment[x_var] = alpha[i] * scale
        x_values.append(alpha[i] * scale)
    for var, y in zip(form.product_vars, y_values):
        assignment[var] = y
    value = form.polynomial.evaluate(assignment)
    full_product = 1
    for y in y_values:
        full_product *= y
    # exact identity from the construction, not merely value == 0
    assert value == full_product * residue == 0
    return Witness(
        assignment,
        value,
        "ReductLift",
        {"eta": full_product, "eta_i": x_values, "gamma": {}, "I": {}},
    )


def _substitute_formal(
    p: Polynomial, mapping: Mapping[str, tuple[int, Mapping[str, int]]]
) -> dict[tuple[tuple[str, int], ...], int]:
    """Substitute each variable by integer * monomial and combine like terms.

    Returns the surviving terms keyed by sorted exponent tuples; an empty
    dict means the substituted polynomial cancelled to zero.
    """
    acc: dict[tuple[tuple[str, int], ...], int] = {}
    for m in p.monomials:
        coeff = m.coefficient
        exps: dict[str, int] = {}
        for v, e in m.exponents:
            cv, ev = mapping[v]
            coeff *= cv**e
            for w, d in ev.items():
                exps[w] = exps.get(w, 0) + d * e
        key = tuple(sorted((v, e) for v, e in exps.items() if e))
        acc[key] = acc.get(key, 0) + coeff
        if acc[key] == 0:
            del acc[key]
    return acc


def reduct_lift_formal_check(form: LevForm, alpha: Sequence[int]) -> bool:
    """With the y-values left as formal variables, verify the polynomial
    identity  P(x(alpha, y), y) == (prod_j y_j) * sum(a_i alpha_i)  by exact
    cancellation.  ``alpha`` need not be a reduct solution here."""
    mapping: dict[str, tuple[int, Mapping[str, int]]] = {}
    for i, x_var in enumerate(form.linear_vars):
        outside = {
            form.product_vars[j - 1]: 1
            for j in range(1, len(form.product_vars) + 1)
            if j not in form.f_sets[i]
        }
        mapping[x_var] = (alpha[i], outside)
    for var in form.product_vars:
        mapping[var] = (1, {var: 1})
    acc = _substitute_formal(form.polynomial, mapping)
    residue = sum(a * x for a, x in zip(form.coefficients, alpha))
    if residue != 0:
        key = tuple(sorted((v, 1) for v in form.product_vars))
        acc[key] = acc.get(key, 0) - residue
        if acc[key] == 0:
            del acc[key]
    return not acc


def _nlp_tables(
    p: Polynomial, shape: NonlinearShape
) -> tuple[dict[str, int], list[dict[str, int]], list[list[tuple[int, ...]]]]:
    """Degrees d(y_s), per-monomial degrees d_i(y_s), and the nested index
    sets I_{i,j} = {s : d(y_s) - d_i(y_s) >= j} for j = 1..m_i (1-based s)."""
    degrees = {v: p.degree_of(v) for v in shape.nonlinear}
    per_monomial = [
        {v: m.degree_of(v) for v in shape.nonlinear} for m in p.monomials
    ]
    i_sets: list[list[tuple[int, ...]]] = []
    for i, deg_i in enumerate(per_monomial):
        rows = []
        for j in range(1, shape.multiplicities[i] + 1):
            rows.append(
                tuple(
                    s + 1
                    for s, v in enumerate(shape.nonlinear)
                    if degrees[v] - deg_i[v] >= j
                )
            )
        i_sets.append(rows)
    return degrees, per_monomial, i_sets


def nlp_lift(
    p: Polynomial,
    shape: NonlinearShape,
    alpha_beta: Mapping[str, int],
    g: Sequence[int],
) -> Witness:
    """Lift a solution of the nonlinear-variables-to-1 substitution of p.

    With eta = prod_s g_s^{d(y_s)} and gamma_{i,j} = prod_{s in I_{i,j}} g_s,
    each monomial's chosen exclusive variables absorb exactly its missing
    nonlinear weight (prod_j gamma_{i,j} = eta_i), so the full polynomial
    evaluates to eta times the substituted solution's value, i.e. zero.
    """
    h = len(shape.nonlinear)
    if len(g) != h:
        raise ValueError(f"need {h} g values (one per nonlinear variable), got {len(g)}")
    if len(set(g)) != len(g):
        raise GValuesNotDistinctError(f"g values must be pairwise distinct: {list(g)}")
    if any(v < 2 for v in g):
        raise ValueError("g values must be integers >= 2")
    substituted = _substitute_ones(p, shape.nonlinear)
    missing = [v for v in substituted.variables if v not in alpha_beta]
    if missing:
        raise NotAPTildeSolutionError(f"solution missing variables: {missing}")
    residue = substituted.evaluate(alpha_beta)
    if residue != 0:
        raise NotAPTildeSolutionError(
            f"substituted polynomial evaluates to {residue}, not 0"
        )
    degrees, per_monomial, i_sets = _nlp_tables(p, shape)
    g_of = {s + 1: g[s] for s in range(h)}
    eta = 1
    for s, v in enumerate(shape.nonlinear):
        eta *= g[s] ** degrees[v]
    eta_i: list[int] = []
    gamma: dict[str, int] = {}
    i_json: dict[str, list[int]] = {}
    assignment: dict[str, int] = dict()
    for v, val in alpha_beta.items():
        if v in substituted.variables:
            assignment[v] = val
    for s, v in enumerate(shape.nonlinear):
        assignment[v] = g[s]
    for i, m in enumerate(p.monomials):
        nl_part = 1
        for v in shape.nonlinear:
            nl_part *= g_of[shape.nonlinear.index(v) + 1] ** per_monomial[i][v]
        level_product = 1
        for s, v in enumerate(shape.nonlinear):
            level_product *= g[s] ** (degrees[v] - per_monomial[i][v])
        eta_i.append(level_product)
        gammas_i = []
        for j, members in enumerate(i_sets[i], start=1):
            value = 1
            for s in members:
                value *= g_of[s]
            gammas_i.append(value)
            gamma[f"{i + 1},{j}"] = value
            i_json[f"{i + 1},{j}"] = list(members)
        product = 1
        for value in gammas_i:
            product *= value
        # proof identities: prod_j gamma_{i,j} = eta_i and eta_i * M_i^NL = eta
        assert product == level_product
        assert product * nl_part == eta
        for j, x_var in enumerate(shape.chosen[i]):
            base = alpha_beta[x_var]
            assignment[x_var] = base * gammas_i[j] if shape.levels[i] >= 1 else base
    value = p.evaluate(assignment)
    assert value == eta * residue == 0
    return Witness(
        assignment,
        value,
        "NlpLift",
        {"eta": eta, "eta_i": eta_i, "gamma": gamma, "I": i_json},
    )


def _substitute_ones(p: Polynomial, drop: Sequence[str]) -> Polynomial:
    """p with every variable in ``drop`` set to 1."""
    dropped = set(drop)
    return Polynomial.from_terms(
        (m.coefficient, {v: e for v, e in m.exponents if v not in dropped})
        for m in p.monomials
    )


def nlp_lift_formal_check(
    p: Polynomial, shape: NonlinearShape, alpha_beta: Mapping[str, int]
) -> bool:
    """With the g-values left as formal variables (reusing the nonlinear
    variable names as symbols), verify  P(assignment(g)) == eta(g) * residue
    by exact cancellation, for an arbitrary substituted-solution candidate."""
    degrees, _per_monomial, i_sets = _nlp_tables(p, shape)
    substituted = _substitute_ones(p, shape.nonlinear)
    residue = substituted.evaluate(alpha_beta)
    mapping: dict[str, tuple[int, Mapping[str, int]]] = {}
    for v in substituted.variables:
        mapping[v] = (alpha_beta[v], {})
    for v in shape.nonlinear:
        mapping[v] = (1, {v: 1})
    for i, groups in enumerate(shape.chosen):
        for j, x_var in enumerate(groups, start=1):
            members = i_sets[i][j - 1]
            formal = {shape.nonlinear[s - 1]: 1 for s in members}
            scale = alpha_beta[x_var]
            if shape.levels[i] >= 1:
                mapping[x_var] = (scale, formal)
            else:
                mapping[x_var] = (scale, {})
    acc = _substitute_formal(p, mapping)
    if residue != 0:
        key = tuple(sorted((v, degrees[v]) for v in shape.nonlinear))
        acc[key] = acc.get(key, 0) - residue
        if acc[key] == 0:
            del acc[key]
    return not acc


def negate_transform(p: Polynomial, w: Witness) -> Witness:
    """Negate every assigned value: yields a witness (over the negative
    integers) for the polynomial whose odd-degree monomials flip sign."""
    if p.evaluate(w.assignment) != 0:
        raise ValueError("witness does not solve the polynomial")
    flipped = negate_all_variables(p)
    assignment = {v: -val for v, val in w.assignment.items()}
    value = flipped.evaluate(assignment)
    assert value == 0
    return Witness(assignment, value, w.provenance, dict(w.trace, negated=True))


# -- enumeration oracle ------------------------------------------------------


def _integer_root(value: int, e: int) -> Optional[int]:
    """Exact e-th root of a positive integer, or None."""
    if value < 1:
        return None
    if e == 1:
        return value
    root = round(value ** (1.0 / e))
    for candidate in (root - 1, root, root + 1, root + 2):
        if candidate >= 1 and candidate**e == value:
            return candidate
    return None


def _isolation_split(p: Polynomial, var: str):
    """If every monomial containing ``var`` uses the same exponent e, return
    (e, with_terms, without_terms) where the terms drop ``var``; else None."""
    exponents = {m.degree_of(var) for m in p.monomials if m.degree_of(var) >= 1}
    if len(exponents) != 1:
        return None
    e = exponents.pop()
    with_terms = []
    without_terms = []
    for m in p.monomials:
        rest = [(v, d) for v, d in m.exponents if v != var]
        if m.degree_of(var) >= 1:
            with_terms.append((m.coefficient, rest))
        else:
            without_terms.append((m.coefficient, rest))
    return e, with_terms, without_terms


def _term_value(terms, values: dict[str, int]) -> int:
    total = 0
    for coeff, exps in terms:
        item = coeff
        for v, e in exps:
            item *= values[v] ** e
        total += item
    return total


def brute_force_solutions(
    p: Polynomial,
    n_bound: int,
    injective: bool = False,
    limit: Optional[int] = None,
    max_candidates: int = DEFAULT_ENUM_BUDGET,
) -> list[Witness]:
    """All solutions of p = 0 with values in [1..n_bound], in lexicographic
    order of the assignment tuple (variables in name order), up to ``limit``.

    When the lexicographically last variable occurs with one common exponent
    wherever it appears, it is solved for exactly (divisibility plus integer
    root) instead of enumerated; otherwise the full grid is walked.  Every
    emitted tuple is re-verified through ``evaluate``.
    """
    if n_bound < 1:
        raise ValueError("bound must be >= 1")
    variables = p.variables
    n = len(variables)
    split = _isolation_split(p, variables[-1]) if n >= 2 else None
    candidates = n_bound ** (n - 1) if split else n_bound**n
    if candidates > max_candidates:
        raise SearchSpaceTooLargeError(
            f"{candidates} candidate tuples exceed the budget of {max_candidates}"
        )
    results: list[Witness] = []

    def emit(assignment: dict[str, int]) -> bool:
        if injective and len(set(assignment.values())) != n:
            return False
        if p.evaluate(assignment) != 0:  # independent re-verification
            raise AssertionError(f"enumerator produced a non-solution: {assignment}")
        results.append(Witness(dict(assignment), 0, "BruteForce"))
        return limit is not None and len(results) >= limit

    if split:
        e, with_terms, without_terms = split
        last = variables[-1]
        for prefix in itertools.product(range(1, n_bound + 1), repeat=n - 1):
            values = dict(zip(variables[:-1], prefix))
            lead = _term_value(with_terms, values)
            rest = _term_value(without_terms, values)
            if lead == 0:
                if rest == 0:
                    for z in range(1, n_bound + 1):
                        if emit({**values, last: z}):
                            return results
                continue
            if (-rest) % lead != 0:
                continue
            target = (-rest) // lead
            root = _integer_root(target, e)
            if root is not None and 1 <= root <= n_bound:
                if emit({**values, last: root}):
                    return results
        return results

    for tup in itertools.product(range(1, n_bound + 1), repeat=n):
        assignment = dict(zip(variables, tup))
        if p.evaluate(assignment) == 0:
            if emit(assignment):
                return results
    return results


# -- default generators ------------------------------------------------------


def find_reduct_solution(
    coeffs: Sequence[int],
    bound: int = 20,
    minimum: int = 1,
    distinct: bool = False,
) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest tuple in [minimum..bound]^k with exact
    zero weighted sum (optionally pairwise distinct), or None."""
    k = len(coeffs)
    lows = [0] * (k + 1)
    highs = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        c = coeffs[i]
        lo, hi = (c * minimum, c * bound) if c > 0 else (c * bound, c * minimum)
        lows[i] = lows[i + 1] + lo
        highs[i] = highs[i + 1] + hi

    chosen: list[int] = []

    def extend(i: int, partial: int) -> bool:
        if i == k:
            return partial == 0
        for v in range(minimum, bound + 1):
            if distinct and v in chosen:
                continue
            nxt = partial + coeffs[i] * v
            if nxt + lows[i + 1] <= 0 <= nxt + highs[i + 1]:
                chosen.append(v)
                if extend(i + 1, nxt):
                    return True
                chosen.pop()
        return False

    if extend(0, 0):
        return tuple(chosen)
    return None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_above(lower: int, count: int) -> tuple[int, ...]:
    """The first ``count`` primes strictly greater than ``lower``."""
    found: list[int] = []
    candidate = max(lower, 1) + 1
    while len(found) < count:
        if _is_prime(candidate):
            found.append(candidate)
        candidate += 1
    return tuple(found)


def _default_alpha(coeffs: Sequence[int]) -> tuple[tuple[int, ...], bool]:
    """Reduct solution for the default generators: pairwise distinct values
    >= 2 when possible (injective witnesses), else any positive solution."""
    for bound in (20, 60, 240):
        alpha = find_reduct_solution(coeffs, bound=bound, minimum=2, distinct=True)
        if alpha is not None:
            return alpha, True
    for bound in (20, 240):
        alpha = find_reduct_solution(coeffs, bound=bound, minimum=1, distinct=False)
        if alpha is not None:
            return alpha, False
    raise HypothesisFailure(
        [f"no bounded positive solution of the reduct with coefficients {list(coeffs)}"]
    )


def witness_via_reduct(p: Polynomial) -> Witness:
    """Default reduct-lift pipeline: distinct alpha values >= 2 and product
    variables set to distinct primes above them, which makes the witness
    injective whenever the polynomial admits injective solutions."""
    if not p.is_lev:
        raise HypothesisFailure([f"{p} is not linear in each variable"])
    excl = exclusive_variables(p)
    if excl is None:
        raise HypothesisFailure([f"{p}: some monomial has no exclusive variable"])
    if rado_condition(p.coefficients) is None:
        raise HypothesisFailure(
            [f"coefficients {list(p.coefficients)} admit no zero-sum subset"]
        )
    form = to_lev_form(p, excl)
    alpha, _ = _default_alpha(form.coefficients)
    y_values = primes_above(max(alpha), len(form.product_vars))
    return reduct_lift(form, alpha, y_values)


def witness_via_nlp(p: Polynomial) -> Witness:
    """Default nonlinear-lift pipeline: solve the all-ones substitution via
    the reduct lift, then choose distinct primes above every solution value
    for the nonlinear variables."""
    if len(p.monomials) < 3:
        raise HypothesisFailure(["fewer than three monomials"])
    if rado_condition(p.coefficients) is None:
        raise HypothesisFailure(
            [f"coefficients {list(p.coefficients)} admit no zero-sum subset"]
        )
    shape, failures = nonlinear_shape(p)
    if shape is None:
        raise HypothesisFailure(failures)
    substituted = _substitute_ones(p, shape.nonlinear)
    base = witness_via_reduct(substituted)
    g = primes_above(max(base.assignment.values(), default=1), len(shape.nonlinear))
    return nlp_lift(p, shape, base.assignment, g)


def build_witness(
    p: Polynomial,
    method: str = "auto",
    n_bound: int = 20,
    injective: bool = False,
    limit: int = 1,
) -> list[Witness]:
    """CLI entry: construct witnesses by the requested method.

    ``auto`` prefers the reduct lift for l.e.v. polynomials, then the
    nonlinear lift, then bounded brute force.
    """
    if method == "auto":
        for attempt in ("reduct", "nlp"):
            try:
                return build_witness(p, attempt, n_bound, injective, limit)
            except HypothesisFailure:
                continue
        return build_witness(p, "brute", n_bound, injective, limit)
    if method == "reduct":
        w = witness_via_reduct(p)
        if injective and not w.injective:
            raise HypothesisFailure(
                ["default generators produced no injective witness"]
            )
        return [w]
    if method == "nlp":
        w = witness_via_nlp(p)
        if injective and not w.injective:
            raise HypothesisFailure(
                ["default generators produced no injective witness"]
            )
        return [w]
    if method == "brute":
        found = brute_force_solutions(p, n_bound, injective=injective, limit=limit)
        if not found:
            raise HypothesisFailure(
                [f"no solutions with values in [1..{n_bound}]"
                 + (" (injective)" if injective else "")]
            )
        return found
    raise ValueError(f"unknown method {method!r}")
