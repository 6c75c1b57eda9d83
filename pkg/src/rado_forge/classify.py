"""Decision procedures for partition regularity, with replayable certificates.

Each ``classify_*`` function checks the hypotheses of one sufficient (or
necessary-and-sufficient) condition and returns a Verdict whose certificate
carries the witnessing combinatorial data: the zero-sum index set J, the
exclusive-variable designations, the F_i product sets, the (D, Q1, Q2)
two-monomial decomposition, or the exponent subset pair (I1, I2).  The
top-level ``classify`` dispatcher runs them in a fixed order so that exact
equivalences fire before pure sufficiency conditions, and falls back to
UNKNOWN with a hypothesis-failure trace when nothing applies.

Status strings: "PR", "NOT_PR", "UNKNOWN".  Injective: "yes"/"no"/"unknown".
All index sets in payloads are 1-based (matching the usual statement of the
theorems); re-checking a payload needs nothing but the polynomial itself, see
``replay_certificate``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Optional

from .poly import Monomial, Polynomial, monomial_gcd, parse

__all__ = [
    "PR",
    "NOT_PR",
    "UNKNOWN",
    "NotLinearError",
    "NoConstantTermError",
    "NotLevError",
    "NotTwoMonomialsError",
    "Certificate",
    "Verdict",
    "ExclusiveAssignment",
    "NonlinearShape",
    "rado_condition",
    "classify_linear",
    "classify_affine",
    "classify_multiplicative",
    "exclusive_variables",
    "lev_shape",
    "nonlinear_shape",
    "classify_lev",
    "classify_nonlinear",
    "classify_k2",
    "classify",
    "replay_certificate",
]

PR = "PR"
NOT_PR = "NOT_PR"
UNKNOWN = "UNKNOWN"


class NotLinearError(ValueError):
    pass


class NoConstantTermError(ValueError):
    pass


class NotLevError(ValueError):
    pass


class NotTwoMonomialsError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Theorem tag plus the combinatorial payload that makes it re-checkable."""

    theorem: str
    payload: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"theorem": self.theorem, "payload": self.payload}


@dataclass(frozen=True)
class Verdict:
    status: str
    injective: str
    certificate: Optional[Certificate] = None
    trace: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def with_trace(self, lines: list[str]) -> "Verdict":
        return Verdict(
            self.status,
            self.injective,
            self.certificate,
            tuple(lines) + self.trace,
            self.notes,
        )

    def with_notes(self, notes: list[str]) -> "Verdict":
        return Verdict(
            self.status,
            self.injective,
            self.certificate,
            self.trace,
            self.notes + tuple(notes),
        )

    def to_json(self, input_text: str, canonical: str) -> dict[str, Any]:
        return {
            "schema": 1,
            "input": input_text,
            "canonical": canonical,
            "status": self.status,
            "injective": self.injective,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "trace": list(self.trace),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ExclusiveAssignment:
    """Per-monomial exclusive variables (canonical monomial order).

    ``exclusives[i]`` lists every variable whose support is exactly monomial
    i; ``degree_one[i]`` is the sub-list of those with degree exactly 1.
    A full assignment exists only if every list is non-empty.
    """

    exclusives: tuple[tuple[str, ...], ...]
    degree_one: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class NonlinearShape:
    """The variable bookkeeping needed to lift solutions through nonlinear
    monomials: chosen degree-1 exclusives per monomial, the nonlinear
    variables, and the passive remainder."""

    chosen: tuple[tuple[str, ...], ...]
    nonlinear: tuple[str, ...]
    passive: tuple[str, ...]
    levels: tuple[int, ...]
    multiplicities: tuple[int, ...]


# -- zero-sum subsets --------------------------------------------------------


def _reachable_by_count(values: tuple[int, ...]) -> list[dict[int, set[int]]]:
    """suffix[i][c] = set of sums of c-element subsets of values[i:]."""
    k = len(values)
    suffix: list[dict[int, set[int]]] = [dict() for _ in range(k + 1)]
    suffix[k] = {0: {0}}
    for i in range(k - 1, -1, -1):
        table: dict[int, set[int]] = {c: set(s) for c, s in suffix[i + 1].items()}
        for c, sums in suffix[i + 1].items():
            bucket = table.setdefault(c + 1, set())
            bucket.update(s + values[i] for s in sums)
        suffix[i] = table
    return suffix


def _minimal_subset(values: tuple[int, ...], target: int) -> Optional[tuple[int, ...]]:
    """Smallest nonempty subset (by size, then lexicographic on 1-based
    indices) summing to ``target``; None if no such subset exists."""
    k = len(values)
    suffix = _reachable_by_count(values)
    best_size = None
    for c in range(1, k + 1):
        if target in suffix[0].get(c, ()):
            best_size = c
            break
    if best_size is None:
        return None
    chosen: list[int] = []
    remaining, need = target, best_size
    i = 0
    while need > 0:
        # taking index i stays optimal iff the rest is completable after it
        if remaining - values[i] in suffix[i + 1].get(need - 1, ()):
            chosen.append(i + 1)
            remaining -= values[i]
            need -= 1
        i += 1
    return tuple(chosen)


def rado_condition(coeffs: list[int] | tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """Zero-sum condition on a coefficient list.

    Returns the smallest nonempty index subset J (1-based; ordered by size,
    then lexicographically) with sum(coeffs[j] for j in J) == 0, or None.
    Decision and reconstruction run on a dynamic program over achievable
    sums; exhaustive subset enumeration is the test oracle.
    """
    values = tuple(coeffs)
    if not values:
        raise ValueError("coefficient list must be non-empty")
    if any(c == 0 for c in values):
        raise ValueError("coefficients must be nonzero")
    return _minimal_subset(values, 0)


# -- linear and affine (Rado) ------------------------------------------------


def _is_two_variable_difference(p: Polynomial) -> bool:
    """c*(x - y): the lone linear PR shape without injective solutions."""
    return (
        len(p.monomials) == 2
        and p.is_linear
        and p.coefficients[0] == -p.coefficients[1]
    )


def classify_linear(p: Polynomial) -> Verdict:
    """Exact classification of linear polynomials via the zero-sum subset
    condition; PR linear polynomials are injectively PR except c*(x-y)."""
    if not p.is_linear:
        raise NotLinearError(f"{p} is not linear")
    coeffs = p.coefficients
    j = rado_condition(coeffs)
    if j is None:
        return Verdict(
            NOT_PR,
            "no",
            Certificate("LinearNecessity", {"coefficients": list(coeffs)}),
            (f"linear: no nonempty subset of {list(coeffs)} sums to zero",),
        )
    injective = "no" if _is_two_variable_difference(p) else "yes"
    cert = Certificate(
        "RadoLinear", {"J": list(j), "coefficients": list(coeffs)}
    )
    trace = (f"linear: subset J={list(j)} of coefficients sums to zero",)
    if injective == "no":
        trace += ("linear: two-variable difference forces x = y, no injective solutions",)
    return Verdict(PR, injective, cert, trace)


def classify_affine(p: Polynomial, constant: int) -> Verdict:
    """Linear polynomial plus nonzero constant: PR iff the diagonal has a
    positive root, or an integer root together with the zero-sum condition."""
    if constant == 0:
        raise NoConstantTermError("constant term is zero; use classify_linear")
    if not p.is_linear:
        raise NotLinearError(f"{p} is not linear")
    coeffs = p.coefficients
    coeff_sum = sum(coeffs)
    payload: dict[str, Any] = {"coefficients": list(coeffs), "constant": constant}
    if coeff_sum == 0 or (-constant) % coeff_sum != 0:
        return Verdict(
            NOT_PR,
            "no",
            Certificate("RadoAffine", dict(payload, case="no_diagonal_root")),
            (f"affine: ({coeff_sum})*t = {-constant} has no integer solution",),
        )
    t = -constant // coeff_sum
    if t >= 1:
        cert = Certificate(
            "RadoAffine", dict(payload, case="positive_diagonal", diagonal=t)
        )
        return Verdict(
            PR, "unknown", cert, (f"affine: P({t},...,{t}) = 0 with {t} >= 1",)
        )
    j = rado_condition(coeffs)
    if t != 0 and j is not None:
        cert = Certificate(
            "RadoAffine",
            dict(payload, case="integer_diagonal_with_zero_sum", diagonal=t, J=list(j)),
        )
        return Verdict(
            PR,
            "unknown",
            cert,
            (f"affine: P({t},...,{t}) = 0 and subset J={list(j)} sums to zero",),
        )
    reason = (
        f"affine: diagonal root t={t} is not positive and "
        + ("t = 0 is no root" if t == 0 else "the zero-sum condition fails")
    )
    return Verdict(
        NOT_PR,
        "no",
        Certificate("RadoAffine", dict(payload, case="necessity", diagonal=t)),
        (reason,),
    )


# -- multiplicative (difference of coprime monomials) ------------------------


def _multiplicative_sides(p: Polynomial) -> Optional[tuple[Monomial, Monomial]]:
    """Match the shape prod(x_i^{a_i}) - prod(y_j^{b_j}): exactly two
    monomials, coefficients (1,-1) up to global sign, disjoint supports."""
    if len(p.monomials) != 2:
        return None
    m1, m2 = p.monomials
    if {m1.coefficient, m2.coefficient} != {1, -1}:
        return None
    if set(m1.variables) & set(m2.variables):
        return None
    return (m1, m2) if m1.coefficient == 1 else (m2, m1)


def classify_multiplicative(p: Polynomial) -> Optional[Verdict]:
    """Exact classification of monomial differences: PR iff some nonempty
    exponent subsets of the two sides have equal sums."""
    sides = _multiplicative_sides(p)
    if sides is None:
        return None
    left, right = sides
    a = tuple(e for _, e in left.exponents)
    b = tuple(e for _, e in right.exponents)
    match = _equal_sum_subsets(a, b)
    n_vars = len(a) + len(b)
    if match is None:
        return Verdict(
            NOT_PR,
            "no",
            Certificate(
                "MultiplicativeRado",
                {
                    "left": left.monic_text(),
                    "right": right.monic_text(),
                    "left_exponents": list(a),
                    "right_exponents": list(b),
                },
            ),
            ("multiplicative: no nonempty exponent subsets with equal sums",),
            (
                "the all-ones assignment solves every monomial difference; the "
                "multiplicative equivalence concerns solutions apart from that "
                "fixed point (equivalently, colorings of the integers >= 2)",
            ),
        )
    i1, i2, total = match
    if n_vars >= 3:
        injective = "yes"
        inj_trace = "multiplicative: at least three variables, injective solutions lift"
    else:
        injective = "no"
        inj_trace = "multiplicative: two variables with equal exponents force x = y"
    cert = Certificate(
        "MultiplicativeRado",
        {
            "left": left.monic_text(),
            "right": right.monic_text(),
            "left_exponents": list(a),
            "right_exponents": list(b),
            "I1": list(i1),
            "I2": list(i2),
            "common_sum": total,
        },
    )
    return Verdict(
        PR,
        injective,
        cert,
        (f"multiplicative: I1={list(i1)}, I2={list(i2)} both sum to {total}", inj_trace),
    )


def _equal_sum_subsets(
    a: tuple[int, ...], b: tuple[int, ...]
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """First (by |I1|, then I1 lex) pair of nonempty index subsets with equal
    sums; the matching I2 is itself (size, lex)-minimal for its sum."""
    for size in range(1, len(a) + 1):
        for combo in itertools.combinations(range(1, len(a) + 1), size):
            total = sum(a[i - 1] for i in combo)
            i2 = _minimal_subset(b, total)
            if i2 is not None:
                return combo, i2, total
    return None


# -- exclusive variables and l.e.v. shapes -----------------------------------


def exclusive_variables(p: Polynomial) -> Optional[ExclusiveAssignment]:
    """Variables occurring in exactly one monomial, grouped per monomial.

    Returns None unless every monomial owns at least one exclusive variable.
    ``degree_one`` narrows each group to the degree-1 exclusives needed by
    the nonlinear lifting condition.
    """
    support: dict[str, list[int]] = {}
    for i, m in enumerate(p.monomials):
        for v in m.variables:
            support.setdefault(v, []).append(i)
    exclusives: list[tuple[str, ...]] = []
    degree_one: list[tuple[str, ...]] = []
    for i, m in enumerate(p.monomials):
        own = tuple(v for v in m.variables if support[v] == [i])
        exclusives.append(own)
        degree_one.append(tuple(v for v in own if m.degree_of(v) == 1))
        if not own:
            return None
    return ExclusiveAssignment(tuple(exclusives), tuple(degree_one))


def lev_shape(
    p: Polynomial, exclusives: ExclusiveAssignment
) -> tuple[tuple[str, ...], tuple[str, ...], tuple[tuple[int, ...], ...]]:
    """Designate the lexicographically smallest exclusive variable of each
    monomial as its linear variable; everything else becomes the ordered
    product-variable list.  Returns (designated, products, F) with F_i the
    1-based product indices dividing monomial i."""
    designated = tuple(min(own) for own in exclusives.exclusives)
    products = tuple(v for v in p.variables if v not in set(designated))
    index = {v: j + 1 for j, v in enumerate(products)}
    f_sets = tuple(
        tuple(index[v] for v in products if m.degree_of(v) >= 1)
        for m in p.monomials
    )
    return designated, products, f_sets


def classify_lev(p: Polynomial) -> Optional[Verdict]:
    """Sufficiency for linear-in-each-variable polynomials: at least three
    monomials, an exclusive variable for every monomial, and the zero-sum
    condition.  Two-monomial l.e.v. polynomials delegate to the
    multiplicative equivalence (three or more variables required there)."""
    if not p.is_lev:
        raise NotLevError(f"{p} is not linear in each variable")
    if len(p.monomials) == 2:
        return classify_multiplicative(p)
    if len(p.monomials) < 2:
        return None
    excl = exclusive_variables(p)
    if excl is None:
        return None
    j = rado_condition(p.coefficients)
    if j is None:
        return None
    designated, products, f_sets = lev_shape(p, excl)
    cert = Certificate(
        "Thm3.5",
        {
            "coefficients": list(p.coefficients),
            "J": list(j),
            "linear_vars": list(designated),
            "product_vars": list(products),
            "F": [list(f) for f in f_sets],
        },
    )
    return Verdict(
        PR,
        "yes",
        cert,
        (
            f"lev: exclusive designates {list(designated)}, J={list(j)}, "
            f"F={[list(f) for f in f_sets]}",
        ),
    )


# -- nonlinear lifting condition ---------------------------------------------


def nonlinear_shape(p: Polynomial) -> tuple[Optional[NonlinearShape], list[str]]:
    """Check the per-monomial supply of exclusive degree-1 variables against
    the multiplicities m_i; returns (shape, failure_trace)."""
    prof = p.degree_profile()
    excl = exclusive_variables(p)
    failures: list[str] = []
    if excl is None:
        support: dict[str, set[int]] = {}
        for i, m in enumerate(p.monomials):
            for v in m.variables:
                support.setdefault(v, set()).add(i)
        for i, m in enumerate(p.monomials):
            if not any(support[v] == {i} for v in m.variables):
                failures.append(
                    f"nonlinear: monomial {i + 1} ({m.monic_text()}) has no exclusive variable"
                )
        return None, failures
    chosen: list[tuple[str, ...]] = []
    for i, m in enumerate(p.monomials):
        need = prof.multiplicities[i]
        have = excl.degree_one[i]
        if len(have) < need:
            failures.append(
                f"nonlinear: monomial {i + 1} ({m.monic_text()}) needs {need} "
                f"exclusive degree-1 variable(s), found {len(have)}"
            )
        chosen.append(tuple(sorted(have))[:need])
    if failures:
        return None, failures
    e_set = {v for group in chosen for v in group}
    passive = tuple(
        v for v in p.variables if v not in e_set and v not in set(prof.nonlinear)
    )
    shape = NonlinearShape(
        tuple(chosen), prof.nonlinear, passive, prof.levels, prof.multiplicities
    )
    return shape, []


def classify_nonlinear(p: Polynomial) -> Optional[Verdict]:
    """Sufficiency for polynomials with nonlinear variables: at least three
    monomials, the zero-sum condition, and m_i = max(1, l_i) exclusive
    degree-1 variables in each monomial."""
    if len(p.monomials) < 3:
        return None
    j = rado_condition(p.coefficients)
    if j is None:
        return None
    shape, _failures = nonlinear_shape(p)
    if shape is None:
        return None
    cert = Certificate(
        "Thm4.2",
        {
            "coefficients": list(p.coefficients),
            "J": list(j),
            "exclusive_choice": [list(g) for g in shape.chosen],
            "nonlinear_vars": list(shape.nonlinear),
            "passive_vars": list(shape.passive),
            "levels": list(shape.levels),
            "multiplicities": list(shape.multiplicities),
        },
    )
    return Verdict(
        PR,
        "yes",
        cert,
        (
            f"nonlinear: multiplicities m={list(shape.multiplicities)} met by "
            f"exclusive degree-1 choices {[list(g) for g in shape.chosen]}, J={list(j)}",
        ),
    )


# -- two-monomial analysis -----------------------------------------------------


def classify_k2(p: Polynomial) -> Optional[Verdict]:
    """Two-monomial analysis: factor out the monomial gcd D and decide on the
    coprime difference R = Q1 - Q2, whose regularity is equivalent to P's."""
    if len(p.monomials) != 2:
        raise NotTwoMonomialsError(f"{p} does not have exactly two monomials")
    m1, m2 = p.monomials
    if m1.coefficient != -m2.coefficient:
        return None
    pos, neg = (m1, m2) if m1.coefficient > 0 else (m2, m1)
    d = monomial_gcd(pos, neg)
    d_map = d.exponent_map()
    q1 = {v: e - d_map.get(v, 0) for v, e in pos.exponents if e - d_map.get(v, 0) > 0}
    q2 = {v: e - d_map.get(v, 0) for v, e in neg.exponents if e - d_map.get(v, 0) > 0}
    if not q1 or not q2:
        # one monomial divides the other; Q1 - Q2 would carry a constant term
        return None
    reduced = Polynomial.from_terms([(1, q1), (-1, q2)])
    note = f"regularity of {p} is equivalent to regularity of {reduced}"
    decomposition = {
        "gcd": d.monic_text(),
        "q1": Polynomial.from_terms([(1, q1)]).monomials[0].monic_text(),
        "q2": Polynomial.from_terms([(1, q2)]).monomials[0].monic_text(),
        "reduced": str(reduced),
    }
    if (
        len(q1) == 1
        and len(q2) == 1
        and set(q1.values()) == {1}
        and set(q2.values()) == {1}
    ):
        cert = Certificate("K2Analysis", dict(decomposition, case="variable_difference"))
        return Verdict(
            PR,
            "no",
            cert,
            (
                f"k2: gcd {d.monic_text()} leaves {reduced}; solutions force the two "
                f"variables equal, so no injective solutions",
            ),
            (note,),
        )
    inner = classify_multiplicative(reduced)
    if inner is None:  # unreachable for coprime monic sides, kept defensive
        return None
    if p == reduced:
        return inner
    # p is c * D * (Q1 - Q2): the delegated certificate talks about the
    # reduced polynomial, so wrap it with the decomposition
    cert = Certificate(
        "K2Analysis",
        dict(
            decomposition,
            case="reduced",
            inner=inner.certificate.to_json() if inner.certificate else None,
        ),
    )
    return Verdict(inner.status, inner.injective, cert, inner.trace, (note,))


# -- literature notes ----------------------------------------------------------

# Known facts about specific polynomials, surfaced as notes, never as
# certificates.  Keyed by structure up to variable renaming and global sign.
_KNOWN_FACTS = [
    (
        Polynomial.from_terms([(1, {"a": 1, "b": 1}), (1, {"a": 1, "c": 1}), (-1, {"b": 1, "c": 1})]),
        "known in the literature: xy + xz - yz is (injectively) partition regular "
        "(Csikvari, Gyarmati and Sarkozy), but admits no exclusive variables, so no "
        "implemented criterion certifies it",
    ),
    (
        Polynomial.from_terms([(1, {"a": 1}), (1, {"b": 1}), (-1, {"c": 2})]),
        "known in the literature: x + y - z^2 is not partition regular over the "
        "positive integers (Csikvari, Gyarmati and Sarkozy) even though its "
        "coefficients admit a zero-sum subset; no implemented necessity condition "
        "covers it",
    ),
]


def _matches_up_to_renaming(p: Polynomial, q: Polynomial) -> bool:
    """Structural equality of p against q or -q under variable bijections."""
    pv, qv = p.variables, q.variables
    if len(pv) != len(qv) or len(p.monomials) != len(q.monomials):
        return False
    if sorted(m.degree for m in p.monomials) != sorted(m.degree for m in q.monomials):
        return False
    neg_q = Polynomial.from_terms(
        [(-m.coefficient, m.exponent_map()) for m in q.monomials]
    )
    for perm in itertools.permutations(qv):
        renaming = dict(zip(pv, perm))
        renamed = Polynomial.from_terms(
            [
                (m.coefficient, {renaming[v]: e for v, e in m.exponents})
                for m in p.monomials
            ]
        )
        if renamed == q or renamed == neg_q:
            return True
    return False


def _literature_notes(p: Polynomial) -> list[str]:
    if len(p.variables) > 6:
        return []
    return [note for known, note in _KNOWN_FACTS if _matches_up_to_renaming(p, known)]


# -- dispatcher ----------------------------------------------------------------


def classify(p: Polynomial, ring: str = "N") -> Verdict:
    """Run every implemented decision procedure in fixed order and return the
    first conclusive verdict; UNKNOWN carries the hypothesis-failure trace.

    ``ring="Z"`` additionally tries the all-variables sign flip: a polynomial
    whose flipped form is certified PR over the positive integers is PR over
    the nonzero integers (witnesses negate).
    """
    if ring not in ("N", "Z"):
        raise ValueError(f"ring must be 'N' or 'Z', got {ring!r}")
    if ring == "Z":
        return _classify_z(p)
    trace: list[str] = []
    notes = _literature_notes(p)

    if p.is_linear:
        return classify_linear(p).with_notes(notes)
    trace.append("linear: not applicable (nonlinear monomial present)")

    if len(p.monomials) == 2:
        verdict = classify_k2(p)
        if verdict is not None:
            return verdict.with_trace(trace).with_notes(notes)
        trace.append("k2: decomposition not applicable (coefficients not (c,-c) or one monomial divides the other)")
        verdict = classify_multiplicative(p)
        if verdict is not None:
            return verdict.with_trace(trace).with_notes(notes)
        trace.append("multiplicative: shape mismatch")
    else:
        trace.append("k2/multiplicative: not applicable (monomial count != 2)")

    if p.is_lev:
        verdict = classify_lev(p)
        if verdict is not None:
            return verdict.with_trace(trace).with_notes(notes)
        excl = exclusive_variables(p)
        if excl is None:
            trace.append("lev: some monomial has no exclusive variable")
        elif rado_condition(p.coefficients) is None:
            trace.append("lev: coefficients admit no zero-sum subset")
    else:
        trace.append("lev: not linear in each variable")
        verdict = classify_nonlinear(p)
        if verdict is not None:
            return verdict.with_trace(trace).with_notes(notes)
        if len(p.monomials) < 3:
            trace.append("nonlinear: fewer than three monomials")
        elif rado_condition(p.coefficients) is None:
            trace.append("nonlinear: coefficients admit no zero-sum subset")
        else:
            _shape, failures = nonlinear_shape(p)
            trace.extend(failures)

    if p.is_homogeneous and rado_condition(p.coefficients) is None:
        prof = p.degree_profile()
        cert = Certificate(
            "HomogeneousNecessity",
            {
                "coefficients": list(p.coefficients),
                "degree": p.monomials[0].degree,
            },
        )
        trace.append(
            "homogeneous necessity: zero-sum condition fails, which is necessary "
            "for homogeneous partition regular polynomials"
        )
        return Verdict(NOT_PR, "no", cert, tuple(trace), tuple(notes))

    if all(c > 0 for c in p.coefficients) or all(c < 0 for c in p.coefficients):
        notes = notes + [
            "all coefficients share one sign, so there are no solutions over the "
            "positive integers; no implemented certificate covers this"
        ]
    return Verdict(UNKNOWN, "unknown", None, tuple(trace), tuple(notes))


def negate_all_variables(p: Polynomial) -> Polynomial:
    """P(-x1,...,-xn): monomials of odd total degree flip sign."""
    return Polynomial.from_terms(
        (
            (-m.coefficient if m.degree % 2 else m.coefficient),
            m.exponent_map(),
        )
        for m in p.monomials
    )


def _classify_z(p: Polynomial) -> Verdict:
    base = classify(p, "N")
    if base.status == PR:
        return base.with_notes(
            ["partition regularity over the positive integers transfers to the nonzero integers"]
        )
    flipped = negate_all_variables(p)
    fv = classify(flipped, "N")
    if fv.status == PR:
        assert fv.certificate is not None
        cert = Certificate(
            fv.certificate.theorem,
            dict(
                fv.certificate.payload,
                sign_map={v: -1 for v in p.variables},
                flipped=str(flipped),
            ),
        )
        return Verdict(
            PR,
            fv.injective,
            cert,
            fv.trace,
            fv.notes
            + (
                f"ring Z: {flipped} is partition regular over the positive integers; "
                f"negating its solutions solves {p} inside the negative integers",
            ),
        )
    return Verdict(
        UNKNOWN,
        "unknown",
        None,
        base.trace
        + (f"ring Z: sign-flipped form {flipped} is not certified PR either",),
        base.notes
        + ("ring Z: no negative certificates are implemented over the integers",),
    )


# -- certificate replay --------------------------------------------------------


def _subset_sum_ok(coeffs: list[int], indices: list[int]) -> bool:
    return (
        len(indices) > 0
        and len(set(indices)) == len(indices)
        and all(1 <= i <= len(coeffs) for i in indices)
        and sum(coeffs[i - 1] for i in indices) == 0
    )


def replay_certificate(p: Polynomial, verdict: Verdict) -> bool:
    """Re-validate a verdict's certificate against the polynomial alone,
    without running the classifier: every hypothesis is checked directly on
    the payload (exhaustive subset arithmetic, exponent-map lookups)."""
    cert = verdict.certificate
    if cert is None:
        return verdict.status == UNKNOWN
    payload = cert.payload
    coeffs = list(p.coefficients)
    tag = cert.theorem

    if tag == "RadoLinear":
        return (
            p.is_linear
            and payload["coefficients"] == coeffs
            and _subset_sum_ok(coeffs, payload["J"])
        )
    if tag == "LinearNecessity":
        if not p.is_linear or payload["coefficients"] != coeffs:
            return False
        return not any(
            sum(combo) == 0
            for size in range(1, len(coeffs) + 1)
            for combo in itertools.combinations(coeffs, size)
        )
    if tag == "RadoAffine":
        constant = payload["constant"]
        if payload["coefficients"] != coeffs or constant == 0 or not p.is_linear:
            return False
        case = payload["case"]
        if case == "positive_diagonal":
            t = payload["diagonal"]
            return t >= 1 and sum(coeffs) * t + constant == 0
        if case == "integer_diagonal_with_zero_sum":
            t = payload["diagonal"]
            return sum(coeffs) * t + constant == 0 and _subset_sum_ok(
                coeffs, payload["J"]
            )
        if case == "no_diagonal_root":
            s = sum(coeffs)
            return s == 0 or (-constant) % s != 0
        if case == "necessity":
            s = sum(coeffs)
            if s == 0 or (-constant) % s != 0:
                return False
            t = -constant // s
            if t >= 1:
                return False
            return t == 0 or rado_condition(coeffs) is None
        return False
    if tag == "MultiplicativeRado":
        sides = _multiplicative_sides(p)
        if sides is None:
            return False
        left, right = sides
        a = [e for _, e in left.exponents]
        b = [e for _, e in right.exponents]
        if payload["left_exponents"] != a or payload["right_exponents"] != b:
            return False
        if verdict.status == NOT_PR:
            sums_a = {
                sum(c)
                for size in range(1, len(a) + 1)
                for c in itertools.combinations(a, size)
            }
            sums_b = {
                sum(c)
                for size in range(1, len(b) + 1)
                for c in itertools.combinations(b, size)
            }
            return not (sums_a & sums_b)
        i1, i2 = payload["I1"], payload["I2"]
        return (
            len(i1) > 0
            and len(i2) > 0
            and len(set(i1)) == len(i1)
            and len(set(i2)) == len(i2)
            and all(1 <= i <= len(a) for i in i1)
            and all(1 <= j <= len(b) for j in i2)
            and sum(a[i - 1] for i in i1) == sum(b[j - 1] for j in i2)
            and sum(a[i - 1] for i in i1) == payload["common_sum"]
        )
    if tag == "Thm3.5":
        if not p.is_lev or len(p.monomials) < 3:
            return False
        if payload["coefficients"] != coeffs:
            return False
        if not _subset_sum_ok(coeffs, payload["J"]):
            return False
        designated = payload["linear_vars"]
        products = payload["product_vars"]
        if len(designated) != len(p.monomials):
            return False
        if set(designated) | set(products) != set(p.variables):
            return False
        if set(designated) & set(products):
            return False
        for i, m in enumerate(p.monomials):
            v = designated[i]
            # exclusive to monomial i, degree 1 there
            if m.degree_of(v) != 1:
                return False
            if any(other.degree_of(v) != 0 for j, other in enumerate(p.monomials) if j != i):
                return False
            f_i = payload["F"][i]
            expected = [j + 1 for j, y in enumerate(products) if m.degree_of(y) >= 1]
            if sorted(f_i) != expected:
                return False
        return True
    if tag == "Thm4.2":
        if len(p.monomials) < 3 or payload["coefficients"] != coeffs:
            return False
        if not _subset_sum_ok(coeffs, payload["J"]):
            return False
        prof = p.degree_profile()
        if list(prof.levels) != payload["levels"]:
            return False
        if list(prof.multiplicities) != payload["multiplicities"]:
            return False
        if list(prof.nonlinear) != payload["nonlinear_vars"]:
            return False
        for i, m in enumerate(p.monomials):
            group = payload["exclusive_choice"][i]
            if len(group) != prof.multiplicities[i] or len(set(group)) != len(group):
                return False
            for v in group:
                if m.degree_of(v) != 1:
                    return False
                if any(
                    other.degree_of(v) != 0
                    for j, other in enumerate(p.monomials)
                    if j != i
                ):
                    return False
        return True
    if tag == "K2Analysis":
        if len(p.monomials) != 2:
            return False
        m1, m2 = p.monomials
        if m1.coefficient != -m2.coefficient:
            return False
        pos, neg = (m1, m2) if m1.coefficient > 0 else (m2, m1)
        d = monomial_gcd(pos, neg)
        if d.monic_text() != payload["gcd"]:
            return False
        reduced = parse(payload["reduced"])
        q1 = {v: e - d.degree_of(v) for v, e in pos.exponents if e > d.degree_of(v)}
        q2 = {v: e - d.degree_of(v) for v, e in neg.exponents if e > d.degree_of(v)}
        if not q1 or not q2:
            return False
        if Polynomial.from_terms([(1, q1), (-1, q2)]) != reduced:
            return False
        if payload["case"] == "variable_difference":
            return (
                len(q1) == 1
                and len(q2) == 1
                and set(q1.values()) == {1}
                and set(q2.values()) == {1}
            )
        if payload["case"] == "reduced":
            inner = payload.get("inner")
            if verdict.status == NOT_PR:
                inner_verdict = Verdict(
                    NOT_PR,
                    "no",
                    Certificate(inner["theorem"], inner["payload"]) if inner else None,
                )
            else:
                inner_verdict = Verdict(
                    PR,
                    verdict.injective,
                    Certificate(inner["theorem"], inner["payload"]) if inner else None,
                )
            return inner is not None and replay_certificate(reduced, inner_verdict)
        return False
    if tag == "HomogeneousNecessity":
        if not p.is_homogeneous or payload["coefficients"] != coeffs:
            return False
        if payload["degree"] != p.monomials[0].degree:
            return False
        return not any(
            sum(combo) == 0
            for size in range(1, len(coeffs) + 1)
            for combo in itertools.combinations(coeffs, size)
        )
    return False
