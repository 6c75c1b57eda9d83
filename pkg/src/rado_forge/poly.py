"""Exact multivariate integer polynomials with zero constant term.

A polynomial is a canonically ordered sum of monomials a_i * M_i, where each
M_i is a monic product of variables with positive integer exponents and each
coefficient a_i is a nonzero arbitrary-precision integer.  Canonical form:

  * like terms combined, zero coefficients dropped;
  * variables inside a monomial sorted lexicographically by name;
  * monomials sorted in descending pure-lexicographic order of their exponent
    vectors (taken over the variable names of the polynomial, sorted
    lexicographically), so printing is deterministic and parse(str(p)) == p.

Constant terms are rejected at parse time (``parse``); ``parse_with_constant``
splits them off for the affine classifier instead.  All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "PolySyntaxError",
    "ConstantTermError",
    "EmptyPolynomialError",
    "MissingVariableError",
    "Monomial",
    "Polynomial",
    "DegreeProfile",
    "ReductForm",
    "parse",
    "parse_with_constant",
    "monomial_gcd",
    "is_valid_variable",
]

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class PolySyntaxError(ValueError):
    """Malformed polynomial text; carries position and expected token."""

    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at position {position}: expected {expected}, found {found}")


class ConstantTermError(ValueError):
    """A nonzero constant term survived canonicalization."""

    def __init__(self, constant: int):
        self.constant = constant
        super().__init__(
            f"constant term {constant} is not allowed here; "
            f"use the constant-aware entry point for affine polynomials"
        )


class EmptyPolynomialError(ValueError):
    """All terms cancelled; the zero polynomial is not represented."""

    def __init__(self) -> None:
        super().__init__("all terms cancelled: the zero polynomial is not allowed")


class MissingVariableError(KeyError):
    """An evaluation assignment does not cover every variable."""

    def __init__(self, missing: tuple[str, ...]):
        self.missing = missing
        super().__init__(f"assignment missing variables: {', '.join(missing)}")


def is_valid_variable(name: str) -> bool:
    return bool(_VAR_RE.fullmatch(name))


@dataclass(frozen=True)
class Monomial:
    """A signed monomial: coefficient times a product of variable powers.

    ``exponents`` is a tuple of (variable, exponent) pairs, sorted by variable
    name, with every exponent >= 1.  The empty tuple (a bare constant) is not
    a legal monomial of a Polynomial but is permitted transiently, e.g. as a
    gcd of disjoint monomials.
    """

    coefficient: int
    exponents: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if self.coefficient == 0:
            raise ValueError("monomial coefficient must be nonzero")
        names = [v for v, _ in self.exponents]
        if names != sorted(names) or len(set(names)) != len(names):
            raise ValueError("exponent pairs must be sorted by unique variable name")
        for v, e in self.exponents:
            if not is_valid_variable(v):
                raise ValueError(f"invalid variable name: {v!r}")
            if e < 1:
                raise ValueError(f"exponent of {v} must be >= 1, got {e}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.exponents)

    @property
    def degree(self) -> int:
        """Total degree: sum of the exponents."""
        return sum(e for _, e in self.exponents)

    def degree_of(self, var: str) -> int:
        for v, e in self.exponents:
            if v == var:
                return e
        return 0

    def exponent_map(self) -> dict[str, int]:
        return dict(self.exponents)

    def monic_text(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return str(self.coefficient)
        if self.coefficient == 1:
            return self.monic_text()
        if self.coefficient == -1:
            return "-" + self.monic_text()
        return f"{self.coefficient}*{self.monic_text()}"


def monomial_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    """Greatest common divisor of two monic monomials: exponent-wise minimum.

    Coefficients are ignored (treated as 1).  The result may be the empty
    product, returned as a coefficient-1 monomial with no variables.
    """
    e1, e2 = m1.exponent_map(), m2.exponent_map()
    shared = sorted(set(e1) & set(e2))
    pairs = tuple((v, min(e1[v], e2[v])) for v in shared)
    return Monomial(1, pairs)


@dataclass(frozen=True)
class DegreeProfile:
    """Structural degree data consumed by the classifier and witness builder.

    ``levels[i]`` is the largest degree deficit of monomial i against any
    nonlinear variable (0 when there are none); ``multiplicities[i]`` is
    max(1, levels[i]).  Tuple positions follow canonical monomial order.
    """

    degrees: dict[str, int]
    per_monomial: tuple[dict[str, int], ...]
    partial_degree: int
    nonlinear: tuple[str, ...]
    levels: tuple[int, ...]
    multiplicities: tuple[int, ...]


@dataclass(frozen=True)
class ReductForm:
    """The linear polynomial obtained by renaming each monic monomial.

    ``coefficients[i]`` belongs to the i-th canonical monomial of the source;
    ``variables[i]`` is the fresh linear variable standing in for it.
    """

    coefficients: tuple[int, ...]
    variables: tuple[str, ...]

    def as_polynomial(self) -> "Polynomial":
        return Polynomial.from_terms(
            (a, {v: 1}) for a, v in zip(self.coefficients, self.variables)
        )


class Polynomial:
    """Canonical multivariate integer polynomial with zero constant term."""

    __slots__ = ("monomials",)

    monomials: tuple[Monomial, ...]

    def __init__(self, monomials: Iterable[Monomial]):
        combined, constant = _combine(
            (m.coefficient, m.exponent_map()) for m in monomials
        )
        if constant != 0:
            raise ConstantTermError(constant)
        if not combined:
            raise EmptyPolynomialError()
        object.__setattr__(self, "monomials", _canonical_sort(combined))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Mapping[str, int]]]) -> "Polynomial":
        """Build from (coefficient, {var: exponent}) pairs, canonicalizing."""
        return cls(
            Monomial(c, tuple(sorted((v, e) for v, e in exps.items() if e)))
            for c, exps in terms
            if c != 0
        )

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse(text)

    # -- structure ---------------------------------------------------------

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(m.coefficient for m in self.monomials)

    @property
    def variables(self) -> tuple[str, ...]:
        """All variables, sorted lexicographically by name."""
        seen: set[str] = set()
        for m in self.monomials:
            seen.update(m.variables)
        return tuple(sorted(seen))

    def degree_of(self, var: str) -> int:
        """Degree of ``var`` in the polynomial: max exponent over monomials."""
        return max(m.degree_of(var) for m in self.monomials)

    @property
    def is_linear(self) -> bool:
        return all(m.degree == 1 for m in self.monomials)

    @property
    def is_lev(self) -> bool:
        """Linear in each variable: partial degree equal to one."""
        return all(e == 1 for m in self.monomials for _, e in m.exponents)

    @property
    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.monomials}) == 1

    def degree_profile(self) -> DegreeProfile:
        degrees = {v: self.degree_of(v) for v in self.variables}
        per_monomial = tuple(
            {v: m.degree_of(v) for v in self.variables} for m in self.monomials
        )
        partial = max(degrees.values())
        nonlinear = tuple(v for v in self.variables if degrees[v] >= 2)
        levels = tuple(
            max((degrees[v] - m.degree_of(v) for v in nonlinear), default=0)
            for m in self.monomials
        )
        mults = tuple(max(1, l) for l in levels)
        return DegreeProfile(degrees, per_monomial, partial, nonlinear, levels, mults)

    def reduct(self) -> ReductForm:
        """Replace each monic monomial with a fresh linear variable."""
        prefix = "y"
        taken = set(self.variables)
        while any(f"{prefix}{i + 1}" in taken for i in range(len(self.monomials))):
            prefix += "y"
        names = tuple(f"{prefix}{i + 1}" for i in range(len(self.monomials)))
        return ReductForm(self.coefficients, names)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        """Exact value under a total assignment; extra keys are ignored."""
        missing = tuple(v for v in self.variables if v not in assignment)
        if missing:
            raise MissingVariableError(missing)
        total = 0
        for m in self.monomials:
            term = m.coefficient
            for v, e in m.exponents:
                term *= assignment[v] ** e
            total += term
        return total

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(self.monomials)

    def __str__(self) -> str:
        parts = [str(self.monomials[0])]
        for m in self.monomials[1:]:
            if m.coefficient < 0:
                flipped = Monomial(-m.coefficient, m.exponents)
                parts.append(f" - {flipped}")
            else:
                parts.append(f" + {m}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _combine(
    terms: Iterable[tuple[int, Mapping[str, int]]],
) -> tuple[list[Monomial], int]:
    """Sum like terms; return surviving monomials plus the constant term."""
    acc: dict[tuple[tuple[str, int], ...], int] = {}
    for coeff, exps in terms:
        key = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
        acc[key] = acc.get(key, 0) + coeff
    constant = acc.pop((), 0)
    monomials = [Monomial(c, key) for key, c in acc.items() if c != 0]
    return monomials, constant


def _canonical_sort(monomials: list[Monomial]) -> tuple[Monomial, ...]:
    var_order = sorted({v for m in monomials for v in m.variables})
    index = {v: i for i, v in enumerate(var_order)}

    def key(m: Monomial) -> tuple[int, ...]:
        vec = [0] * len(var_order)
        for v, e in m.exponents:
            vec[index[v]] = -e  # negated: ascending sort gives descending lex
        return tuple(vec)

    return tuple(sorted(monomials, key=key))


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^]))"
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                at = len(text) - len(stripped)
                raise PolySyntaxError(at, "integer, variable or operator", repr(stripped[0]))
            kind = m.lastgroup
            assert kind is not None
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise PolySyntaxError(tok[2], what, repr(tok[1]) if tok[1] else "end of input")
        return tok


def _parse_factor(toks: _Tokens) -> tuple[str, int]:
    kind, value, pos = toks.next()
    if kind != "var":
        raise PolySyntaxError(pos, "variable", repr(value) if value else "end of input")
    exp = 1
    if toks.peek()[:2] == ("op", "^"):
        toks.next()
        exp = int(toks.expect("int", "exponent integer")[1])
    return value, exp


def _parse_term(toks: _Tokens, sign: int) -> tuple[int, dict[str, int]]:
    coeff = sign
    exps: dict[str, int] = {}
    kind, value, pos = toks.peek()
    if kind == "int":
        toks.next()
        coeff *= int(value)
        nxt = toks.peek()
        if nxt[:2] == ("op", "*"):
            toks.next()
        elif nxt[0] != "var":
            return coeff, exps  # bare integer term (constant)
    elif kind != "var":
        raise PolySyntaxError(pos, "term", repr(value) if value else "end of input")
    var, exp = _parse_factor(toks)
    exps[var] = exps.get(var, 0) + exp
    while toks.peek()[:2] == ("op", "*"):
        toks.next()
        var, exp = _parse_factor(toks)
        exps[var] = exps.get(var, 0) + exp
    return coeff, exps


def _parse_terms(text: str) -> list[tuple[int, dict[str, int]]]:
    toks = _Tokens(text)
    terms: list[tuple[int, dict[str, int]]] = []
    sign = 1
    kind, value, pos = toks.peek()
    if kind == "op" and value in "+-":
        toks.next()
        sign = -1 if value == "-" else 1
    elif kind == "eof":
        raise PolySyntaxError(pos, "polynomial", "end of input")
    terms.append(_parse_term(toks, sign))
    while True:
        kind, value, pos = toks.peek()
        if kind == "eof":
            return terms
        if kind != "op" or value not in "+-":
            raise PolySyntaxError(pos, "'+' or '-'", repr(value))
        toks.next()
        terms.append(_parse_term(toks, -1 if value == "-" else 1))


def parse(text: str) -> Polynomial:
    """Parse text into canonical form; constant terms are an error."""
    monomials, constant = _combine(_parse_terms(text))
    if constant != 0:
        raise ConstantTermError(constant)
    if not monomials:
        raise EmptyPolynomialError()
    return Polynomial(monomials)


def parse_with_constant(text: str) -> tuple[Polynomial, int]:
    """Parse, splitting off the constant term (for the affine classifier)."""
    monomials, constant = _combine(_parse_terms(text))
    if not monomials:
        raise EmptyPolynomialError()
    return Polynomial(monomials), constant
