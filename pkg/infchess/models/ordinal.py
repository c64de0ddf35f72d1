"""Ordinals below omega^omega in Cantor normal form and affine value families."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable, Mapping

from infchess.core.errors import MalformedFormulaError, OrdinalError, OrdinalOverflowError

MAX_EXPONENT = 64

_OMEGA = r"(?:w|ω)"
_ORDINAL_TERM = re.compile(rf"^(?:{_OMEGA}(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


class Ordering(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """Descending (exponent, coefficient) pairs; the empty tuple is zero."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous: int | None = None
        for exponent, coefficient in self.terms:
            if exponent < 0 or coefficient < 1:
                raise OrdinalError(f"bad term w^{exponent}*{coefficient}")
            if exponent > MAX_EXPONENT:
                raise OrdinalOverflowError(f"exponent {exponent} exceeds {MAX_EXPONENT}", exponent=exponent)
            if previous is not None and exponent >= previous:
                raise OrdinalError("exponents must strictly decrease")
            previous = exponent

    @classmethod
    def of(cls, value: int) -> Ordinal:
        if value < 0:
            raise OrdinalError("ordinals are non-negative")
        return cls(((0, value),)) if value else cls()

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[int, int]]) -> Ordinal:
        """Builds an ordinal from possibly unordered pairs by summing them in order."""
        result = cls()
        for exponent, coefficient in pairs:
            if coefficient:
                result = result + cls(((exponent, coefficient),))
        return result

    def __lt__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms < other.terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return other >= 0 and self.terms == Ordinal.of(other).terms
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        # finite ordinals hash like the ints they equal
        return hash(self.finite_part) if self.is_finite else hash(self.terms)

    def __add__(self, other: Ordinal | int) -> Ordinal:
        return add(self, other if isinstance(other, Ordinal) else Ordinal.of(other))

    def __radd__(self, other: int) -> Ordinal:
        return add(Ordinal.of(other), self)

    def __mul__(self, k: int) -> Ordinal:
        return nat_mul(self, k)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    @property
    def degree(self) -> int:
        """Leading exponent; zero for finite ordinals."""
        return self.terms[0][0] if self.terms else 0

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    @property
    def finite_part(self) -> int:
        return self.coefficient(0)

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.finite_part

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal.of(1)


def compare(x: Ordinal, y: Ordinal) -> Ordering:
    if x.terms == y.terms:
        return Ordering.EQUAL
    return Ordering.LESS if x.terms < y.terms else Ordering.GREATER


def add(x: Ordinal, y: Ordinal) -> Ordinal:
    """Ordinal sum; terms of ``x`` below the leading exponent of ``y`` are absorbed."""
    if not y.terms:
        return x
    lead, lead_coefficient = y.terms[0]
    kept = [term for term in x.terms if term[0] > lead]
    carry = x.coefficient(lead)
    return Ordinal((*kept, (lead, lead_coefficient + carry), *y.terms[1:]))


def succ(x: Ordinal) -> Ordinal:
    return add(x, ONE)


def nat_mul(x: Ordinal, k: int) -> Ordinal:
    if k < 0:
        raise OrdinalError("multiplier must be a natural number")
    if k == 0 or not x.terms:
        return ZERO
    (lead, coefficient), *tail = x.terms
    return Ordinal(((lead, coefficient * k), *tail))


def omega_pow(exponent: int) -> Ordinal:
    if exponent < 0 or exponent > MAX_EXPONENT:
        raise OrdinalOverflowError(f"exponent {exponent} outside 0..{MAX_EXPONENT}", exponent=exponent)
    return Ordinal(((exponent, 1),))


OMEGA = omega_pow(1)


def format_ordinal(x: Ordinal) -> str:
    if not x.terms:
        return "0"
    return " + ".join(_format_term(e, str(c), c == 1) for e, c in x.terms)


def _format_term(exponent: int, coefficient: str, unit: bool) -> str:
    if exponent == 0:
        return coefficient
    head = "w" if exponent == 1 else f"w^{exponent}"
    return head if unit else f"{head}*{coefficient}"


def parse_ordinal(text: str) -> Ordinal:
    """Parses ``w^3*2 + w^2 + w*4 + 7``; terms are summed left to right."""
    result = ZERO
    for raw in _split_terms(text):
        match = _ORDINAL_TERM.match(raw)
        if not match:
            raise OrdinalError(f"cannot parse ordinal term {raw!r}")
        exponent_text, coefficient_text, constant = match.groups()
        if constant is not None:
            result = result + Ordinal.of(int(constant))
            continue
        exponent = int(exponent_text) if exponent_text is not None else 1
        coefficient = int(coefficient_text) if coefficient_text is not None else 1
        if exponent > MAX_EXPONENT:
            raise OrdinalOverflowError(f"exponent {exponent} exceeds {MAX_EXPONENT}", exponent=exponent)
        if coefficient:
            result = result + Ordinal(((exponent, coefficient),))
    return result


def _split_terms(text: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for char in text.replace(" ", ""):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "+" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    if any(not part for part in parts):
        raise OrdinalError(f"empty term in {text!r}")
    return parts


@dataclass(frozen=True)
class Affine:
    """Coefficient ``a*n + b`` of one family parameter."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0 or self.a + self.b < 1:
            raise MalformedFormulaError(f"affine coefficient ({self.a}, {self.b}) is not positive")

    def __call__(self, n: int) -> int:
        return self.a * n + self.b

    def format(self, param: str = "n") -> str:
        if self.a == 0:
            return str(self.b)
        head = param if self.a == 1 else f"{self.a}{param}"
        return head if self.b == 0 else f"({head}+{self.b})"


@dataclass(frozen=True)
class FamilyValueFormula:
    """Value of the n-th member of a move family: a CNF sum with affine coefficients."""

    terms: tuple[tuple[int, Affine], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise MalformedFormulaError("formula needs at least one term")
        previous: int | None = None
        for exponent, _ in self.terms:
            if exponent < 0 or exponent > MAX_EXPONENT:
                raise MalformedFormulaError(f"exponent {exponent} out of range")
            if previous is not None and exponent >= previous:
                raise MalformedFormulaError("formula exponents must strictly decrease")
            previous = exponent

    @classmethod
    def constant(cls, value: Ordinal) -> FamilyValueFormula:
        if not value.terms:
            raise MalformedFormulaError("zero is not a family value")
        return cls(tuple((e, Affine(0, c)) for e, c in value.terms))

    @classmethod
    def linear(cls, exponent: int = 0, a: int = 1, b: int = 0) -> FamilyValueFormula:
        return cls(((exponent, Affine(a, b)),))

    @property
    def is_constant(self) -> bool:
        return all(coef.a == 0 for _, coef in self.terms)

    def evaluate(self, n: int) -> Ordinal:
        return eval_formula(self, n)

    def supremum(self) -> Ordinal:
        return sup_family(self)

    def successor(self) -> FamilyValueFormula:
        """Formula for ``f(n) + 1``."""
        if self.terms[-1][0] == 0:
            *head, (_, last) = self.terms
            return FamilyValueFormula((*head, (0, Affine(last.a, last.b + 1))))
        return FamilyValueFormula((*self.terms, (0, Affine(0, 1))))

    def prefixed(self, prefix: Ordinal) -> FamilyValueFormula:
        """Formula for ``prefix + f(n)``."""
        lead = self.terms[0][0]
        kept = tuple((e, Affine(0, c)) for e, c in prefix.terms if e > lead)
        carry = prefix.coefficient(lead)
        first = self.terms[0][1]
        return FamilyValueFormula((*kept, (lead, Affine(first.a, first.b + carry)), *self.terms[1:]))

    def format(self, param: str = "n") -> str:
        return " + ".join(_format_term(e, coef.format(param), coef == Affine(0, 1)) for e, coef in self.terms)

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def fit(cls, values: Mapping[int, Ordinal]) -> FamilyValueFormula:
        """Finds the affine formula through sampled values; raises if none exists."""
        if not values:
            raise MalformedFormulaError("cannot fit an empty sample set")
        samples = sorted(values)
        exponents = sorted({e for value in values.values() for e, _ in value.terms}, reverse=True)
        terms: list[tuple[int, Affine]] = []
        for exponent in exponents:
            points = [(n, values[n].coefficient(exponent)) for n in samples]
            if len(points) == 1:
                a, b = 0, points[0][1]
            else:
                (n0, c0), (n1, c1) = points[0], points[1]
                if (c1 - c0) % (n1 - n0):
                    raise MalformedFormulaError(f"coefficient of w^{exponent} is not affine in the sample")
                a = (c1 - c0) // (n1 - n0)
                b = c0 - a * n0
            if a < 0 or b < 0 or a + b < 1:
                raise MalformedFormulaError(f"coefficient of w^{exponent} is not a positive affine function")
            terms.append((exponent, Affine(a, b)))
        formula = cls(tuple(terms))
        for n in samples:
            if eval_formula(formula, n) != values[n]:
                raise MalformedFormulaError(f"sample {n} does not lie on {formula}")
        return formula


def eval_formula(formula: FamilyValueFormula, n: int) -> Ordinal:
    if n < 1:
        raise MalformedFormulaError("family parameter starts at 1")
    return Ordinal(tuple((e, coef(n)) for e, coef in formula.terms if coef(n)))


def sup_family(formula: FamilyValueFormula) -> Ordinal:
    """Least ordinal bounding every member; the top varying term becomes the next power of omega."""
    varying = [e for e, coef in formula.terms if coef.a > 0]
    if not varying:
        return eval_formula(formula, 1)
    top = varying[0]
    head = Ordinal(tuple((e, coef.b) for e, coef in formula.terms if e > top))
    return add(head, omega_pow(top + 1))


def parse_formula(text: str, param: str = "n") -> FamilyValueFormula:
    """Parses ``w^2*3 + w*n + (2n+5)``; coefficients are ints, ``n``, ``2n`` or ``(an+b)``."""
    name = re.escape(param)
    coef = rf"\d+|\d*{name}|\(\d*{name}\+\d+\)"
    pattern = re.compile(rf"^(?:{_OMEGA}(?:\^(\d+))?(?:\*({coef}))?|({coef}))$")
    terms: list[tuple[int, Affine]] = []
    for raw in _split_terms(text):
        match = pattern.match(raw)
        if not match:
            raise MalformedFormulaError(f"cannot parse formula term {raw!r}")
        exponent_text, coefficient_text, constant = match.groups()
        if constant is not None:
            terms.append((0, _parse_affine(constant, param)))
            continue
        exponent = int(exponent_text) if exponent_text is not None else 1
        terms.append((exponent, _parse_affine(coefficient_text or "1", param)))
    return FamilyValueFormula(tuple(terms))


def _parse_affine(text: str, param: str) -> Affine:
    text = text.strip("()")
    if param not in text:
        return Affine(0, int(text))
    head, _, tail = text.partition("+")
    factor = head[: -len(param)]
    return Affine(int(factor) if factor else 1, int(tail) if tail else 0)


__all__ = [
    "MAX_EXPONENT",
    "Ordering",
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "Affine",
    "FamilyValueFormula",
    "compare",
    "add",
    "succ",
    "nat_mul",
    "omega_pow",
    "eval_formula",
    "sup_family",
    "format_ordinal",
    "parse_ordinal",
    "parse_formula",
]
