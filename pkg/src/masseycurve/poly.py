"""Exact homogeneous polynomials in x0, x1, x2 over the rationals.

Everything downstream (curve contexts, graded solvers, triple products)
trades in homogeneous forms in three variables with arbitrary-precision
rational coefficients.  This module is the common currency: a sparse term
map keyed by exponent triples, plus a small text grammar for reading and
printing forms.

Conventions fixed here and relied on everywhere else:

* Coefficients are ``fractions.Fraction``: always in lowest terms with a
  positive denominator, and never floats.
* The term order is graded lexicographic with x0 > x1 > x2.  Within a
  single homogeneous degree that is plain descending lexicographic order
  on exponent triples, and it is the one canonical order used for
  printing, for monomial bases, and for pivot selection in the solvers.
* The zero polynomial carries an explicit degree tag, so graded
  bookkeeping never special-cases "the degree of 0".  Two zero
  polynomials of different degrees compare equal (zero belongs to every
  graded piece); this keeps parse/format round-trips exact.

The text grammar (whitespace insignificant)::

    poly     := ['-'] term { ('+'|'-') term }
    term     := coef | [coef '*'] monomial
    monomial := factor { '*' factor }
    factor   := var ['^' uint]
    var      := 'x0' | 'x1' | 'x2'
    coef     := uint ['/' uint]

A zero denominator is a syntax error.  Syntax errors report the
character offset where scanning failed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, int, int]

_ZERO = Fraction(0)


class ParseError(ValueError):
    """Raised for text that does not match the polynomial grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonHomogeneousError(ValueError):
    """Raised when parsed terms do not all share one total degree."""


class DegreeMismatchError(ValueError):
    """Raised when degrees disagree: adding forms of different degrees,
    or parsing/coercing against an expected degree that does not fit."""


class HomogeneousPoly:
    """A homogeneous form of fixed degree, stored as {exponents: coefficient}.

    Instances are immutable by convention: no method mutates ``terms``
    after construction, so values may be shared freely, including across
    threads.  Zero coefficients are never stored; the zero polynomial is
    an empty map with an explicit ``degree``.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, Fraction] | Iterable = ()):
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            if not isinstance(coeff, Fraction):
                coeff = Fraction(coeff)
            if coeff:
                clean[mono] = clean.get(mono, _ZERO) + coeff
                if not clean[mono]:
                    del clean[mono]
        if __debug__:
            for mono in clean:
                assert len(mono) == 3 and min(mono) >= 0, f"bad exponents {mono}"
                assert sum(mono) == degree, f"term {mono} has degree {sum(mono)}, not {degree}"
        self.degree = degree
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPoly":
        return cls(degree, ())

    @classmethod
    def single(cls, mono: Monomial, coeff=1) -> "HomogeneousPoly":
        """The one-term form coeff * x0^e0 * x1^e1 * x2^e2."""
        return cls(sum(mono), {tuple(mono): Fraction(coeff)})

    @classmethod
    def variable(cls, i: int) -> "HomogeneousPoly":
        mono = tuple(1 if j == i else 0 for j in range(3))
        return cls.single(mono)

    # -- predicates and access ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), _ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.terms != other.terms:
            return False
        return not self.terms or self.degree == other.degree

    __hash__ = None  # mutable dict inside; rely on __eq__ only

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        # The zero polynomial coerces to the other operand's degree.
        if not self.terms and self.degree != other.degree:
            return other
        if not other.terms and other.degree != self.degree:
            return self
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono, _ZERO) + coeff
            if acc:
                terms[mono] = acc
            elif mono in terms:
                del terms[mono]
        out = HomogeneousPoly.__new__(HomogeneousPoly)
        out.degree = self.degree
        out.terms = terms
        return out

    def __neg__(self) -> "HomogeneousPoly":
        out = HomogeneousPoly.__new__(HomogeneousPoly)
        out.degree = self.degree
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            terms: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    acc = terms.get(mono, _ZERO) + c1 * c2
                    if acc:
                        terms[mono] = acc
                    elif mono in terms:
                        del terms[mono]
            out = HomogeneousPoly.__new__(HomogeneousPoly)
            out.degree = self.degree + other.degree
            out.terms = terms
            return out
        if isinstance(other, (int, Fraction)):
            return self._scaled(Fraction(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(Fraction(other))
        return NotImplemented

    def _scaled(self, c: Fraction) -> "HomogeneousPoly":
        out = HomogeneousPoly.__new__(HomogeneousPoly)
        out.degree = self.degree
        out.terms = {m: c * v for m, v in self.terms.items()} if c else {}
        return out

    def partial(self, i: int) -> "HomogeneousPoly":
        """Partial derivative with respect to x_i; degree drops by one
        (a constant differentiates to the zero form of degree 0)."""
        if i not in (0, 1, 2):
            raise ValueError(f"variable index must be 0, 1 or 2, got {i}")
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e:
                lowered = list(mono)
                lowered[i] = e - 1
                terms[tuple(lowered)] = coeff * e
        out = HomogeneousPoly.__new__(HomogeneousPoly)
        out.degree = self.degree - 1 if self.degree else 0
        out.terms = terms
        return out

    # -- presentation ------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"HomogeneousPoly({format_poly(self)!r}, degree={self.degree})"

    def sorted_terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (the canonical order)."""
        for mono in sorted(self.terms, reverse=True):
            yield mono, self.terms[mono]

    def validate(self) -> "HomogeneousPoly":
        """Audit the representation invariants; returns self."""
        for mono, coeff in self.terms.items():
            if len(mono) != 3 or min(mono) < 0 or sum(mono) != self.degree:
                raise AssertionError(f"bad monomial {mono} for degree {self.degree}")
            if not isinstance(coeff, Fraction) or coeff == 0:
                raise AssertionError(f"bad coefficient {coeff!r}")
            if coeff.denominator <= 0:
                raise AssertionError(f"non-normalized coefficient {coeff!r}")
        return self


# -- parsing ---------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, int | None, int]]:
    tokens: list[tuple[str, int | None, int]] = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^":
            tokens.append((ch, None, i))
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < size and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
            continue
        if ch == "x" and i + 1 < size and text[i + 1] in "012":
            tokens.append(("var", int(text[i + 1]), i))
            i += 2
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens: list, end: int):
        self.tokens = tokens
        self.pos = 0
        self.end = end  # offset just past the input, for EOF diagnostics

    def _peek_kind(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def _take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][2]
        return self.end

    def parse(self) -> list[tuple[Monomial, Fraction]]:
        if not self.tokens:
            raise ParseError("empty input", 0)
        terms = []
        sign = 1
        if self._peek_kind() == "-":
            self._take()
            sign = -1
        terms.append(self._term(sign))
        while self.pos < len(self.tokens):
            kind, _, pos = self._take()
            if kind == "+":
                terms.append(self._term(1))
            elif kind == "-":
                terms.append(self._term(-1))
            else:
                raise ParseError("expected '+' or '-' between terms", pos)
        return terms

    def _term(self, sign: int) -> tuple[Monomial, Fraction]:
        kind = self._peek_kind()
        coeff = Fraction(sign)
        exps = [0, 0, 0]
        if kind == "num":
            _, num, _ = self._take()
            if self._peek_kind() == "/":
                self._take()
                if self._peek_kind() != "num":
                    raise ParseError("expected denominator", self._here())
                _, den, dpos = self._take()
                if den == 0:
                    raise ParseError("zero denominator", dpos)
                coeff *= Fraction(num, den)
            else:
                coeff *= num
            if self._peek_kind() == "*":
                self._take()
                self._monomial(exps)
        elif kind == "var":
            self._monomial(exps)
        else:
            raise ParseError("expected coefficient or variable", self._here())
        return (exps[0], exps[1], exps[2]), coeff

    def _monomial(self, exps: list[int]) -> None:
        self._factor(exps)
        while self._peek_kind() == "*":
            self._take()
            self._factor(exps)

    def _factor(self, exps: list[int]) -> None:
        if self._peek_kind() != "var":
            raise ParseError("expected variable", self._here())
        _, var, _ = self._take()
        power = 1
        if self._peek_kind() == "^":
            self._take()
            if self._peek_kind() != "num":
                raise ParseError("expected exponent", self._here())
            _, power, _ = self._take()
        exps[var] += power


def parse_poly(text: str, expected_degree: int | None = None) -> HomogeneousPoly:
    """Parse a homogeneous form from text.

    All nonzero terms must share one total degree; otherwise
    NonHomogeneousError is raised.  When ``expected_degree`` is given, a
    nonzero result of a different degree raises DegreeMismatchError; a
    zero result coerces to the expected degree (zero belongs to every
    graded piece).
    """
    raw = _Parser(_tokenize(text), len(text)).parse()
    degrees = {sum(mono) for mono, coeff in raw if coeff}
    if len(degrees) > 1:
        raise NonHomogeneousError(
            f"terms of degrees {sorted(degrees)} in one polynomial"
        )
    collected: dict[Monomial, Fraction] = {}
    for mono, coeff in raw:
        if coeff:
            acc = collected.get(mono, _ZERO) + coeff
            if acc:
                collected[mono] = acc
            elif mono in collected:
                del collected[mono]
    if collected:
        degree = degrees.pop()
        if expected_degree is not None and degree != expected_degree:
            raise DegreeMismatchError(
                f"parsed degree {degree}, expected {expected_degree}"
            )
    elif expected_degree is not None:
        degree = expected_degree
    elif degrees:
        degree = degrees.pop()
    else:
        degree = sum(raw[0][0])
    return HomogeneousPoly(degree, collected)


# -- formatting ------------------------------------------------------------


def _format_term(mono: Monomial, coeff: Fraction) -> str:
    factors = []
    for i, e in enumerate(mono):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    mag = abs(coeff)
    if not factors:
        return str(mag)
    if mag == 1:
        return "*".join(factors)
    return str(mag) + "*" + "*".join(factors)


def format_poly(p: HomogeneousPoly) -> str:
    """Canonical text for a form: terms in descending graded-lex order,
    signs normalized.  ``parse_poly(format_poly(p)) == p`` always."""
    if not p.terms:
        return "0"
    pieces = []
    for index, (mono, coeff) in enumerate(p.sorted_terms()):
        body = _format_term(mono, coeff)
        if index == 0:
            pieces.append("-" + body if coeff < 0 else body)
        else:
            pieces.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(pieces)
