"""Group specifications and the text grammar for them.

A group is one of: a free group, a finite cyclic group, a one-relator
group whose relator is a product of distinct generator powers
(``x1^p1 x2^p2 ... xn^pn = 1`` with every ``|pi| >= 2``), or a free
product of such groups.  Presentations are stored in relator-normal
form: any right-hand side of the relation is moved to the left with
its exponent negated, and generator names are erased after parsing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    """Raised when a group description cannot be parsed."""


def validate_exponents(exponents) -> tuple[int, ...]:
    """Check an exponent tuple: nonempty, integral, all |p| >= 2."""
    exps = tuple(exponents)
    if not exps:
        raise ValueError("exponent tuple must be nonempty")
    for p in exps:
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"exponent {p!r} is not an integer")
        if abs(p) < 2:
            raise ValueError(f"exponent {p} has absolute value < 2")
    return exps


def normalized_exponents(exponents) -> tuple[int, ...]:
    """Sign-normal form of a tuple: all exponents made positive.

    Negating any subset of exponents does not change the associated
    representation variety, so comparisons and eligibility checks run
    on absolute values.  Idempotent.
    """
    return tuple(abs(p) for p in validate_exponents(exponents))


def exponent_gcd(exponents) -> int:
    """gcd of the exponent absolute values."""
    return math.gcd(*normalized_exponents(exponents))


@dataclass(frozen=True)
class FreeGroup:
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ValueError(f"free group rank must be an integer >= 0, got {self.rank!r}")


@dataclass(frozen=True)
class CyclicFinite:
    order: int

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 2:
            raise ValueError(f"cyclic group order must be an integer >= 2, got {self.order!r}")


@dataclass(frozen=True)
class ProductPower:
    """One-relator group with relator x1^p1 ... xn^pn = 1."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", validate_exponents(self.exponents))


@dataclass(frozen=True)
class FreeProduct:
    factors: tuple["GroupSpec", ...]

    def __post_init__(self):
        flat: list[GroupSpec] = []
        for f in self.factors:
            if isinstance(f, FreeProduct):
                flat.extend(f.factors)
            elif isinstance(f, (FreeGroup, CyclicFinite, ProductPower)):
                flat.append(f)
            else:
                raise ValueError(f"invalid free product factor {f!r}")
        if len(flat) < 2:
            raise ValueError("free product needs at least 2 factors")
        object.__setattr__(self, "factors", tuple(flat))


GroupSpec = Union[FreeGroup, CyclicFinite, ProductPower, FreeProduct]


def generator_count(spec: GroupSpec) -> int:
    """Number of generators in the defining presentation."""
    if isinstance(spec, FreeGroup):
        return spec.rank
    if isinstance(spec, CyclicFinite):
        return 1
    if isinstance(spec, ProductPower):
        return len(spec.exponents)
    if isinstance(spec, FreeProduct):
        return sum(generator_count(f) for f in spec.factors)
    raise TypeError(f"not a group spec: {spec!r}")


def deficiency(spec: GroupSpec) -> int:
    """Generators minus relators.  Defined for free and one-relator specs."""
    if isinstance(spec, FreeGroup):
        return spec.rank
    if isinstance(spec, ProductPower):
        return len(spec.exponents) - 1
    raise ValueError(f"deficiency is not defined for {type(spec).__name__}")


def contains_product_power(spec: GroupSpec) -> bool:
    if isinstance(spec, ProductPower):
        return True
    if isinstance(spec, FreeProduct):
        return any(contains_product_power(f) for f in spec.factors)
    return False


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[<>,;=*^-]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} at position {pos}")
            break
        pos = m.end()
        for kind in ("int", "ident", "punct"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, val, m.start()))
                break
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r} at position {pos}, got {val or 'end of input'!r}")
        return val

    def parse_expr(self) -> GroupSpec:
        factors = [self.parse_atom()]
        while self.peek()[1] == "*":
            self.next()
            factors.append(self.parse_atom())
        if len(factors) == 1:
            return factors[0]
        return FreeProduct(tuple(factors))

    def parse_atom(self) -> GroupSpec:
        kind, val, pos = self.peek()
        if val == "<":
            return self.parse_presentation()
        if kind == "ident":
            m = re.fullmatch(r"([FZ])(\d+)", val)
            if m is None:
                raise ParseError(f"expected F<n>, Z<n>, or a presentation at position {pos}, got {val!r}")
            self.next()
            n = int(m.group(2))
            if m.group(1) == "F":
                return FreeGroup(n)
            try:
                return CyclicFinite(n)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"expected a group atom at position {pos}, got {val or 'end of input'!r}")

    def parse_presentation(self) -> GroupSpec:
        self.expect("<")
        gens = [self._ident()]
        while self.peek()[1] == ",":
            self.next()
            gens.append(self._ident())
        if len(set(gens)) != len(gens):
            raise ParseError("duplicate generator name in presentation")
        self.expect(";")
        terms = self._word()
        if self.peek()[1] == "=":
            self.next()
            right = self._word()
            terms += [(name, -exp) for (name, exp) in right]
        self.expect(">")
        if not terms:
            return FreeGroup(len(gens))
        seen: list[str] = []
        exponents: list[int] = []
        for name, exp in terms:
            if name not in gens:
                raise ParseError(f"unknown generator {name!r} in relator")
            if name in seen:
                raise ParseError(f"generator {name!r} appears more than once in the relator")
            seen.append(name)
            exponents.append(exp)
        missing = [g for g in gens if g not in seen]
        if missing:
            raise ParseError(f"generator {missing[0]!r} does not appear in the relator")
        try:
            return ProductPower(tuple(exponents))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def _ident(self) -> str:
        kind, val, pos = self.next()
        if kind != "ident":
            raise ParseError(f"expected a generator name at position {pos}, got {val or 'end of input'!r}")
        return val

    def _word(self) -> list[tuple[str, int]]:
        # a word is '1' (trivial) or a sequence of ident('^'int)? terms
        if self.peek() == ("int", "1", self.peek()[2]):
            self.next()
            return []
        terms = []
        while self.peek()[0] == "ident":
            name = self.next()[1]
            exp = 1
            if self.peek()[1] == "^":
                self.next()
                sign = 1
                if self.peek()[1] == "-":
                    self.next()
                    sign = -1
                kind, val, pos = self.next()
                if kind != "int":
                    raise ParseError(f"expected an integer exponent at position {pos}")
                exp = sign * int(val)
            terms.append((name, exp))
        if not terms:
            kind, val, pos = self.peek()
            raise ParseError(f"expected a word at position {pos}, got {val or 'end of input'!r}")
        return terms


def parse_spec(text: str) -> GroupSpec:
    """Parse a group description.

    Grammar::

        expr         := atom ('*' atom)*
        atom         := 'F' nat | 'Z' nat | presentation
        presentation := '<' ident (',' ident)* ';' word ('=' word)? '>'
        word         := term+ | '1'
        term         := ident ('^' signed_int)?

    A relation with a right-hand side is normalized by moving the right
    word to the left with negated exponents.  Each declared generator
    must appear exactly once in the relator; multi-relator input is not
    in the grammar and is rejected.
    """
    parser = _Parser(text)
    spec = parser.parse_expr()
    kind, val, pos = parser.peek()
    if kind != "eof":
        raise ParseError(f"trailing input at position {pos}: {val!r}")
    return spec


_GENERATOR_NAMES = "abcdefghijklmnopqrstuvwxyz"


def _generator_name(i: int, n: int) -> str:
    if n <= len(_GENERATOR_NAMES):
        return _GENERATOR_NAMES[i]
    return f"g{i + 1}"


def format_spec(spec: GroupSpec) -> str:
    """Canonical text form; parse_spec(format_spec(g)) == g."""
    if isinstance(spec, FreeGroup):
        return f"F{spec.rank}"
    if isinstance(spec, CyclicFinite):
        return f"Z{spec.order}"
    if isinstance(spec, ProductPower):
        n = len(spec.exponents)
        names = [_generator_name(i, n) for i in range(n)]
        word = " ".join(f"{name}^{p}" for name, p in zip(names, spec.exponents))
        return f"<{','.join(names)}; {word}>"
    if isinstance(spec, FreeProduct):
        return " * ".join(format_spec(f) for f in spec.factors)
    raise TypeError(f"not a group spec: {spec!r}")
