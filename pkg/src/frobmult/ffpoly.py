"""Prime fields and sparse multivariate polynomials over them.

Monomials are plain tuples of non-negative exponents, one entry per ambient
variable.  A :class:`Polynomial` keeps its terms sorted in descending order
under the ring's monomial order, so the leading term is ``terms[0]`` and
equality is term-sequence equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ._lexer import Token, tokenize
from .errors import (
    AmbientMismatch,
    DivisionByZero,
    DSLSyntaxError,
    ExponentOverflow,
    NonPrimeModulus,
    NotDivisible,
    NotPPower,
    UnknownVariable,
)

MAX_PRIME = 2**31 - 1
MAX_EXPONENT = 2**31 - 1

Monomial = tuple  # tuple[int, ...]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic in F_p on canonical integer representatives in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p <= MAX_PRIME or not is_prime(p):
            raise NonPrimeModulus(f"{p!r} is not a prime in [2, 2^31-1]")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __call__(self, value: int) -> int:
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a % self.p, n, self.p)

    def elements(self) -> range:
        return range(self.p)


# -- monomials ---------------------------------------------------------------


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_divide(a: Monomial, b: Monomial) -> Monomial:
    """Return ``a / b``; raises NotDivisible unless ``b`` divides ``a``."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        raise NotDivisible(f"{b} does not divide {a}")
    return out


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree (lex-descending)."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``degrevlex``, ``lex`` or ``elimination`` of a leading block.

    ``elimination`` with ``block=k`` compares the first ``k`` exponents by
    degrevlex first and breaks ties by degrevlex on the remaining ones.
    """

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elimination" and self.block < 1:
            raise ValueError("elimination order needs block >= 1")

    def key(self, m: Monomial) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind == "degrevlex":
            return (sum(m),) + tuple(-x for x in reversed(m))
        if self.kind == "lex":
            return m
        k = self.block
        head, tail = m[:k], m[k:]
        return ((sum(head),) + tuple(-x for x in reversed(head))
                + (sum(tail),) + tuple(-x for x in reversed(tail)))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return f"elimination({self.block})" if self.kind == "elimination" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


# -- rings and polynomials ---------------------------------------------------


class PolyRing:
    """F_p[x_1, ..., x_n] with a fixed monomial order."""

    def __init__(self, p: int | PrimeField, variables: Sequence[str], order: MonomialOrder = DEGREVLEX):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.order = order
        self._index = {v: i for i, v in enumerate(self.variables)}

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.variables == other.variables and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing({self.p}, {list(self.variables)}, {self.order})"

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return self if order == self.order else PolyRing(self.field, self.variables, order)

    def same_ambient(self, other: PolyRing) -> bool:
        return self.field == other.field and self.variables == other.variables

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Monomial, coeff: int = 1) -> Polynomial:
        if len(exps) != self.nvars:
            raise AmbientMismatch(f"monomial {exps} has wrong length for {self}")
        return Polynomial(self, {tuple(exps): coeff})

    def var(self, name_or_index: str | int) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is strictly descending, no zeros."""

    def __init__(self, ring: PolyRing, coeffs: Mapping[Monomial, int] | Iterable = ()):
        self.ring = ring
        p = ring.p
        if not isinstance(coeffs, Mapping):
            acc: dict = {}
            for m, c in coeffs:
                acc[m] = acc.get(m, 0) + c
            coeffs = acc
        items = [(m, c % p) for m, c in coeffs.items() if c % p]
        items.sort(key=lambda t: ring.order.key(t[0]), reverse=True)
        self.terms = tuple(items)

    @classmethod
    def _from_sorted(cls, ring: PolyRing, terms: tuple) -> Polynomial:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @cached_property
    def coeffs(self) -> dict:
        return dict(self.terms)

    # -- structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def leading_term(self) -> tuple[Monomial, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    @property
    def lm(self) -> Monomial:
        return self.leading_term()[0]

    @property
    def lc(self) -> int:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms]

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.coeffs.get((0,) * self.ring.nvars, 0)

    def homogeneous_component(self, degree: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self.terms if sum(m) == degree})

    def in_ring(self, ring: PolyRing) -> Polynomial:
        """Re-sort under another order of the same ambient ring."""
        if not ring.same_ambient(self.ring):
            raise AmbientMismatch(f"cannot move {self} from {self.ring} to {ring}")
        return self if ring == self.ring else Polynomial(ring, dict(self.terms))

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc)
        return self.scale(inv)

    # -- arithmetic

    def _check(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise AmbientMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ring.constant(other)
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._from_sorted(self.ring, tuple((m, -c % p) for m, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(x + y for x, y in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial._from_sorted(self.ring, tuple((m, v * c % p) for m, v in self.terms))

    def mul_term(self, m: Monomial, c: int = 1) -> Polynomial:
        """Multiply by the term ``c * m`` (order-preserving, so no re-sort)."""
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial._from_sorted(
            self.ring, tuple((tuple(x + y for x, y in zip(mm, m)), v * c % p) for mm, v in self.terms))

    def frobenius_power(self, q: int) -> Polynomial:
        """Return ``self ** q`` for ``q`` a power of the characteristic.

        Uses (sum c_i m_i)^q = sum c_i m_i^q, valid because c^p = c in F_p.
        """
        p = self.ring.p
        if not is_power_of(q, p):
            raise NotPPower(f"{q} is not a power of {p}")
        out = []
        for m, c in self.terms:
            mq = tuple(x * q for x in m)
            if any(x > MAX_EXPONENT for x in mq):
                raise ExponentOverflow(f"exponent overflow in {self.ring.format_monomial(m)}^{q}")
            out.append((mq, c))
        return Polynomial._from_sorted(self.ring, tuple(out))

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def log_p(q: int, p: int) -> int:
    if not is_power_of(q, p):
        raise NotPPower(f"{q} is not a power of {p}")
    e = 0
    while q > 1:
        q //= p
        e += 1
    return e


# -- text syntax -------------------------------------------------------------


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    parts = []
    for m, c in f.terms:
        mono = f.ring.format_monomial(m)
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


class _PolyParser:
    # expr := ['-'] term (('+'|'-') term)* ; term := power ('*' power)*
    # power := atom ['^' INT] ; atom := INT | IDENT | '(' expr ')'

    def __init__(self, ring: PolyRing, tokens: list[Token]):
        self.ring = ring
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, tok.line, tok.col, tok.text)

    def parse(self) -> Polynomial:
        if self.peek().kind == "EOF":
            self.error("empty polynomial")
        f = self.expr()
        if self.peek().kind != "EOF":
            self.error("unexpected token in polynomial")
        return f

    def expr(self) -> Polynomial:
        negate = False
        if self.peek().text in ("-", "+"):
            negate = self.take().text == "-"
        f = self.term()
        if negate:
            f = -f
        while self.peek().text in ("+", "-"):
            op = self.take().text
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.power()
        while self.peek().text == "*":
            self.take()
            f = f * self.power()
        return f

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "INT":
                self.error("exponent must be a non-negative integer", tok)
            n = int(tok.text)
            if n > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {n} too large")
            if base.is_monomial():
                (m, c), = base.terms
                return self.ring.monomial(tuple(x * n for x in m), self.ring.field.pow(c, n))
            return base ** n
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "INT":
            return self.ring.constant(int(tok.text))
        if tok.kind == "IDENT":
            if tok.text not in self.ring.variables:
                raise UnknownVariable(tok.text, tok.line, tok.col)
            return self.ring.var(tok.text)
        if tok.text == "(":
            f = self.expr()
            if self.take().text != ")":
                self.error("expected ')'", self.tokens[self.i - 1])
            return f
        self.error("expected a coefficient, variable or '('", tok)


def parse_polynomial(ring: PolyRing, text: str | list[Token]) -> Polynomial:
    """Parse ``3*x*y + 2``-style text (coefficients reduced mod p)."""
    tokens = tokenize(text) if isinstance(text, str) else list(text)
    if not tokens or tokens[-1].kind != "EOF":
        last = tokens[-1] if tokens else Token("EOF", "", 1, 1)
        tokens.append(Token("EOF", "", last.line, last.col + len(last.text)))
    return _PolyParser(ring, tokens).parse()

