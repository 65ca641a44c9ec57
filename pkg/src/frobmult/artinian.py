"""Linear algebra on finite-dimensional quotients S/I.

Everything here works on the standard-monomial basis of a reduced Groebner
basis.  Local questions (the ring R localized at the origin) are answered on
:func:`localize`-d ideals, whose global quotient already is local.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import NoStabilization, NotArtinian, NotHomogeneous
from .ffpoly import Polynomial, PolyRing, monomial_divides, monomials_of_degree
from .groebner import DEFAULT_DEGREE_CAP, GroebnerBasis, Ideal
from .linalg import nullspace


def _pure_power_vars(lms: Sequence[tuple], nvars: int) -> set[int]:
    found = set()
    for m in lms:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            found.add(support[0])
    return found


def standard_monomials(G: GroebnerBasis) -> list[tuple]:
    """Monomials outside the leading-term ideal, ascending in the GB's order."""
    n = G.ring.nvars
    if G.is_unit():
        return []
    lms = G.leading_monomials()
    missing = set(range(n)) - _pure_power_vars(lms, n)
    if missing:
        names = ", ".join(G.ring.variables[i] for i in sorted(missing))
        raise NotArtinian(f"no pure-power leading monomial for {names}; quotient is infinite")
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if mm in seen or any(monomial_divides(lm, mm) for lm in lms):
                    continue
                seen.add(mm)
                nxt.append(mm)
        frontier = nxt
    return sorted(seen, key=G.order.key)


class Quotient:
    """The F_p-algebra S/I with its standard-monomial basis (I zero-dimensional)."""

    def __init__(self, ideal: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ideal = ideal
        self.ring: PolyRing = ideal.ring
        self.gb = ideal.groebner(degree_cap=degree_cap)
        self.basis = standard_monomials(self.gb)
        self.index = {m: i for i, m in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.gb.normal_form(f)

    def coords(self, f: Polynomial) -> list[int]:
        v = [0] * len(self.basis)
        for m, c in self.gb.normal_form(f).terms:
            v[self.index[m]] = c
        return v

    def element(self, v: Sequence[int]) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in zip(self.basis, v) if c % self.ring.p})

    def basis_polynomials(self) -> list[Polynomial]:
        return [self.ring.monomial(m) for m in self.basis]

    def multiplication_matrix(self, f: Polynomial) -> list[list[int]]:
        """Matrix of a -> f*a; column j is the image of basis element j."""
        cols = [self.coords(f.mul_term(m)) for m in self.basis]
        return [list(row) for row in zip(*cols)] if cols else []

    def socle_basis(self) -> list[list[int]]:
        rows = []
        for x in self.ring.gens():
            rows.extend(self.multiplication_matrix(x))
        return nullspace(rows, len(self.basis), self.ring.p)


def localize(I: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """The primary component of a zero-dimensional I at the origin.

    With L the global colength, every maximal-ideal-power m^L vanishes in the
    local ring at the origin, so I + (x_1^L, ..., x_n^L) localizes to I there
    and is the unit ideal at every other point.
    """
    G = I.groebner(degree_cap=degree_cap)
    if G.is_unit():
        return I
    L = len(standard_monomials(G))
    ring = I.ring
    powers = [ring.var(i) ** L for i in range(ring.nvars)]
    if all(G.contains(x) for x in powers):
        return I
    return I + powers


def quotient_length(I: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    return len(standard_monomials(I.groebner(degree_cap=degree_cap)))


def local_length(I: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Length of the local ring (S/I) at the origin."""
    return quotient_length(localize(I, degree_cap), degree_cap)


def socle_dimension(I: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """dim_k of the annihilator of (x_1..x_n) in S/I, via multiplication-matrix kernels."""
    return len(Quotient(I, degree_cap).socle_basis())


# -- Hilbert series of monomial ideals ---------------------------------------


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens) -> tuple:
    gens = sorted(set(gens), key=sum)
    keep: list = []
    for g in gens:
        if not any(monomial_divides(h, g) for h in keep):
            keep.append(g)
    return tuple(sorted(keep))


@lru_cache(maxsize=65536)
def _numerator(gens: tuple) -> tuple:
    # numerator K(t) with HS(S/I) = K(t) / (1-t)^n
    if not gens:
        return (1,)
    if all(all(a == 0 or b == 0 for a, b in zip(g, h)) for g, h in combinations(gens, 2)):
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    nvars = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(nvars)]
    j = max(range(nvars), key=lambda i: (counts[i], -i))
    e = min(g[j] for g in gens if g[j])
    pivot = tuple(e if i == j else 0 for i in range(nvars))
    plus = _minimalize(gens + (pivot,))
    colon = _minimalize(tuple(g[:j] + (max(0, g[j] - e),) + g[j + 1:] for g in gens))
    shifted = [0] * e + list(_numerator(colon))
    return tuple(_poly_add(_numerator(plus), shifted))


def monomial_hilbert_numerator(gens: Sequence[tuple], nvars: int) -> list[int]:
    """K(t) with HS(S/(gens)) = K(t)/(1-t)^nvars, by recursive pivot splitting."""
    if not gens:
        return [1]
    if any(len(g) != nvars for g in gens):
        raise ValueError("monomial length mismatch")
    return list(_numerator(_minimalize(gens)))


@dataclass(frozen=True)
class HilbertData:
    """H(t) = numerator(t) / (1 - t)^dim in lowest terms."""

    numerator: tuple[int, ...]
    dim: int

    @property
    def e(self) -> int:
        return sum(self.numerator)

    def hilbert_function(self, degree: int) -> int:
        if self.dim == 0:
            return self.numerator[degree] if degree < len(self.numerator) else 0
        return sum(c * comb(degree - i + self.dim - 1, self.dim - 1)
                   for i, c in enumerate(self.numerator) if i <= degree)

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "dim": self.dim, "e": self.e}


def reduce_series(numerator: Sequence[int], dim: int) -> HilbertData:
    num = list(numerator)
    while dim > 0 and sum(num) == 0:
        # synthetic division by (1 - t)
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num, dim = q or [0], dim - 1
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return HilbertData(tuple(num), dim)


def hilbert_series(I: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> HilbertData:
    """Hilbert series of S/I for homogeneous I, computed on the initial ideal."""
    if not I.is_homogeneous():
        raise NotHomogeneous("hilbert_series needs homogeneous generators")
    n = I.ring.nvars
    G = I.groebner(degree_cap=degree_cap)
    return reduce_series(monomial_hilbert_numerator(G.leading_monomials(), n), n)


# -- Hilbert-Samuel multiplicity ---------------------------------------------


def dimension_from_leading_monomials(lms: Sequence[tuple], nvars: int) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    if any(sum(m) == 0 for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0


@dataclass
class HilbertSamuelData:
    e: int
    dim: int
    lengths: list[int] = field(default_factory=list)  # lengths[n] = l(R/m^n), lengths[0] = 0
    differences: list[int] = field(default_factory=list)


def maximal_ideal_power(ring: PolyRing, n: int) -> list[Polynomial]:
    return [ring.monomial(m) for m in monomials_of_degree(ring.nvars, n)]


def hilbert_samuel(J: Ideal, n_cap: int = 40, dim: int | None = None, window: int = 3,
                   degree_cap: int = DEFAULT_DEGREE_CAP) -> HilbertSamuelData:
    """Multiplicity of (S/J) at the origin from the lengths l(R/m^n).

    Returns the d-th finite difference once it repeats ``window`` times.
    """
    ring = J.ring
    if dim is None:
        dim = dimension_from_leading_monomials(J.groebner(degree_cap=degree_cap).leading_monomials(),
                                               ring.nvars)
    if dim < 1:
        raise ValueError("Hilbert-Samuel multiplicity needs dimension >= 1")
    lengths = [0]
    diffs: list[int] = []
    for n in range(1, n_cap + 1):
        lengths.append(quotient_length(J + maximal_ideal_power(ring, n), degree_cap))
        if n >= dim:
            diffs.append(sum((-1) ** k * comb(dim, k) * lengths[n - k] for k in range(dim + 1)))
            if len(diffs) >= window and len(set(diffs[-window:])) == 1:
                return HilbertSamuelData(diffs[-1], dim, lengths, diffs)
    raise NoStabilization(f"no stable {dim}-th difference within n <= {n_cap}", lengths)


def hilbert_samuel_multiplicity(J: Ideal, n_cap: int = 40, dim: int | None = None) -> int:
    return hilbert_samuel(J, n_cap, dim).e
