"""Buchberger's algorithm over F_p and the ideal toolbox built on it.

The inner loops work on plain ``{monomial: coeff}`` dicts; the public surface
speaks :class:`~frobmult.ffpoly.Polynomial`.  Pair handling follows the
Gebauer-Moeller installation of Buchberger's coprime and chain criteria, with
the normal selection strategy (smallest lcm first).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DegreeCapExceeded, DivisionByZero, NotDivisible
from .ffpoly import (
    DEGREVLEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    monomial_coprime,
    monomial_divides,
    monomial_lcm,
)

DEFAULT_DEGREE_CAP = 512

_Terms = tuple  # tuple[(monomial, coeff), ...], descending, monic


def _neg_key(key, m):
    return tuple(-x for x in key(m))


def _reduce(f: dict, basis: Sequence[tuple], key, p: int, full: bool = True) -> dict:
    """Normal form of ``f`` modulo monic ``basis`` (list of (lm, terms)).

    With ``full=False`` only the head is reduced (stops at the first
    irreducible leading term).
    """
    f = dict(f)
    heap = [(_neg_key(key, m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        for g_lm, g_terms in basis:
            if all(a <= b for a, b in zip(g_lm, m)):
                q = tuple(b - a for a, b in zip(g_lm, m))
                for gm, gc in g_terms[1:]:
                    mm = tuple(x + y for x, y in zip(gm, q))
                    old = f.get(mm)
                    new = ((old or 0) - c * gc) % p
                    if new:
                        f[mm] = new
                        if old is None:
                            heapq.heappush(heap, (_neg_key(key, mm), mm))
                    elif old is not None:
                        del f[mm]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic_terms(f: dict, key, p: int) -> _Terms:
    items = sorted(f.items(), key=lambda t: key(t[0]), reverse=True)
    inv = pow(items[0][1], -1, p)
    return tuple((m, c * inv % p) for m, c in items)


def _spoly(a: _Terms, b: _Terms, p: int) -> dict:
    lcm = monomial_lcm(a[0][0], b[0][0])
    qa = tuple(x - y for x, y in zip(lcm, a[0][0]))
    qb = tuple(x - y for x, y in zip(lcm, b[0][0]))
    out: dict = {}
    for m, c in a[1:]:
        mm = tuple(x + y for x, y in zip(m, qa))
        out[mm] = (out.get(mm, 0) + c) % p
    for m, c in b[1:]:
        mm = tuple(x + y for x, y in zip(m, qb))
        out[mm] = (out.get(mm, 0) - c) % p
    return {m: c for m, c in out.items() if c}


def _buchberger(gens: Iterable[dict], key, p: int, degree_cap: int, graded: bool = True) -> list[_Terms]:
    """Buchberger with the Gebauer-Moeller criteria.

    Pairs are taken by sugar degree for graded orders and by the order itself
    for lex, where degree-first selection swells intermediate degrees.
    """
    polys: list[_Terms] = []
    sugar: list[int] = []  # degree of each element had the input been homogenized
    active: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}

    def pair_sugar(i, j):
        lcm = monomial_lcm(polys[i][0][0], polys[j][0][0])
        return max(sugar[k] + sum(lcm) - sum(polys[k][0][0]) for k in (i, j))

    def pair_key(i, j):
        lcm = monomial_lcm(polys[i][0][0], polys[j][0][0])
        if not graded:
            return (key(lcm), i, j)
        return (pair_sugar(i, j), sum(lcm), key(lcm), i, j)

    def update(h: int) -> None:
        lm_h = polys[h][0][0]
        cands = list(active)
        kept = []
        for idx, g in enumerate(cands):
            lm_g = polys[g][0][0]
            lcm_hg = monomial_lcm(lm_h, lm_g)
            if monomial_coprime(lm_h, lm_g):
                kept.append(g)
                continue
            others = cands[idx + 1:] + kept
            if not any(monomial_divides(monomial_lcm(lm_h, polys[o][0][0]), lcm_hg) for o in others):
                kept.append(g)
        new_pairs = [g for g in kept
                     if not monomial_coprime(lm_h, polys[g][0][0])
                     and not (len(polys[g]) == 1 and len(polys[h]) == 1)]
        for (i, j) in list(pairs):
            lcm_ij = monomial_lcm(polys[i][0][0], polys[j][0][0])
            if (monomial_divides(lm_h, lcm_ij)
                    and monomial_lcm(polys[i][0][0], lm_h) != lcm_ij
                    and monomial_lcm(lm_h, polys[j][0][0]) != lcm_ij):
                del pairs[(i, j)]
        for g in new_pairs:
            pairs[(g, h)] = pair_key(g, h)
        active[:] = [g for g in active if not monomial_divides(lm_h, polys[g][0][0])] + [h]

    def insert(f: dict, sug: int) -> bool:
        basis = [(polys[i][0][0], polys[i]) for i in active]
        h = _reduce(f, basis, key, p)
        if not h:
            return False
        deg = max(sum(m) for m in h)
        if deg > degree_cap:
            raise DegreeCapExceeded(deg, degree_cap)
        polys.append(_monic_terms(h, key, p))
        sugar.append(max(sug, deg))
        update(len(polys) - 1)
        return True

    for f in sorted((g for g in gens if g), key=lambda g: max(key(m) for m in g)):
        insert(f, max(sum(m) for m in f))
    while pairs:
        ij = min(pairs, key=pairs.__getitem__)
        del pairs[ij]
        s = _spoly(polys[ij[0]], polys[ij[1]], p)
        if s:
            insert(s, pair_sugar(*ij))

    # inter-reduce into the reduced basis
    lms = [(polys[i][0][0], i) for i in active]
    minimal = [i for m, i in lms
               if not any(j != i and monomial_divides(m2, m) and (m2 != m or j < i) for m2, j in lms)]
    basis = [polys[i] for i in minimal]
    out = []
    for k, g in enumerate(basis):
        others = [(h[0][0], h) for t, h in enumerate(basis) if t != k]
        tail = _reduce(dict(g[1:]), others, key, p)
        tail[g[0][0]] = 1
        out.append(_monic_terms(tail, key, p))
    out.sort(key=lambda t: key(t[0][0]), reverse=True)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; ``elements`` monic and sorted by descending leading monomial."""

    ring: PolyRing
    elements: tuple[Polynomial, ...]

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list[tuple]:
        return [g.lm for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and sum(self.elements[0].lm) == 0

    def _basis(self):
        return [(g.lm, g.terms) for g in self.elements]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not f.ring.same_ambient(self.ring):
            raise AmbientMismatch(f"{f.ring} vs {self.ring}")
        if not self.elements:
            return f.in_ring(self.ring)
        r = _reduce(dict(f.terms), self._basis(), self.order.key, self.ring.p)
        return Polynomial(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def strings(self) -> list[str]:
        return sorted(str(g) for g in self.elements)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def buchberger(gens: Sequence[Polynomial], ring: PolyRing | None = None,
               order: MonomialOrder | None = None,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Deterministic for a fixed input sequence.  Raises DegreeCapExceeded if an
    intermediate basis element has total degree above ``degree_cap``.
    """
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    if order is not None:
        ring = ring.with_order(order)
    for g in gens:
        if not g.ring.same_ambient(ring):
            raise AmbientMismatch(f"{g.ring} vs {ring}")
    key = ring.order.key
    raw = _buchberger([dict(g.terms) for g in gens], key, ring.p, degree_cap, ring.order.kind != "lex")
    return GroebnerBasis(ring, tuple(Polynomial._from_sorted(ring, t) for t in raw))


class Ideal:
    """An ideal of F_p[x] given by generators, with a per-instance GB memo."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        out = []
        for g in gens:
            if isinstance(g, int):
                g = ring.constant(g)
            if not g.ring.same_ambient(ring):
                raise AmbientMismatch(f"{g.ring} vs {ring}")
            if not g.is_zero():
                out.append(g.in_ring(ring))
        self.gens: tuple[Polynomial, ...] = tuple(out)
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def is_zero(self) -> bool:
        return not self.gens

    def groebner(self, order: MonomialOrder | None = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
        order = order or self.ring.order
        cache_key = (order, degree_cap)
        if cache_key not in self._gb:
            target = self.ring.with_order(order)
            if not self.gens:
                self._gb[cache_key] = GroebnerBasis(target, ())
            else:
                self._gb[cache_key] = buchberger(self.gens, target, degree_cap=degree_cap)
        return self._gb[cache_key]

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return self.groebner().contains(f)

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: Ideal) -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __add__(self, other: Ideal | Iterable[Polynomial]) -> Ideal:
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.gens + tuple(extra))

    def __mul__(self, other: Ideal) -> Ideal:
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def _elimination_ring(ring: PolyRing) -> tuple[PolyRing, str]:
    name = "_t"
    while name in ring.variables:
        name += "_"
    return PolyRing(ring.field, (name,) + ring.variables, MonomialOrder("elimination", 1)), name


def _lift(f: Polynomial, big: PolyRing) -> Polynomial:
    return Polynomial(big, {(0,) + m: c for m, c in f.terms})


def intersect(I: Ideal, K: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """I ∩ K via t*I + (1-t)*K eliminated with respect to a fresh greatest variable t."""
    ring = I.ring
    if I.is_zero() or K.is_zero():
        return Ideal(ring)
    big, name = _elimination_ring(ring)
    t = big.var(0)
    gens = [t * _lift(g, big) for g in I.gens] + [(1 - t) * _lift(g, big) for g in K.gens]
    G = buchberger(gens, big, degree_cap=degree_cap)
    kept = [Polynomial(ring, {m[1:]: c for m, c in g.terms}) for g in G if g.lm[0] == 0]
    return Ideal(ring, kept)


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """Return g / f, raising NotDivisible when f does not divide g."""
    if f.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    ring = f.ring
    p = ring.p
    inv = ring.field.inv(f.lc)
    rest = dict(g.terms)
    quotient: dict = {}
    key = ring.order.key
    f_lm = f.lm
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        if not monomial_divides(f_lm, m):
            raise NotDivisible(f"{f} does not divide {g}")
        q = tuple(a - b for a, b in zip(m, f_lm))
        qc = c * inv % p
        quotient[q] = qc
        for fm, fc in f.terms:
            mm = tuple(a + b for a, b in zip(fm, q))
            v = (rest.get(mm, 0) - qc * fc) % p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return Polynomial(ring, quotient)


def colon(I: Ideal, f: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """(I : f) = {g : g f in I}, as (I ∩ (f)) / f."""
    if f.is_zero():
        raise DivisionByZero("colon by the zero polynomial")
    f = f.in_ring(I.ring)
    meet = intersect(I, Ideal(I.ring, [f]), degree_cap)
    return Ideal(I.ring, [divide_exact(g, f) for g in meet.gens])


def colon_ideal(I: Ideal, K: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """(I : K) as the intersection of (I : f) over generators f of K."""
    if K.is_zero():
        raise DivisionByZero("colon by the zero ideal")
    result = None
    for f in K.gens:
        part = colon(I, f, degree_cap)
        result = part if result is None else intersect(result, part, degree_cap)
    return result


def colon_and_intersect(I: Ideal, f: Polynomial, want: str) -> Ideal:
    if want == "intersect":
        if f.is_zero():
            raise DivisionByZero("intersection with the zero ideal requested via f = 0")
        return intersect(I, Ideal(I.ring, [f]))
    if want == "colon":
        return colon(I, f)
    raise ValueError(f"want must be 'intersect' or 'colon', not {want!r}")


def is_reduced_groebner(G: GroebnerBasis) -> bool:
    """Check the reduced-GB postconditions directly: S-pairs reduce to 0, self-reduced, monic."""
    key = G.order.key
    p = G.ring.p
    basis = G._basis()
    for g in G.elements:
        if g.lc != 1:
            return False
    for i, (lm_i, g) in enumerate(basis):
        for j, (lm_j, h) in enumerate(basis):
            if i != j and any(monomial_divides(lm_j, m) for m, _ in g):
                return False
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = _spoly(basis[i][1], basis[j][1], p)
            if _reduce(s, basis, key, p):
                return False
    return True
