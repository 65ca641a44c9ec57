"""Dimension, embedding dimension, type, multiplicity and the Cohen-Macaulay check."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .artinian import (
    HilbertData,
    dimension_from_leading_monomials,
    hilbert_samuel,
    hilbert_series,
    local_length,
    localize,
)
from .errors import FrobMultError, ReductionNotVerified
from .ffpoly import Polynomial, monomials_of_degree
from .frobenius import ParameterIdeal, RingPresentation
from .linalg import rank

KNOWN_FLAGS = ("f_pure", "f_rational", "f_nilpotent", "gorenstein")


def krull_dimension(R: RingPresentation) -> int:
    G = R.relations.groebner(degree_cap=R.degree_cap)
    return dimension_from_leading_monomials(G.leading_monomials(), R.nvars)


def embedding_dimension(R: RingPresentation) -> int:
    """dim_k m/m^2: number of variables minus the rank of the relations' linear parts."""
    n = R.nvars
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rows = []
    for g in R.relations.gens:
        coeffs = g.coeffs
        rows.append([coeffs.get(u, 0) for u in unit])
    return n - (rank(rows, R.p) if rows else 0)


def is_system_of_parameters(R: RingPresentation, q: ParameterIdeal, dim: int | None = None) -> bool:
    d = krull_dimension(R) if dim is None else dim
    if len(q.generators) != d:
        return False
    G = R.ideal(q.generators).groebner(degree_cap=R.degree_cap)
    ok = dimension_from_leading_monomials(G.leading_monomials(), R.nvars) == 0
    if ok:
        q.verified = True
    return ok


def is_reduction_of_max_ideal(R: RingPresentation, q: ParameterIdeal,
                              n_cap: int = 20) -> tuple[bool, int | None]:
    """Least n <= n_cap with m^(n+1) = q m^n in R_m.

    By Nakayama the local equality is m^(n+1) ⊆ J + q m^n + m^(n+2) in S,
    which is a containment of m-primary ideals and so decided globally.
    """
    ring = R.ring
    for n in range(n_cap + 1):
        mn = R.max_ideal_power(n)
        gens = [g * m for g in q.generators for m in mn] + R.max_ideal_power(n + 2)
        I = R.ideal(gens)
        G = I.groebner(degree_cap=R.degree_cap)
        if all(G.contains(ring.monomial(m)) for m in monomials_of_degree(R.nvars, n + 1)):
            return True, n
    return False, None


def ring_type(R: RingPresentation, q: ParameterIdeal) -> int:
    """dim_k Soc(R/q); equals the type of R when R is Cohen-Macaulay."""
    return len(R.local_quotient(q.generators).socle_basis())


@dataclass
class Multiplicity:
    e: int
    length: int
    cm: bool | None
    hilbert: HilbertData | None = None
    hs_lengths: list[int] = field(default_factory=list)


def multiplicity_and_cm(R: RingPresentation, q: ParameterIdeal, reduction_number: int | None = None,
                        *, n_cap: int = 20, hs_cap: int = 40, dim: int | None = None,
                        strict: bool = True, search: bool = True) -> Multiplicity:
    """e(R) from the Hilbert-Samuel function and the CM verdict l(R/q) == e.

    The verdict needs q to be a verified reduction of m.  Without a
    ``reduction_number`` one is searched for (unless ``search`` is off); if
    none is found ReductionNotVerified is raised (``strict``) or ``cm`` is None.
    """
    d = krull_dimension(R) if dim is None else dim
    hs = hilbert_samuel(R.relations, hs_cap, dim=d, degree_cap=R.degree_cap)
    e = hs.e
    hdata = None
    if R.relations.is_homogeneous():
        hdata = hilbert_series(R.relations, R.degree_cap)
        if hdata.dim != d or hdata.e != e:
            raise FrobMultError(f"Hilbert series gives e={hdata.e}, dim={hdata.dim}; "
                                f"Hilbert-Samuel gives e={e}, dim={d}")
    if e < 1:
        raise FrobMultError(f"computed multiplicity {e} < 1; local and global dimension disagree?")
    length = local_length(R.ideal(q.generators), R.degree_cap)
    if reduction_number is None:
        ok = False
        if search:
            ok, reduction_number = is_reduction_of_max_ideal(R, q, n_cap)
        if not ok:
            if strict:
                raise ReductionNotVerified(e, length)
            return Multiplicity(e, length, None, hdata, hs.lengths)
    return Multiplicity(e, length, length == e, hdata, hs.lengths)


@dataclass
class RingInvariants:
    d: int
    v: int
    s: int | None
    e: int
    cm: bool | None
    reduction: ParameterIdeal | None = None
    reduction_number: int | None = None
    flags: tuple[str, ...] = ()
    length: int | None = None
    hilbert: HilbertData | None = None
    hs_lengths: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"d": self.d, "v": self.v, "s": self.s, "e": self.e, "cm": self.cm,
               "reduction": None, "flags": sorted(self.flags), "length": self.length,
               "hs_lengths": list(self.hs_lengths), "notes": list(self.notes)}
        if self.reduction is not None:
            out["reduction"] = {"gens": self.reduction.strings(), "rn": self.reduction_number}
        if self.hilbert is not None:
            out["hilbert"] = self.hilbert.to_json()
        return out


def _linear_forms(R: RingPresentation) -> list[Polynomial]:
    # monic (first nonzero coefficient 1), sparsest first
    n, p = R.nvars, R.p
    forms = []
    for coeffs in itertools.product(range(p), repeat=n):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1:
            continue
        forms.append((len(nz), tuple(-c for c in coeffs), coeffs))
    forms.sort()
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return [Polynomial(R.ring, {u: c for u, c in zip(unit, cs)}) for _, _, cs in forms]


def find_parameter_ideal(R: RingPresentation, dim: int | None = None, seed: int = 0,
                         random_tries: int = 200, n_cap: int = 20) -> tuple[ParameterIdeal, int] | None:
    """Search linear-form d-tuples for a verified reduction of m.

    Exhaustive over monic linear forms for n_vars <= 3 and p <= 3, otherwise
    seeded random sampling.  Returns (q, reduction number) or None.
    """
    d = krull_dimension(R) if dim is None else dim
    if d < 1:
        return None

    def attempt(gens) -> tuple[ParameterIdeal, int] | None:
        q = ParameterIdeal(gens)
        if not is_system_of_parameters(R, q, d):
            return None
        ok, rn = is_reduction_of_max_ideal(R, q, n_cap)
        return (q, rn) if ok else None

    if R.nvars <= 3 and R.p <= 3:
        for combo in itertools.combinations(_linear_forms(R), d):
            found = attempt(list(combo))
            if found:
                return found
        return None
    rng = random.Random(seed)
    unit = [tuple(int(i == j) for j in range(R.nvars)) for i in range(R.nvars)]
    for _ in range(random_tries):
        gens = [Polynomial(R.ring, {u: rng.randrange(R.p) for u in unit}) for _ in range(d)]
        if any(g.is_zero() for g in gens):
            continue
        found = attempt(gens)
        if found:
            return found
    return None


def analyze_invariants(R: RingPresentation, q: ParameterIdeal | None = None,
                       flags: Iterable[str] = (), *, n_cap: int = 20, hs_cap: int = 40,
                       seed: int = 0) -> RingInvariants:
    flags = tuple(sorted(set(flags)))
    unknown = set(flags) - set(KNOWN_FLAGS)
    if unknown:
        raise ValueError(f"unknown flags {sorted(unknown)}")
    d = krull_dimension(R)
    v = embedding_dimension(R)
    notes: list[str] = []
    if d == 0:
        length = local_length(R.relations, R.degree_cap)
        s = len(R.local_quotient([]).socle_basis())
        notes.append("Artinian ring: e reported as the length; bound formulas need d >= 1")
        return RingInvariants(d, v, s, length, True, None, None, flags, length, notes=notes)
    rn = None
    if q is None:
        found = find_parameter_ideal(R, d, seed=seed, n_cap=n_cap)
        if found is None:
            raise FrobMultError("no system of parameters that is a reduction of m was found")
        q, rn = found
    else:
        if not is_system_of_parameters(R, q, d):
            raise FrobMultError(f"{q.strings()} is not a system of parameters of a {d}-dimensional ring")
        ok, rn = is_reduction_of_max_ideal(R, q, n_cap)
        if not ok:
            rn = None
    s = ring_type(R, q)
    mult = multiplicity_and_cm(R, q, rn, hs_cap=hs_cap, dim=d, strict=False, search=False)
    if mult.cm is None:
        notes.append(f"reduction not verified for n <= {n_cap}; CM verdict withheld")
    elif not mult.cm:
        notes.append("not CM: s is the socle dimension of R/q, not the type of R")
    flag_set = set(flags)
    if mult.cm and s == 1:
        if "gorenstein" not in flag_set:
            notes.append("gorenstein set from type 1 and verified CM")
        flag_set.add("gorenstein")
    elif "gorenstein" in flag_set and mult.cm and s != 1:
        raise ValueError(f"gorenstein asserted but the type is {s}")
    return RingInvariants(d, v, s, mult.e, mult.cm, q, rn,
                          tuple(sorted(flag_set)), mult.length, mult.hilbert, mult.hs_lengths, notes)
