"""Bracket powers, Frobenius closures of parameter ideals and their test exponents.

For a parameter ideal q of R = S/J the closure q^F/q is the union of the
kernels of the F_p-linear maps

    phi_e : S/(J + q) -> S/(J + q^[p^e]),   a -> a^(p^e),

computed on standard-monomial bases of the local quotients.  The kernels
increase with e; the search stops at the first level whose kernel equals its
predecessor's.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .artinian import Quotient, dimension_from_leading_monomials, localize
from .errors import (
    AmbientMismatch,
    DegreeCapExceeded,
    ExponentOverflow,
    InsufficientCandidates,
    NoStabilization,
    NotArtinian,
    NotPPower,
)
from .ffpoly import Polynomial, PolyRing, is_power_of, monomials_of_degree
from .groebner import DEFAULT_DEGREE_CAP, Ideal
from .linalg import EchelonSpace, nullspace, rref


class RingPresentation:
    """R = S/J localized at the origin, with S = F_p[variables]."""

    def __init__(self, ring: PolyRing, relations: Sequence[Polynomial | str] = (),
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ring = ring
        rels = [ring.parse(r) if isinstance(r, str) else r for r in relations]
        for r in rels:
            if not r.is_zero() and r.constant_term():
                raise ValueError(f"relation {r} has a nonzero constant term; the local ring would be zero")
        self.relations = Ideal(ring, rels)
        self.degree_cap = degree_cap

    @classmethod
    def from_strings(cls, p: int, variables: Sequence[str], relations: Sequence[str] = (),
                     degree_cap: int = DEFAULT_DEGREE_CAP) -> RingPresentation:
        ring = PolyRing(p, variables)
        return cls(ring, [ring.parse(r) for r in relations], degree_cap)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def parse(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    def ideal(self, gens: Sequence[Polynomial] = ()) -> Ideal:
        """The ideal J + (gens) of S."""
        return self.relations + list(gens)

    def maximal_ideal(self) -> list[Polynomial]:
        return self.ring.gens()

    def max_ideal_power(self, n: int) -> list[Polynomial]:
        return [self.ring.monomial(m) for m in monomials_of_degree(self.nvars, n)]

    def local_quotient(self, gens: Sequence[Polynomial]) -> Quotient:
        ideal = self.ideal(gens)
        G = ideal.groebner(degree_cap=self.degree_cap)
        if dimension_from_leading_monomials(G.leading_monomials(), self.nvars) > 0:
            raise NotArtinian("S/(J + q) is not zero-dimensional")
        return Quotient(localize(ideal, self.degree_cap), self.degree_cap)

    def local_contains(self, gens: Sequence[Polynomial], f: Polynomial) -> bool:
        """Membership of f in (J + gens) R_m for an m-primary J + gens."""
        return self.local_quotient(gens).normal_form(f).is_zero()

    def to_json(self) -> dict:
        return {"p": self.p, "vars": list(self.ring.variables),
                "relations": [str(g) for g in self.relations.gens]}

    def __repr__(self):
        return f"RingPresentation(p={self.p}, vars={list(self.ring.variables)}, relations={self.to_json()['relations']})"


@dataclass
class ParameterIdeal:
    generators: tuple[Polynomial, ...]
    verified: bool = False

    def __post_init__(self):
        self.generators = tuple(self.generators)
        for g in self.generators:
            if g.constant_term():
                raise ValueError(f"parameter {g} is not in the maximal ideal")

    def strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def __len__(self):
        return len(self.generators)


def bracket_power(I: Ideal | Sequence[Polynomial], q: int) -> Ideal | list[Polynomial]:
    """I^[q]: generated by q-th powers of the generators (q a power of p)."""
    gens = I.gens if isinstance(I, Ideal) else list(I)
    if gens:
        p = gens[0].ring.p
        if not is_power_of(q, p):
            raise NotPPower(f"{q} is not a power of {p}")
    powered = [g.frobenius_power(q) for g in gens]
    return Ideal(I.ring, powered) if isinstance(I, Ideal) else powered


def _same_space(a: list[list[int]], b: list[list[int]], p: int) -> bool:
    return rref(a, p)[0] == rref(b, p)[0] if (a or b) else True


@dataclass
class ClosureResult:
    closure_generators: list[Polynomial]
    stabilization_level: int
    kernel_dims: list[int]
    fte: int
    frobenius_closed: bool
    parameters: list[Polynomial] = field(default_factory=list)
    kernel_basis: list[Polynomial] = field(default_factory=list)
    checked_dims: list[int] = field(default_factory=list)
    certificate: str | None = None
    lookahead_truncated: bool = False

    @property
    def E(self) -> int:
        return self.stabilization_level

    @property
    def certified(self) -> bool:
        return self.certificate is not None

    def strings(self) -> list[str]:
        return [str(g) for g in self.closure_generators]

    def to_json(self) -> dict:
        return {"closure": self.strings(), "kernel_dims": list(self.kernel_dims),
                "E": self.stabilization_level, "fte": self.fte, "closed": self.frobenius_closed,
                "checked_dims": list(self.checked_dims), "certificate": self.certificate,
                "lookahead_truncated": self.lookahead_truncated}


def _frobenius_kernel(A: Quotient, target: Quotient, q: int) -> list[list[int]]:
    cols = [target.coords(A.ring.monomial(tuple(x * q for x in m))) for m in A.basis]
    rows = [list(r) for r in zip(*cols)] if cols and target.basis else []
    return nullspace(rows, len(A.basis), A.ring.p)


def frobenius_closure(R: RingPresentation, q: ParameterIdeal | Sequence[Polynomial],
                      e_max: int = 10, patience: int = 2,
                      fte_bound: int | None = None) -> ClosureResult:
    """Frobenius closure of an m-primary ideal of R given by generators.

    ker phi_e grows with e and stabilizes at some level, but two equal
    consecutive kernels do not prove stabilization: over F_2 the cusp
    x^5 - y^3 with q = (y) has kernel dimensions 2, 2, 3, 3.  So E is the
    first e with ker phi_e = ker phi_(e-1) that then survives ``patience``
    further levels (skipped once a certificate applies, cut short with
    ``lookahead_truncated`` when the degree cap is hit); a later growth
    restarts the search.

    The result is ``certified`` only with a proof that the chain is done:
    ``regular`` (J = 0, where every ideal is Frobenius closed),
    ``maximal`` (the closure is already m), or ``fte_bound`` (a level at or
    past ``fte_bound``, a known upper bound for Fte(R), was computed).
    """
    gens = list(q.generators if isinstance(q, ParameterIdeal) else q)
    for g in gens:
        if not g.ring.same_ambient(R.ring):
            raise AmbientMismatch(f"{g.ring} vs {R.ring}")
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    if patience < 0:
        raise ValueError("patience must be non-negative")
    p = R.p
    A = R.local_quotient(gens)
    full = len(A.basis) - 1  # dim of m/q inside A
    kernels: list[list[list[int]]] = [[]]  # level 0: identity map
    dims: list[int] = []
    stop = None
    truncated = False
    for e in range(1, e_max + 1):
        try:
            target = R.local_quotient([g.frobenius_power(p ** e) for g in gens])
        except (DegreeCapExceeded, ExponentOverflow):
            if stop is None:
                raise
            truncated = True
            break
        ker = _frobenius_kernel(A, target, p ** e)
        kernels.append(ker)
        dims.append(len(ker))
        if stop is not None and len(ker) > len(kernels[stop]):
            stop = None
        if stop is None and _same_space(ker, kernels[e - 1], p):
            stop = e
        # a certified level makes further look-ahead pointless
        done = len(ker) == full or (fte_bound is not None and e >= fte_bound)
        if stop is not None and (done or e >= stop + patience):
            break
    if stop is None:
        raise NoStabilization(f"Frobenius kernels did not settle for e <= {e_max}", dims)
    last = len(dims)
    top = kernels[stop]
    if not R.relations.gens and len(kernels[1]) == 0:
        certificate = "regular"
    elif len(kernels[last]) == full:
        certificate = "maximal"
    elif fte_bound is not None and last >= fte_bound:
        certificate = "fte_bound"
    else:
        certificate = None
    fte = min(e for e in range(stop + 1) if _same_space(kernels[e], top, p))
    lifts = [A.element(v) for v in top]
    closure = list(gens) + _prune(R, gens, lifts)
    return ClosureResult(closure, stop, dims[:stop], fte, fte == 0 and not top, gens, lifts,
                         dims, certificate, truncated)


def _prune(R: RingPresentation, gens: list[Polynomial], lifts: list[Polynomial]) -> list[Polynomial]:
    """Drop kernel lifts already in the ideal generated by the others (in the local quotient)."""
    A = R.local_quotient(gens)
    span = EchelonSpace(R.p)
    kept: list[Polynomial] = []
    # Work in A: the ideal generated by kept lifts is spanned by basis-monomial multiples.
    for f in sorted(lifts, key=lambda g: R.ring.order.key(g.lm) if g else ()):
        v = A.coords(f)
        if span.contains(v):
            continue
        kept.append(f)
        for m in A.basis:
            span.add(A.coords(f.mul_term(m)))
    return kept


def closure_contains(R: RingPresentation, result: ClosureResult, f: Polynomial) -> bool:
    return R.local_contains(result.closure_generators, f)


def frobenius_membership_level(R: RingPresentation, q: Sequence[Polynomial], f: Polynomial,
                               e: int) -> bool:
    """Does f^(p^e) lie in (J + q^[p^e]) R_m?"""
    Q = R.p ** e
    return R.local_contains([g.frobenius_power(Q) for g in q], f.frobenius_power(Q))


def verify_closure(R: RingPresentation, result: ClosureResult) -> dict:
    """Independent postcondition checks by bracket powers and membership.

    * every closure generator g has g^(p^fte) in q^[p^fte] + J;
    * if fte > 0, some generator fails at level fte - 1 (minimality);
    * q is contained in the closure, which is contained in m.
    """
    q = result.parameters
    at_fte = all(frobenius_membership_level(R, q, g, result.fte) for g in result.closure_generators)
    minimal = True
    if result.fte > 0:
        minimal = any(not frobenius_membership_level(R, q, g, result.fte - 1)
                      for g in result.closure_generators)
    inside_m = all(not g.constant_term() for g in result.closure_generators)
    contains_q = all(closure_contains(R, result, g) for g in q)
    return {"at_fte": at_fte, "minimal": minimal, "in_max_ideal": inside_m, "contains_q": contains_q,
            "ok": at_fte and minimal and inside_m and contains_q}


# -- sampling ----------------------------------------------------------------


def _random_form(ring: PolyRing, rng: random.Random, max_degree: int = 2) -> Polynomial:
    p = ring.p
    mons = [m for d in range(1, max_degree + 1) for m in monomials_of_degree(ring.nvars, d)]
    linear = monomials_of_degree(ring.nvars, 1)
    coeffs = {m: rng.randrange(p) for m in linear}
    for m in mons[len(linear):]:
        if rng.random() < 0.25:
            coeffs[m] = rng.randrange(p)
    return Polynomial(ring, coeffs)


@dataclass
class SampleResult:
    max_fte: int
    witness: ParameterIdeal
    per_trial: list[dict]

    def to_json(self) -> dict:
        return {"max_fte": self.max_fte, "witness": self.witness.strings(), "per_trial": self.per_trial,
                "label": "lower bound"}


def fte_lower_bound_sample(R: RingPresentation, trials: int, seed: int = 0, e_max: int = 10,
                           dim: int | None = None, include: Sequence[Sequence[Polynomial]] = (),
                           patience: int = 2) -> SampleResult:
    """Sampled lower bound for Fte(R): the maximum fte over random parameter ideals.

    Candidate d-tuples mix random linear and quadratic forms.  ``include``
    prepends fixed candidates (each still verified).  Each trial draws from its
    own generator seeded by (seed, trial index), so the result does not depend
    on evaluation order.
    """
    from .invariants import is_system_of_parameters, krull_dimension

    d = krull_dimension(R) if dim is None else dim
    if d < 1:
        raise ValueError("sampling parameter ideals needs dim R >= 1")
    per_trial: list[dict] = []
    best: tuple[int, ParameterIdeal] | None = None
    attempts = 0
    fixed = [list(c) for c in include]
    while len(per_trial) < trials:
        if attempts >= 50 * trials:
            raise InsufficientCandidates(
                f"only {len(per_trial)} verified systems of parameters in {attempts} attempts")
        if attempts < len(fixed):
            gens = fixed[attempts]
        else:
            rng = random.Random(f"{seed}:{attempts}")
            gens = [_random_form(R.ring, rng) for _ in range(d)]
        attempts += 1
        if any(g.is_zero() for g in gens):
            continue
        cand = ParameterIdeal(gens)
        if not is_system_of_parameters(R, cand, dim=d):
            continue
        res = frobenius_closure(R, cand, e_max, patience)
        per_trial.append({"q": cand.strings(), "fte": res.fte, "E": res.stabilization_level,
                          "kernel_dims": res.kernel_dims, "certificate": res.certificate})
        if best is None or res.fte > best[0]:
            best = (res.fte, cand)
    return SampleResult(best[0], best[1], per_trial)
