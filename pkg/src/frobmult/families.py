"""Example rings with closed-form expected invariants.

Every expected value carries a provenance tag: ``PAPER`` for values stated in
the source (the monomial hypersurface x^a y^a), ``DERIVED`` for values
obtained by an independent computation, ``TRIVIAL`` for direct closed forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod

from .ffpoly import PolyRing, is_prime
from .errors import NonPrimeModulus
from .frobenius import ParameterIdeal, RingPresentation


def ceil_log(p: int, a: int) -> int:
    """Least e with p^e >= a (exact integer arithmetic)."""
    if a < 1:
        raise ValueError("a must be >= 1")
    e, q = 0, 1
    while q < a:
        q *= p
        e += 1
    return e


@dataclass
class Expected:
    value: object
    provenance: str  # PAPER / DERIVED / TRIVIAL

    def to_json(self) -> dict:
        return {"value": self.value, "provenance": self.provenance}


@dataclass
class ExampleSpec:
    name: str
    ring: RingPresentation
    expected: dict[str, Expected] = field(default_factory=dict)
    expected_fte: Expected | None = None
    suggested_q: ParameterIdeal | None = None
    flags: dict[str, str] = field(default_factory=dict)  # flag -> justification
    params: dict = field(default_factory=dict)

    def to_dsl(self) -> str:
        """Task-file text that re-runs this instance standalone."""
        r = self.ring
        rels = ", ".join(str(g) for g in r.relations.gens)
        lines = [f"ring {{ p = {r.p}; vars = [{', '.join(r.ring.variables)}]; relations = [{rels}]; }}"]
        body = []
        if self.suggested_q is not None:
            body.append(f"q = [{', '.join(self.suggested_q.strings())}];")
        if self.flags:
            body.append(f"flags = [{', '.join(sorted(self.flags))}];")
        lines.append("analyze { " + " ".join(body) + (" " if body else "") + "}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "ring": self.ring.to_json(),
                "expected": {k: v.to_json() for k, v in sorted(self.expected.items())},
                "expected_fte": self.expected_fte.to_json() if self.expected_fte else None,
                "suggested_q": self.suggested_q.strings() if self.suggested_q else None,
                "flags": dict(sorted(self.flags.items()))}


def monomial_hypersurface(p: int, a: int) -> ExampleSpec:
    """F_p[x, y]/(x^a y^a) with q = (x + y)."""
    if not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    if a < 1:
        raise ValueError("a must be >= 1")
    ring = PolyRing(p, ("x", "y"))
    R = RingPresentation(ring, [ring.parse(f"x^{a}*y^{a}")])
    expected = {
        "d": Expected(1, "PAPER"),
        "v": Expected(2, "PAPER"),
        "s": Expected(1, "PAPER"),
        # numerator 1 + t + ... + t^(2a-1); the source states only a = 2
        "e": Expected(2 * a, "PAPER" if a == 2 else "DERIVED"),
        "hilbert_numerator": Expected([1] * (2 * a), "PAPER" if a == 2 else "DERIVED"),
        "cm": Expected(True, "PAPER"),
    }
    flags = {}
    if a == 1:
        flags["f_pure"] = "xy is a squarefree monomial hypersurface (Stanley-Reisner ring)"
    return ExampleSpec(
        "monomial_hypersurface", R, expected,
        Expected(ceil_log(p, a), "PAPER"),
        ParameterIdeal([ring.parse("x + y")]),
        flags, {"p": p, "a": a},
    )


def random_artinian_ci(p: int, n_vars: int = 3, max_deg: int = 4, seed: int = 0, free: int = 1,
                       perturb: bool = True) -> ExampleSpec:
    """Monomial complete intersection F_p[x]/(x_1^a_1, ..., x_k^a_k), k = n_vars - free.

    The last ``free`` variables stay free, so R is CM of dimension ``free``,
    Gorenstein, with e = prod(a_i).  With ``perturb`` the suggested parameter
    ideal adds random linear forms in the bounded variables to the free ones
    (still a reduction of m, since the bounded variables are nilpotent).
    """
    if not 1 <= n_vars <= 4:
        raise ValueError("n_vars must be in [1, 4]")
    if not 0 <= free <= n_vars:
        raise ValueError("free must be in [0, n_vars]")
    if not 1 <= max_deg <= 4:
        raise ValueError("max_deg must be in [1, 4]")
    rng = random.Random(f"ci:{p}:{n_vars}:{max_deg}:{seed}:{free}")
    exps = [rng.randint(1, max_deg) for _ in range(n_vars - free)]
    spec = monomial_ci(p, exps, free, rng if perturb else None)
    spec.name = "random_artinian_ci"
    spec.params = {"p": p, "n_vars": n_vars, "max_deg": max_deg, "seed": seed, "free": free,
                   "exponents": exps}
    return spec


def monomial_ci(p: int, exponents, free: int = 0, rng: random.Random | None = None) -> ExampleSpec:
    """F_p[x_1..x_k, free vars]/(x_1^a_1, ..., x_k^a_k) with closed-form expectations."""
    exps = list(exponents)
    if any(a < 1 for a in exps):
        raise ValueError("exponents must be >= 1")
    n_vars = len(exps) + free
    if not 1 <= n_vars <= 4:
        raise ValueError("at most 4 variables")
    names = ("x", "y", "z", "w")[:n_vars]
    ring = PolyRing(p, names)
    k = len(exps)
    R = RingPresentation(ring, [ring.var(i) ** a for i, a in enumerate(exps)])
    q = None
    if free:
        gens = []
        for j in range(k, n_vars):
            g = ring.var(j)
            if rng is not None:
                for i in range(k):
                    g = g + ring.var(i).scale(rng.randrange(p))
            gens.append(g)
        q = ParameterIdeal(gens)
    e = prod(exps)
    expected = {
        "d": Expected(free, "TRIVIAL"),
        "v": Expected(n_vars - sum(1 for a in exps if a == 1), "TRIVIAL"),
        "s": Expected(1, "TRIVIAL"),
        "length": Expected(e, "TRIVIAL"),
        "cm": Expected(True, "TRIVIAL"),
    }
    if free:
        expected["e"] = Expected(e, "TRIVIAL")
    return ExampleSpec("monomial_ci", R, expected, None, q, {},
                       {"p": p, "exponents": exps, "free": free})


FAMILIES = {
    "monomial_hypersurface": monomial_hypersurface,
    "random_artinian_ci": random_artinian_ci,
}
