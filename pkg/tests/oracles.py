"""Independent reference computations used to check the kernel.

Nothing here calls Buchberger's algorithm or the library's linear algebra,
except where a docstring says otherwise.
"""

from __future__ import annotations

import itertools
import random
from math import comb

from frobmult.ffpoly import Polynomial, PolyRing, monomials_of_degree


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Plain Gaussian elimination, written separately from frobmult.linalg."""
    m = [[x % p for x in r] for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = pow(m[rk][c], p - 2, p)
        m[rk] = [x * inv % p for x in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def schoolbook_mul(f: Polynomial, g: Polynomial) -> dict:
    p = f.ring.p
    out: dict = {}
    for m1, c1 in f.coeffs.items():
        for m2, c2 in g.coeffs.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def schoolbook_pow(f: Polynomial, n: int) -> dict:
    acc = f.ring.one()
    for _ in range(n):
        acc = Polynomial(f.ring, schoolbook_mul(acc, f))
    return dict(acc.coeffs)


def slice_vectors(gens: list[Polynomial], degree: int) -> tuple[list[list[int]], list[tuple]]:
    """Coefficient rows of m*g spanning I_degree for homogeneous generators."""
    ring = gens[0].ring
    mons = monomials_of_degree(ring.nvars, degree)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in gens:
        dg = g.total_degree()
        if dg > degree:
            continue
        for m in monomials_of_degree(ring.nvars, degree - dg):
            row = [0] * len(mons)
            for mm, c in g.coeffs.items():
                row[index[tuple(a + b for a, b in zip(m, mm))]] = c
            rows.append(row)
    return rows, mons


def hilbert_function_brute(gens: list[Polynomial], nvars: int, degree: int) -> int:
    """dim_k (S/I)_degree from the rank of the degree slice of I."""
    total = comb(nvars + degree - 1, degree)
    if not gens:
        return total
    rows, _ = slice_vectors(gens, degree)
    return total - (rank_mod_p(rows, gens[0].ring.p) if rows else 0)


def homogeneous_member(f: Polynomial, gens: list[Polynomial]) -> bool:
    """Membership of a homogeneous f in a homogeneous ideal, by one degree slice."""
    if f.is_zero():
        return True
    deg = f.total_degree()
    rows, mons = slice_vectors(gens, deg)
    p = f.ring.p
    target = [f.coeffs.get(m, 0) for m in mons]
    base = rank_mod_p(rows, p) if rows else 0
    return rank_mod_p(rows + [target], p) == base


def exhaustive_socle_dim(quotient) -> int:
    """log_p of the number of elements killed by every variable.

    Enumerates all p^L elements of the quotient; uses its normal form map
    (not its socle routine).
    """
    ring = quotient.ring
    p = ring.p
    basis = quotient.basis
    count = 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        f = Polynomial(ring, dict(zip(basis, coeffs)))
        if all(quotient.normal_form(ring.var(i) * f).is_zero() for i in range(ring.nvars)):
            count += 1
    s = 0
    while p ** s < count:
        s += 1
    assert p ** s == count
    return s


def semigroup(gens: tuple[int, ...], bound: int) -> set[int]:
    S = {0}
    for n in range(1, bound):
        if any(n - g in S for g in gens if n >= g):
            S.add(n)
    return S


def binomial_cusp_kernel_dims(a: int, b: int, p: int, levels: int) -> list[int]:
    """Kernel dimensions for k[t^a, t^b] = k[x, y]/(x^b - y^a), q = (y).

    A = R/(y) has basis x^k, k < b, and x^k lies in ker phi_e iff
    t^(a k Q) is in t^(b Q) R for some Q = p^f <= p^e, i.e. (a k - b) Q is in
    the semigroup <a, b>.
    """
    S = semigroup((a, b), a * b * p ** levels + 1)
    dims = []
    for e in range(1, levels + 1):
        dims.append(sum(1 for k in range(b) if a * k >= b
                        and any((a * k - b) * p ** f in S for f in range(e + 1))))
    return dims


def random_poly(ring: PolyRing, rng: random.Random, max_deg: int = 3, terms: int = 3,
                homogeneous: int | None = None) -> Polynomial:
    coeffs = {}
    for _ in range(terms):
        deg = homogeneous if homogeneous is not None else rng.randint(0, max_deg)
        mons = monomials_of_degree(ring.nvars, deg)
        coeffs[rng.choice(mons)] = rng.randrange(1, ring.p)
    return Polynomial(ring, coeffs)


def random_ideal(rng: random.Random, p: int | None = None, homogeneous: bool = False):
    """At most 3 generators of degree at most 4 in at most 3 variables."""
    p = p or rng.choice((2, 3))
    n = rng.randint(1, 3)
    ring = PolyRing(p, ("x", "y", "z")[:n])
    gens = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, 4)
        f = random_poly(ring, rng, 4, rng.randint(1, 3), deg if homogeneous else None)
        if not f.is_zero():
            gens.append(f)
    if not gens:
        gens.append(ring.var(0))
    return ring, gens


# -- Groebner postconditions on plain coefficient dicts ------------------------


def _leading(f: dict, key) -> tuple:
    return max(f, key=key)


def naive_remainder(f: dict, G: list[dict], key, p: int) -> dict:
    """Full multivariate division of f by G; the remainder as a dict."""
    f = dict(f)
    rem: dict = {}
    lead = [(_leading(g, key), g) for g in G]
    while f:
        m = _leading(f, key)
        c = f[m]
        for lm, g in lead:
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                factor = c * pow(g[lm], p - 2, p) % p
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(gm, shift))
                    f[t] = (f.get(t, 0) - factor * gc) % p
                    if not f[t]:
                        del f[t]
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def s_polynomial(f: dict, g: dict, key, p: int) -> dict:
    lf, lg = _leading(f, key), _leading(g, key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    out: dict = {}
    for h, lm, sign in ((f, lf, 1), (g, lg, -1)):
        shift = tuple(a - b for a, b in zip(lcm, lm))
        scale = sign * pow(h[lm], p - 2, p)
        for m, c in h.items():
            t = tuple(a + b for a, b in zip(m, shift))
            out[t] = (out.get(t, 0) + scale * c) % p
    return {m: c for m, c in out.items() if c}


def reduced_groebner_violations(G: list[dict], key, p: int) -> list[str]:
    """Buchberger's criterion plus reducedness, checked without the library."""
    problems = []
    for i, f in enumerate(G):
        for g in G[i + 1:]:
            if naive_remainder(s_polynomial(f, g, key, p), G, key, p):
                problems.append("S-pair does not reduce to 0")
    leads = [_leading(g, key) for g in G]
    for i, g in enumerate(G):
        if g[leads[i]] != 1:
            problems.append("not monic")
        for j, lm in enumerate(leads):
            if i != j and any(all(a >= b for a, b in zip(m, lm)) for m in g):
                problems.append("term divisible by another leading monomial")
    return problems


def socle_dim_linear(quotient) -> int:
    """Annihilator of all variables as the null space of the stacked multiplication maps.

    Uses the quotient's normal forms and this module's Gaussian elimination.
    """
    ring = quotient.ring
    basis = quotient.basis
    rows = []
    for i in range(ring.nvars):
        images = [quotient.normal_form(ring.var(i) * ring.monomial(b)) for b in basis]
        for m in basis:
            rows.append([img.coeffs.get(m, 0) for img in images])
    if not rows:
        return len(basis)
    return len(basis) - rank_mod_p(rows, ring.p)
