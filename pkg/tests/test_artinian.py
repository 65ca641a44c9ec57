from __future__ import annotations

import random

import pytest

from frobmult.artinian import (
    Quotient,
    hilbert_samuel,
    hilbert_samuel_multiplicity,
    hilbert_series,
    local_length,
    monomial_hilbert_numerator,
    quotient_length,
    socle_dimension,
    standard_monomials,
)
from frobmult.errors import NotArtinian, NotHomogeneous
from frobmult.ffpoly import PolyRing
from frobmult.groebner import Ideal, buchberger

from .oracles import exhaustive_socle_dim, hilbert_function_brute, random_ideal

R2 = PolyRing(2, ("x", "y"))


def I(*texts, ring=R2):
    return Ideal(ring, [ring.parse(t) for t in texts])


def test_standard_monomials_examples():
    assert standard_monomials(buchberger([R2.parse("x^2"), R2.parse("y^2")])) == [
        (0, 0), (0, 1), (1, 0), (1, 1)]
    basis = standard_monomials(buchberger([R2.parse("x^2 + y^2"), R2.parse("y^4")]))
    assert sorted(basis) == sorted([(a, b) for a in range(2) for b in range(4)])
    assert standard_monomials(buchberger([R2.parse("x"), R2.parse("y")])) == [(0, 0)]
    keys = [R2.order.key(m) for m in basis]
    assert keys == sorted(keys)


def test_not_artinian():
    with pytest.raises(NotArtinian):
        standard_monomials(buchberger([R2.parse("x^2*y^2")]))


def test_lengths():
    assert quotient_length(I("x + y", "x^2*y^2")) == 4
    assert quotient_length(I("x^2 + y^2", "x^2*y^2")) == 8
    assert quotient_length(I("x", "y")) == 1


def test_local_length_discards_other_points():
    # (x(x - 1), y) has two points; only the origin counts locally
    R = PolyRing(3, ("x", "y"))
    J = I("x^2 - x", "y", ring=R)
    assert quotient_length(J) == 2
    assert local_length(J) == 1


def test_socle_examples():
    assert socle_dimension(I("x + y", "x^2*y^2")) == 1
    assert socle_dimension(I("x^2", "y^2", "x*y")) == 2
    assert socle_dimension(I("x", "y")) == 1
    Q = Quotient(I("x + y", "x^2*y^2"))
    (v,) = Q.socle_basis()
    assert Q.element(v) == R2.parse("y^3")  # = x^3 modulo x + y


def test_hilbert_series_examples():
    h = hilbert_series(I("x^2*y^2"))
    assert (list(h.numerator), h.dim, h.e) == ([1, 1, 1, 1], 1, 4)
    assert h.to_json() == {"numerator": [1, 1, 1, 1], "dim": 1, "e": 4}
    h = hilbert_series(Ideal(R2, []))
    assert (list(h.numerator), h.dim) == ([1], 2)
    h = hilbert_series(I("x^2", "x*y", "y^2"))
    assert (list(h.numerator), h.dim) == ([1, 2], 0)
    with pytest.raises(NotHomogeneous):
        hilbert_series(I("x^2 + y"))


def test_monomial_numerator_family():
    for a in range(1, 6):
        assert list(monomial_hilbert_numerator([(a, a)], 2)) == [1] + [0] * (2 * a - 1) + [-1]
        h = hilbert_series(I(f"x^{a}*y^{a}"))
        assert list(h.numerator) == [1] * (2 * a) and h.dim == 1


def test_hilbert_samuel_examples():
    assert hilbert_samuel_multiplicity(I("x^2*y^2")) == 4
    assert hilbert_samuel_multiplicity(Ideal(PolyRing(2, ("x",)), [])) == 1
    hs = hilbert_samuel(I("x^2", "x*y"))
    assert hs.e == 1
    # basis of R/m^n is 1, x, y, ..., y^(n-1) once n >= 2
    assert hs.lengths[1:] == [1] + [n + 1 for n in range(2, len(hs.lengths))]


def test_hilbert_samuel_nonhomogeneous():
    # node y^2 = x^2 + x^3 has multiplicity 2 at the origin
    R = PolyRing(3, ("x", "y"))
    assert hilbert_samuel_multiplicity(I("y^2 - x^2 - x^3", ring=R)) == 2


def test_hilbert_series_matches_slice_ranks():
    rng = random.Random(3)
    for _ in range(15):
        ring, gens = random_ideal(rng, homogeneous=True)
        h = hilbert_series(Ideal(ring, gens))
        for b in range(9):
            assert h.hilbert_function(b) == hilbert_function_brute(gens, ring.nvars, b)


def test_socle_matches_exhaustive_search():
    rng = random.Random(5)
    checked = 0
    while checked < 15:
        ring, gens = random_ideal(rng, p=2)
        J = Ideal(ring, gens + [ring.var(i) ** rng.randint(1, 3) for i in range(ring.nvars)])
        Q = Quotient(J)
        if not 1 <= len(Q) <= 10:
            continue
        assert len(Q.socle_basis()) == exhaustive_socle_dim(Q)
        assert len(Q.socle_basis()) >= 1
        checked += 1


def test_standard_monomials_match_slice_counts():
    """Count of the basis equals the brute-force sum of per-degree quotient dimensions."""
    rng = random.Random(11)
    for _ in range(10):
        ring, gens = random_ideal(rng, homogeneous=True)
        J = Ideal(ring, gens + [ring.var(i) ** 3 for i in range(ring.nvars)])
        total = sum(hilbert_function_brute(list(J.gens), ring.nvars, b) for b in range(3 * ring.nvars + 1))
        assert quotient_length(J) == total


def test_unit_ideal_has_empty_basis():
    assert standard_monomials(buchberger([R2.parse("x + 1"), R2.parse("x")])) == []
