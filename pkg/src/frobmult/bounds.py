"""Multiplicity bounds and mechanical checks of the steps behind them.

All values are exact (``fractions.Fraction``); every verdict is a decidable
comparison, never a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .artinian import local_length
from .errors import DimensionZero
from .ffpoly import monomials_of_degree
from .frobenius import ClosureResult, ParameterIdeal, RingPresentation, closure_contains
from .invariants import RingInvariants, embedding_dimension

BOUND_KINDS = (
    "MAIN_CM",
    "MAIN_FNILP",
    "HW_PURE",
    "HW_RATIONAL",
    "HW_GOR_PURE",
    "HW_GOR_RATIONAL",
    "KZ_CM",
    "HQ_GENERAL",
    "HQ_FNILP",
)

# bounds whose value involves Q = p^Fte
_USES_Q = {"MAIN_CM", "MAIN_FNILP", "KZ_CM", "HQ_GENERAL", "HQ_FNILP"}

PROVENANCES = ("sampled_lower_bound", "closed_form_family", "user_asserted")


def binom(n: int, k: int) -> int:
    """C(n, k), zero when k < 0 or n < k."""
    if k < 0 or n < k:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class BoundInputs:
    d: int
    v: int
    s: int
    fte_exponent: int
    p: int
    provenance: str = "user_asserted"

    def __post_init__(self):
        if self.d < 1:
            raise DimensionZero("bounds need d >= 1")
        if self.v < self.d:
            raise ValueError(f"embedding dimension {self.v} < dimension {self.d}")
        if self.s < 1:
            raise ValueError("type must be >= 1")
        if self.fte_exponent < 0:
            raise ValueError("Fte exponent must be >= 0")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def Q(self) -> int:
        return self.p ** self.fte_exponent


def bound_value(kind: str, inp: BoundInputs) -> Fraction:
    d, v, s, Q = inp.d, inp.v, inp.s, inp.Q
    r, odd = divmod(d, 2)
    Qv = Fraction(Q) ** (v - d)
    half = Fraction(s + 1, 2)
    if kind == "MAIN_CM":
        if odd:
            return (s + 1) * Qv * binom(v - r - 1, r)
        return half * Qv * (binom(v - r, r) + binom(v - r - 1, r - 1))
    if kind == "MAIN_FNILP":
        if odd:
            return half * Qv * (binom(v - r - 1, r) + binom(v - r - 2, r - 1))
        return (s + 1) * Qv * binom(v - r - 1, r - 1)
    if kind == "HW_PURE":
        return Fraction(binom(v, d))
    if kind == "HW_RATIONAL":
        return Fraction(binom(v - 1, d - 1))
    if kind == "HW_GOR_PURE":
        if odd:
            return Fraction(2 * binom(v - r - 1, r))
        return Fraction(binom(v - r, r) + binom(v - r - 1, r - 1))
    if kind == "HW_GOR_RATIONAL":
        if odd:
            return Fraction(binom(v - r - 1, r) + binom(v - r - 2, r - 1))
        return Fraction(2 * binom(v - r - 1, r - 1))
    if kind in ("KZ_CM", "HQ_GENERAL"):
        return Qv * binom(v, d)
    if kind == "HQ_FNILP":
        return Qv * binom(v - 1, d - 1)
    raise ValueError(f"unknown bound kind {kind!r}")


def _requirements(kind: str) -> tuple[str, ...]:
    return {
        "MAIN_CM": ("cm",),
        "MAIN_FNILP": ("cm", "f_nilpotent"),
        "HW_PURE": ("f_pure",),
        "HW_RATIONAL": ("f_rational",),
        "HW_GOR_PURE": ("f_pure", "gorenstein"),
        "HW_GOR_RATIONAL": ("f_rational", "gorenstein"),
        "KZ_CM": ("cm",),
        "HQ_GENERAL": ("cm",),
        "HQ_FNILP": ("f_nilpotent",),
    }[kind]


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class BoundEntry:
    name: str
    applicable: bool
    value: Fraction
    holds: bool | None
    tight: bool
    reason: str = ""
    conditional: bool = False

    @property
    def hard_failure(self) -> bool:
        return self.applicable and self.holds is False and not self.conditional

    def to_json(self) -> dict:
        out = {"name": self.name, "applicable": self.applicable, "value": format_fraction(self.value),
               "holds": self.holds, "tight": self.tight, "conditional": self.conditional}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class BoundReport:
    entries: list[BoundEntry]
    e: int
    inputs: BoundInputs

    def __getitem__(self, name: str) -> BoundEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    @property
    def violated(self) -> list[BoundEntry]:
        return [b for b in self.entries if b.hard_failure]

    def to_json(self) -> dict:
        return {"bounds": [b.to_json() for b in self.entries], "e": self.e, "Q": self.inputs.Q,
                "fte_exponent": self.inputs.fte_exponent, "provenance": self.inputs.provenance}


def evaluate_bounds(inv: RingInvariants, inp: BoundInputs) -> BoundReport:
    """Evaluate every bound; ``holds`` only for applicable ones.

    A bound using Q is ``conditional`` when Q comes from a sampled lower bound
    for Fte: a larger true Fte only weakens the bound, so a violation there is
    not a contradiction.
    """
    have = set(inv.flags)
    if inv.cm:
        have.add("cm")
    entries = []
    for kind in BOUND_KINDS:
        value = bound_value(kind, inp)
        missing = [req for req in _requirements(kind) if req not in have]
        applicable = not missing
        holds = (inv.e <= value) if applicable else None
        conditional = kind in _USES_Q and inp.provenance == "sampled_lower_bound"
        reason = "" if applicable else "missing: " + ", ".join(missing)
        entries.append(BoundEntry(kind, applicable, value, holds, inv.e == value, reason, conditional))
    return BoundReport(entries, inv.e, inp)


# -- proof-step checkers -----------------------------------------------------


def _bracket_max_power(R: RingPresentation, n: int, Q: int):
    return [R.ring.monomial(tuple(x * Q for x in m)) for m in monomials_of_degree(R.nvars, n)]


def _length(R: RingPresentation, gens) -> int:
    return local_length(R.ideal(gens), R.degree_cap)


def frobenius_power_containment(R: RingPresentation, q: ParameterIdeal, Q: int, n: int) -> bool:
    """(m^n)^[Q] ⊆ q^[Q] in R_m."""
    qQ = [g.frobenius_power(Q) for g in q.generators]
    A = R.local_quotient(qQ)
    return all(A.normal_form(g).is_zero() for g in _bracket_max_power(R, n, Q))


@dataclass
class CheckResult:
    lhs: int
    rhs: int
    holds: bool | None
    precondition: bool = True
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds,
                "precondition": self.precondition, **self.detail}


def check_counting_lemma(R: RingPresentation, q: ParameterIdeal, Q: int, l: int,
                         v: int | None = None) -> CheckResult:
    """l(A/(n^l)^[Q]) <= Q^v C(v-d+l-1, l-1) with A = R/q^[Q]."""
    d = len(q.generators)
    v = embedding_dimension(R) if v is None else v
    if l < 1:
        raise ValueError("l must be >= 1")
    gens = [g.frobenius_power(Q) for g in q.generators] + _bracket_max_power(R, l, Q)
    lhs = _length(R, gens)
    rhs = Q ** v * binom(v - d + l - 1, l - 1)
    return CheckResult(lhs, rhs, lhs <= rhs)


def default_top(R: RingPresentation, q: ParameterIdeal, Q: int) -> int:
    d = len(q.generators)
    return d if frobenius_power_containment(R, q, Q, d) else d + 1


def check_lemma34(R: RingPresentation, q: ParameterIdeal, Q: int, l: int, s: int,
                  top: int | None = None) -> CheckResult:
    """Socle-length step: l_A(M) <= s * l(A') for M = (n^(top-l))^[Q], A' = A/(n^l)^[Q].

    ``top`` is d when (m^d)^[Q] ⊆ q^[Q] (the F-nilpotent route) and d + 1
    otherwise; M is an A'-module exactly when (m^top)^[Q] ⊆ q^[Q], reported
    as ``precondition``.  Without it the verdict is None.
    """
    top = default_top(R, q, Q) if top is None else top
    if not 1 <= l <= top:
        raise ValueError(f"l must lie in [1, {top}]")
    qQ = [g.frobenius_power(Q) for g in q.generators]
    len_A = _length(R, qQ)
    len_A_mod_M = _length(R, qQ + _bracket_max_power(R, top - l, Q))
    len_A_prime = _length(R, qQ + _bracket_max_power(R, l, Q))
    lhs = len_A - len_A_mod_M
    rhs = s * len_A_prime
    pre = frobenius_power_containment(R, q, Q, top)
    return CheckResult(lhs, rhs, (lhs <= rhs) if pre else None, pre,
                       {"top": top, "len_A": len_A, "len_A_mod_M": len_A_mod_M, "len_A_prime": len_A_prime})


@dataclass
class ChainStep:
    name: str
    lhs: Fraction | int | bool
    rhs: Fraction | int | bool
    relation: str
    holds: bool
    predicted: bool = True
    note: str = ""

    def to_json(self) -> dict:
        def enc(x):
            return format_fraction(x) if isinstance(x, Fraction) else x
        out = {"step": self.name, "lhs": enc(self.lhs), "rhs": enc(self.rhs), "relation": self.relation,
               "holds": self.holds, "predicted": self.predicted}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ChainReport:
    steps: list[ChainStep]
    Q: int
    l: int
    top: int

    @property
    def ok(self) -> bool:
        return all(st.holds for st in self.steps if st.predicted)

    def step(self, name: str) -> ChainStep:
        for st in self.steps:
            if st.name == name:
                return st
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"Q": self.Q, "l": self.l, "top": self.top, "ok": self.ok,
                "steps": [st.to_json() for st in self.steps]}


def verify_proof_chain(R: RingPresentation, q: ParameterIdeal, Q: int, l: int, inv: RingInvariants,
                       closure: ClosureResult | None = None) -> ChainReport:
    """Evaluate both sides of every inequality in the multiplicity-bound argument.

    Steps after the Frobenius containment are predicted only when it holds.
    The containments m^d ⊆ q^F and m^(d+1) ⊆ q^F are tested against the
    closure; the first is predicted only for asserted F-nilpotent rings, the
    second for verified CM rings (no embedded primes).
    """
    d, v, s, e = inv.d, inv.v, inv.s, inv.e
    cm = bool(inv.cm)
    top = default_top(R, q, Q)
    steps: list[ChainStep] = []
    qQ = [g.frobenius_power(Q) for g in q.generators]
    len_A = _length(R, qQ)
    steps.append(ChainStep("Q^d e(R) <= l(R/q^[Q])", Q ** d * e, len_A, "<=", Q ** d * e <= len_A, cm,
                           "equality for CM rings"))
    contained = frobenius_power_containment(R, q, Q, top)
    steps.append(ChainStep(f"(m^{top})^[Q] in q^[Q]", contained, True, "==", contained, top == d + 1 and cm
                           and closure is not None and Q >= R.p ** closure.fte))
    len_M_quot = _length(R, qQ + _bracket_max_power(R, top - l, Q))
    len_M = len_A - len_M_quot
    steps.append(ChainStep("l(A) <= l(M) + l(A/M)", len_A, len_M + len_M_quot, "<=", len_A <= len_M + len_M_quot))
    len_A_prime = _length(R, qQ + _bracket_max_power(R, l, Q))
    steps.append(ChainStep("l(M) <= s l(A')", len_M, s * len_A_prime, "<=", len_M <= s * len_A_prime,
                           contained and cm))
    c1 = Q ** v * binom(v - d + l - 1, l - 1)
    steps.append(ChainStep(f"l(A/(n^{l})^[Q]) <= Q^v C(v-d+l-1, l-1)", len_A_prime, c1, "<=", len_A_prime <= c1))
    c2 = Q ** v * binom(v - d + top - l - 1, top - l - 1)
    steps.append(ChainStep(f"l(A/(n^{top - l})^[Q]) <= Q^v C(v-d+{top}-l-1, {top}-l-1)", len_M_quot, c2, "<=",
                           len_M_quot <= c2))
    final = Fraction(Q) ** (v - d) * (s * binom(v - d + l - 1, l - 1) + binom(v - d + top - l - 1, top - l - 1))
    steps.append(ChainStep("e(R) <= Q^(v-d) (s C(..) + C(..))", Fraction(e), final, "<=", e <= final,
                           contained and cm))
    if closure is not None:
        for n, predicted, why in ((d, "f_nilpotent" in inv.flags, "F-nilpotent asserted"),
                                  (d + 1, cm, "verified CM")):
            inside = all(closure_contains(R, closure, R.ring.monomial(m))
                         for m in monomials_of_degree(R.nvars, n))
            steps.append(ChainStep(f"m^{n} in q^F", inside, True, "==", inside, predicted,
                                   why if predicted else "observed only"))
    return ChainReport(steps, Q, l, top)
