"""Homogeneous hypersurface singularities of degree d >= 3.

The minimal resolution has one exceptional curve C (genus (d-1)(d-2)/2,
C^2 = -d).  An ideal ``I = I_Z`` minimally represented on a blow-up is
recorded as ``Z = phi^*(uC) + sum a_i F_i`` together with the set P of
blow-ups centred on the proper transform of C.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from .lattice import WeightedDualGraph, is_antinef
from .reduction import br_power

VERIFIED_DEGREES = (3, 4, 5)


def S(t: int) -> int:
    if t < 0:
        raise ValueError("t must be >= 0")
    return t * (t - 1) * (t - 2) // 6


@dataclass(frozen=True)
class HomogModel:
    d: int

    def __post_init__(self):
        if self.d < 3:
            raise ValueError(f"degree {self.d} must be >= 3")

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.d - 2) // 2

    @property
    def csq(self) -> int:
        return -self.d

    @property
    def kc(self) -> int:
        # K_{X_0} = (2 - d) C
        return (2 - self.d) * self.csq

    @property
    def pg(self) -> int:
        return S(self.d)

    @property
    def br_m(self) -> int:
        return self.d - 1

    def graph(self) -> WeightedDualGraph:
        """The minimal resolution as a one-vertex graph."""
        return WeightedDualGraph.build([("C", self.csq, self.genus)], name=f"homog_d{self.d}")


def model(d: int) -> HomogModel:
    return HomogModel(d)


def chi_uC(d: int, u: int) -> int:
    if u < 0:
        raise ValueError("u must be >= 0")
    value = Fraction(d * u * (u - d + 2), 2)
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class PowerReport:
    d: int
    n: int
    colength: int
    q: int
    gorenstein: bool
    br: int


def power_report(d: int, n: int) -> PowerReport:
    """Data for ``m^n`` (which is integrally closed) for 1 <= n <= d."""
    if not 1 <= n <= d:
        raise ValueError(f"n = {n} outside 1..{d}")
    gorenstein = (d - 2) % n == 0
    br = 1 + (d - 2) // n if gorenstein else br_power(d - 1, n)
    assert br == br_power(d - 1, n)
    return PowerReport(d, n, S(n + 2), S(d - n), gorenstein, br)


@dataclass(frozen=True)
class BlowupDatum:
    u: int
    mults: tuple[int, ...] = ()
    on_curve: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))
        object.__setattr__(self, "on_curve", frozenset(self.on_curve))
        if self.u < 1:
            raise ValueError("u must be >= 1")
        if any(a < 1 for a in self.mults):
            raise ValueError("multiplicities must be >= 1")
        if not self.on_curve <= set(range(len(self.mults))):
            raise ValueError("on_curve indices out of range")


@dataclass(frozen=True)
class BlowupAnalysis:
    chi: int
    zsq: int
    ze0: int


def blowup_analysis(d: int, datum: BlowupDatum) -> BlowupAnalysis:
    ze0 = -datum.u * d + sum(datum.mults[i] for i in datum.on_curve)
    if ze0 > 0:
        raise ValueError(f"not anti-nef: P too heavy (Z.E_0 = {ze0})")
    chi = chi_uC(d, datum.u) + sum(a * (a + 1) // 2 for a in datum.mults)
    zsq = -(d * datum.u**2 + sum(a * a for a in datum.mults))
    return BlowupAnalysis(chi, zsq, ze0)


@dataclass(frozen=True)
class ILReport:
    d: int
    chi: int
    q: int
    colength: int
    zsq: int
    colength2: int | None


def il_report(d: int) -> ILReport:
    """Invariants of ``I(L) = (L) + m^2`` (u = 1, d simple blow-ups on C)."""
    m = model(d)
    datum = BlowupDatum(1, (1,) * d, range(d))
    data = blowup_analysis(d, datum)
    chi = data.chi
    assert 2 * chi == d * (5 - d)
    q = -2 + d + S(d - 1)
    # Riemann-Roch: l(A/I) = chi(Z) + p_g - q(I)
    colength = chi + m.pg - q
    colength2 = None
    if d == 5:
        # elliptic: q(2I) = q(I), and chi(2Z) = 2 chi(Z) - Z^2
        colength2 = (2 * chi - data.zsq) + m.pg - q
    return ILReport(d, chi, q, colength, data.zsq, colength2)


def _multisets(total: int, max_part: int):
    """Multisets of positive a_i (nonincreasing tuples) with sum a_i(a_i+1)/2 == total."""
    if total == 0:
        yield ()
        return
    for a in range(min(max_part, total), 0, -1):
        cost = a * (a + 1) // 2
        if cost <= total:
            for rest in _multisets(total - cost, a):
                yield (a,) + rest


def _subset_hitting(mults: tuple[int, ...], target: int) -> frozenset[int] | None:
    """Lexicographically first index set with sum of mults equal to target."""
    reach: dict[int, frozenset[int]] = {0: frozenset()}
    for i, a in enumerate(mults):
        for s, idx in list(reach.items()):
            reach.setdefault(s + a, idx | {i})
    return reach.get(target)


@dataclass(frozen=True)
class Solution:
    d: int
    datum: BlowupDatum
    label: str

    @property
    def key(self):
        return (self.datum.u, self.datum.mults)


def label_for(d: int, u: int, mults: tuple[int, ...]) -> str:
    if not mults:
        return "m" if u == 1 else f"m^{u}"
    if d == 5 and u == 1 and mults == (1,) * 5:
        return "I(L)"
    return f"blowup(u={u}, mults={list(mults)})"


def search_r2(d: int) -> list[Solution]:
    """Combinatorial candidates for elliptic ideals with chi(Z) = 0.

    Constraints used: u <= d - 2; u = d - 2 forces no blow-ups; for u <= d - 3
    one needs sum a_i(a_i+1)/2 = -chi(uC) and Z.E_0 = 0, i.e. some subset of
    the a_i sums to ud.
    """
    model(d)
    out = [Solution(d, BlowupDatum(d - 2), label_for(d, d - 2, ()))]
    for u in range(1, d - 2):
        need = -chi_uC(d, u)
        for mults in _multisets(need, need):
            p = _subset_hitting(mults, u * d)
            if p is None:
                continue
            datum = BlowupDatum(u, mults, p)
            data = blowup_analysis(d, datum)
            assert data.chi == 0 and data.ze0 == 0
            out.append(Solution(d, datum, label_for(d, u, mults)))
    return sorted(out, key=lambda s: s.key)


@dataclass(frozen=True)
class Classified:
    label: str
    u: int
    mults: tuple[int, ...]
    br: int
    root_of: str
    power: int


@dataclass(frozen=True)
class Classification:
    d: int
    ideals: list[Classified]
    verified: bool

    @property
    def labels(self) -> set[str]:
        return {c.label for c in self.ideals}


def classify(d: int) -> Classification:
    """Ideals with br >= 2 and Gorenstein normal tangent cone.

    Every such I has an elliptic Gorenstein power ``closure(I^s) = I_Z`` with
    chi(Z) = 0, and ``br(I) = 1 + s``; so the answer is the set of W with
    ``Z = sW`` over the elliptic candidates Z.
    """
    mdl = model(d)
    found: dict[str, Classified] = {}
    for sol in search_r2(d):
        u, mults = sol.datum.u, sol.datum.mults
        top = reduce(gcd, mults, u)
        for s in range(1, top + 1):
            if top % s:
                continue
            wu, wm = u // s, tuple(a // s for a in mults)
            if not wm and not is_antinef(mdl.graph(), [wu]):
                continue
            # W.E_0 = Z.E_0 / s <= 0 on the blown-up surface
            label = label_for(d, wu, wm)
            found.setdefault(label, Classified(label, wu, wm, 1 + s, sol.label, s))
    ideals = sorted(found.values(), key=lambda c: (c.u, c.mults))
    return Classification(d, ideals, d in VERIFIED_DEGREES)


def multiset_counts(mults) -> dict[int, int]:
    return dict(sorted(Counter(mults).items()))
