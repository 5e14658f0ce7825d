"""The maximal ideal of ``x^a + y^b + z^c`` (2 <= a <= b <= c).

The ring is a free module over k[[y, z]] on ``1, x, ..., x^(a-1)``, and every
integral closure ``closure(m^n)`` is a sum of layers ``x^k Q^(e_k)`` with
``Q = (y, z)``.  Colengths are then triangle counts, which gives an oracle
for the step lengths independent of the ceiling formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import reduction
from .reduction import BSequence, StepSequence


@dataclass(frozen=True, order=True)
class BrieskornType:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not 2 <= self.a <= self.b <= self.c:
            raise ValueError(f"type ({self.a},{self.b},{self.c}) must satisfy 2 <= a <= b <= c")

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class Invariants:
    d: int
    n: tuple[int, ...]
    r: int
    zsq: int
    kz: int

    @property
    def chi(self):
        # -(Z^2 + KZ)/2 is always an integer here
        return -(self.zsq + self.kz) // 2


def invariants(t: BrieskornType) -> Invariants:
    return _invariants(t.a, t.b)


@lru_cache(maxsize=None)
def _invariants(a: int, b: int) -> Invariants:
    d = math.gcd(a, b)
    n = tuple(k * b // a for k in range(1, a))
    return Invariants(d=d, n=n, r=n[-1], zsq=-a, kz=d + a * b - b - 2 * a)


@dataclass(frozen=True)
class LayeredMonomialIdeal:
    """``sum_k x^k Q^(e_k)``; ``Q^m`` is the whole ring for m <= 0."""

    e: tuple[int, ...]

    def is_ideal(self, b: int) -> bool:
        e = self.e
        # x-closure inside the free part, and x * x^(a-1) = -(y^b + z^c) wrapping to layer 0
        return all(e[k + 1] <= e[k] for k in range(len(e) - 1)) and e[0] <= e[-1] + b


def overline_power(t: BrieskornType, n: int) -> LayeredMonomialIdeal:
    if n < 0:
        raise ValueError("n must be >= 0")
    nk = (0,) + invariants(t).n
    ideal = LayeredMonomialIdeal(tuple(max(n - x, 0) for x in nk))
    assert ideal.is_ideal(t.b)
    return ideal


def q_multiply(ideal: LayeredMonomialIdeal) -> LayeredMonomialIdeal:
    return LayeredMonomialIdeal(tuple(x + 1 for x in ideal.e))


def colength(ideal: LayeredMonomialIdeal) -> int:
    return sum(x * (x + 1) // 2 for x in ideal.e)


@lru_cache(maxsize=None)
def _br_direct(a: int, b: int) -> int:
    nk = (0,) + _invariants(a, b).n
    window = a * b
    # raw exponent vectors; r <= b so this range covers every window tried
    powers = [tuple(max(n - x, 0) for x in nk) for n in range(window + 2 * b + 2)]
    stable = [powers[n + 1] == tuple(x + 1 for x in powers[n]) for n in range(len(powers) - 1)]
    r = 1
    while not all(stable[r : r + window + 1]):
        r += 1
    return r


def br_direct(t: BrieskornType) -> int:
    """Least r with ``closure(m^(n+1)) = Q closure(m^n)`` on the window n in [r, r + ab]."""
    r = _br_direct(t.a, t.b)
    assert r == invariants(t).r
    return r


def L_colength(t: BrieskornType, n: int) -> int:
    """``l(A/L_n)``: the least k with ``n <= n_k``."""
    inv = invariants(t)
    if not 1 <= n <= inv.r:
        raise ValueError(f"n = {n} outside 1..{inv.r}")
    return next(k for k, nk in enumerate(inv.n, 1) if n <= nk)


def step_formula(t: BrieskornType, k: int) -> int:
    return t.a - -(-t.a * (k + 1) // t.b)


def step_layers(t: BrieskornType, k: int) -> int:
    """``l(closure(m^(k+1)) / Q closure(m^k))`` by counting monomials."""
    return colength(q_multiply(overline_power(t, k))) - colength(overline_power(t, k + 1))


def step(t: BrieskornType, k: int) -> int:
    r = invariants(t).r
    if not 0 <= k <= r:
        raise ValueError(f"k = {k} outside 0..{r}")
    value = step_formula(t, k)
    assert value == step_layers(t, k)
    return value


def step_sequence(t: BrieskornType) -> StepSequence:
    r = invariants(t).r
    return StepSequence(tuple(step(t, k) for k in range(r + 1)), e0=t.a, colength=1)


def b_sequence(t: BrieskornType) -> BSequence:
    return _b_sequence(t.a, t.b)


@lru_cache(maxsize=None)
def _b_sequence(a: int, b: int) -> BSequence:
    # c plays no role
    out = reduction.b_sequence(step_sequence(BrieskornType(a, b, b)))
    assert out.b[0] == 1 and out.e0 == a
    return out


def q_drops(t: BrieskornType) -> list[int]:
    """``p_g - q(n m)`` for n = 1..r, from the step lengths.

    ``q_(n-1) - q_n`` is the sum of the steps beyond n, so the drops are
    partial sums of those.
    """
    inv = invariants(t)
    s = [step(t, k) for k in range(inv.r + 1)]  # s[k] = l(m^(k+1)/Q m^k)
    diffs = [sum(s[n:]) for n in range(1, inv.r + 1)]  # q_(n-1) - q_n
    drops, total = [], 0
    for x in diffs:
        total += x
        drops.append(total)
    return drops


@dataclass(frozen=True)
class GorensteinVerdict:
    arith: bool
    cycle: bool
    symmetric: bool

    @property
    def value(self) -> bool:
        return self.arith


def is_gorenstein(t: BrieskornType) -> GorensteinVerdict:
    inv = invariants(t)
    arith = t.b % t.a in {0, inv.d % t.a}
    cycle = reduction.gorenstein_cycle_criterion(inv.zsq, inv.kz, inv.r)
    symmetric = reduction.is_symmetric(b_sequence(t))
    assert arith == cycle == symmetric, f"equivalence fails at {t}"
    return GorensteinVerdict(arith, cycle, symmetric)


def sweep(max_c: int, min_a: int = 2):
    """All types with ``min_a <= a <= b <= c <= max_c``, lexicographic."""
    for a in range(min_a, max_c + 1):
        for b in range(a, max_c + 1):
            for c in range(b, max_c + 1):
                yield BrieskornType(a, b, c)


def corollary_suite(max_c: int = 30, max_s: int = 10, max_aaa: int = 12) -> list[str]:
    """Check the stated consequences of the classification; returns violations."""
    bad: list[str] = []
    for t in sweep(max_c):
        inv = invariants(t)
        gor = is_gorenstein(t).value
        if inv.r < t.a - 1:
            bad.append(f"{t}: br = {inv.r} < a - 1")
        if inv.r % 2 == 1 and t.a % 2 == 1 and gor:
            bad.append(f"{t}: r and a odd but Gorenstein")
        if t.a == 4 and gor and inv.r % 3 not in (0, 1):
            bad.append(f"{t}: a = 4 Gorenstein with r = {inv.r}")
        if t.b % t.a:
            n1 = inv.n[0]
            if inv.r != t.b - n1 - 1:
                bad.append(f"{t}: r = {inv.r} != b - n_1 - 1")
    for s in range(1, max_s + 1):
        t = BrieskornType(3, 3 * s, 3 * s)
        if not is_gorenstein(t).value or br_direct(t) != 2 * s:
            bad.append(f"{t}: expected Gorenstein with br = {2 * s}")
    for a in range(2, max_aaa + 1):
        t = BrieskornType(a, a, a)
        if not is_gorenstein(t).value or br_direct(t) != a - 1:
            bad.append(f"{t}: expected Gorenstein with br = {a - 1}")
    return bad
