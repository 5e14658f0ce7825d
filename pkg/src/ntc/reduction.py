"""From q-sequences to reduction numbers, b-sequences and Gorenstein tests.

Notation: ``q_n = q(nI)``, with ``q_0 = p_g(A)``.  For ``I = I_Z`` with minimal
reduction ``Q`` the step lengths are ``s_n = l(closure(I^n) / Q closure(I^(n-1)))``
and ``B = gr / (Q)`` has graded pieces of length ``b_0, ..., b_r``.

Only differences of q-values ever matter, so a sequence may be given with an
arbitrary anchor (see :meth:`QSequence.from_drops`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class InadmissibleError(ValueError):
    """Input data that cannot come from an integrally closed ideal."""


@dataclass(frozen=True)
class QSequence:
    q: tuple[int, ...]

    def __post_init__(self):
        q = tuple(int(x) for x in self.q)
        object.__setattr__(self, "q", q)
        if len(q) < 2 or q[-1] != q[-2]:
            raise InadmissibleError(f"q-sequence {q} must end with a repeated (stable) value")
        if any(a < b for a, b in zip(q, q[1:])):
            raise InadmissibleError(f"q-sequence {q} is not nonincreasing")
        if q[-1] < 0:
            raise InadmissibleError(f"q-sequence {q} has negative entries")

    @classmethod
    def from_drops(cls, drops: Sequence[int]) -> QSequence:
        """Build from cumulative drops ``p_g - q_n`` for n = 1, 2, ...

        The unknown ``p_g`` is replaced by the anchor ``q(oo I) = 0``, so the
        resulting values are ``q_n - q(oo I)``.
        """
        drops = [0, *drops]
        top = drops[-1]
        values = [top - x for x in drops]
        if values[-1] != values[-2]:
            values.append(values[-1])
        return cls(tuple(values))

    def __getitem__(self, n: int) -> int:
        # stabilized: q_n = q_m for n >= m
        return self.q[min(n, len(self.q) - 1)]

    @property
    def pg(self) -> int:
        return self.q[0]

    @property
    def q_infinity(self) -> int:
        return self.q[-1]

    def rescaled(self, k: int) -> QSequence:
        """q-data of ``closure(I^k)``: ``q(n I_k) = q(kn I)``."""
        m = -(-(len(self.q) - 1) // k) + 1
        return QSequence(tuple(self[k * n] for n in range(m + 1)))


def step_from_q(q: QSequence, n: int) -> int:
    """``l(closure(I^(n+1)) / Q closure(I^n)) = (q_{n-1} - q_n) - (q_n - q_{n+1})``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = (q[n - 1] - q[n]) - (q[n] - q[n + 1])
    if value < 0:
        raise InadmissibleError(f"q-sequence not admissible: step {n} is {value}")
    return value


def nr_from_q(q: QSequence) -> int:
    n = 1
    while q[n - 1] - q[n] != q[n] - q[n + 1]:
        n += 1
    return n


def br_from_q(q: QSequence) -> int:
    n = 1
    while q[n - 1] != q[n]:
        n += 1
    nr = nr_from_q(q)
    assert n >= nr >= 1
    return n


def br_power(r: int, k: int) -> int:
    """Normal reduction number of ``closure(I^k)`` when ``br(I) = r``."""
    if r < 1 or k < 1:
        raise ValueError("r and k must be >= 1")
    return -(-(r - 1) // k) + 1


@dataclass(frozen=True)
class StepSequence:
    """``steps[n-1] = s_n`` for n = 1..r+1 (trailing zero included), plus e_0 and l(A/I)."""

    steps: tuple[int, ...]
    e0: int
    colength: int

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        s = self.steps
        if not s or s[-1] != 0:
            raise InadmissibleError(f"steps {s} must end with s_(r+1) = 0")
        if any(x < 0 for x in s):
            raise InadmissibleError(f"steps {s} contain a negative length")
        if s[0] != self.e0 - self.colength:
            raise InadmissibleError(f"s_1 = {s[0]} must equal e_0 - l(A/I) = {self.e0 - self.colength}")

    @property
    def r(self) -> int:
        return max((n for n, x in enumerate(self.steps, 1) if x > 0), default=0)


@dataclass(frozen=True)
class BSequence:
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.b) < 2:
            raise InadmissibleError("a b-sequence needs r >= 1")
        if any(x < 0 for x in self.b):
            raise InadmissibleError(f"b-sequence {self.b} has a negative entry")

    @property
    def r(self) -> int:
        return len(self.b) - 1

    @property
    def e0(self) -> int:
        return sum(self.b)


def b_sequence(steps: StepSequence) -> BSequence:
    """``b_0 = l(A/I)`` and ``b_n = s_n - s_(n+1)`` for 1 <= n <= r."""
    r = steps.r
    if r < 1:
        raise InadmissibleError("steps describe r = 0")
    s = list(steps.steps[: r + 1]) + [0] * max(0, r + 1 - len(steps.steps))
    b = [steps.colength] + [s[n - 1] - s[n] for n in range(1, r + 1)]
    if any(x < 0 for x in b):
        raise InadmissibleError(f"steps {steps.steps} give negative b-entries {b}")
    out = BSequence(tuple(b))
    assert out.e0 == steps.e0 and out.b[0] == steps.colength
    return out


def L_colengths(b: BSequence) -> list[int]:
    """``l(A/L_n) = b_0 + ... + b_(n-1)`` for n = 1..r."""
    out, total = [], 0
    for x in b.b[:-1]:
        total += x
        out.append(total)
    return out


def is_symmetric(b: BSequence) -> bool:
    return b.b == b.b[::-1]


def complementarity_check(b: BSequence) -> bool:
    """``l(A/L_n) + l(A/L_(r+1-n)) = e_0`` for n = 1..ceil(r/2)."""
    prefix = L_colengths(b)
    r, e0 = b.r, b.e0
    ok = all(prefix[n - 1] + prefix[r - n] == e0 for n in range(1, math.ceil(r / 2) + 1))
    assert ok == is_symmetric(b)
    return ok


def gorenstein_cycle_criterion(zsq: int, kz: int, r: int) -> bool:
    """``(r-1) Z^2 + K Z = 0``.

    At r = 1 this reads ``K Z = 0`` (good p_g-ideals), at r = 2 it is
    ``chi(Z) = 0`` (elliptic ideals).
    """
    if zsq >= 0:
        raise ValueError("Z^2 must be negative")
    if r < 1:
        raise ValueError("r must be >= 1")
    return (r - 1) * zsq + kz == 0


def eqbb_check(b: BSequence, chi_z) -> bool:
    """``b_2 + 2 b_3 + ... + (r-1) b_r = l(A/I) - chi(Z)``; holds whenever the cone is CM."""
    lhs = sum((k - 1) * b.b[k] for k in range(2, b.r + 1))
    return lhs == b.b[0] - Fraction(chi_z)


def classify_by_br(r: int) -> str:
    if r < 1:
        raise ValueError("reduction number must be >= 1")
    return {1: "pg", 2: "elliptic"}.get(r, "higher")


def colength_bound_check(colength: int, pg: int, r: int) -> bool:
    """For Gorenstein cones with r >= 2: ``l(A/I) <= p_g + 2 - r``."""
    if r < 2:
        raise ValueError("bound is stated for r >= 2")
    return colength <= pg + 2 - r
