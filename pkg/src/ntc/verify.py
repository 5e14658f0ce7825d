"""Reference checks, recomputed from first principles.

Each check returns a :class:`CheckResult`; ``anchor`` names the result a
failure contradicts.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import brieskorn as bk
from . import graphio, homogeneous, lattice, oracles, reduction
from .lattice import Cycle


@dataclass
class CheckResult:
    id: str
    anchor: str
    ok: bool
    detail: str
    seconds: float = 0.0


class Context:
    def __init__(self, max_c: int = 30, fixtures: Path | None = None, seed: int = 0):
        self.max_c = max_c
        self.fixtures = Path(fixtures) if fixtures else None
        self.seed = seed

    def graph(self, name: str) -> lattice.WeightedDualGraph:
        if self.fixtures is None:
            return graphio.load_fixture(name)
        return graphio.load(self.fixtures / f"{name}{graphio.SUFFIX}")

    def fixture_names(self) -> list[str]:
        if self.fixtures is None:
            return graphio.fixture_names()
        return sorted(p.name[: -len(graphio.SUFFIX)] for p in self.fixtures.glob(f"*{graphio.SUFFIX}"))

    def sweep(self):
        return bk.sweep(self.max_c)


CHECKS: list[tuple[str, str, Callable[[Context], list[str]]]] = []


def check(id: str, anchor: str):
    def deco(fn):
        CHECKS.append((id, anchor, fn))
        return fn

    return deco


def _three_way(t: bk.BrieskornType) -> tuple[bool, bool, bool]:
    inv = bk.invariants(t)
    arith = t.b % t.a in {0, inv.d % t.a}
    cycle = (inv.r - 1) * inv.zsq + inv.kz == 0
    b = bk.b_sequence(t)
    return arith, cycle, reduction.is_symmetric(b)


@check("brieskorn-equivalence", "Brieskorn Gorenstein criterion: b = 0 or d mod a")
def _(ctx):
    bad = []
    for t in ctx.sweep():
        arith, cycle, sym = _three_way(t)
        if not arith == cycle == sym:
            bad.append(f"{t}: arith={arith} cycle={cycle} symmetric={sym}")
    return bad


@check("brieskorn-reduction-number", "Brieskorn br(m) = n_(a-1)")
def _(ctx):
    return [
        f"{t}: direct {r} != n_(a-1) {bk.invariants(t).r}"
        for t in ctx.sweep()
        if (r := bk._br_direct(t.a, t.b)) != bk.invariants(t).r
    ]


@check("brieskorn-step-lengths", "Brieskorn step length a - ceil(a(k+1)/b)")
def _(ctx):
    bad = []
    for t in ctx.sweep():
        inv = bk.invariants(t)
        for k in range(inv.r + 1):
            if bk.step_formula(t, k) != bk.step_layers(t, k):
                bad.append(f"{t} k={k}: formula {bk.step_formula(t, k)} != layers {bk.step_layers(t, k)}")
        total = sum(bk.step_formula(t, k) for k in range(1, inv.r + 1))
        if 2 * total != inv.d + t.b * (t.a - 1) - 3 * t.a + 2:
            bad.append(f"{t}: step sum {total}")
        if total != 1 - inv.chi:
            bad.append(f"{t}: step sum {total} != 1 - chi(Z) = {1 - inv.chi}")
    return bad


@check("brieskorn-3-5-5", "Brieskorn example (3,5,5)")
def _(ctx):
    t = bk.BrieskornType(3, 5, 5)
    bad = []
    got = {
        "r": bk.br_direct(t),
        "e(m^3)": bk.overline_power(t, 3).e,
        "colength(m^3)": bk.colength(bk.overline_power(t, 3)),
        "b": bk.b_sequence(t).b,
        "gorenstein": bk.is_gorenstein(t).value,
        "m^4 = Q m^3": bk.overline_power(t, 4) == bk.q_multiply(bk.overline_power(t, 3)),
    }
    want = {"r": 3, "e(m^3)": (3, 2, 0), "colength(m^3)": 9, "b": (1, 1, 0, 1), "gorenstein": False, "m^4 = Q m^3": True}
    for k in want:
        if got[k] != want[k]:
            bad.append(f"{k}: {got[k]} != {want[k]}")
    return bad


@check("brieskorn-corollaries", "Brieskorn corollaries: (3,3s,3s), (a,a,a), a = 4, odd r and a")
def _(ctx):
    return bk.corollary_suite(ctx.max_c, max_s=10, max_aaa=12)


@check("brieskorn-eqbb", "b-sequence identity sum (k-1) b_k = l(A/I) - chi(Z)")
def _(ctx):
    bad = []
    for t in ctx.sweep():
        inv = bk.invariants(t)
        chi = Fraction(-(inv.zsq + inv.kz), 2)
        if not reduction.eqbb_check(bk.b_sequence(t), chi):
            bad.append(f"{t}: b = {bk.b_sequence(t).b}, chi = {chi}")
    return bad


@check("homogeneous-classification", "Gorenstein ideals with br >= 2 in degree 3, 4, 5")
def _(ctx):
    want = {3: {"m"}, 4: {"m", "m^2"}, 5: {"m", "m^3", "I(L)"}}
    bad = []
    for d, labels in want.items():
        got = homogeneous.classify(d).labels
        if got != labels:
            bad.append(f"d={d}: {sorted(got)} != {sorted(labels)}")
    return bad


@check("homogeneous-I(L)", "I(L) = (L) + m^2 in degree 5 is elliptic Gorenstein")
def _(ctx):
    rep = homogeneous.il_report(5)
    want = {"chi": 0, "zsq": -10, "q": 7, "colength": 3, "colength2": 13}
    return [f"{k}: {getattr(rep, k)} != {v}" for k, v in want.items() if getattr(rep, k) != v]


@check("degree5-graphs", "I(L) dual graphs in degree 5")
def _(ctx):
    bad = []
    g1 = ctx.graph("ex5_11_1")
    z1 = lattice.dual_cycle(g1, "E5")
    if list(z1) != [1, 10, 8, 6, 4, 2]:
        bad.append(f"fixture 1: E_5^* = {z1.plain()}")
    if lattice.cycle_from_arrows(g1) != z1:
        bad.append("fixture 1: arrows do not encode E_5^*")
    g2 = ctx.graph("ex5_11_2")
    z2 = lattice.dual_cycle(g2, "E3") + lattice.dual_cycle(g2, "E5")
    if lattice.cycle_from_arrows(g2) != z2:
        bad.append("fixture 2: arrows do not encode E_3^* + E_5^*")
    for name, g, z in (("fixture 1", g1, z1), ("fixture 2", g2, z2)):
        zsq = lattice.pairing(g.form, z, z)
        kz = lattice.canonical_pairing(g, z)
        chi = lattice.chi(g, z)
        if zsq != -10 or chi != 0:
            bad.append(f"{name}: Z^2 = {zsq}, chi = {chi}")
        elif not reduction.gorenstein_cycle_criterion(int(zsq), int(kz), 2):
            bad.append(f"{name}: criterion fails at r = 2")
    return bad


@check("x2y3z6-graphs", "graphs of m and m^2 on x^2 + y^3 + z^6")
def _(ctx):
    bad = []
    g = ctx.graph("ex4_4_m")
    z = lattice.cycle_from_arrows(g)
    if list(z) != [1, 2]:
        bad.append(f"Gamma(m): Z = {z.plain()}")
    if lattice.canonical_pairing(g, z) != 0:
        bad.append(f"Gamma(m): K Z = {lattice.canonical_pairing(g, z)}")
    g2 = ctx.graph("ex4_4_m2")
    z2 = lattice.cycle_from_arrows(g2)
    if list(z2) != [2]:
        bad.append(f"Gamma(m^2): Z = {z2.plain()}")
    if lattice.canonical_pairing(g2, z2) != 2:
        bad.append(f"Gamma(m^2): K Z = {lattice.canonical_pairing(g2, z2)}")
    return bad


@check("powers-reduction-number", "br(closure(I^k)) = ceil((r-1)/k) + 1")
def _(ctx):
    bad = []
    for a in range(2, ctx.max_c + 1):
        for b in range(a, ctx.max_c + 1):
            t = bk.BrieskornType(a, b, b)
            q = reduction.QSequence.from_drops(bk.q_drops(t))
            r = reduction.br_from_q(q)
            if r != bk.invariants(t).r:
                bad.append(f"{t}: br from q = {r}")
                continue
            for k in range(1, r + 1):
                got = reduction.br_from_q(q.rescaled(k))
                if got != reduction.br_power(r, k):
                    bad.append(f"{t} k={k}: {got} != {reduction.br_power(r, k)}")
    return bad


@check("lattice-properties", "anti-nef cycle calculus")
def _(ctx):
    bad = []
    rng = random.Random(ctx.seed)
    for name in ctx.fixture_names():
        g = ctx.graph(name)
        if not lattice.is_negative_definite(g.form):
            bad.append(f"{name}: not negative definite")
        for j, v in enumerate(g.vertices):
            d = lattice.dual_cycle(g, v.id)
            if not all(c > 0 for c in d) or not lattice.is_antinef(g, d):
                bad.append(f"{name}: dual of {v.id} is {d.plain()}")
        for _ in range(1000):
            z = [rng.randint(-6, 6) for _ in g.vertices]
            s = lattice.pairing(g.form, z, z) + lattice.canonical_pairing(g, z)
            if s.denominator != 1 or s % 2:
                bad.append(f"{name}: Z^2 + KZ = {s} for {z}")
                break
        fc = lattice.fundamental_cycle(g)
        if max(fc) <= 6 and len(g) <= 5 and tuple(fc) != oracles.minimal_antinef_box(g, 6):
            bad.append(f"{name}: fundamental cycle {fc.plain()}")
        _enum_predicates(g, name, bad)
    for i in range(40):
        g = oracles.random_graph(rng)
        fc = lattice.fundamental_cycle(g)
        if max(fc) > 6:
            continue
        ref = oracles.minimal_antinef_box(g, 6)
        if tuple(fc) != ref:
            bad.append(f"random graph {i}: Laufer {fc.plain()} != brute force {ref}")
    return bad


def _enum_predicates(g, name, bad):
    w = lattice.fundamental_cycle(g).scale(2)
    below = lattice.enumerate_antinef_below(g, w)
    if below != sorted(set(below)):
        bad.append(f"{name}: below-enumeration not sorted/unique")
    for z in below:
        if not lattice.is_antinef(g, z) or z.geq(w) or not z.integral:
            bad.append(f"{name}: {z.plain()} violates the below-predicate")
    zk_enum = lattice.enumerate_antinef_not_exceeding_canonical(g)
    cycles = [z for z, _ in zk_enum.entries]
    if cycles != sorted(set(cycles)):
        bad.append(f"{name}: Z_K-enumeration not sorted/unique")
    for z in cycles:
        if not lattice.is_antinef(g, z) or lattice.exceeds(z, zk_enum.zk):
            bad.append(f"{name}: {z.plain()} violates the Z_K-predicate")


def run(ctx: Context, only: set[str] | None = None) -> list[CheckResult]:
    out = []
    for id, anchor, fn in CHECKS:
        if only is not None and id not in only:
            continue
        start = time.perf_counter()
        try:
            bad = fn(ctx)
        except (lattice.GraphError, OSError, ValueError, AssertionError) as exc:
            bad = [f"{type(exc).__name__}: {exc}"]
        elapsed = time.perf_counter() - start
        detail = "ok" if not bad else "; ".join(bad[:5]) + (f" (+{len(bad) - 5} more)" if len(bad) > 5 else "")
        out.append(CheckResult(id, anchor, not bad, detail, round(elapsed, 3)))
    return out
