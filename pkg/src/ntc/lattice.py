"""Exact intersection theory on weighted dual graphs.

Vertices are the exceptional curves ``E_i`` of a resolution; a cycle is a
rational combination of them.  Everything here is computed over
:class:`fractions.Fraction`, never floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class GraphError(ValueError):
    """Invalid graph or cycle input.

    ``code`` is a stable machine-readable diagnostic, ``where`` points at the
    offending token (a vertex id, a document path, or ``line:col``).
    """

    def __init__(self, code: str, message: str, where: str | None = None):
        self.code = code
        self.message = message
        self.where = where
        loc = f" (at {where})" if where else ""
        super().__init__(f"{code}: {message}{loc}")


@dataclass(frozen=True)
class Vertex:
    id: str
    self_int: int
    genus: int = 0


class Cycle(tuple):
    """Coefficient vector of a cycle, in the vertex order of its graph."""

    def __new__(cls, coeffs: Iterable = ()):
        return super().__new__(cls, (Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, n: int) -> Cycle:
        return cls([0] * n)

    @classmethod
    def basis(cls, n: int, i: int) -> Cycle:
        return cls([1 if k == i else 0 for k in range(n)])

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self)

    def __add__(self, other):
        if len(self) != len(other):
            raise GraphError("E_DIMENSION", f"cycle lengths {len(self)} != {len(other)}")
        return Cycle(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> Cycle:
        return Cycle(s * c for c in self)

    def geq(self, other: Sequence) -> bool:
        """Coefficientwise ``self >= other``."""
        return all(a >= b for a, b in zip(self, other))

    def is_zero(self) -> bool:
        return not any(self)

    def ceil(self) -> Cycle:
        return Cycle(math.ceil(c) for c in self)

    def as_ints(self) -> list[int]:
        if not self.integral:
            raise ValueError("cycle is not integral")
        return [int(c) for c in self]

    def plain(self) -> list:
        """JSON-friendly coefficients: ints where integral, else "p/q" strings."""
        return [int(c) if c.denominator == 1 else str(c) for c in self]

    def __repr__(self):
        return f"Cycle({self.plain()})"


@dataclass(frozen=True)
class WeightedDualGraph:
    """Weighted dual graph with optional arrowheads.

    ``edges`` holds index pairs ``(i, j)`` with ``i < j``, repeated once per
    intersection point; ``arrows`` holds ``(vertex index, weight)``.  Both are
    kept sorted so that equal graphs compare equal.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...] = ()
    arrows: tuple[tuple[int, int], ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(self, "arrows", tuple(sorted(tuple(a) for a in self.arrows)))
        self._check_structure()
        validate(self)

    @classmethod
    def build(cls, vertices, edges=(), arrows=(), name=None) -> WeightedDualGraph:
        """Convenience constructor taking ``(id, self, genus)`` triples and id-based edges/arrows."""
        verts = [v if isinstance(v, Vertex) else Vertex(*v) for v in vertices]
        index = {v.id: i for i, v in enumerate(verts)}
        try:
            e = [(index[a], index[b]) for a, b in edges]
            ar = [(index[a], w) for a, w in arrows]
        except KeyError as exc:
            raise GraphError("E_UNKNOWN_ID", f"unknown vertex id {exc.args[0]!r}", str(exc.args[0])) from None
        return cls(tuple(verts), tuple(e), tuple(ar), name)

    def _check_structure(self):
        n = len(self.vertices)
        if n == 0:
            raise GraphError("E_NO_VERTICES", "no vertices")
        seen = set()
        for v in self.vertices:
            if v.id in seen:
                raise GraphError("E_DUPLICATE_ID", f"duplicate vertex id {v.id!r}", v.id)
            seen.add(v.id)
            if v.self_int >= 0:
                raise GraphError("E_SELF_NONNEGATIVE", f"self-intersection {v.self_int} must be <= -1", v.id)
            if v.genus < 0:
                raise GraphError("E_GENUS_NEGATIVE", f"genus {v.genus} must be >= 0", v.id)
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError("E_UNKNOWN_ID", f"edge ({i}, {j}) out of range")
            if i == j:
                raise GraphError("E_SELF_LOOP", "self-loop edge", self.vertices[i].id)
        for i, w in self.arrows:
            if not 0 <= i < n:
                raise GraphError("E_UNKNOWN_ID", f"arrow at index {i} out of range")
            if w < 1:
                raise GraphError("E_ARROW_WEIGHT", f"arrow weight {w} must be >= 1", self.vertices[i].id)
        comp = self.components()
        if len(comp) > 1:
            stray = self.vertices[min(comp[1])].id
            raise GraphError("E_DISCONNECTED", f"graph has {len(comp)} components", stray)

    def components(self) -> list[set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        out, seen = [], set()
        for start in range(len(self.vertices)):
            if start in seen:
                continue
            comp, stack = set(), [start]
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(adj[v] - comp)
            seen |= comp
            out.append(comp)
        return out

    def __len__(self):
        return len(self.vertices)

    def index(self, vid: str) -> int:
        for i, v in enumerate(self.vertices):
            if v.id == vid:
                return i
        raise GraphError("E_UNKNOWN_ID", f"unknown vertex id {vid!r}", vid)

    @cached_property
    def form(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.vertices):
            m[i][i] = v.self_int
        for i, j in self.edges:
            m[i][j] += 1
            m[j][i] += 1
        return tuple(tuple(row) for row in m)

    @cached_property
    def kvals(self) -> tuple[int, ...]:
        return tuple(2 * v.genus - 2 - v.self_int for v in self.vertices)

    @cached_property
    def duals(self) -> tuple[Cycle, ...]:
        return tuple(_dual(self, j) for j in range(len(self.vertices)))


# ---------------------------------------------------------------------------
# forms

IntersectionForm = tuple  # tuple of integer rows


def intersection_form(graph: WeightedDualGraph) -> IntersectionForm:
    return graph.form


def leading_minors(matrix: Sequence[Sequence]) -> list[Fraction]:
    """Leading principal minors via fraction-free (Bareiss) elimination.

    The k-th Bareiss pivot equals the k-th leading minor as long as all
    earlier pivots are nonzero; after a zero pivot the remaining minors are
    computed directly.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    minors: list[Fraction] = []
    prev = Fraction(1)
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            minors.extend(_det([row[: m + 1] for row in matrix[: m + 1]]) for m in range(k + 1, n))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
        prev = pivot
    return minors


def _det(matrix) -> Fraction:
    a = [[Fraction(x) for x in row] for row in matrix]
    n, det = len(a), Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def is_negative_definite(form: Sequence[Sequence]) -> bool:
    neg = [[-x for x in row] for row in form]
    return all(m > 0 for m in leading_minors(neg))


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Exact solution of ``matrix @ x = rhs`` (matrix must be nonsingular)."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular intersection form")
        a[k], a[p] = a[p], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / a[k][k]
                for j in range(k, n + 1):
                    a[i][j] -= f * a[k][j]
    return [a[i][n] / a[i][i] for i in range(n)]


def validate(graph: WeightedDualGraph) -> WeightedDualGraph:
    """Reject graphs whose intersection form is not negative definite."""
    if not is_negative_definite(graph.form):
        minors = leading_minors([[-x for x in row] for row in graph.form])
        k = next(i for i, m in enumerate(minors) if m <= 0)
        raise GraphError(
            "E_NOT_NEGDEF",
            f"intersection form is not negative definite (minor {k + 1} of -M is {minors[k]})",
            graph.vertices[k].id,
        )
    return graph


# ---------------------------------------------------------------------------
# pairings and canonical data

def canonical_values(graph: WeightedDualGraph) -> tuple[int, ...]:
    """``K_X . E_i`` by adjunction."""
    return graph.kvals


def _check_dim(graph, *cycles):
    for z in cycles:
        if len(z) != len(graph):
            raise GraphError("E_DIMENSION", f"cycle has {len(z)} entries, graph has {len(graph)} vertices")


def pairing(form: Sequence[Sequence], z: Sequence, w: Sequence) -> Fraction:
    n = len(form)
    if len(z) != n or len(w) != n:
        raise GraphError("E_DIMENSION", f"cycle lengths {len(z)}, {len(w)} do not match form size {n}")
    return sum(
        (Fraction(z[i]) * form[i][j] * w[j] for i in range(n) for j in range(n) if form[i][j] and z[i] and w[j]),
        Fraction(0),
    )


def canonical_pairing(graph: WeightedDualGraph, z: Sequence) -> Fraction:
    _check_dim(graph, z)
    return sum((Fraction(c) * k for c, k in zip(z, graph.kvals)), Fraction(0))


def chi(graph: WeightedDualGraph, z: Sequence) -> Fraction:
    """Riemann-Roch Euler characteristic ``-(Z^2 + K Z)/2``."""
    _check_dim(graph, z)
    value = -(pairing(graph.form, z, z) + canonical_pairing(graph, z)) / 2
    if all(Fraction(c).denominator == 1 for c in z):
        assert value.denominator == 1, "chi of an integral cycle must be an integer"
    return value


def products(graph: WeightedDualGraph, z: Sequence) -> list[Fraction]:
    """The intersection numbers ``Z . E_i`` for every vertex."""
    _check_dim(graph, z)
    return [sum((Fraction(z[j]) * row[j] for j in range(len(row)) if row[j]), Fraction(0)) for row in graph.form]


def is_antinef(graph: WeightedDualGraph, z: Sequence) -> bool:
    return all(p <= 0 for p in products(graph, z))


# ---------------------------------------------------------------------------
# distinguished cycles

def _dual(graph: WeightedDualGraph, j: int) -> Cycle:
    n = len(graph)
    rhs = [-1 if i == j else 0 for i in range(n)]
    z = Cycle(solve(graph.form, rhs))
    assert all(c > 0 for c in z), "dual cycles of a negative definite connected graph are positive"
    return z


def dual_cycle(graph: WeightedDualGraph, vid: str) -> Cycle:
    return graph.duals[graph.index(vid)]


def cycle_from_arrows(graph: WeightedDualGraph) -> Cycle:
    """``Z = sum of weight * E_at^*`` over the arrowheads."""
    if not graph.arrows:
        raise GraphError("E_NO_ARROWS", "graph has no arrowheads; Z cannot be reconstructed", graph.name)
    z = Cycle.zero(len(graph))
    for i, w in graph.arrows:
        z = z + graph.duals[i].scale(w)
    assert is_antinef(graph, z)
    return z


def fundamental_cycle(graph: WeightedDualGraph) -> Cycle:
    """Laufer's computation sequence started at the first vertex."""
    n = len(graph)
    z = [0] * n
    z[0] = 1
    form = graph.form
    while True:
        bad = next((i for i in range(n) if sum(form[i][j] * z[j] for j in range(n)) > 0), None)
        if bad is None:
            return Cycle(z)
        z[bad] += 1


def canonical_cycle(graph: WeightedDualGraph) -> Cycle:
    """The rational ``Z_K`` with ``Z_K . E_i = -K . E_i``; may be non-integral or non-positive."""
    return Cycle(solve(graph.form, [-k for k in graph.kvals]))


# ---------------------------------------------------------------------------
# finite enumerations

def _antinef_box(graph: WeightedDualGraph, low: Sequence[int], high: Sequence[int]) -> list[tuple[int, ...]]:
    """Integral anti-nef Z with ``low <= Z <= high``, by depth-first search.

    A vertex's product ``Z . E_v`` is checked as soon as v and all of its
    neighbours have been assigned.
    """
    n = len(graph)
    form = graph.form
    last = [max([v] + [j for j in range(n) if form[v][j]]) for v in range(n)]
    ready = [[v for v in range(n) if last[v] == k] for k in range(n)]
    z = [0] * n
    out: list[tuple[int, ...]] = []

    def walk(k: int):
        if k == n:
            out.append(tuple(z))
            return
        for x in range(low[k], high[k] + 1):
            z[k] = x
            if all(sum(form[v][j] * z[j] for j in range(n)) <= 0 for v in ready[k]):
                walk(k + 1)

    walk(0)
    return out


def _antinef_not_geq(graph: WeightedDualGraph, bound: Sequence) -> list[Cycle]:
    """Nonzero integral anti-nef cycles Z with ``Z >= bound`` failing.

    Such a Z has ``Z_i < bound_i`` for some i.  Every nonzero anti-nef cycle
    is a nonnegative combination of the (positive) duals, so ``Z_k / Z_i`` is
    at most ``max_j E_j*_k / E_j*_i``; together with ``Z >= fundamental
    cycle`` this boxes the search for each i.
    """
    n = len(graph)
    duals = graph.duals
    fc = fundamental_cycle(graph)
    found: set[tuple[int, ...]] = set()
    for i in range(n):
        top = math.ceil(Fraction(bound[i])) - 1
        if top < fc[i]:
            continue
        high = [
            top if k == i else math.floor(top * max(d[k] / d[i] for d in duals))
            for k in range(n)
        ]
        found.update(_antinef_box(graph, fc.as_ints(), high))
    return [Cycle(z) for z in sorted(found)]


def enumerate_antinef_below(graph: WeightedDualGraph, w: Sequence) -> list[Cycle]:
    """All nonzero integral anti-nef Z with ``Z - W`` not effective."""
    _check_dim(graph, w)
    w = Cycle(w)
    if any(c < 0 for c in w):
        raise GraphError("E_NEGATIVE_BOUND", f"bound {w.plain()} has a negative coefficient")
    if not w.integral:
        raise GraphError("E_NONINTEGRAL_BOUND", f"bound {w.plain()} is not integral")
    return _antinef_not_geq(graph, w)


def exceeds(z: Sequence, other: Sequence) -> bool:
    """``Z > other`` in the cycle order: coefficientwise >= and not equal."""
    return Cycle(z).geq(other) and tuple(Fraction(c) for c in z) != tuple(Fraction(c) for c in other)


class CanonicalEnumeration(NamedTuple):
    zk: Cycle
    entries: list[tuple[Cycle, Fraction]]
    warnings: list[str]


FIXED_COMPONENT_NOTE = (
    "superset: the no-fixed-component condition on O_X(-Z) is not checked combinatorially"
)


def enumerate_antinef_not_exceeding_canonical(graph: WeightedDualGraph) -> CanonicalEnumeration:
    """Nonzero integral anti-nef Z with ``not (Z > Z_K)``, each paired with chi(Z)."""
    zk = canonical_cycle(graph)
    warnings = [FIXED_COMPONENT_NOTE]
    if not any(c > 0 for c in zk):
        warnings.append("Z_K has no positive coefficient; result is empty by convention")
        return CanonicalEnumeration(zk, [], warnings)
    # an integral Z with Z_i < Z_K_i for some i also has Z_i < ceil(Z_K_i)
    bound = Cycle(max(c, 0) for c in zk.ceil())
    cycles = [z for z in _antinef_not_geq(graph, bound) if not exceeds(z, zk)]
    if zk.integral and not zk.is_zero() and is_antinef(graph, zk):
        cycles.append(zk)
    cycles.sort()
    return CanonicalEnumeration(zk, [(z, chi(graph, z)) for z in cycles], warnings)


class ChiMin(NamedTuple):
    value: Fraction
    witness: Cycle
    bound: Cycle


def chi_min(graph: WeightedDualGraph, bound: Sequence) -> ChiMin:
    """Bounded search for min chi(C) over integral ``0 < C <= bound``.

    This is not a certified value of chi(A) unless the bound is known to
    contain a minimizer.
    """
    _check_dim(graph, bound)
    bound = Cycle(bound)
    if not bound.integral or any(c < 0 for c in bound) or bound.is_zero():
        raise GraphError("E_BAD_BOUND", f"bound {bound.plain()} must be integral, >= 0 and nonzero")
    best = None
    for coeffs in itertools.product(*(range(int(c) + 1) for c in bound)):
        if not any(coeffs):
            continue
        value = chi(graph, coeffs)
        if best is None or value < best[0]:
            best = (value, Cycle(coeffs))
    return ChiMin(best[0], best[1], bound)


def default_chi_bound(graph: WeightedDualGraph) -> Cycle:
    """``2 ceil(Z_K) + fundamental cycle``, clamped at zero coefficientwise."""
    zk = canonical_cycle(graph).ceil()
    fc = fundamental_cycle(graph)
    return Cycle(max(2 * k, 0) + f for k, f in zip(zk, fc))
