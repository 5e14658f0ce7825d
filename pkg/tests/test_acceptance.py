"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line.  Run standalone with
``python3 tests/test_acceptance.py`` for just the summary.
"""

import sys
import time

import pytest

from ntc import brieskorn as bk
from ntc import verify

CRITERIA = [
    (1, "brieskorn-equivalence", "three-way Gorenstein equivalence, c <= 30", 10.0),
    (2, "brieskorn-reduction-number", "br(m) by direct stabilization = n_(a-1)", None),
    (3, "brieskorn-step-lengths", "step formula vs layered colengths, step sum", None),
    (4, "brieskorn-3-5-5", "(3,5,5): r, closure(m^3), colength, b, verdict", None),
    (5, "brieskorn-corollaries", "corollary suite", None),
    (6, "brieskorn-eqbb", "b-sequence identity on the sweep", None),
    (7, "homogeneous-classification", "classification for d = 3, 4, 5", 1.0),
    (8, "homogeneous-I(L)", "I(L) at d = 5: chi, Z^2, q, colengths", None),
    (9, "degree5-graphs", "degree 5 graphs: E_5^*, E_3^* + E_5^*", None),
    (10, "x2y3z6-graphs", "graphs of m and m^2 on x^2 + y^3 + z^6", None),
    (11, "powers-reduction-number", "br of closure(I^k) from rescaled q-data", None),
    (12, "lattice-properties", "lattice property suites", None),
]

_CTX = verify.Context(max_c=30)
_FUNCS = {id: fn for id, _, fn in verify.CHECKS}


def evaluate(number, check_id, limit):
    if number == 1:
        # time from a cold cache
        bk._invariants.cache_clear()
        bk._b_sequence.cache_clear()
        bk._br_direct.cache_clear()
    start = time.perf_counter()
    bad = _FUNCS[check_id](_CTX)
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        bad = bad + [f"took {elapsed:.2f}s, limit {limit}s"]
    return bad, elapsed


def line(number, title, bad, elapsed):
    status = "PASS" if not bad else "FAIL"
    text = f"{status}  criterion {number:>2}  {title}  ({elapsed:.2f}s)"
    if bad:
        text += "\n        " + "; ".join(bad[:3])
    return text


@pytest.mark.parametrize("number, check_id, title, limit", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, check_id, title, limit, capsys):
    bad, elapsed = evaluate(number, check_id, limit)
    with capsys.disabled():
        print("\n" + line(number, title, bad, elapsed))
    assert not bad


if __name__ == "__main__":
    failures = 0
    for number, check_id, title, limit in CRITERIA:
        bad, elapsed = evaluate(number, check_id, limit)
        failures += bool(bad)
        print(line(number, title, bad, elapsed))
    sys.exit(1 if failures else 0)
