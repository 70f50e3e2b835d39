"""The twelve acceptance criteria, one test each.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary and also when this file is run as a script.
"""

from __future__ import annotations

from itertools import product

import pytest

from thompsonk.gamma import gamma_of
from thompsonk.homeo import apply_digits
from thompsonk.oriented import is_oriented, leaf_weights
from thompsonk.suites import (
    identity_ledger,
    suite_alpha,
    suite_chr,
    suite_decompose,
    suite_enumeration,
    suite_fixedpoints,
    suite_gk,
    suite_prop1,
    suite_relations,
    suite_zstab,
)
from thompsonk.words import eval_y

VERDICTS: dict[int, tuple[bool, str]] = {}

# (top-leaf prefix, image prefix) rows of the three action tables
TABLES = {
    "y0": (eval_y(3, 0), [("00", "0"), ("01", "1"), ("02", "20"), ("1", "21"), ("2", "22")]),
    "y1^2": (
        eval_y(3, (1, 2)),
        [("0", "0"), ("100", "1"), ("101", "20"), ("102", "21"), ("11", "220"), ("12", "221"), ("2", "222")],
    ),
    "y0 y3": (
        eval_y(3, 0, 3),
        [("00", "0"), ("01", "1"), ("02", "20"), ("10", "21"), ("11", "220"), ("12", "221"), ("2", "222")],
    ),
}


def record(n: int, ok: bool, detail: str) -> None:
    VERDICTS[n] = (ok, detail)
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def _edges(G, side):
    return {tuple(sorted((e.u, e.v))) for e in G.side(side)}


def test_criterion_01_worked_examples():
    checks = {
        "weights y0": leaf_weights(eval_y(3, 0)) == ([0, 1, 1, 1, 1], [0, 1, 1, 2, 2]),
        "weights y1^2": leaf_weights(eval_y(3, (1, 2))) == ([0, 3, 3, 2, 2, 1, 1], [0, 1, 1, 2, 2, 3, 3]),
    }
    graphs = {
        "y0": (eval_y(3, 0), 3, {(0, 1), (0, 2)}, {(0, 1), (1, 2)}),
        "y1^2": (eval_y(3, (1, 2)), 4, {(0, 3), (2, 3), (1, 2)}, {(0, 1), (1, 2), (2, 3)}),
        "y0 y3": (eval_y(3, 0, 3), 4, {(0, 1), (0, 3), (2, 3)}, {(0, 1), (1, 2), (2, 3)}),
    }
    for name, (g, nv, top, bottom) in graphs.items():
        G = gamma_of(g)
        checks[f"Gamma {name}"] = (G.vertex_count, _edges(G, "top"), _edges(G, "bottom")) == (nv, top, bottom)
        checks[f"Gamma {name} edge count"] = len(G.edges) == 2 * (nv - 1)
    checks["verdicts"] = [is_oriented(TABLES[n][0]) for n in ("y0", "y1^2", "y0 y3")] == [False, True, True]
    bad = [k for k, v in checks.items() if not v]
    record(1, not bad, f"{len(checks)} exact checks" + (f", failed: {bad}" if bad else ""))


def test_criterion_02_action_tables():
    rows = 0
    bad = []
    for name, (g, table) in TABLES.items():
        for src, dst in table:
            for n in range(5):
                for alpha in map("".join, product("012", repeat=n)):
                    rows += 1
                    if apply_digits(g, "." + src + alpha) != dst + alpha:
                        bad.append((name, src + alpha))
    record(2, not bad, f"{rows} table rows with suffixes up to length 4" + (f", first failure {bad[0]}" if bad else ""))


def test_criterion_03_prop1_equivalence():
    rep = suite_prop1(max_splits=4)
    big = suite_prop1(max_splits=5)
    ok = rep.passed and big.passed and rep.runtime + big.runtime < 60
    record(
        3,
        ok,
        f"{rep.checked} elements (<=4 splits) in {rep.runtime:.1f}s; "
        f"also {big.checked} elements (<=5 splits) in {big.runtime:.1f}s",
    )


def test_criterion_04_generating_set():
    rep = suite_decompose(max_splits=3, samples=500, seed=0)
    record(4, rep.passed, f"{rep.checked} round trips, all indices in 0..2" if rep.passed else str(rep.counterexamples))


def test_criterion_05_relation_sweeps():
    failures = []
    runs = 0
    for k in (2, 3, 4, 5):
        for family in ("y", "w", "phi"):
            runs += 1
            rep = suite_relations(family=family, k=k, n=6)
            if not rep.passed:
                failures.append((family, k, rep.counterexamples))
    for family in ("u", "v", "ow"):
        runs += 1
        rep = suite_relations(family=family, k=3, n=6)
        if not rep.passed:
            failures.append((family, 3, rep.counterexamples))
    record(5, not failures, f"{runs} family sweeps" + (f", failures {failures}" if failures else ""))


def test_criterion_06_gk_agreement():
    rep = suite_gk(max_splits=3)
    record(6, rep.passed, f"{rep.checked} elements, y0 has odd parity")


def test_criterion_07_identity_ledger():
    results = identity_ledger()
    bad = [name for name, ok in results if not ok]
    record(7, not bad, f"{len(results)} identities" + (f", failed: {bad}" if bad else ""))


def test_criterion_08_stabilizer_of_Z():
    rep = suite_zstab(depth=8)
    record(
        8,
        rep.passed,
        f"nine generators keep Z at depth 8; y0 fails at {rep.details.get('y0')}, "
        f"y0^2 fails at {rep.details.get('y0^2')}",
    )


def test_criterion_09_fixed_point_free():
    rep = suite_fixedpoints(ks=(2, 3, 4, 5))
    record(9, rep.passed, "z0 z(k-1) z(k)^-1 has no fixed point in (0,1) for k = 2..5")


def test_criterion_10_chr():
    rep = suite_chr(max_splits=3, samples=12, seed=0)
    lam = min(rep.details["min_eigenvalue_Q2"], rep.details["min_eigenvalue_Q3"])
    record(10, rep.passed and lam >= -1e-8, f"{rep.checked} elements; smallest eigenvalue {lam:.3e}")


def test_criterion_11_enumeration():
    rep = suite_enumeration(max_m=5)
    record(11, rep.passed and rep.details["counts"] == [1, 1, 3, 12, 55, 273], f"counts {rep.details['counts']}")


def test_criterion_12_alpha_T():
    rep = suite_alpha(samples=200, seed=0)
    record(12, rep.passed, f"{rep.checked} checks (5 trees, 200 even words)")


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
