"""Exhaustive and randomised verification suites.

Every suite returns a :class:`SuiteReport`; a failing report always carries
at least one serialised counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .element import Element, enumerate_up_to, inverse, is_positive, multiply
from .gamma import chr_value, gamma_of, gram_min_eigenvalue, two_colouring
from .homeo import fixed_points, render_rational
from .oriented import (
    NINE_GENERATORS,
    OrientedGen,
    OrientedWord,
    colour_sequence,
    coset_normalize,
    decompose,
    eval_oriented,
    is_oriented,
    leaf_weights,
    ogen_element,
    only_even_indices,
    preserves_Z,
    reduce_index,
)
from .subgroups import (
    alpha_T,
    alpha_T_pi_formula,
    gk_gen,
    ell_left,
    ell_right,
    in_Gk,
    in_K_ab,
    iota,
    iota_diagram,
    phi_k,
    phi_R,
    phi_R_diagram,
    pi_ab,
    relation_check,
)
from .tree import enumerate_trees, node_spans
from .words import GenWord, elementary, eval_word, eval_y, length_parity


@dataclass
class SuiteReport:
    suite: str
    params: dict
    passed: bool = True
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    runtime: float = 0.0

    def fail(self, what: str, item) -> None:
        self.passed = False
        if len(self.counterexamples) < 20:
            self.counterexamples.append({"check": what, "item": _serial(item)})

    def to_json(self) -> dict:
        out = asdict(self)
        out["runtime"] = round(self.runtime, 3)
        out["params"] = dict(sorted(self.params.items()))
        return out


def _serial(item):
    if isinstance(item, Element):
        return item.to_json()
    if isinstance(item, (OrientedWord, GenWord)):
        return str(item)
    if isinstance(item, Fraction):
        return render_rational(item)
    if isinstance(item, (list, tuple)):
        return [_serial(x) for x in item]
    if isinstance(item, dict):
        return {str(k): _serial(v) for k, v in item.items()}
    return item


def _timed(fn: Callable[..., SuiteReport]):
    def run(**kwargs) -> SuiteReport:
        t0 = time.perf_counter()
        report = fn(**kwargs)
        report.runtime = time.perf_counter() - t0
        return report

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# --- the suites -------------------------------------------------------------


@_timed
def suite_prop1(max_splits: int = 3, **_) -> SuiteReport:
    """Weight parity vs bipartiteness, colour vs weight parity, c(2i) = c(2i-1),
    and the parity of the left-most leaf under every node."""
    rep = SuiteReport("prop1", {"max_splits": max_splits, "k": 3})
    for m in range(max_splits + 1):
        for t in enumerate_trees(3, m):
            for a, _, addr in node_spans(t):
                if a % 2 != addr.count("1") % 2:
                    rep.fail("gap parity", {"tree": list(t.addresses), "node": addr})
    for g in enumerate_up_to(3, max_splits):
        rep.checked += 1
        try:
            oriented = is_oriented(g)
        except AssertionError:
            rep.fail("criteria disagree", g)
            continue
        cp, cm = leaf_weights(g)
        for c in (cp, cm):
            if any(c[2 * i] != c[2 * i - 1] for i in range(1, len(c) // 2 + 1)):
                rep.fail("c(2i) = c(2i-1)", g)
        if oriented:
            col = two_colouring(gamma_of(g))
            want = colour_sequence(g.plus)
            if tuple(0 if col[v] == "+" else 1 for v in range(len(want))) != want:
                rep.fail("colour vs weight parity", g)
    rep.details["elements"] = rep.checked
    return rep


@_timed
def suite_relations(family: str = "y", k: int = 3, n: int = 6, **_) -> SuiteReport:
    """The F_k relations for one family of elements."""
    fams: dict[str, tuple[Callable[[int], Element], int]] = {
        "y": (lambda i: elementary(k, i), k),
        "w": (lambda i: gk_gen(k, i), k),
        "u": (lambda i: ogen_element(OrientedGen("u", i)), 3),
        "v": (lambda i: ogen_element(OrientedGen("v", i)), 3),
        "ow": (lambda i: ogen_element(OrientedGen("w", i)), 3),
        "phi": (lambda i: phi_k(elementary(2 * k - 1, i), k), 2 * k - 1),
    }
    if family not in fams:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(fams)}")
    fn, rel = fams[family]
    n_max = max(n, rel)
    rep = SuiteReport("relations", {"family": family, "k": k, "n": n_max})
    bad = relation_check(fn, rel, n_max)
    rep.checked = n_max * (n_max + 1) // 2
    if bad is not None:
        rep.fail("g_n g_l = g_l g_{n+k-1}", {"n": bad[0], "l": bad[1]})
    return rep


def random_oriented_word(rng: random.Random, length: int, max_index: int) -> OrientedWord:
    return OrientedWord.of(
        (OrientedGen(rng.choice("uvw"), rng.randint(0, max_index)), rng.choice((1, -1))) for _ in range(length)
    )


@_timed
def suite_decompose(max_splits: int = 3, samples: int = 500, seed: int = 0, **_) -> SuiteReport:
    """decompose followed by reduce_index reproduces every oriented element."""
    rep = SuiteReport("decompose", {"max_splits": max_splits, "samples": samples, "seed": seed})

    def check(g: Element):
        rep.checked += 1
        word = reduce_index(decompose(g))
        if eval_oriented(word) != g:
            rep.fail("round trip", g)
        if word.max_index() > 2:
            rep.fail("index bound", word)

    for g in enumerate_up_to(3, max_splits):
        if is_oriented(g):
            check(g)
    rng = random.Random(seed)
    for _ in range(samples):
        check(eval_oriented(random_oriented_word(rng, rng.randint(0, 6), 6)))
    return rep


@_timed
def suite_coset(max_splits: int = 3, **_) -> SuiteReport:
    """Positive even-index double coset representatives of non-oriented
    elements."""
    rep = SuiteReport("coset", {"max_splits": max_splits})
    for g in enumerate_up_to(3, max_splits):
        if is_oriented(g):
            continue
        rep.checked += 1
        h, f1, f2 = coset_normalize(g)
        ok = (
            multiply(multiply(f1, g), f2) == h
            and is_oriented(f1)
            and is_oriented(f2)
            and is_positive(h)
            and only_even_indices(h)
            and not is_oriented(h)
        )
        if not ok:
            rep.fail("coset postconditions", g)
    return rep


@_timed
def suite_gk(max_splits: int = 3, **_) -> SuiteReport:
    """Slope parity against normal-form length parity."""
    rep = SuiteReport("gk", {"max_splits": max_splits, "k": 3})
    for g in enumerate_up_to(3, max_splits):
        rep.checked += 1
        try:
            in_Gk(g)
        except AssertionError:
            rep.fail("parity criteria disagree", g)
    y0 = elementary(3, 0)
    if in_Gk(y0) or length_parity(y0) != 1:
        rep.fail("y0 must have odd parity", y0)
    return rep


@_timed
def suite_zstab(depth: int = 8, **_) -> SuiteReport:
    """The nine generators keep Z; y0 and y0^2 do not."""
    rep = SuiteReport("zstab", {"depth": depth})
    for gen in NINE_GENERATORS:
        rep.checked += 1
        bad = preserves_Z(ogen_element(gen), depth)
        if bad is not None:
            rep.fail(f"{gen} moves Z", bad)
    for label, g in (("y0", eval_y(3, 0)), ("y0^2", eval_y(3, (0, 2)))):
        rep.checked += 1
        bad = preserves_Z(g, depth)
        if bad is None:
            rep.fail(f"{label} should move Z", g)
        else:
            rep.details[label] = bad
    return rep


def hk_witness(k: int) -> Element:
    """``z_0 z_{k-1} z_k^-1`` in F_k."""
    return eval_word(GenWord.of(k, [(0, 1), (k - 1, 1), (k, -1)]))


@_timed
def suite_fixedpoints(ks=(2, 3, 4, 5), **_) -> SuiteReport:
    rep = SuiteReport("fixedpoints", {"ks": list(ks)})
    for k in ks:
        rep.checked += 1
        fs = fixed_points(hk_witness(k))
        if not fs.is_empty():
            rep.fail(f"fixed points for k={k}", fs.to_json())
    return rep


def random_element(rng: random.Random, arity: int, max_index: int = 4, length: int = 4) -> Element:
    letters = [(rng.randint(0, max_index), rng.choice((1, -1))) for _ in range(length)]
    return eval_word(GenWord.of(arity, letters))


@_timed
def suite_chr(max_splits: int = 3, samples: int = 12, seed: int = 0, **_) -> SuiteReport:
    """Chr(g, 2) in {0, 2} matching orientation; Gram matrices are PSD."""
    rep = SuiteReport("chr", {"max_splits": max_splits, "samples": samples, "seed": seed})
    for g in enumerate_up_to(3, max_splits):
        rep.checked += 1
        want = 2 if is_oriented(g) else 0
        if chr_value(g, 2) != want:
            rep.fail("Chr(g, 2)", g)
    rng = random.Random(seed)
    elems = rng.sample(enumerate_up_to(3, max_splits), samples)
    for q in (2, 3):
        lam = gram_min_eigenvalue(elems, q)
        rep.details[f"min_eigenvalue_Q{q}"] = lam
        if lam < -1e-8:
            rep.fail(f"negative eigenvalue at Q={q}", elems)
    return rep


FUSS_CATALAN_3 = (1, 1, 3, 12, 55, 273)


def fuss_catalan(k: int, m: int) -> int:
    from math import comb

    return comb(k * m, m) // ((k - 1) * m + 1)


@_timed
def suite_enumeration(max_m: int = 5, **_) -> SuiteReport:
    rep = SuiteReport("enumeration", {"max_m": max_m})
    counts = []
    for m in range(max_m + 1):
        n = len(enumerate_trees(3, m))
        counts.append(n)
        rep.checked += 1
        if n != fuss_catalan(3, m):
            rep.fail("Fuss-Catalan", {"m": m, "count": n})
    rep.details["counts"] = counts
    return rep


SAMPLE_TREES = (
    ("0", "10", "11"),
    ("00", "01", "1"),
    ("0", "10", "110", "111"),
    ("00", "010", "011", "1"),
    ("000", "001", "01", "10", "11"),
)


@_timed
def suite_alpha(samples: int = 200, seed: int = 0, **_) -> SuiteReport:
    """pi(alpha_T(y_i)) formulas, containment in K, and iota(G_2) in G_3."""
    from .tree import from_addresses

    rep = SuiteReport("alpha", {"samples": samples, "seed": seed})
    rng = random.Random(seed)
    for addrs in SAMPLE_TREES:
        t = from_addresses(2, addrs)
        k = t.leaf_count
        for i in range(k):
            rep.checked += 1
            got = pi_ab(alpha_T(t, elementary(k, i)))
            if got != alpha_T_pi_formula(t, i):
                rep.fail("pi(alpha_T(y_i))", {"tree": list(addrs), "i": i, "pi": got.as_tuple()})
        for _ in range(5):
            g = random_element(rng, k, 4, 3)
            if not in_K_ab(alpha_T(t, g), ell_left(t), ell_right(t)):
                rep.fail("alpha_T image outside K", g)
    for _ in range(samples):
        length = 2 * rng.randint(0, 3)
        g = eval_word(GenWord.of(2, [(rng.randint(0, 5), rng.choice((1, -1))) for _ in range(length)]))
        rep.checked += 1
        if not in_Gk(iota(g)):
            rep.fail("iota of an even word leaves G_3", g)
    return rep


def identity_ledger() -> list[tuple[str, bool]]:
    """Named element identities, each evaluated exactly."""
    y = lambda k, *i: eval_y(k, *i)  # noqa: E731
    out = [
        ("(y0 y3) y0^-2 (y0 y3) = y1 y3", eval_y(3, 0, 3, (0, -2), 0, 3) == y(3, 1, 3)),
        ("(y2 y0) y0^-2 (y0 y3) = y2 y3", eval_y(3, 2, 0, (0, -2), 0, 3) == y(3, 2, 3)),
    ]
    for k in (2, 3, 4, 5):
        w = lambda n: gk_gen(k, n)  # noqa: E731
        out.append((f"k={k}: w1 w0 = w0 w_k", multiply(w(1), w(0)) == multiply(w(0), w(k))))
        out.append((f"k={k}: w_k = y_k y_(3k-2)", w(k) == y(k, k, 3 * k - 2)))
        out.append(
            (f"k={k}: w0 w_(k-1) w_k^-1 = y0 y_(k-1)", multiply(multiply(w(0), w(k - 1)), inverse(w(k))) == y(k, 0, k - 1))
        )
    for i in range(7):
        out.append((f"phi_R(y{i}) = y{i + 2}", phi_R(elementary(3, i)) == elementary(3, i + 2)))
        out.append((f"phi_R diagram on y{i}", phi_R_diagram(elementary(3, i)) == elementary(3, i + 2)))
        out.append((f"iota(x{i}) = y{2 * i}", iota(elementary(2, i)) == elementary(3, 2 * i)))
        out.append((f"iota diagram on x{i}", iota_diagram(elementary(2, i)) == elementary(3, 2 * i)))
    return out


@_timed
def suite_identities(**_) -> SuiteReport:
    rep = SuiteReport("identities", {})
    for name, ok in identity_ledger():
        rep.checked += 1
        if not ok:
            rep.fail("identity", name)
    return rep


@_timed
def suite_embeddings(max_splits: int = 3, **_) -> SuiteReport:
    """Word and diagram versions of iota, phi_R and phi_k agree; phi_R keeps
    orientation."""
    from .subgroups import phi_k_word

    rep = SuiteReport("embeddings", {"max_splits": max_splits})
    for g in enumerate_up_to(2, max_splits):
        rep.checked += 1
        if iota(g) != iota_diagram(g):
            rep.fail("iota", g)
    for g in enumerate_up_to(3, max_splits):
        rep.checked += 1
        if phi_R(g) != phi_R_diagram(g):
            rep.fail("phi_R", g)
        if is_oriented(g) != is_oriented(phi_R(g)):
            rep.fail("phi_R and orientation", g)
    for k in (2, 3):
        for g in enumerate_up_to(2 * k - 1, min(max_splits, 2)):
            rep.checked += 1
            if phi_k(g, k) != phi_k_word(g, k):
                rep.fail(f"phi_{k}", g)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "prop1": suite_prop1,
    "relations": suite_relations,
    "decompose": suite_decompose,
    "coset": suite_coset,
    "gk": suite_gk,
    "zstab": suite_zstab,
    "fixedpoints": suite_fixedpoints,
    "chr": suite_chr,
    "enumeration": suite_enumeration,
    "alpha": suite_alpha,
    "identities": suite_identities,
    "embeddings": suite_embeddings,
}


def run_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    return SUITES[name](**{k: v for k, v in params.items() if v is not None})
