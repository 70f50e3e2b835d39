"""Weights, the oriented subgroup of F_3 and its nine generators.

The generator families are ``u_i = y_{2i+1}^2``, ``v_i = y_{2i} y_{2i+2}`` and
``w_i = y_{2i} y_{2i+3}``.  Membership is decided two ways (leaf weights and
Gamma-graph bipartiteness) and the two answers are required to agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .element import Element, identity, is_positive, multiply, power, reduce_pair
from .gamma import gamma_of_trees, is_bipartite
from .homeo import InsufficientDepth, apply_digits, strip_dot
from .tree import (
    LEAF,
    KTree,
    caret_positions,
    collapse_at,
    expand_at,
    is_right_comb,
    node_spans,
    right_comb,
)
from .words import GenWord, eval_word, normal_form


class InconsistentCriteria(AssertionError):
    """The weight test and the bipartiteness test disagreed."""


class ExpansionBoundExceeded(RuntimeError):
    pass


class NoConfigurationFound(RuntimeError):
    pass


class PreconditionViolated(ValueError):
    pass


# --- weights ----------------------------------------------------------------


def _check_ternary(p: str) -> str:
    p = strip_dot(p)
    for ch in p:
        if ch not in "012":
            raise ValueError(f"digit {ch!r} is not ternary")
    return p


def weight_of_path(p: str) -> int:
    """Number of 1s, plus 2s read while an even number of 1s has been seen,
    plus 0s read while an odd number has."""
    p = _check_ternary(p)
    ones = 0
    c = 0
    for ch in p:
        if ch == "1":
            ones += 1
            c += 1
        elif ch == "2" and ones % 2 == 0:
            c += 1
        elif ch == "0" and ones % 2 == 1:
            c += 1
    return c


def d_of_path(p: str) -> int:
    return _check_ternary(p).count("1")


def _as_ternary(g: Element) -> Element:
    if g.arity == 3:
        return g
    if g.arity == 2:
        from .subgroups import iota

        return iota(g)
    raise ValueError(f"oriented subgroups live in F_2 and F_3, not arity {g.arity}")


def leaf_weights(g: Element) -> tuple[list[int], list[int]]:
    if g.arity != 3:
        raise ValueError("leaf weights are defined for arity 3")
    return [weight_of_path(a) for a in g.plus.addresses], [weight_of_path(a) for a in g.minus.addresses]


def colour_sequence(t: KTree) -> tuple[int, ...]:
    """Parity of the weight of leaves 0, 2, 4, ...: the Gamma-vertex colours
    (0 for ``+``) induced by one tree."""
    return tuple(weight_of_path(a) % 2 for a in t.addresses[::2])


def weight_criterion(g: Element) -> bool:
    cp, cm = leaf_weights(g)
    return all((a - b) % 2 == 0 for a, b in zip(cp, cm))


def is_oriented(g: Element) -> bool:
    g = _as_ternary(g)
    by_weight = weight_criterion(g)
    by_graph = is_bipartite(gamma_of_trees(g.plus, g.minus))
    if by_weight != by_graph:
        raise InconsistentCriteria(f"weight test says {by_weight}, Gamma test says {by_graph} for {g!r}")
    return by_weight


def in_Z(t: str) -> bool:
    return d_of_path(t) % 2 == 0 and weight_of_path(t) % 2 == 0


def _shortlex(depth: int):
    for n in range(depth + 1):
        for digits in product("012", repeat=n):
            yield "".join(digits)


def preserves_Z(g: Element, depth: int) -> str | None:
    """A digit string ``.t`` (length <= depth) on which ``g`` and Z disagree.

    Points of Z sent outside Z are reported before points sent into Z; within
    each kind the search is shortlex.  Strings too short for the diagram are
    skipped.
    """
    if g.arity != 3:
        raise ValueError("Z lives in base 3")
    backward = None
    for t in _shortlex(depth):
        try:
            image = apply_digits(g, t)
        except InsufficientDepth:
            continue
        inside = in_Z(t)
        if inside and not in_Z(image):
            return "." + t
        if backward is None and not inside and in_Z(image):
            backward = "." + t
    return backward


# --- generators and words ---------------------------------------------------


@dataclass(frozen=True, order=True)
class OrientedGen:
    tag: str
    index: int

    def __post_init__(self):
        if self.tag not in ("u", "v", "w"):
            raise ValueError(f"unknown generator family {self.tag!r}")
        if self.index < 0:
            raise ValueError("generator index must be >= 0")

    def letters(self) -> tuple[int, int]:
        i = self.index
        return {"u": (2 * i + 1, 2 * i + 1), "v": (2 * i, 2 * i + 2), "w": (2 * i, 2 * i + 3)}[self.tag]

    def __str__(self) -> str:
        return f"{self.tag}{self.index}"


OLetter = tuple[OrientedGen, int]


def _merge(letters: Iterable[OLetter]) -> tuple[OLetter, ...]:
    out: list[OLetter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            e = out.pop()[1] + exp
            if e:
                out.append((gen, e))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class OrientedWord:
    letters: tuple[OLetter, ...] = ()

    def __post_init__(self):
        if any(e == 0 for _, e in self.letters):
            raise ValueError("exponents must be nonzero")

    @classmethod
    def of(cls, letters: Iterable[OLetter]) -> "OrientedWord":
        return cls(_merge(letters))

    def __mul__(self, other: "OrientedWord") -> "OrientedWord":
        return OrientedWord.of(self.letters + other.letters)

    def inverse(self) -> "OrientedWord":
        return OrientedWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def max_index(self) -> int:
        return max((g.index for g, _ in self.letters), default=0)

    def __str__(self) -> str:
        if not self.letters:
            return "id"
        return " ".join(str(g) + ("" if e == 1 else f"^{e}") for g, e in self.letters)


_OTOKEN = re.compile(r"([uvw])(\d+)(?:\^([+-]?\d+))?$")


def parse_oriented_word(text: str) -> OrientedWord:
    letters = []
    for tok in text.split():
        if tok == "id":
            continue
        m = _OTOKEN.match(tok)
        if not m:
            raise ValueError(f"bad oriented token {tok!r}")
        exp = int(m.group(3)) if m.group(3) else 1
        if exp == 0:
            raise ValueError("zero exponent")
        letters.append((OrientedGen(m.group(1), int(m.group(2))), exp))
    return OrientedWord.of(letters)


@lru_cache(maxsize=None)
def ogen_element(gen: OrientedGen) -> Element:
    a, b = gen.letters()
    return eval_word(GenWord.of(3, [(a, 1), (b, 1)]))


def eval_oriented(w: OrientedWord) -> Element:
    out = identity(3)
    for gen, exp in w.letters:
        out = multiply(out, power(ogen_element(gen), exp))
    return out


def to_genword(w: OrientedWord) -> GenWord:
    letters = []
    for gen, exp in w.letters:
        a, b = gen.letters()
        piece = [(a, 1), (b, 1)] if exp > 0 else [(b, -1), (a, -1)]
        letters.extend(piece * abs(exp))
    return GenWord.of(3, letters)


NINE_GENERATORS = tuple(OrientedGen(t, i) for t in "uvw" for i in range(3))


# --- positive generation ----------------------------------------------------


def alternating_expansion(plus: KTree, minus: KTree, bound: int | None = None) -> tuple[KTree, KTree]:
    """Expand both trees of an oriented diagram at common leaves until the
    Gamma colouring reads +, -, +, -, ...

    Expanding leaf ``2j - 1`` inserts, just before vertex ``j``, a vertex of
    the opposite colour; so repairing the first bad vertex each round
    terminates.
    """
    limit = bound if bound is not None else 2 * plus.leaf_count + 8
    steps = 0
    while True:
        colours = colour_sequence(plus)
        if colours != colour_sequence(minus):
            raise PreconditionViolated("diagram is not oriented")
        bad = next((j for j, c in enumerate(colours) if c != j % 2), None)
        if bad is None:
            return plus, minus
        if steps >= limit:
            raise ExpansionBoundExceeded(f"colouring still not alternating after {steps} expansions")
        plus, minus = expand_at(plus, 2 * bad - 1), expand_at(minus, 2 * bad - 1)
        steps += 1


def split_positive(g: Element, bound: int | None = None) -> tuple[Element, Element]:
    """``g = p * q^-1`` with ``p`` and ``q`` positive and oriented."""
    if g.arity != 3 or not is_oriented(g):
        raise PreconditionViolated("split_positive needs an oriented element of F_3")
    plus, minus = alternating_expansion(g.plus, g.minus, bound)
    comb = right_comb(3, plus.internal_count)
    return reduce_pair(plus, comb), reduce_pair(minus, comb)


def _is_caret(node) -> bool:
    return bool(node) and all(not c for c in node)


def _find_configuration(t: KTree) -> tuple[OrientedGen, list[int]] | None:
    """First admissible configuration in ``t`` (smallest leaf index), with the
    caret positions to peel in order."""
    terminal = t.leaf_count - 3
    carets = set(caret_positions(t))
    found = []
    for a, sizes, _ in node_spans(t):
        if sizes == (1, 1, 3) and a % 2 == 0 and a + 2 in carets and a + 2 != terminal:
            # after the first peel the node is a caret at a, terminal moves down by 2
            if a != terminal - 2:
                found.append((a, OrientedGen("v", a // 2), [a + 2, a]))
        if sizes == (3, 1, 1) and a % 2 == 1 and a in carets and a != terminal and a != terminal - 2:
            found.append((a, OrientedGen("u", (a - 1) // 2), [a, a]))
    for a in carets:
        if a % 2 == 0 and a + 3 in carets and a + 3 != terminal:
            found.append((a, OrientedGen("w", a // 2), [a + 3, a]))
    if not found:
        return None
    a, gen, peel = min(found, key=lambda f: (f[0], f[1]))
    return gen, peel


def decompose_positive(p: Element) -> OrientedWord:
    """Word in u, v, w for a positive oriented element."""
    if not is_positive(p):
        raise PreconditionViolated("element is not positive")
    t = p.plus
    reversed_word: list[OrientedGen] = []
    while not is_right_comb(t):
        hit = _find_configuration(t)
        if hit is None:
            raise NoConfigurationFound(f"no admissible configuration in top tree {list(t.addresses)}")
        gen, peel = hit
        for j in peel:
            t = collapse_at(t, j)
        reversed_word.append(gen)
    return OrientedWord.of((g, 1) for g in reversed(reversed_word))


def decompose(g: Element, bound: int | None = None) -> OrientedWord:
    if g.arity != 3 or not is_oriented(g):
        raise PreconditionViolated("decompose needs an oriented element of F_3")
    p, q = split_positive(g, bound)
    return decompose_positive(p) * decompose_positive(q).inverse()


def _lowered(gen: OrientedGen) -> OrientedWord:
    if gen.index <= 2:
        return OrientedWord(((gen, 1),))
    base = OrientedGen(gen.tag, 0)
    inner = _lowered(OrientedGen(gen.tag, gen.index - 2))
    return OrientedWord(((base, -1),)) * inner * OrientedWord(((base, 1),))


def reduce_index(w: OrientedWord) -> OrientedWord:
    """Rewrite with generators of index <= 2 only, via
    ``g_i = g_0^-1 g_{i-2} g_0`` for ``i >= 3``."""
    out = OrientedWord()
    for gen, exp in w.letters:
        piece = _lowered(gen)
        if exp < 0:
            piece = piece.inverse()
        for _ in range(abs(exp)):
            out = out * piece
    return out


# --- double cosets ----------------------------------------------------------


def _binary_for_colours(colours: Sequence[int]) -> KTree:
    """A binary tree whose j-th leaf has an address with ``colours[j]`` ones
    mod 2.  Needs ``colours`` to start with 0, 1 (or be just ``(0,)``)."""
    seq = list(colours)
    if seq[:1] != [0] or (len(seq) > 1 and seq[1] != 1):
        raise ValueError("colour sequence must start with 0, 1")
    inserts = []
    while len(seq) > 2:
        i = next((i for i in range(2, len(seq)) if seq[i] != seq[i - 1]), 1)
        inserts.append(i - 1)
        del seq[i]
    t = KTree(2, (LEAF, LEAF) if len(seq) == 2 else LEAF)
    for j in reversed(inserts):
        t = expand_at(t, j)
    return t


def coset_normalize(g: Element) -> tuple[Element, Element, Element]:
    """``(h, f1, f2)`` with ``h = f1 g f2``, ``f1, f2`` oriented, ``h`` positive
    with only even indices, and ``h`` still not oriented.

    Make ``g`` positive with one oriented right factor, then expand leaves 0
    and 2 in both trees (this keeps the comb's colouring alternating and
    forces vertex 1 of the top tree to ``-``), and finally trade the top tree
    for the image under iota of a binary tree with the same colours.
    """
    if g.arity != 3:
        raise PreconditionViolated("coset_normalize works in F_3")
    if is_oriented(g):
        raise PreconditionViolated("element is oriented")
    # g = (T, S); with S expanded to alternating colours, (S', comb) is oriented
    plus, minus = g.plus, g.minus
    plus, minus = _alternate_bottom(plus, minus)
    plus, minus = expand_at(expand_at(plus, 0), 2), expand_at(expand_at(minus, 0), 2)
    plus, minus = _alternate_bottom(plus, minus)
    comb = right_comb(3, plus.internal_count)
    f2 = reduce_pair(minus, comb)
    from .subgroups import iota_tree

    target = iota_tree(_binary_for_colours(colour_sequence(plus)))
    f1 = reduce_pair(target, plus)
    h = reduce_pair(target, comb)
    return h, f1, f2


def _alternate_bottom(plus: KTree, minus: KTree) -> tuple[KTree, KTree]:
    # same repair as alternating_expansion, driven by the bottom tree only
    while True:
        colours = colour_sequence(minus)
        bad = next((j for j, c in enumerate(colours) if c != j % 2), None)
        if bad is None:
            return plus, minus
        plus, minus = expand_at(plus, 2 * bad - 1), expand_at(minus, 2 * bad - 1)


def only_even_indices(h: Element) -> bool:
    return all(i % 2 == 0 for i, _ in normal_form(h).letters)


__all__ = [
    "ExpansionBoundExceeded",
    "InconsistentCriteria",
    "NINE_GENERATORS",
    "NoConfigurationFound",
    "OrientedGen",
    "OrientedWord",
    "PreconditionViolated",
    "alternating_expansion",
    "colour_sequence",
    "coset_normalize",
    "d_of_path",
    "decompose",
    "decompose_positive",
    "eval_oriented",
    "in_Z",
    "is_oriented",
    "leaf_weights",
    "ogen_element",
    "only_even_indices",
    "parse_oriented_word",
    "preserves_Z",
    "reduce_index",
    "split_positive",
    "weight_of_path",
]
