"""Elements of the Brown-Thompson groups F_k as reduced tree pairs.

Composition convention: ``multiply(g, h)`` acts on [0, 1] as ``g`` first and
then ``h``, i.e. ``(g*h)(x) = h(g(x))``.  The top tree ``plus`` is the domain
subdivision and ``minus`` is the range subdivision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .tree import (
    KTree,
    TreeError,
    caret_positions,
    collapse_at,
    common_refinement,
    enumerate_trees,
    expand_at,
    from_addresses,
    is_right_comb,
    leaf,
    replay,
)


class ElementError(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    """A reduced tree pair.  Build through :func:`reduce_pair` or the helpers
    below; the raw constructor does not reduce."""

    arity: int
    plus: KTree
    minus: KTree

    def __post_init__(self):
        if self.plus.arity != self.arity or self.minus.arity != self.arity:
            raise ElementError("tree arity does not match element arity")
        if self.plus.leaf_count != self.minus.leaf_count:
            raise ElementError(
                f"leaf counts differ: {self.plus.leaf_count} vs {self.minus.leaf_count}"
            )

    @cached_property
    def leaf_count(self) -> int:
        return self.plus.leaf_count

    @property
    def splits(self) -> int:
        return self.plus.internal_count

    def is_identity(self) -> bool:
        return self.plus.is_leaf()

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __invert__(self) -> "Element":
        return inverse(self)

    def __pow__(self, n: int) -> "Element":
        return power(self, n)

    def to_json(self) -> dict:
        return {"k": self.arity, "plus": list(self.plus.addresses), "minus": list(self.minus.addresses)}

    def __repr__(self) -> str:
        return f"Element(k={self.arity}, plus={list(self.plus.addresses)}, minus={list(self.minus.addresses)})"


def identity(arity: int) -> Element:
    return Element(arity, leaf(arity), leaf(arity))


def opposing_carets(plus: KTree, minus: KTree) -> list[int]:
    return sorted(set(caret_positions(plus)) & set(caret_positions(minus)))


def reduce_pair(plus: KTree, minus: KTree, rng: random.Random | None = None) -> Element:
    """Remove opposing carets until none are left.

    With ``rng`` the caret to remove is picked at random, which is only
    useful for checking that the result does not depend on the order.
    """
    if plus.arity != minus.arity:
        raise ElementError(f"arity mismatch: {plus.arity} vs {minus.arity}")
    if plus.leaf_count != minus.leaf_count:
        raise ElementError(f"leaf counts differ: {plus.leaf_count} vs {minus.leaf_count}")
    while True:
        common = opposing_carets(plus, minus)
        if not common:
            return Element(plus.arity, plus, minus)
        i = rng.choice(common) if rng is not None else common[0]
        plus, minus = collapse_at(plus, i), collapse_at(minus, i)


def is_reduced(plus: KTree, minus: KTree) -> bool:
    return not opposing_carets(plus, minus)


def multiply(g: Element, h: Element) -> Element:
    if g.arity != h.arity:
        raise ElementError(f"arity mismatch: {g.arity} vs {h.arity}")
    _, script_g, script_h = common_refinement(g.minus, h.plus)
    return reduce_pair(replay(g.plus, script_g), replay(h.minus, script_h))


def inverse(g: Element) -> Element:
    return Element(g.arity, g.minus, g.plus)


def power(g: Element, n: int) -> Element:
    if n < 0:
        g, n = inverse(g), -n
    out = identity(g.arity)
    base = g
    while n:
        if n & 1:
            out = multiply(out, base)
        base = multiply(base, base)
        n >>= 1
    return out


def product_of(elements: Iterable[Element], arity: int) -> Element:
    out = identity(arity)
    for e in elements:
        out = multiply(out, e)
    return out


def expand_pair(g: Element, leaf_index: int) -> tuple[KTree, KTree]:
    """Insert an opposing caret pair at a leaf: an unreduced diagram of g."""
    return expand_at(g.plus, leaf_index), expand_at(g.minus, leaf_index)


def is_positive(g: Element) -> bool:
    return is_right_comb(g.minus)


def enumerate_elements(arity: int, m: int) -> list[Element]:
    """All reduced elements whose trees have exactly ``m`` internal nodes."""
    trees = enumerate_trees(arity, m)
    out = []
    for a in trees:
        ca = set(caret_positions(a))
        for b in trees:
            if ca.isdisjoint(caret_positions(b)):
                out.append(Element(arity, a, b))
    return out


def enumerate_up_to(arity: int, max_splits: int) -> list[Element]:
    out: list[Element] = []
    for m in range(max_splits + 1):
        out.extend(enumerate_elements(arity, m))
    return out


def from_json(data: dict) -> tuple[Element, bool]:
    """Parse ``{"k": .., "plus": [..], "minus": [..]}``.

    Returns the reduced element and a flag telling whether the input needed
    reducing.
    """
    try:
        k = int(data["k"])
        plus = from_addresses(k, data["plus"])
        minus = from_addresses(k, data["minus"])
    except (KeyError, TypeError) as exc:
        raise ElementError(f"malformed element JSON: {exc}") from exc
    except TreeError as exc:
        raise ElementError(str(exc)) from exc
    was_reduced = is_reduced(plus, minus)
    return reduce_pair(plus, minus), not was_reduced


def from_addresses_pair(arity: int, plus: Sequence[str], minus: Sequence[str]) -> Element:
    return reduce_pair(from_addresses(arity, plus), from_addresses(arity, minus))
