"""Planar rooted k-ary trees.

A node is stored as a nested tuple: ``()`` is a leaf and an internal node is a
tuple of exactly ``arity`` children.  Leaves are addressed by digit strings,
``0`` being the left-most edge and ``arity - 1`` the right-most one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

LEAF: tuple = ()

Node = tuple


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class KTree:
    arity: int
    node: Node = field(default=LEAF)

    def __post_init__(self):
        if self.arity < 2:
            raise TreeError(f"arity must be >= 2, got {self.arity}")

    @cached_property
    def leaf_count(self) -> int:
        return _leaf_count(self.node)

    @cached_property
    def internal_count(self) -> int:
        return (self.leaf_count - 1) // (self.arity - 1)

    @cached_property
    def addresses(self) -> tuple[str, ...]:
        return tuple(_addresses(self.node, ""))

    def is_leaf(self) -> bool:
        return self.node == LEAF

    def to_json(self) -> dict:
        return {"k": self.arity, "leaves": list(self.addresses)}

    def __repr__(self) -> str:
        return f"KTree({self.arity}, {list(self.addresses)})"


def _leaf_count(node: Node) -> int:
    if not node:
        return 1
    return sum(_leaf_count(c) for c in node)


def _addresses(node: Node, prefix: str):
    if not node:
        yield prefix
        return
    for d, child in enumerate(node):
        yield from _addresses(child, prefix + str(d))


def leaf(arity: int) -> KTree:
    return KTree(arity, LEAF)


def caret(arity: int) -> Node:
    return (LEAF,) * arity


def leaf_addresses(t: KTree) -> list[str]:
    return list(t.addresses)


def from_addresses(arity: int, addresses: Iterable[str]) -> KTree:
    """Rebuild a tree from its set of leaf addresses.

    Raises TreeError unless the addresses are exactly the leaves of a
    complete ``arity``-ary tree.
    """
    addrs = sorted(set(addresses))
    if not addrs:
        raise TreeError("empty address list")
    for a in addrs:
        if any(not ch.isdigit() or int(ch) >= arity for ch in a):
            raise TreeError(f"address {a!r} is not over digits < {arity}")

    def build(prefix: str, members: list[str]) -> Node:
        if members == [prefix]:
            return LEAF
        if prefix in members:
            raise TreeError(f"address {prefix!r} is a prefix of another leaf")
        depth = len(prefix)
        children = []
        for d in range(arity):
            sub = [a for a in members if a[depth] == str(d)]
            if not sub:
                raise TreeError(f"missing subtree under {prefix + str(d)!r}")
            children.append(build(prefix + str(d), sub))
        return tuple(children)

    return KTree(arity, build("", addrs))


def right_comb(arity: int, m: int) -> KTree:
    node: Node = LEAF
    for _ in range(m):
        node = (LEAF,) * (arity - 1) + (node,)
    return KTree(arity, node)


def is_right_comb(t: KTree) -> bool:
    node = t.node
    while node:
        if any(c for c in node[:-1]):
            return False
        node = node[-1]
    return True


def _expand(node: Node, index: int, arity: int) -> Node:
    if not node:
        if index != 0:
            raise IndexError(index)
        return caret(arity)
    out = []
    for child in node:
        n = _leaf_count(child)
        if 0 <= index < n:
            out.append(_expand(child, index, arity))
        else:
            out.append(child)
        index -= n
    return tuple(out)


def expand_at(t: KTree, leaf_index: int) -> KTree:
    """Replace leaf ``leaf_index`` by a caret."""
    if not 0 <= leaf_index < t.leaf_count:
        raise IndexError(f"leaf index {leaf_index} out of range for {t.leaf_count} leaves")
    return KTree(t.arity, _expand(t.node, leaf_index, t.arity))


def caret_positions(t: KTree) -> list[int]:
    """Leaf indices at which a caret (node with only leaf children) starts."""
    out: list[int] = []

    def walk(node: Node, start: int) -> int:
        if not node:
            return 1
        if all(not c for c in node):
            out.append(start)
            return len(node)
        size = 0
        for c in node:
            size += walk(c, start + size)
        return size

    walk(t.node, 0)
    return out


def _collapse(node: Node, index: int) -> Node:
    if node and all(not c for c in node):
        if index != 0:
            raise TreeError("no caret at that position")
        return LEAF
    out = []
    hit = False
    for child in node:
        n = _leaf_count(child)
        if not hit and 0 <= index < n:
            out.append(_collapse(child, index))
            hit = True
        else:
            out.append(child)
        index -= n
    if not hit:
        raise TreeError("no caret at that position")
    return tuple(out)


def collapse_at(t: KTree, leaf_index: int) -> KTree:
    """Inverse of :func:`expand_at`: fold the caret starting at ``leaf_index``."""
    if leaf_index not in caret_positions(t):
        raise TreeError(f"no caret starting at leaf {leaf_index}")
    return KTree(t.arity, _collapse(t.node, leaf_index))


def replay(t: KTree, script: Sequence[int]) -> KTree:
    for i in script:
        t = expand_at(t, i)
    return t


def _union(a: Node, b: Node) -> Node:
    if not a:
        return b
    if not b:
        return a
    return tuple(_union(x, y) for x, y in zip(a, b))


def _script_to(src: KTree, target: KTree) -> list[int]:
    target_leaves = set(target.addresses)
    script = []
    cur = src
    while True:
        for i, a in enumerate(cur.addresses):
            if a not in target_leaves:
                break
        else:
            return script
        script.append(i)
        cur = expand_at(cur, i)


def common_refinement(a: KTree, b: KTree) -> tuple[KTree, list[int], list[int]]:
    """Least common expansion ``r`` of ``a`` and ``b``, with the expansion
    scripts that turn ``a`` (resp. ``b``) into ``r``."""
    if a.arity != b.arity:
        raise TreeError(f"arity mismatch: {a.arity} vs {b.arity}")
    r = KTree(a.arity, _union(a.node, b.node))
    return r, _script_to(a, r), _script_to(b, r)


@lru_cache(maxsize=None)
def _nodes_with(arity: int, m: int) -> tuple[Node, ...]:
    if m == 0:
        return (LEAF,)
    out = []
    for split in _compositions(m - 1, arity):
        for children in product(*(_nodes_with(arity, s) for s in split)):
            out.append(tuple(children))
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_trees(arity: int, m: int) -> list[KTree]:
    """All trees with ``m`` internal nodes, sorted by address list."""
    if m < 0:
        raise ValueError("m must be >= 0")
    trees = [KTree(arity, n) for n in _nodes_with(arity, m)]
    trees.sort(key=lambda t: t.addresses)
    return trees


def node_spans(t: KTree) -> list[tuple[int, tuple[int, ...], str]]:
    """For every internal node (pre-order): its left-most leaf index, the leaf
    counts of its children and its address."""
    out = []

    def walk(node: Node, start: int, addr: str) -> int:
        if not node:
            return 1
        sizes = tuple(_leaf_count(c) for c in node)
        out.append((start, sizes, addr))
        pos = start
        for d, c in enumerate(node):
            walk(c, pos, addr + str(d))
            pos += sizes[d]
        return pos - start

    walk(t.node, 0, "")
    return out


def substitute(t: KTree, arity: int, gadget) -> KTree:
    """Rebuild ``t`` by sending every internal node to ``gadget(children)``,
    which must return a node of the target ``arity``."""

    def walk(node: Node) -> Node:
        if not node:
            return LEAF
        return gadget(tuple(walk(c) for c in node))

    return KTree(arity, walk(t.node))
