"""The Gamma-graph of a ternary tree diagram and functions built on it.

Leaves sit at 0, 1, ..., n-1 (n odd) and gap ``g`` is the slot left of leaf
``g``.  Black regions correspond to the even gaps 0, 2, ..., n-1; vertex ``j``
of the graph is gap ``2j``.  Every internal node of either tree contributes
exactly one edge, joining the two black regions that meet at it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .element import Element, inverse, multiply
from .tree import KTree, node_spans


class UnsupportedArity(ValueError):
    pass


class GammaEdge(NamedTuple):
    u: int
    v: int
    side: str  # "top" or "bottom"
    source: str  # address of the internal node in its tree


@dataclass(frozen=True)
class GammaGraph:
    vertex_count: int
    edges: tuple[GammaEdge, ...]

    def side(self, side: str) -> list[GammaEdge]:
        return [e for e in self.edges if e.side == side]

    def edge_set(self, side: str | None = None) -> set[frozenset[int]]:
        es = self.edges if side is None else self.side(side)
        return {frozenset((e.u, e.v)) for e in es}

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        return adj


def _half_edges(t: KTree, side: str) -> list[GammaEdge]:
    out = []
    for a, (na, nb, nc), addr in node_spans(t):
        if a % 2 == 0:
            gaps = (a, a + na + nb)
        else:
            gaps = (a + na, a + na + nb + nc)
        out.append(GammaEdge(gaps[0] // 2, gaps[1] // 2, side, addr))
    return out


def gamma_of_trees(plus: KTree, minus: KTree) -> GammaGraph:
    if plus.arity != 3:
        raise UnsupportedArity(f"Gamma-graph needs arity 3, got {plus.arity}")
    n = plus.leaf_count
    edges = _half_edges(plus, "top") + _half_edges(minus, "bottom")
    return GammaGraph((n + 1) // 2, tuple(edges))


def gamma_of(g: Element) -> GammaGraph:
    if g.arity == 2:
        from .subgroups import iota

        g = iota(g)
    if g.arity != 3:
        raise UnsupportedArity(f"Gamma-graph is only defined for k in {{2, 3}}, got {g.arity}")
    return gamma_of_trees(g.plus, g.minus)


def is_spanning_tree(n: int, edges: Sequence[GammaEdge]) -> bool:
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e.u), find(e.v)
        if a == b:
            return False
        parent[a] = b
    return True


def two_colouring(G: GammaGraph) -> dict[int, str] | None:
    """The proper 2-colouring with vertex 0 coloured ``+``, or None."""
    colour = _bfs_colour(G)[0]
    if colour is None:
        return None
    return {v: "+" if c == 0 else "-" for v, c in enumerate(colour)}


def _bfs_colour(G: GammaGraph):
    adj = G.adjacency()
    colour: list[int | None] = [None] * G.vertex_count
    parent: list[int | None] = [None] * G.vertex_count
    for start in range(G.vertex_count):
        if colour[start] is not None:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if colour[v] is None:
                    colour[v] = 1 - colour[u]
                    parent[v] = u
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None, (u, v, parent, colour)
    return colour, None


def is_bipartite(G: GammaGraph) -> bool:
    return _bfs_colour(G)[0] is not None


def odd_cycle(G: GammaGraph) -> list[int] | None:
    """A closed walk of odd length (as a vertex list), or None if bipartite."""
    colour, conflict = _bfs_colour(G)
    if conflict is None:
        return None
    u, v, parent, _ = conflict

    def path_to_root(x):
        out = [x]
        while parent[x] is not None:
            x = parent[x]
            out.append(x)
        return out

    pu, pv = path_to_root(u), path_to_root(v)
    common = set(pu) & set(pv)
    lca = next(x for x in pu if x in common)
    left = pu[: pu.index(lca) + 1]
    right = pv[: pv.index(lca)]
    return left + right[::-1]


# --- chromatic polynomial -------------------------------------------------

Poly = tuple[int, ...]  # coefficients, index = power of Q


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += sign * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pmul_linear(a: Poly, c: int) -> Poly:
    # a * (Q + c)
    out = [0] * (len(a) + 1)
    for i, x in enumerate(a):
        out[i + 1] += x
        out[i] += c * x
    return _padd(tuple(out), (0,))


def poly_eval(p: Poly, q: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * q + c
    return out


def poly_str(p: Poly) -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("Q" if i == 1 else f"Q^{i}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else ""
        else:
            coef = str(c) if not mono else f"{c}*"
        terms.append(coef + mono)
    return " + ".join(terms).replace("+ -", "- ") or "0"


@lru_cache(maxsize=None)
def _chrom(vertices: frozenset, edges: frozenset) -> Poly:
    if not edges:
        return (0,) * len(vertices) + (1,)
    deg: dict[int, int] = {v: 0 for v in vertices}
    for e in edges:
        for x in e:
            deg[x] += 1
    for v, d in deg.items():
        if d == 0:
            return _pmul_linear(_chrom(vertices - {v}, edges), 0)
        if d == 1:
            rest = frozenset(e for e in edges if v not in e)
            return _pmul_linear(_chrom(vertices - {v}, rest), -1)
    e = min(edges, key=sorted)
    a, b = sorted(e)
    deleted = edges - {e}
    contracted = set()
    for f in deleted:
        f2 = frozenset(a if x == b else x for x in f)
        if len(f2) == 2:
            contracted.add(f2)
    return _padd(_chrom(vertices, deleted), _chrom(vertices - {b}, frozenset(contracted)), -1)


def chromatic_polynomial(G: GammaGraph) -> Poly:
    """Chromatic polynomial of the underlying simple graph (parallel edges
    collapse)."""
    simple = set()
    for e in G.edges:
        if e.u == e.v:
            raise AssertionError("loop in Gamma-graph")
        simple.add(frozenset((e.u, e.v)))
    return _chrom(frozenset(range(G.vertex_count)), frozenset(simple))


def chr_value(g: Element, Q: int) -> Fraction:
    G = gamma_of(g)
    n = 2 * G.vertex_count - 1
    return Fraction(poly_eval(chromatic_polynomial(G), Q), (Q - 1) ** (n - 1))


def chr_matrix(elements: Sequence[Element], Q: int) -> list[list[Fraction]]:
    if not elements:
        raise ValueError("need at least one element")
    if len({e.arity for e in elements}) != 1:
        raise ValueError("elements must share an arity")
    inv = [inverse(e) for e in elements]
    return [[chr_value(multiply(inv[i], elements[j]), Q) for j in range(len(elements))] for i in range(len(elements))]


def gram_min_eigenvalue(elements: Sequence[Element], Q: int) -> float:
    """Smallest eigenvalue (float) of the exact matrix Chr(g_i^-1 g_j, Q)."""
    m = chr_matrix(elements, Q)
    a = np.array([[float(x) for x in row] for row in m])
    return float(np.linalg.eigvalsh(a).min())


def to_dot(G: GammaGraph, name: str = "gamma") -> str:
    label = name.replace('"', r"\"")
    lines = [f'graph "{label}" {{']
    for v in range(G.vertex_count):
        lines.append(f"  v{v};")
    for e in G.edges:
        lines.append(f'  v{e.u} -- v{e.v} [side={e.side}, source="{e.source}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
