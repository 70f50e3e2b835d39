"""Subgroups and embeddings: G_k, iota, the right shift, Phi_k, alpha_T and
the abelianisation of F."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .element import Element, inverse, multiply, reduce_pair
from .homeo import log_slope_at_0, log_slope_at_1
from .tree import LEAF, KTree, substitute as substitute_tree
from .words import GenWord, eval_word, length_parity, normal_form, substitute


def in_Gk(g: Element) -> bool:
    by_slope = log_slope_at_1(g) % 2 == 0
    by_length = length_parity(g) == 0
    if by_slope != by_length:
        raise AssertionError(f"slope parity and word-length parity disagree on {g!r}")
    return by_slope


def _y(k: int, *idx: int) -> Element:
    return eval_word(GenWord.of(k, [(i, 1) for i in idx]))


@lru_cache(maxsize=None)
def gk_gen(k: int, n: int) -> Element:
    """``w_n = y_n y_k`` for ``n < k`` and ``w_0^-1 w_{n-k+1} w_0`` beyond."""
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    if n < k:
        return _y(k, n, k)
    w0 = gk_gen(k, 0)
    return multiply(multiply(inverse(w0), gk_gen(k, n - k + 1)), w0)


def alpha_k_inverse(g: Element, k: int) -> Element:
    """Send a word in the generators of F_k to G_k via ``z_i -> w_i``."""
    if g.arity != k:
        raise ValueError(f"expected an element of F_{k}")
    out = reduce_pair(KTree(k), KTree(k))
    for idx, exp in normal_form(g).letters:
        step = gk_gen(k, idx)
        if exp < 0:
            step = inverse(step)
        for _ in range(abs(exp)):
            out = multiply(out, step)
    return out


# --- iota and the right shift -----------------------------------------------


def iota_tree(t: KTree) -> KTree:
    """Each binary node gets a middle leaf."""
    if t.arity != 2:
        raise ValueError("iota takes binary trees")
    return substitute_tree(t, 3, lambda ch: (ch[0], LEAF, ch[1]))


def iota(g: Element) -> Element:
    if g.arity != 2:
        raise ValueError("iota takes elements of F_2")
    w = substitute(normal_form(g), 3, lambda i: GenWord(3, ((2 * i, 1),)))
    return eval_word(w)


def iota_diagram(g: Element) -> Element:
    return reduce_pair(iota_tree(g.plus), iota_tree(g.minus))


def phi_R(g: Element) -> Element:
    if g.arity != 3:
        raise ValueError("the right shift acts on F_3")
    return eval_word(substitute(normal_form(g), 3, lambda i: GenWord(3, ((i + 2, 1),))))


def phi_R_diagram(g: Element) -> Element:
    """Hang both trees under the third leaf of two nested carets."""
    if g.arity != 3:
        raise ValueError("the right shift acts on F_3")
    return reduce_pair(KTree(3, (LEAF, LEAF, g.plus.node)), KTree(3, (LEAF, LEAF, g.minus.node)))


# --- Phi_k ------------------------------------------------------------------


def Phi_k_tree(t: KTree, k: int) -> KTree:
    if t.arity != 2 * k - 1:
        raise ValueError(f"Phi_{k} takes trees of arity {2 * k - 1}, got {t.arity}")
    return substitute_tree(t, k, lambda ch: ch[: k - 1] + (tuple(ch[k - 1:]),))


def phi_k(g: Element, k: int) -> Element:
    return reduce_pair(Phi_k_tree(g.plus, k), Phi_k_tree(g.minus, k))


def phi_k_word(g: Element, k: int) -> Element:
    """Same map through ``z_i -> y_i y_{i+k-1}`` on the normal form."""
    if g.arity != 2 * k - 1:
        raise ValueError(f"phi_{k} takes elements of arity {2 * k - 1}")
    return eval_word(substitute(normal_form(g), k, lambda i: GenWord(k, ((i, 1), (i + k - 1, 1)))))


# --- alpha_T and the abelianisation ------------------------------------------


def ell_left(t: KTree) -> int:
    if t.arity != 2:
        raise ValueError("binary tree expected")
    return t.addresses[0].count("0")


def ell_right(t: KTree) -> int:
    if t.arity != 2:
        raise ValueError("binary tree expected")
    return t.addresses[-1].count("1")


def _graft(template, children):
    it = iter(children)

    def walk(node):
        if not node:
            return next(it)
        return tuple(walk(c) for c in node)

    return walk(template)


def alpha_T(t: KTree, g: Element) -> Element:
    """Replace every node of both trees of ``g`` by the binary tree ``t``."""
    if t.arity != 2:
        raise ValueError("alpha_T needs a binary tree")
    if t.leaf_count != g.arity:
        raise ValueError(f"tree has {t.leaf_count} leaves but g has arity {g.arity}")
    gadget = lambda ch: _graft(t.node, ch)  # noqa: E731
    return reduce_pair(substitute_tree(g.plus, 2, gadget), substitute_tree(g.minus, 2, gadget))


@dataclass(frozen=True)
class AbelianImage:
    at0: int
    at1: int

    def as_tuple(self) -> tuple[int, int]:
        return self.at0, self.at1


def pi_ab(g: Element) -> AbelianImage:
    if g.arity != 2:
        raise ValueError("pi is defined on F_2")
    return AbelianImage(log_slope_at_0(g), log_slope_at_1(g))


def in_K_ab(g: Element, a: int, b: int) -> bool:
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    p = pi_ab(g)
    return p.at0 % a == 0 and p.at1 % b == 0


def alpha_T_pi_formula(t: KTree, i: int) -> AbelianImage:
    """Predicted abelian image of ``alpha_T(y_i)``."""
    k = t.leaf_count
    if not 0 <= i <= k - 1:
        raise ValueError(f"formula covers 0 <= i <= {k - 1}")
    first = ell_left(t) if i == 0 else 0
    return AbelianImage(first, -ell_right(t))


# --- relations --------------------------------------------------------------


def relation_check(family: Callable[[int], Element], k: int, n_max: int) -> tuple[int, int] | None:
    """First ``(n, l)`` with ``l < n <= n_max`` breaking
    ``g_n g_l = g_l g_{n+k-1}``, or None."""
    if n_max < k:
        raise ValueError("n_max must be >= k")
    for n in range(1, n_max + 1):
        for l in range(n):
            if multiply(family(n), family(l)) != multiply(family(l), family(n + k - 1)):
                return n, l
    return None


def parabolic_member(g: Element, x) -> bool:
    from .homeo import stabilizes_point

    return stabilizes_point(g, x)


__all__ = [
    "AbelianImage",
    "Phi_k_tree",
    "alpha_T",
    "alpha_T_pi_formula",
    "alpha_k_inverse",
    "ell_left",
    "ell_right",
    "gk_gen",
    "in_Gk",
    "in_K_ab",
    "iota",
    "iota_diagram",
    "iota_tree",
    "parabolic_member",
    "phi_R",
    "phi_R_diagram",
    "phi_k",
    "phi_k_word",
    "pi_ab",
    "relation_check",
]
