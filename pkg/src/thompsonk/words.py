"""Generator words, their evaluation, and normal forms in F_k.

The presentation is ``y_n y_l = y_l y_{n+k-1}`` for ``l < n``.  A normal form
is ``y_{i1}^{a1} ... y_{in}^{an} y_{jm}^{-bm} ... y_{j1}^{-b1}`` with strictly
increasing ``i`` and ``j``, positive exponents, and the uniqueness condition:
whenever ``y_i`` occurs on both sides, some ``y_j^{+-1}`` with ``i < j < i+k``
occurs as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .element import Element, identity, multiply, power
from .tree import KTree, LEAF, caret, caret_positions, collapse_at, right_comb

ALPHABETS = ("y", "x", "z")

Letter = tuple[int, int]


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for idx, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == idx:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((idx, merged))
        else:
            out.append((idx, exp))
    return tuple(out)


@dataclass(frozen=True)
class GenWord:
    arity: int
    letters: tuple[Letter, ...] = ()
    alphabet: str = "y"

    @classmethod
    def of(cls, arity: int, letters: Iterable[Sequence[int]], alphabet: str = "y") -> "GenWord":
        return cls(arity, free_reduce((int(i), int(e)) for i, e in letters), alphabet)

    def __mul__(self, other: "GenWord") -> "GenWord":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return GenWord(self.arity, free_reduce(self.letters + other.letters), self.alphabet)

    def inverse(self) -> "GenWord":
        return GenWord(self.arity, tuple((i, -e) for i, e in reversed(self.letters)), self.alphabet)

    def __len__(self) -> int:
        return word_length(self)

    def __str__(self) -> str:
        return render_word(self)


def render_word(w: GenWord) -> str:
    if not w.letters:
        return "id"
    parts = []
    for idx, exp in w.letters:
        parts.append(f"{w.alphabet}{idx}" + ("" if exp == 1 else f"^{exp}"))
    return " ".join(parts)


_TOKEN = re.compile(r"([xyz])(\d+)(?:\^([+-]?\d+))?$")


def parse_word(text: str, k: int = 3, z_arity: int | None = None) -> GenWord:
    """Parse ``"y1 y0^-2"``-style text.

    ``y`` letters live in F_k, ``x`` letters in F_2 and ``z`` letters in
    F_{z_arity} (default ``2k - 1``).  ``id`` is the empty word.
    """
    tokens = [(m.start(), m.group()) for m in re.finditer(r"\S+", text)]
    letters: list[Letter] = []
    alphabet = None
    for pos, tok in tokens:
        if tok == "id":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordParseError(f"bad token {tok!r}", pos)
        a, idx, exp = m.group(1), int(m.group(2)), m.group(3)
        exp = 1 if exp is None else int(exp)
        if exp == 0:
            raise WordParseError("zero exponent", pos)
        if alphabet is not None and a != alphabet:
            raise WordParseError(f"mixed alphabets {alphabet!r} and {a!r}", pos)
        alphabet = a
        letters.append((idx, exp))
    alphabet = alphabet or "y"
    if alphabet == "y":
        arity = k
    elif alphabet == "x":
        arity = 2
    else:
        arity = z_arity if z_arity is not None else 2 * k - 1
    if arity < 2:
        raise WordParseError(f"arity {arity} < 2", 0)
    return GenWord.of(arity, letters, alphabet)


@lru_cache(maxsize=None)
def elementary(arity: int, n: int) -> Element:
    """The generator y_n of F_arity as a reduced tree pair."""
    if n < 0:
        raise ValueError("generator index must be >= 0")
    q, r = divmod(n, arity - 1)
    node = tuple(caret(arity) if d == r else LEAF for d in range(arity))
    for _ in range(q):
        node = (LEAF,) * (arity - 1) + (node,)
    return Element(arity, KTree(arity, node), right_comb(arity, q + 2))


def eval_word(w: GenWord) -> Element:
    out = identity(w.arity)
    for idx, exp in w.letters:
        out = multiply(out, power(elementary(w.arity, idx), exp))
    return out


def word_length(w: GenWord) -> int:
    return sum(abs(e) for _, e in w.letters)


def _positive_letters(t: KTree) -> list[int]:
    """Indices of the positive word of ``(t, right comb)``, ascending."""
    k = t.arity
    peeled = []
    while True:
        terminal = t.leaf_count - k
        inner = [j for j in caret_positions(t) if j != terminal]
        if not inner:
            break
        j = max(inner)
        peeled.append(j)
        t = collapse_at(t, j)
    return peeled[::-1]


def _to_letters(indices: Sequence[int], sign: int) -> list[Letter]:
    return [(i, sign) for i in indices]


def normal_form(g: Element) -> GenWord:
    """Normal form read off the reduced diagram.

    ``g = (T+, C)(T-, C)^{-1}`` with ``C`` the right comb; each positive half
    is read by peeling its right-most non-terminal caret.
    """
    pos = _positive_letters(g.plus)
    neg = _positive_letters(g.minus)
    letters = _enforce_uniqueness(g.arity, pos, neg)
    return GenWord.of(g.arity, letters)


def _enforce_uniqueness(k: int, pos: list[int], neg: list[int]) -> list[Letter]:
    # pos, neg: ascending index lists with g = y_pos * (y_neg)^{-1}
    pos, neg = list(pos), list(neg)
    while True:
        present = set(pos) | set(neg)
        bad = [i for i in set(pos) & set(neg) if not any(j in present for j in range(i + 1, i + k))]
        if not bad:
            break
        i = min(bad)
        pos = _drop_last(pos, i, k)
        neg = _drop_last(neg, i, k)
    return _to_letters(pos, 1) + _to_letters(reversed(neg), -1)


def _drop_last(indices: list[int], i: int, k: int) -> list[int]:
    at = len(indices) - 1 - indices[::-1].index(i)
    return indices[:at] + [j - (k - 1) for j in indices[at + 1:]]


def normalize_word(w: GenWord) -> GenWord:
    """Normal form by rewriting with the presentation alone (no trees)."""
    k = w.arity
    seq: list[Letter] = []
    for idx, exp in w.letters:
        s = 1 if exp > 0 else -1
        seq.extend([(idx, s)] * abs(exp))
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(seq) - 1:
            (a, s), (b, t) = seq[i], seq[i + 1]
            repl = None
            if a == b and s == -t:
                repl = []
            elif s == -1 and t == 1:
                if a < b:
                    repl = [(b + k - 1, 1), (a, -1)]
                else:
                    repl = [(b, 1), (a + k - 1, -1)]
            elif s == 1 and t == 1 and b < a:
                repl = [(b, 1), (a + k - 1, 1)]
            elif s == -1 and t == -1 and a < b:
                repl = [(b + k - 1, -1), (a, -1)]
            if repl is not None:
                seq[i:i + 2] = repl
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
    pos = [a for a, s in seq if s == 1]
    neg = sorted(a for a, s in seq if s == -1)
    return GenWord.of(k, _enforce_uniqueness(k, pos, neg))


def is_normal_form(w: GenWord) -> bool:
    """Machine check of the normal-form shape and uniqueness condition."""
    seen_negative = False
    pos: list[int] = []
    neg: list[int] = []
    for idx, exp in w.letters:
        if exp == 0:
            return False
        if exp > 0:
            if seen_negative or (pos and idx <= pos[-1]):
                return False
            pos.append(idx)
        else:
            seen_negative = True
            if neg and idx >= neg[-1]:
                return False
            neg.append(idx)
    present = set(pos) | set(neg)
    for i in set(pos) & set(neg):
        if not any(j in present for j in range(i + 1, i + w.arity)):
            return False
    return True


def length_parity(g: Element) -> int:
    return word_length(normal_form(g)) % 2


def substitute(w: GenWord, arity: int, image) -> GenWord:
    """Replace every letter ``y_i^e`` by ``image(i)^e`` (``image`` returns a
    GenWord over ``arity``)."""
    out = GenWord(arity, (), "y")
    for idx, exp in w.letters:
        piece = image(idx)
        if exp < 0:
            piece = piece.inverse()
        for _ in range(abs(exp)):
            out = out * piece
    return out


def y(arity: int, *letters: int | tuple[int, int]) -> GenWord:
    """Shorthand: ``y(3, 0, 3)`` is y0 y3, ``y(3, (0, -2))`` is y0^-2."""
    return GenWord.of(arity, [(l, 1) if isinstance(l, int) else l for l in letters])


def eval_y(arity: int, *letters: int | tuple[int, int]) -> Element:
    return eval_word(y(arity, *letters))


__all__ = [
    "GenWord",
    "WordParseError",
    "elementary",
    "eval_word",
    "eval_y",
    "free_reduce",
    "is_normal_form",
    "length_parity",
    "normal_form",
    "normalize_word",
    "parse_word",
    "render_word",
    "substitute",
    "word_length",
    "y",
]
