import random

import pytest
from hypothesis import given, settings, strategies as st

from thompsonk.element import enumerate_up_to, identity, inverse, is_positive, multiply
from thompsonk.gamma import gamma_of, two_colouring
from thompsonk.oriented import (
    NINE_GENERATORS,
    NoConfigurationFound,
    OrientedGen,
    OrientedWord,
    PreconditionViolated,
    colour_sequence,
    coset_normalize,
    d_of_path,
    decompose,
    decompose_positive,
    eval_oriented,
    in_Z,
    is_oriented,
    leaf_weights,
    ogen_element,
    only_even_indices,
    parse_oriented_word,
    preserves_Z,
    reduce_index,
    split_positive,
    weight_of_path,
)
from thompsonk.homeo import apply_digits
from thompsonk.subgroups import phi_R
from thompsonk.tree import enumerate_trees, node_spans
from thompsonk.words import eval_y

ELEMS3 = enumerate_up_to(3, 3)
ORIENTED3 = [g for g in ELEMS3 if is_oriented(g)]


def test_weight_examples():
    assert (weight_of_path(""), d_of_path("")) == (0, 0)
    assert weight_of_path("21") == 2
    assert weight_of_path("1") == 1
    assert d_of_path(".1101") == 3
    with pytest.raises(ValueError):
        weight_of_path("13")


def test_leaf_weight_examples(y0, y1sq):
    assert leaf_weights(identity(3)) == ([0], [0])
    assert leaf_weights(y0) == ([0, 1, 1, 1, 1], [0, 1, 1, 2, 2])
    assert leaf_weights(y1sq) == ([0, 3, 3, 2, 2, 1, 1], [0, 1, 1, 2, 2, 3, 3])


def test_membership_examples(y0, y1sq, y0y3):
    assert not is_oriented(y0)
    assert is_oriented(y1sq)
    assert is_oriented(y0y3)


def test_pairs_of_leaves_share_weights():
    for g in enumerate_up_to(3, 4):
        for c in leaf_weights(g):
            assert all(c[2 * i] == c[2 * i - 1] for i in range(1, len(c) // 2 + 1))


def test_leftmost_leaf_parity_matches_middle_edges():
    for m in range(5):
        for t in enumerate_trees(3, m):
            for a, _, addr in node_spans(t):
                assert a % 2 == addr.count("1") % 2


def test_colour_is_weight_parity():
    for g in ORIENTED3:
        col = two_colouring(gamma_of(g))
        assert tuple(0 if col[v] == "+" else 1 for v in sorted(col)) == colour_sequence(g.plus)


def test_right_shift_keeps_orientation():
    for g in ELEMS3:
        assert is_oriented(g) == is_oriented(phi_R(g))


def test_in_Z_examples():
    assert in_Z("")
    assert not in_Z(".1")
    assert in_Z(".11")


def test_preserves_Z_examples(y0, y0y3):
    assert preserves_Z(y0y3, 8) is None
    assert preserves_Z(identity(3), 8) is None
    bad = preserves_Z(y0, 8)
    assert bad == ".11"
    assert apply_digits(y0, bad) == "211" and weight_of_path("211") == 3
    bad = preserves_Z(eval_y(3, (0, 2)), 8)
    assert in_Z(bad) != in_Z(apply_digits(eval_y(3, (0, 2)), bad))


@pytest.mark.parametrize("gen", NINE_GENERATORS, ids=str)
def test_generators_keep_Z(gen):
    assert preserves_Z(ogen_element(gen), 6) is None


def test_ogen_examples(y1sq, y0y3):
    assert ogen_element(OrientedGen("u", 0)) == y1sq
    assert ogen_element(OrientedGen("w", 0)) == y0y3
    assert ogen_element(OrientedGen("v", 0)) == eval_y(3, 0, 2)
    for gen in NINE_GENERATORS:
        assert is_oriented(ogen_element(gen))
    with pytest.raises(ValueError):
        OrientedGen("q", 0)


def test_oriented_word_rendering():
    w = parse_oriented_word("u0 w1^-2 v2 v2")
    assert str(w) == "u0 w1^-2 v2^2"
    assert str(w.inverse()) == "v2^-2 w1^2 u0^-1"
    assert str(OrientedWord()) == "id"
    assert len(w) == 5


def test_split_positive_examples(y1sq):
    assert split_positive(identity(3)) == (identity(3), identity(3))
    g = eval_y(3, 0, 2, 4, 7)
    assert is_oriented(g) and split_positive(g) == (g, identity(3))
    p, q = split_positive(y1sq)
    assert multiply(p, inverse(q)) == y1sq
    assert is_positive(p) and is_positive(q) and is_oriented(p) and is_oriented(q)


def test_split_positive_exhaustive():
    for g in ORIENTED3:
        p, q = split_positive(g)
        assert multiply(p, inverse(q)) == g
        assert is_positive(p) and is_positive(q) and is_oriented(p) and is_oriented(q)


def test_decompose_examples(y0, y0y3):
    assert decompose(identity(3)) == OrientedWord()
    assert str(decompose(y0y3)) == "w0"
    with pytest.raises(PreconditionViolated):
        decompose(y0)
    with pytest.raises(PreconditionViolated):
        decompose_positive(inverse(y0y3))


def test_decompose_exhaustive():
    for g in ORIENTED3:
        assert eval_oriented(decompose(g)) == g


def test_decompose_positive_finds_configurations():
    # every positive oriented element with up to five carets
    for m in range(6):
        for t in enumerate_trees(3, m):
            from thompsonk.element import reduce_pair
            from thompsonk.tree import right_comb

            p = reduce_pair(t, right_comb(3, m))
            if is_oriented(p):
                try:
                    w = decompose_positive(p)
                except NoConfigurationFound:  # pragma: no cover
                    pytest.fail(f"no configuration in {t}")
                assert eval_oriented(w) == p


def test_reduce_index_examples():
    w = parse_oriented_word("v3")
    r = reduce_index(w)
    assert str(r) == "v0^-1 v1 v0" and eval_oriented(r) == eval_oriented(w)
    w = parse_oriented_word("u4")
    r = reduce_index(w)
    assert str(r) == "u0^-1 u2 u0" and eval_oriented(r) == eval_oriented(w)
    assert str(reduce_index(parse_oriented_word("w0"))) == "w0"
    w = parse_oriented_word("w7^-2 u5")
    assert eval_oriented(reduce_index(w)) == eval_oriented(w) and reduce_index(w).max_index() <= 2


oword = st.lists(
    st.tuples(st.sampled_from("uvw"), st.integers(0, 2), st.sampled_from([1, -1])), max_size=4
).map(lambda xs: OrientedWord.of((OrientedGen(t, i), e) for t, i, e in xs))


@settings(max_examples=60, deadline=None)
@given(oword)
def test_decompose_inverts_evaluation(w):
    g = eval_oriented(w)
    assert eval_oriented(decompose(g)) == g


def _check_coset(g):
    h, f1, f2 = coset_normalize(g)
    assert multiply(multiply(f1, g), f2) == h
    assert is_oriented(f1) and is_oriented(f2)
    assert is_positive(h) and only_even_indices(h) and not is_oriented(h)
    # f1 and f2 as words in the generators
    assert eval_oriented(decompose(f1)) == f1 and eval_oriented(decompose(f2)) == f2


def test_coset_normalize_examples(y0):
    _check_coset(y0)
    _check_coset(eval_y(3, 1))
    h, _, _ = coset_normalize(eval_y(3, 2))
    assert only_even_indices(h)
    with pytest.raises(PreconditionViolated):
        coset_normalize(eval_y(3, 0, 3))


def test_coset_normalize_exhaustive():
    for g in ELEMS3:
        if not is_oriented(g):
            _check_coset(g)


def test_coset_normalize_random():
    rng = random.Random(4)
    for _ in range(60):
        g = eval_y(3, *[(rng.randint(0, 6), rng.choice((1, -1))) for _ in range(rng.randint(1, 6))])
        if not is_oriented(g):
            _check_coset(g)
