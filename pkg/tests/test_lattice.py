import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaingamma import IndexOutOfRange, MalformedWord, new_chain
from chaingamma.exact import euler_matrix
from chaingamma.lattice import (
    ExceptionalSequence,
    braid_word_apply,
    find_braid_word,
    int_determinant,
    mutate,
    parity,
    parse_braid_word,
    picard_lefschetz,
    random_exceptional_sequence,
    sequence_from_vectors,
    standard_sequence,
    vanishing_lattice,
)


def unit(i, n):
    return tuple(int(j == i) for j in range(n))


def test_mutate_examples():
    seq = standard_sequence(new_chain([3]))
    out = mutate(seq, 1, "right")
    assert out.vectors == ((0, 1), (1, 1))  # chi(e1, e2) = -1
    seq = standard_sequence(new_chain([2, 2]))
    out = mutate(seq, 1, "right")
    assert out.vectors == ((0, 1, 0), (1, -1, 0), (0, 0, 1))  # chi_12 = 1


def test_mutate_errors():
    seq = standard_sequence(new_chain([3]))
    with pytest.raises(IndexOutOfRange):
        mutate(seq, 0, "right")
    with pytest.raises(IndexOutOfRange):
        mutate(seq, 2, "right")
    with pytest.raises(ValueError):
        mutate(seq, 1, "sideways")


def test_parity_involution():
    seq = standard_sequence(new_chain([2, 2]))
    once = parity(seq, 1)
    assert once.vectors[0] == (-1, 0, 0)
    assert parity(once, 1).vectors == seq.vectors
    assert once.pairing(once.vectors[0], once.vectors[0]) == seq.pairing(
        seq.vectors[0], seq.vectors[0]
    )
    with pytest.raises(IndexOutOfRange):
        parity(seq, 4)


def test_mutation_inverse_on_orbit():
    # right then left is the identity on the braid orbit of the standard basis
    rng = random.Random(7)
    for a in ([3], [4], [2, 2], [3, 2], [2, 2, 2]):
        c = new_chain(a)
        for _ in range(20):
            seq = random_exceptional_sequence(c, rng, entry_bound=None)
            for i in range(1, seq.rank):
                assert mutate(mutate(seq, i, "right"), i, "left").vectors == seq.vectors
                assert mutate(mutate(seq, i, "left"), i, "right").vectors == seq.vectors


def test_braid_relation_on_orbit():
    rng = random.Random(11)
    for a in ([4], [5], [2, 3], [2, 2, 2]):
        c = new_chain(a)
        for _ in range(20):
            seq = random_exceptional_sequence(c, rng, entry_bound=None)
            for i in range(1, seq.rank - 1):
                lhs = braid_word_apply(seq, f"b{i} b{i+1} b{i}")
                rhs = braid_word_apply(seq, f"b{i+1} b{i} b{i+1}")
                assert lhs.vectors == rhs.vectors


@given(
    st.lists(
        st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
        min_size=4,
        max_size=4,
    )
)
@settings(max_examples=40, deadline=None)
def test_far_commutation_arbitrary_vectors(vectors):
    # b_i b_j = b_j b_i for |i - j| >= 2 holds for any integer vectors
    seq = sequence_from_vectors(new_chain([5]), vectors)
    lhs = braid_word_apply(seq, "b1 b3")
    rhs = braid_word_apply(seq, "b3 b1")
    assert lhs.vectors == rhs.vectors


def test_gram_unit_diagonal_preserved_on_orbit():
    rng = random.Random(3)
    c = new_chain([3, 2])
    for _ in range(25):
        seq = random_exceptional_sequence(c, rng, entry_bound=None)
        gram = seq.gram()
        assert all(gram[i][i] == 1 for i in range(seq.rank))
        assert all(gram[i][j] == 0 for i in range(seq.rank) for j in range(i))


def test_mutations_preserve_span():
    rng = random.Random(5)
    c = new_chain([2, 2, 2])
    seq = standard_sequence(c)
    for _ in range(30):
        i = rng.randrange(1, seq.rank)
        seq = mutate(seq, i, rng.choice(("right", "left")))
    assert int_determinant([list(v) for v in seq.vectors]) in (1, -1)


def test_braid_word_parsing():
    assert parse_braid_word("b1 b2^-1 p3") == [
        ("b", 1, False),
        ("b", 2, True),
        ("p", 3, False),
    ]
    with pytest.raises(MalformedWord):
        parse_braid_word("b1 q2")
    with pytest.raises(MalformedWord):
        parse_braid_word("b0")
    with pytest.raises(MalformedWord):
        parse_braid_word("b1^2")


def test_braid_word_identities():
    seq = standard_sequence(new_chain([2, 2]))
    assert braid_word_apply(seq, "b1 b1^-1").vectors == seq.vectors
    assert braid_word_apply(seq, "p1 p1").vectors == seq.vectors
    assert braid_word_apply(seq, "p2").vectors == ((1, 0, 0), (0, -1, 0), (0, 0, 1))


def test_picard_lefschetz_examples():
    lat = vanishing_lattice(new_chain([3]))  # A2 intersection form, sign +1
    e1, e2 = unit(0, 2), unit(1, 2)
    # inverse reflection: e2 - I(e1, e2) e1 = e2 + e1
    assert picard_lefschetz(lat, e1, e2, inverse=True) == (1, 1)
    # center == target: e1 - I(e1, e1) e1 = -e1
    assert picard_lefschetz(lat, e1, e1, inverse=True) == (-1, 0)
    # orthogonal target unchanged
    lat3 = vanishing_lattice(new_chain([4]))
    assert picard_lefschetz(lat3, unit(0, 3), unit(2, 3)) == unit(2, 3)


def test_picard_lefschetz_preserves_form_dim1():
    # for one-variable chains I(L, L) = 2 and reflections are isometries
    for a in ([3], [4], [5]):
        lat = vanishing_lattice(new_chain(a))
        rank = lat.rank
        basis = [unit(i, rank) for i in range(rank)]
        for center in basis:
            assert lat.pairing(center, center) == 2
            images = [picard_lefschetz(lat, center, v) for v in basis]
            for u, hu in zip(basis, images):
                for v, hv in zip(basis, images):
                    assert lat.pairing(hu, hv) == lat.pairing(u, v)


def test_picard_lefschetz_inverse_pair():
    for a in ([4], [2, 2], [2, 2, 2]):
        lat = vanishing_lattice(new_chain(a))
        rank = lat.rank
        for i in range(rank):
            center = unit(i, rank)
            for j in range(rank):
                v = unit(j, rank)
                forward = picard_lefschetz(lat, center, v)
                assert picard_lefschetz(lat, center, forward, inverse=True) == v


def test_serre_isometry_of_euler_form():
    from chaingamma.exact import serre_matrix

    for a in ([3], [2, 2], [3, 2, 2]):
        c = new_chain(a)
        chi = [[x.numerator for x in row] for row in euler_matrix(c).entries]
        s = [[x.numerator for x in row] for row in serre_matrix(c).entries]
        mu = c.mu
        st_chi_s = [
            [
                sum(s[k][i] * sum(chi[k][l] * s[l][j] for l in range(mu)) for k in range(mu))
                for j in range(mu)
            ]
            for i in range(mu)
        ]
        assert st_chi_s == chi


def test_find_braid_word_recovers_mutation():
    seq = standard_sequence(new_chain([3]))
    target = mutate(seq, 1, "right")
    word = find_braid_word(seq, lambda s: s.vectors == target.vectors, max_length=2)
    assert word == ["b1"]
    assert find_braid_word(seq, lambda s: False, max_length=1) is None


def test_exceptional_sequence_pairing():
    seq = standard_sequence(new_chain([3]))
    assert seq.pairing((1, 0), (0, 1)) == -1
    assert isinstance(seq, ExceptionalSequence)
