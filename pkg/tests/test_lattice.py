import pytest
import sympy
from hypothesis import given, strategies as st

from coble_lab.errors import NotARoot, PreconditionFailed, RankMismatch
from coble_lab.lattice import (
    E10Vector,
    K10,
    LatticeVector,
    ROOT_BASIS,
    canonical_vector,
    e10_gram_from_embedding,
    e10_gram_table,
    is_isometry,
    negation_map,
    pair,
    recompose,
    reflect,
    reflection_matrix,
    split_along_k,
    to_root_basis,
    weyl_word,
)

vec11 = st.lists(st.integers(-50, 50), min_size=11, max_size=11).map(lambda c: LatticeVector(tuple(c)))
words = st.lists(st.integers(0, 9), max_size=12)


def test_pairing_and_canonical():
    e0 = LatticeVector((1,) + (0,) * 10)
    assert pair(e0, e0) == 1
    assert pair(K10, K10) == -1
    assert pair(canonical_vector(9), canonical_vector(9)) == 0
    with pytest.raises(RankMismatch):
        pair(e0, LatticeVector((1, 0)))


def test_root_basis_gram_matches_table():
    assert e10_gram_from_embedding() == e10_gram_table()
    assert sympy.Matrix(e10_gram_table()).det() == -1
    for a in ROOT_BASIS:
        assert pair(a, K10) == 0 and pair(a, a) == -2


def test_reflect_examples():
    a0 = ROOT_BASIS[0]
    assert reflect(a0, a0) == -a0
    assert reflect(a0, K10) == K10
    with pytest.raises(NotARoot):
        reflect(K10, K10)


@given(words, vec11)
def test_reflections_are_involutive_isometries(word, x):
    alpha = weyl_word(word, ROOT_BASIS[0])
    assert pair(alpha, alpha) == -2
    y = reflect(alpha, x)
    assert reflect(alpha, y) == x
    assert pair(y, y) == pair(x, x)
    assert is_isometry(reflection_matrix(alpha))


@given(vec11)
def test_split_round_trip(v):
    w, c = split_along_k(v)
    assert recompose(w, c) == v
    assert pair(w.embed(), K10) == 0


def test_split_of_k():
    w, c = split_along_k(K10)
    assert w == E10Vector((0,) * 10) and c == 1


def test_to_root_basis_rejects_non_orthogonal():
    with pytest.raises(PreconditionFailed):
        to_root_basis(LatticeVector((1,) + (0,) * 10))


def test_negation_is_isometry_and_json():
    assert is_isometry(negation_map(10))
    v = LatticeVector((1, 2, 3))
    assert LatticeVector.from_json(v.to_json()) == v
    assert LatticeVector.from_json([1, 2, 3]) == v
    w = E10Vector(tuple(range(10)))
    assert E10Vector.from_json(w.to_json()) == w
