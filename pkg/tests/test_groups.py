import pytest

from linkcx.groups import (GroupSpec, conj_class, inv, mul,
                           reduce_word, text_to_word, unoriented_class,
                           word_to_text)

F2 = GroupSpec.free("u", "v")
Z2 = GroupSpec.abelian(2)


def test_free_reduction():
    assert reduce_word([1, -1]) == ()
    assert reduce_word([1, 2, -2, -1]) == ()
    assert reduce_word([1, 2, -2, 1]) == (1, 1)
    assert mul(F2, (1,), (-1,)) == ()
    assert inv(F2, (1, 2)) == (-2, -1)


def test_conjugacy_canonical_form():
    # cyclic reduction: u v u^-1 is conjugate to v
    assert conj_class(F2, (1, 2, -1)) == conj_class(F2, (2,))
    # rotation invariance
    assert conj_class(F2, (1, 2)) == conj_class(F2, (2, 1))
    # generators sort before inverses
    assert conj_class(F2, (1, -2)).data == (1, -2)
    assert conj_class(F2, (-2, 1)).data == (1, -2)
    assert conj_class(F2, ()).is_identity()
    assert not conj_class(F2, (1,)).is_identity()


def test_class_inverse_and_unoriented():
    c = conj_class(F2, (1, 2))
    assert c.inverse() == conj_class(F2, (-2, -1))
    assert c.inverse().inverse() == c
    w = (1, 2)
    assert unoriented_class(F2, w) == unoriented_class(F2, inv(F2, w))


def test_abelian():
    assert mul(Z2, (1, 0), (0, 1)) == (1, 1)
    assert inv(Z2, (3, -2)) == (-3, 2)
    assert conj_class(Z2, (2, -1)).data == (2, -1)
    assert conj_class(Z2, (0, 0)).is_identity()


def test_text_round_trip():
    for w in [(), (1,), (1, 1, -2), (2, -1, -1)]:
        text = word_to_text(F2, w)
        assert text_to_word(F2, text) == w
    assert word_to_text(F2, ()) == "1"
    assert word_to_text(F2, (1, 1, -2)) == "u^2 v^-1"
    assert text_to_word(Z2, "g1^3 g2^-1") == (3, -1)
    assert word_to_text(Z2, (3, -1)) == "g1^3 g2^-1"
    with pytest.raises(ValueError):
        text_to_word(F2, "w")
