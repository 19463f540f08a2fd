import pytest

from qsheaf.core import (
    Atom, CohomValue, Kind, Quadric, Quotient, StructuralError, Sum, Twist, atom, check,
    depth, has_finite_support, is_split, line, normalize, rank, skyscraper, spinor,
)


def test_quadric_labels_and_rank():
    assert Quadric(3).labels == (0,)
    assert Quadric(4).labels == (1, 2)
    assert [Quadric(n).spinor_rank for n in range(2, 8)] == [1, 2, 2, 4, 4, 8]
    with pytest.raises(StructuralError):
        Quadric(1)


def test_generator_validation():
    with pytest.raises(StructuralError):
        spinor(1).validate(3)
    with pytest.raises(StructuralError):
        spinor(0).validate(4)
    spinor(2, -1).validate(4)


def test_rank_of_expressions():
    p4 = Quotient(4, atom(4, line()), atom(4, spinor(1), spinor(2)))
    assert rank(p4) == 3
    assert rank(atom(3, line(1), spinor(0))) == 3
    assert rank(atom(3, skyscraper(2))) == 0


def test_quotient_rank_check():
    with pytest.raises(StructuralError):
        check(Quotient(3, atom(3, line(), line()), atom(3, line())))


def test_normalize_pushes_twists_and_sorts():
    e = Twist(3, Sum(3, (atom(3, spinor(0, -1)), atom(3, line(2)))), 1)
    assert normalize(e) == Atom(3, tuple(sorted((spinor(0, 0), line(3)))))
    assert normalize(normalize(e)) == normalize(e)


def test_predicates():
    assert is_split(atom(3, line(), spinor(0)))
    assert has_finite_support(atom(3, skyscraper(3)))
    assert not has_finite_support(atom(3, skyscraper(1), line()))
    assert depth(Quotient(4, atom(4, line()), atom(4, spinor(1), spinor(2)))) >= 1


def test_cohom_value():
    v = CohomValue(0, 3)
    assert not v.exact and not v.is_zero and not v.is_nonzero
    assert (v + CohomValue(1, 1)) == CohomValue(1, 4)
    assert 2 in v and 4 not in v
    with pytest.raises(ValueError):
        CohomValue(2, 1)
    assert Kind.LINE < Kind.SPINOR
