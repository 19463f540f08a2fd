import random

import pytest

from qsheaf import bott
from qsheaf.calculus import ExprTable, spinor_pair_column
from qsheaf.core import atom, bidegree, line, spinor
from qsheaf.corpus import random_bidegree_sum
from qsheaf.dsl import parse
from qsheaf.q2 import hw_regular, kunneth_cohom, p1_cohom, pin_duality_rule, q2_spinor_bidegree
from qsheaf.regularity import is_qregular


def test_p1():
    assert [p1_cohom(d, 0) for d in (-2, -1, 0, 3)] == [0, 0, 1, 4]
    assert [p1_cohom(d, 1) for d in (-3, -2, -1, 0)] == [2, 1, 0, 0]


def test_kunneth_matches_diagonal_line_bundles():
    for t in range(-8, 9):
        for i in range(3):
            assert kunneth_cohom(t, t, i) == bott.line_cohom(2, t, i)


def test_spinor_bidegrees_and_cohomology():
    for c in (1, 2):
        a, b = q2_spinor_bidegree(c)
        for t in range(-6, 7):
            for i in range(3):
                assert bott.spinor_cohom(2, c, t, i) == kunneth_cohom(a + t, b + t, i)


def test_pinned_duality_rule():
    assert pin_duality_rule() == bott.duality_rule(2)
    assert pin_duality_rule().swap


@pytest.mark.parametrize("b", (1, 2))
@pytest.mark.parametrize("c", (1, 2))
def test_spinor_pairs_match_kunneth(b, c):
    ab, ac = q2_spinor_bidegree(b), q2_spinor_bidegree(c)
    for t in range(-8, 8):
        col = spinor_pair_column(2, b, c, t)
        for i in range(3):
            assert col[i].exact
            assert col[i].lo == kunneth_cohom(ab.a + ac.a + t, ab.b + ac.b + t, i)


def test_hw_example_corrected():
    # h^2(O(-2,-3)) = 2, so O(-1,-1) is not (0,0)-regular
    t = ExprTable(parse("Q2: O(-1,-1)"))
    assert kunneth_cohom(-2, -3, 2) == 2
    assert hw_regular(t, 0, 0) is False
    assert hw_regular(t, 1, 1) is True


def test_hw_off_diagonal_unsupported():
    with pytest.raises(NotImplementedError):
        hw_regular(ExprTable(atom(2, line())), 0, 1)


def test_q2_equivalence_random():
    rng = random.Random(7)
    for _ in range(40):
        t = ExprTable(random_bidegree_sum(rng))
        for m in range(-5, 6):
            assert is_qregular(t, m).ok == hw_regular(t, m, m)


def test_bidegree_with_spinors():
    t = ExprTable(atom(2, bidegree(2, -1), spinor(1, -1)))
    for m in range(-5, 6):
        assert is_qregular(t, m).ok == hw_regular(t, m, m)
