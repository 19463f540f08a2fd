from qsheaf.calculus import ExprTable
from qsheaf.bott import dual_generator
from qsheaf.core import atom, exact, line, spinor
from qsheaf.oracle import euler_via_ambient, les_brute_force, monomial_h0, serre_check


def test_monomial_examples():
    assert monomial_h0(3, 2) == 14
    assert monomial_h0(2, 1) == 4
    assert monomial_h0(4, 0) == 1
    assert monomial_h0(3, -1) == 0


def test_euler_examples():
    assert euler_via_ambient(3, -3) == -1
    assert all(euler_via_ambient(n, 0) == 1 for n in range(2, 7))
    assert euler_via_ambient(2, -1) == 0


def test_serre_examples():
    o = ExprTable(atom(3, line()))
    assert serre_check(o, o, 3)
    s = ExprTable(atom(3, spinor(0)))
    assert serre_check(s, ExprTable(atom(3, dual_generator(3, spinor(0)))), 3)


class _Corrupt:
    def __init__(self, base):
        self.base, self.window, self.n = base, base.window, base.n

    def query(self, i, t):
        v = self.base.query(i, t)
        return exact(v.lo + 1) if (i, t) == (0, 0) else v


def test_serre_negative_control():
    o = ExprTable(atom(3, line()))
    assert not serre_check(_Corrupt(o), o, 3)


def test_les_brute_force_small():
    # 0 -> 2 -> ? -> 1 -> 0 forces the middle to 3
    assert les_brute_force([2, None, 1]) == [{2}, {3}, {1}]
    assert les_brute_force([1, 0, 0]) is None
