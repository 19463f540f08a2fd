import random

import pytest

from qsheaf import bott
from qsheaf.calculus import (
    REGISTRY, ExprTable, column, euler_char, restrict_atom, safe_window, spinor_pair_column, twisted_column,
)
from qsheaf.core import Atom, Quotient, Restrict, Sum, Twist, atom, line, normalize, skyscraper, spinor, spinor_labels
from qsheaf.corpus import random_split_bundle
from qsheaf.dsl import parse
from qsheaf.oracle import serre_check
from qsheaf.q2 import kunneth_cohom


def test_registry_facts_cited():
    assert {f.name for f in REGISTRY} >= {"spinor-ext", "spinor-duality"}


def test_p4_column():
    t = ExprTable(parse("Q4: quot(O, S1 + S2)"))
    assert [v.lo for v in t.column(-4)] == [0, 0, 0, 1, 0]
    assert all(t.column(-4)[i].exact for i in range(5))
    for tt in range(*t.window):
        assert t.query(1, tt).is_zero and t.query(2, tt).is_zero
    assert euler_char(t.expr, 0) == 7


def test_p5_intermediate():
    t = ExprTable(parse("Q5: quot(O, S)"))
    lo, hi = t.window
    for tt in range(lo, hi + 1):
        for i in (1, 2, 3):
            assert t.query(i, tt).is_zero
    assert t.query(4, -5).lo == 1


@pytest.mark.parametrize("n", range(3, 7))
def test_pair_tables_euler_and_range(n):
    # only one degree of a spinor pair can be nonzero per twist
    for b in spinor_labels(n):
        for c in spinor_labels(n):
            for t in range(-n - 4, 4):
                col = spinor_pair_column(n, b, c, t)
                assert all(v.exact for v in col)
                assert sum(1 for v in col if v.lo) <= 1


def test_pair_tables_serre():
    # h^i(Sb (x) Sc (t)) = h^{n-i}(Sb^v (x) Sc^v (-n-t)) and S^v = S_d(-1)
    for n in range(3, 7):
        d = bott.duality_rule(n)
        for b in spinor_labels(n):
            for c in spinor_labels(n):
                for t in range(-n - 3, 3):
                    for i in range(n + 1):
                        left = spinor_pair_column(n, b, c, t)[i].lo
                        right = spinor_pair_column(n, d(b), d(c), -n - t - 2)[n - i].lo
                        assert left == right


def test_serre_on_twisted_atoms():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(3, 6)
        e = random_split_bundle(rng, n, 3)
        dual = Atom(n, tuple(sorted(bott.dual_generator(n, g) for g in e.gens)))
        assert serre_check(ExprTable(e), ExprTable(dual), n)


def test_twisted_atoms_of_line_bundles():
    n = 4
    e = atom(n, line(2))
    for c in (1, 2):
        for t in range(-8, 4):
            assert twisted_column(e, c, t) == ExprTable(atom(n, spinor(c, 2))).column(t)


def test_q2_pair_via_bidegrees():
    e = atom(2, spinor(1, 0))
    for t in range(-5, 4):
        col = twisted_column(e, 1, t)
        assert [v.lo for v in col] == [kunneth_cohom(2 + t, t, i) for i in range(3)]


@pytest.mark.parametrize("n", range(3, 6))
def test_restriction_two_routes_agree(n):
    rng = random.Random(n)
    for _ in range(15):
        e = random_split_bundle(rng, n + 1, 3, twists=(-3, 3))
        via_les = ExprTable(Restrict(n, e))
        via_atoms = ExprTable(restrict_atom(e))
        lo, hi = via_les.window
        for i, t, v in via_atoms.cells((lo, hi)):
            assert v.lo in via_les.query(i, t)


def test_restricted_spinor_sum():
    # on even targets a restricted odd spinor is S1 + S2
    assert restrict_atom(atom(5, spinor(0))) == normalize(atom(4, spinor(1), spinor(2)))


def test_interval_honesty_q3_q2():
    # O/O(-1) on Q3 is the structure sheaf of a hyperplane section, a Q2
    q3 = ExprTable(parse("Q3: quot(O(-1), O)"))
    for tt in range(-4, 4):
        for i in range(4):
            want = kunneth_cohom(tt, tt, i) if i < 3 else 0
            assert want in q3.query(i, tt)


def test_interval_honesty_q4_q3():
    q4 = ExprTable(parse("Q4: quot(O(-1), O)"))
    for tt in range(-5, 4):
        for i in range(5):
            want = bott.line_cohom(3, tt, i) if i < 4 else 0
            assert want in q4.query(i, tt)


def test_skyscraper_column():
    e = atom(3, skyscraper(3))
    for t in (-5, 0, 5):
        assert [v.lo for v in column(e, t)] == [3, 0, 0, 0]


def test_normalize_preserves_tables():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(3, 5)
        a = random_split_bundle(rng, n, 2)
        b = random_split_bundle(rng, n, 2)
        e = Twist(n, Sum(n, (a, Twist(n, b, -1))), 2)
        ne = normalize(e)
        assert normalize(ne) == ne
        for t in range(-4, 3):
            assert column(e, t) == column(ne, t)


def test_safe_window():
    e = atom(3, line(4))
    assert safe_window(e) == (-3 - 2 - 4, 6)


def test_quotient_of_split_is_consistent():
    e = Quotient(3, atom(3, line(-1)), atom(3, line(0), line(1)))
    for t in range(-6, 4):
        col = column(e, t)
        assert sum((-1) ** i * v.lo for i, v in enumerate(col)) == euler_char(e, t) or not all(v.exact for v in col)
