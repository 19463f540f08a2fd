from hypothesis import given, settings, strategies as st

from qsheaf.calculus import column
from qsheaf.core import Atom, Generator, Kind, Sum, Twist, normalize, spinor_labels
from qsheaf.dsl import parse, to_text
from qsheaf.regularity import qreg


@st.composite
def split_bundles(draw, n=None):
    n = draw(st.integers(3, 6)) if n is None else n
    gens = draw(st.lists(
        st.one_of(
            st.builds(lambda a: Generator(Kind.LINE, a), st.integers(-4, 4)),
            st.builds(lambda a, c: Generator(Kind.SPINOR, a, c), st.integers(-4, 4), st.sampled_from(spinor_labels(n))),
        ),
        min_size=1, max_size=4,
    ))
    return Atom(n, tuple(sorted(gens)))


@st.composite
def nested(draw):
    n = draw(st.integers(3, 5))
    a, b = draw(split_bundles(n)), draw(split_bundles(n))
    k1, k2 = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
    return Twist(n, Sum(n, (a, Twist(n, b, k1))), k2)


@settings(max_examples=60, deadline=None)
@given(nested())
def test_normalize_idempotent_and_table_preserving(e):
    ne = normalize(e)
    assert normalize(ne) == ne
    for t in (-e.n - 2, -1, 0, 2):
        assert column(e, t) == column(ne, t)


@settings(max_examples=60, deadline=None)
@given(nested())
def test_print_parse_round_trip(e):
    ne = normalize(e)
    assert parse(to_text(ne)) == ne
    assert parse(to_text(e)) == ne


@settings(max_examples=40, deadline=None)
@given(split_bundles(), st.integers(-5, 5))
def test_qreg_twist_shift(e, k):
    assert qreg(Twist(e.n, e, k)).value == qreg(e).value - k
