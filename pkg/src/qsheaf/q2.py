"""Q_2 = P^1 x P^1: Kunneth cohomology, spinors as bidegree line bundles,
and the diagonal (m, m)-regularity check of Hoffman and Wang."""

from __future__ import annotations

from typing import NamedTuple

from .core import AmbiguityError, StructuralError, Witness
from .bott import DualityRule


class Bidegree(NamedTuple):
    a: int
    b: int

    def twisted(self, k: int) -> "Bidegree":
        return Bidegree(self.a + k, self.b + k)


def p1_cohom(d: int, i: int) -> int:
    if i == 0:
        return d + 1 if d >= 0 else 0
    if i == 1:
        return -d - 1 if d <= -2 else 0
    return 0


def kunneth_cohom(a: int, b: int, i: int) -> int:
    """h^i(O(a, b)) on P^1 x P^1."""
    return sum(p1_cohom(a, j) * p1_cohom(b, i - j) for j in (0, 1) if 0 <= i - j <= 1)


def q2_spinor_bidegree(label: int) -> Bidegree:
    if label == 1:
        return Bidegree(1, 0)
    if label == 2:
        return Bidegree(0, 1)
    raise StructuralError(f"Q2 spinor labels are 1 and 2, got {label}")


def pin_duality_rule() -> DualityRule:
    """Select the duality rule on Q_2 from the bidegrees; exactly one candidate fits.

    S_a^v must equal S_{d(a)}(-1), i.e. -bideg(a) == bideg(d(a)) - (1, 1).
    """
    survivors = []
    for rule in DualityRule.candidates(2):
        if all(
            Bidegree(-q2_spinor_bidegree(a).a, -q2_spinor_bidegree(a).b)
            == q2_spinor_bidegree(rule(a)).twisted(-1)
            for a in (1, 2)
        ):
            survivors.append(rule)
    if len(survivors) != 1:
        raise AssertionError(f"expected one duality rule on Q2, found {survivors}")
    return survivors[0]


def hw_regular(table, p: int, q: int) -> bool:
    """(p, q)-regularity on P^1 x P^1 on the diagonal p = q = m.

    Requires h^1(F(m-1, m-1)) = h^2(F(m-1, m-2)) = h^2(F(m-2, m-1)) = 0.
    ``table`` must offer ``query_bidegree(i, a, b)``.
    """
    if p != q:
        raise NotImplementedError("only the diagonal case p == q is supported")
    m = p
    cells = [(1, m - 1, m - 1), (2, m - 1, m - 2), (2, m - 2, m - 1)]
    values = [(c, table.query_bidegree(*c)) for c in cells]
    pending = [Witness(i, a, v, label=None) for (i, a, _b), v in values if not v.exact]
    if any(v.is_nonzero for _, v in values):
        return False
    if pending:
        raise AmbiguityError("interval cells in (m, m)-regularity check", pending)
    return True
