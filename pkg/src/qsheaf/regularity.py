"""m-Qregularity, Qreg, and Castelnuovo-Mumford regularity of the extension by zero.

A sheaf F on Q_n is m-Qregular when

    h^i(F(m-i)) = 0 for i = 1..n-1   and   h^n(F(m) (x) S(-n)) = 0 for every spinor S,

and m-regular (in P^{n+1}, after pushing forward) when h^i(F(m-i)) = 0 for
i = 1..n.  Conditions are evaluated three-valued: a cell with a positive lower
bound refutes, all-zero cells confirm, anything else is ambiguous.
"""

from __future__ import annotations

from typing import Callable, Optional, Union

from .calculus import CohomTable, ExprTable
from .core import (
    NEG_INF,
    AmbiguityError,
    QregCheck,
    QregReport,
    SheafExpr,
    Witness,
    has_finite_support,
)

TableLike = Union[CohomTable, SheafExpr]

SEARCH_CAP = 1 << 12


def as_table(x: TableLike) -> CohomTable:
    return x if isinstance(x, CohomTable) else ExprTable(x)


def qreg_cells(table: CohomTable, m: int) -> list[Witness]:
    n = table.n
    cells = [Witness(i, m - i, table.query(i, m - i)) for i in range(1, n)]
    for c in table.labels:
        cells.append(Witness(n, m - n, table.query_twisted(c, n, m - n), label=c))
    return cells


def qreg_cells_alt(table: CohomTable, m: int) -> list[Witness]:
    n = table.n
    cells = [Witness(i, m - i, table.query(i, m - i)) for i in range(1, n)]
    for c in table.labels:
        cells.append(Witness(n - 1, m - n + 1, table.query_twisted(c, n - 1, m - n + 1), label=c))
    cells.append(Witness(n, m - n + 1, table.query(n, m - n + 1)))
    return cells


def reg_cells(table: CohomTable, m: int) -> list[Witness]:
    # h^{n+1} of the pushforward vanishes identically
    return [Witness(i, m - i, table.query(i, m - i)) for i in range(1, table.n + 1)]


def _decide(cells: list[Witness]) -> Optional[bool]:
    if any(w.value.is_nonzero for w in cells):
        return False
    if all(w.value.is_zero for w in cells):
        return True
    return None


def _check(cells: list[Witness], m: int, what: str) -> QregCheck:
    verdict = _decide(cells)
    if verdict is None:
        pending = [w for w in cells if not w.value.exact]
        raise AmbiguityError(f"{what} at m={m} depends on interval cells", pending)
    failing = [w for w in cells if w.value.is_nonzero]
    return QregCheck(verdict, m, failing)


def is_qregular(x: TableLike, m: int) -> QregCheck:
    """Primary definition; witnesses are the nonvanishing cells on failure."""
    return _check(qreg_cells(as_table(x), m), m, "Qregularity")


def is_qregular_alt(x: TableLike, m: int) -> QregCheck:
    """Equivalent form: h^{n-1}(F(m) (x) S(-n+1)) and h^n(F(m-n+1)) replace the top cell."""
    return _check(qreg_cells_alt(as_table(x), m), m, "Qregularity (alternate form)")


def is_regular(x: TableLike, m: int) -> QregCheck:
    return _check(reg_cells(as_table(x), m), m, "Castelnuovo-Mumford regularity")


def least_true(pred: Callable[[int], Optional[bool]], start: int = 0, cap: int = SEARCH_CAP):
    """Least m with pred(m) True for a predicate that is monotone in m.

    Returns (value, bracket): value is an int, NEG_INF when pred holds all the
    way down to ``start - cap``, or None when interval cells leave the
    threshold inside ``bracket``.
    """
    memo: dict[int, Optional[bool]] = {}

    def ev(m: int) -> Optional[bool]:
        if m not in memo:
            memo[m] = pred(m)
        return memo[m]

    hi = start
    step = 1
    while ev(hi) is not True:
        hi = start + step
        step *= 2
        if step > 2 * cap:
            raise RuntimeError(f"regularity not reached below m={hi}")
    lo = hi - 1
    step = 1
    while ev(lo) is not False:
        lo = hi - 1 - step
        step *= 2
        if step > 2 * cap:
            if any(v is None for v in memo.values()):
                return None, (lo, hi)
            return NEG_INF, None
    # pred(lo) is False and pred(hi) is True
    while hi - lo > 1:
        mid = (lo + hi) // 2
        v = ev(mid)
        if v is None:
            break
        if v:
            hi = mid
        else:
            lo = mid
    if hi - lo == 1:
        return hi, None
    # an interval cell blocked bisection; tighten the bracket linearly
    for m in range(lo + 1, hi):
        v = ev(m)
        if v is True:
            hi = m
            break
        if v is False:
            lo = m
    for m in range(lo + 1, hi):
        if ev(m) is False:
            lo = m
    if hi - lo == 1:
        return hi, None
    return None, (lo + 1, hi)


def _least(table: CohomTable, cells_at, kind: str, finite_support: bool) -> QregReport:
    if finite_support:
        return QregReport(NEG_INF, kind=kind)
    value, bracket = least_true(lambda m: _decide(cells_at(table, m)))
    if value is None:
        cells = []
        for m in range(bracket[0], bracket[1]):
            cells += [w for w in cells_at(table, m) if not w.value.exact]
        return QregReport(None, cells, bracket, kind=kind)
    if value == NEG_INF:
        return QregReport(NEG_INF, kind=kind)
    failing = [w for w in cells_at(table, value - 1) if w.value.is_nonzero]
    return QregReport(value, failing, kind=kind)


def qreg(x: TableLike) -> QregReport:
    """Least m such that F is m-Qregular; witnesses certify failure at m - 1."""
    table = as_table(x)
    finite = isinstance(table, ExprTable) and has_finite_support(table.expr)
    return _least(table, qreg_cells, "qreg", finite)


def cm_reg(x: TableLike) -> QregReport:
    """Castelnuovo-Mumford regularity of the extension by zero to P^{n+1}."""
    table = as_table(x)
    finite = isinstance(table, ExprTable) and has_finite_support(table.expr)
    return _least(table, reg_cells, "reg", finite)


def check_sandwich(x: TableLike) -> dict:
    """Compare Qreg <= Reg <= Qreg + 1 and say which side is tight."""
    table = as_table(x)
    q, r = qreg(table), cm_reg(table)
    if q.ambiguous or r.ambiguous:
        raise AmbiguityError("sandwich needs exact Qreg and Reg", q.witnesses + r.witnesses)
    lower = q.value <= r.value
    upper = r.value <= q.value + 1
    tight = []
    if q.value == r.value:
        tight.append("lower")
    if r.value == q.value + 1:
        tight.append("upper")
    return {"qreg": q.value, "reg": r.value, "holds": lower and upper, "tight": tight}
