"""Splitting criteria on quadrics and the peeling decomposition.

Peeling works on tables only.  Twist the residual so that it is Qregular but
its (-1)-twist is not.  Then exactly one of two cells is nonzero.  If
``h^n(E(-n))`` is nonzero, O is a summand.  Otherwise ``h^{n-1}(E(-1) (x)
S_c(-n+1))`` is nonzero for some label c, and the dual of the spinor
S_{p(c)} twisted by 1 is a summand.  Subtract the summand's table and repeat
until the residual vanishes.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from . import bott
from .calculus import CohomTable, ExprTable, ResidualTable, TwistedTable, first_chern
from .core import (
    NEG_INF,
    AmbiguityError,
    Generator,
    InconsistentTableError,
    Kind,
    QsheafError,
    SheafExpr,
    SplitReport,
    StructuralError,
    Witness,
    line,
    normalize,
    rank,
)
from .regularity import as_table, qreg

MAX_PEEL_STEPS = 256


def _scan(table: CohomTable, indices, window, twisted: bool = False) -> SplitReport:
    """Look for a certified nonzero cell; otherwise collect interval cells."""
    lo, hi = window
    pending: list[Witness] = []
    labels = table.labels if twisted else (None,)
    for i in sorted(set(indices)):
        for c in labels:
            for t in range(lo, hi + 1):
                v = table.query(i, t) if c is None else table.query_twisted(c, i, t)
                w = Witness(i, t, v, label=c)
                if v.is_nonzero:
                    return SplitReport("obstructed", witness=w, window=window)
                if not v.exact:
                    pending.append(w)
    if pending:
        return SplitReport("ambiguous", cells=pending, window=window)
    return SplitReport("split", window=window)


def peel(table: CohomTable, n: Optional[int] = None) -> tuple[Generator, ...]:
    """Decompose an exact table into line-bundle and spinor generators.

    The emitted multiset's table equals the input on the whole window.
    """
    n = table.n if n is None else n
    if n != table.n:
        raise ValueError(f"table lives on Q{table.n}, not Q{n}")
    residual = ResidualTable(table)
    for _ in range(MAX_PEEL_STEPS):
        if residual.is_zero():
            return tuple(sorted(residual.removed))
        report = qreg(residual)
        if report.ambiguous:
            raise AmbiguityError("peeling needs an exact Qregularity", report.witnesses)
        if report.value == NEG_INF:
            raise QsheafError(_residual_message("residual has Qreg -inf", residual))
        q = report.value
        g = _summand(residual, q, n)
        if g is None:
            raise QsheafError(_residual_message(f"no summand found at Qreg {q}", residual))
        residual = residual.minus(g)
        _check_nonnegative(residual)
    raise QsheafError(_residual_message("peeling did not terminate", residual))


def _summand(residual: CohomTable, q: int, n: int) -> Optional[Generator]:
    # E = residual(q) is Qregular and E(-1) is not
    if residual.query(n, q - n).is_nonzero:
        return line(-q)
    d = bott.duality_rule(n)
    for c in residual.labels:
        if residual.query_twisted(c, n - 1, q - n).is_nonzero:
            # h^{n-1}(E(-1) (x) S_c(-n+1)) = h^n(E(-1) (x) S_{p(c)}(-n)) is dual to
            # Hom(E(-1), S_{p(c)}^v) and S_{p(c)}^v = S_{d(p(c))}(-1)
            return Generator(Kind.SPINOR, -q, d(bott.pairing(n, c)))
    return None


def _check_nonnegative(residual: ResidualTable) -> None:
    # queries raise InconsistentTableError on negative cells
    for _ in residual.cells():
        pass
    for _ in residual.twisted_cells():
        pass


def _residual_message(head: str, residual: CohomTable) -> str:
    rows = []
    for i, t, v in residual.cells():
        if not v.is_zero:
            rows.append(f"h^{i}({t})={v}")
    return f"{head}; nonzero residual cells: {', '.join(rows) or 'none (plain)'}"


def _with_peel(report: SplitReport, table: CohomTable) -> SplitReport:
    if report.verdict == "split":
        report.decomposition = peel(table)
    return report


def eg_indices(n: int, r: int) -> list[int]:
    """Degrees 1..r-1 and n-1, kept to the intermediate range 1..n-1."""
    return sorted({i for i in range(1, min(r, n))} | ({n - 1} if n > 1 else set()))


def eg_check(expr: SheafExpr, r: Optional[int] = None) -> SplitReport:
    """Vanishing of H^i_* for i = 1..r-1 and of H^{n-1}_*, then peel."""
    table = ExprTable(expr)
    r = rank(table.expr) if r is None else r
    n = table.n
    report = _scan(table, eg_indices(n, r), table.window)
    return _with_peel(report, table)


def knorrer_check(expr: SheafExpr) -> SplitReport:
    """All intermediate cohomology vanishes, then peel."""
    table = ExprTable(expr)
    report = _scan(table, range(1, table.n), table.window)
    return _with_peel(report, table)


def line_split_check(expr: SheafExpr, r: Optional[int] = None) -> SplitReport:
    """EG conditions plus vanishing of H^{n-1}_*(E (x) S); the result has line bundles only."""
    table = ExprTable(expr)
    r = rank(table.expr) if r is None else r
    n = table.n
    report = _scan(table, eg_indices(n, r), table.window)
    if report.verdict == "split":
        report = _scan(table, [n - 1], table.window, twisted=True)
    report = _with_peel(report, table)
    if report.satisfied and any(g.kind is not Kind.LINE for g in report.decomposition):
        raise QsheafError(f"line-bundle criterion held but peel emitted {report.decomposition}")
    return report


def rank2_check(expr: SheafExpr, c1: Optional[int] = None, normalize_twist: bool = True) -> SplitReport:
    """Rank-2 criterion: Qreg 0, h^1(E(-2)) = h^1(E(c_1)) = 0 imply splitting.

    With ``normalize_twist`` the bundle is first twisted to Qreg 0 (and c_1
    adjusted); the returned decomposition refers to the original bundle.
    """
    e = normalize(expr)
    if rank(e) != 2:
        raise StructuralError(f"rank2_check needs a rank 2 sheaf, got rank {rank(e)}")
    n = e.n
    base = ExprTable(e)
    c1 = first_chern(e) if c1 is None else c1
    report = qreg(base)
    if report.ambiguous:
        return SplitReport("ambiguous", cells=report.witnesses, window=base.window)
    q = report.value
    shift = q if normalize_twist else 0
    table: CohomTable = TwistedTable(base, shift) if shift else base
    c1 += 2 * shift
    if q - shift != 0:
        return SplitReport("obstructed", window=base.window, reason=f"Qreg(E) = {q}, not 0")
    for t in (-2, c1):
        v = table.query(1, t)
        if not v.is_zero:
            if v.is_nonzero:
                return SplitReport("obstructed", witness=Witness(1, t, v), window=base.window)
            return SplitReport("ambiguous", cells=[Witness(1, t, v)], window=base.window)
    parts = peel(table)
    if n > 4 and Counter(parts) != Counter([line(0), line(c1)]):
        raise InconsistentTableError(f"on Q{n} a split rank 2 bundle must be O + O(c1), got {parts}")
    decomposition = tuple(sorted(g.twisted(-shift) for g in parts))
    return SplitReport("split", decomposition=decomposition, window=base.window,
                       reason=f"twisted by {shift} to Qreg 0, c1 = {c1}")


def recombine(n: int, gens, window) -> list[tuple]:
    """Plain and twisted cells of a generator multiset, for round-trip checks."""
    from .core import atom

    t = ExprTable(atom(n, *gens), window)
    return list(t.cells()) + list(t.twisted_cells())


__all__ = [
    "eg_check",
    "knorrer_check",
    "line_split_check",
    "peel",
    "rank2_check",
    "recombine",
]
