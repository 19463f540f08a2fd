"""Cohomology tables of sheaf expressions.

Generators come from closed forms (:mod:`qsheaf.bott`, :mod:`qsheaf.q2`).
Quotients and restrictions go through the long exact sequence solver one twist
at a time.  Cohomology of ``F(t) (x) S_c`` ("twisted" cells) is needed for
Qregularity.  For two spinors it is not given a closed form.  It is propagated
along the spinor sequences from a single seed twist taken from the fact
registry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from . import bott
from .core import (
    ZERO,
    AmbiguityError,
    Atom,
    CohomValue,
    Generator,
    Kind,
    Quotient,
    Restrict,
    SheafExpr,
    StructuralError,
    Sum,
    Twist,
    atom,
    depth,
    exact,
    iter_generators,
    normalize,
    spinor_labels,
)
from .les import short_exact
from .q2 import kunneth_cohom, q2_spinor_bidegree

Column = tuple[CohomValue, ...]


# -- fact registry -----------------------------------------------------------


@dataclass(frozen=True)
class Fact:
    name: str
    statement: str
    provenance: str
    n: Optional[int] = None  # None: holds on every quadric


class FactRegistry:
    """Cohomological facts about objects outside the expression language.

    Facts are looked up by name and never derived here; each carries the
    source it was imported from.
    """

    def __init__(self, facts=()):
        self._facts: dict[tuple[str, Optional[int]], Fact] = {}
        for f in facts:
            self.add(f)

    def add(self, fact: Fact) -> None:
        self._facts[(fact.name, fact.n)] = fact

    def get(self, name: str, n: Optional[int] = None) -> Fact:
        fact = self._facts.get((name, n)) or self._facts.get((name, None))
        if fact is None:
            raise KeyError(f"no registered fact {name!r} for Q{n}")
        return fact

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._facts.values())

    def __len__(self):
        return len(self._facts)


REGISTRY = FactRegistry(
    [
        Fact(
            "spinor-ext",
            "Ext^*(S_a, S_b) is k in degree 0 when a == b and vanishes otherwise; "
            "equivalently h^i(S_x (x) S_c(-1)) = [i == 0][c == d(x)]",
            "classical: the spinor bundles are exceptional and mutually orthogonal "
            "(Kapranov's collection on quadrics)",
        ),
        Fact(
            "spinor-duality",
            "S_a^v = S_{d(a)}(-1) with d = identity for n odd or n = 0 mod 4, "
            "d = swap for n = 2 mod 4",
            "Ottaviani's description of spinor duals (translated to globally "
            "generated twists); checked on Q2 against the bidegrees",
        ),
        Fact(
            "spinor-ext1-nonvanishing",
            "h^1(S(-1) (x) S'^v) != 0 for the spinor S' paired with S in the spinor sequence",
            "known Ext^1 computation between paired spinors; consumed as a check only",
        ),
    ]
)


def spinor_ext_seed(n: int, x: int, c: int, i: int, registry: FactRegistry = REGISTRY) -> int:
    """h^i(S_x (x) S_c(-1)) read off the registered Ext fact."""
    registry.get("spinor-ext", n)
    d = bott.duality_rule(n)
    return 1 if i == 0 and c == d(x) else 0


# -- spinor (x) spinor -------------------------------------------------------


@lru_cache(maxsize=None)
def _pair_columns(n: int, b: int, lo: int, hi: int) -> dict[tuple[int, int], Column]:
    """Columns of S_b (x) S_c(t) for both c and every t in [lo, hi] (lo <= -1 <= hi)."""
    labels = spinor_labels(n)
    r2 = 2 * bott.spinor_rank(n)
    cols: dict[tuple[int, int], Column] = {}
    for c in labels:
        cols[c, -1] = tuple(exact(spinor_ext_seed(n, b, c, i)) for i in range(n + 1))

    def middle(t: int) -> Column:
        return tuple(exact(r2 * bott.spinor_cohom(n, b, t, i)) for i in range(n + 1))

    unknown = (None,) * (n + 1)
    for t in range(0, hi + 1):
        # 0 -> S_b (x) S_{p(c)}(t-1) -> S_b(t)^{2r} -> S_b (x) S_c(t) -> 0
        for c in labels:
            _, _, q = short_exact(cols[bott.pairing(n, c), t - 1], middle(t), unknown,
                                  context=f"S{b} (x) S{c}({t}) on Q{n}")
            cols[c, t] = tuple(q)
    for t in range(-2, lo - 1, -1):
        for c in labels:
            # c plays the kernel role for the quotient labelled p(c) at t + 1
            s, _, _ = short_exact(unknown, middle(t + 1), cols[bott.pairing(n, c), t + 1],
                                  context=f"S{b} (x) S{c}({t}) on Q{n}")
            cols[c, t] = tuple(s)
    return cols


def _window_pow2(t: int) -> tuple[int, int]:
    span = 16
    while not (-span <= t <= span):
        span *= 2
    return -span, span


def spinor_pair_column(n: int, b: int, c: int, t: int) -> Column:
    """Column (h^0..h^n) of S_b (x) S_c(t) on Q_n."""
    lo, hi = _window_pow2(t)
    return _pair_columns(n, b, lo, hi)[c, t]


# -- generators --------------------------------------------------------------


def generator_column(n: int, g: Generator, t: int) -> Column:
    return tuple(exact(bott.generator_cohom(n, g, t, i)) for i in range(n + 1))


def generator_twisted_column(n: int, g: Generator, label: int, t: int) -> Column:
    """Column of g(t) (x) S_label."""
    if label not in spinor_labels(n):
        raise StructuralError(f"invalid spinor label {label} on Q{n}")
    if g.kind is Kind.LINE:
        return tuple(exact(bott.spinor_cohom(n, label, g.twist + t, i)) for i in range(n + 1))
    if g.kind is Kind.SPINOR:
        return spinor_pair_column(n, g.label, label, g.twist + t)
    if g.kind is Kind.SKYSCRAPER:
        return (exact(g.length * bott.spinor_rank(n)),) + (ZERO,) * n
    s = q2_spinor_bidegree(label)
    return tuple(exact(kunneth_cohom(g.twist + s.a + t, g.twist2 + s.b + t, i)) for i in range(3))


def restrict_generator(n: int, g: Generator) -> tuple[Generator, ...]:
    """Restriction of a generator on Q_n to a hyperplane section Q_{n-1}."""
    if n <= 2:
        raise StructuralError("no smaller quadric to restrict to from Q2")
    if g.kind is Kind.LINE:
        return (g,)
    if g.kind is Kind.SKYSCRAPER:
        return ()  # a general hyperplane misses the support
    if g.kind is Kind.SPINOR:
        if n % 2:
            return (bott_spinor(1, g.twist), bott_spinor(2, g.twist))
        return (bott_spinor(bott.ODD_LABEL, g.twist),)
    raise StructuralError(f"cannot restrict {g} from Q{n}")


def bott_spinor(label: int, a: int) -> Generator:
    return Generator(Kind.SPINOR, a, label)


def restrict_atom(a: Atom) -> Atom:
    gens: list[Generator] = []
    for g in a.gens:
        gens.extend(restrict_generator(a.n, g))
    return Atom(a.n - 1, tuple(sorted(gens)))


# -- expression tables ---------------------------------------------------------


def _add(x: Column, y: Column) -> Column:
    return tuple(a + b for a, b in zip(x, y))


def _zero(n: int) -> Column:
    return (ZERO,) * (n + 1)


@lru_cache(maxsize=200_000)
def column(expr: SheafExpr, t: int) -> Column:
    """h^0..h^n of expr(t) as cohomology values."""
    n = expr.n
    if isinstance(expr, Atom):
        col = _zero(n)
        for g in expr.gens:
            col = _add(col, generator_column(n, g, t))
        return col
    if isinstance(expr, Sum):
        col = _zero(n)
        for c in expr.children:
            col = _add(col, column(c, t))
        return col
    if isinstance(expr, Twist):
        return column(expr.child, t + expr.k)
    if isinstance(expr, Quotient):
        _, _, q = short_exact(column(expr.sub, t), column(expr.mid, t), (None,) * (n + 1),
                              context=f"quotient at t={t} on Q{n}")
        return tuple(q)
    # 0 -> F(t-1) -> F(t) -> F|(t) -> 0 on the child's quadric Q_{n+1}
    f = expr.child
    quo = (None,) * (n + 1) + (ZERO,)
    _, _, q = short_exact(column(f, t - 1), column(f, t), quo,
                          context=f"restriction Q{n + 1} -> Q{n} at t={t}")
    return tuple(q[: n + 1])


@lru_cache(maxsize=200_000)
def twisted_column(expr: SheafExpr, label: int, t: int) -> Column:
    """h^0..h^n of expr(t) (x) S_label."""
    n = expr.n
    if label not in spinor_labels(n):
        raise StructuralError(f"invalid spinor label {label} on Q{n}")
    if isinstance(expr, Atom):
        col = _zero(n)
        for g in expr.gens:
            col = _add(col, generator_twisted_column(n, g, label, t))
        return col
    if isinstance(expr, Sum):
        col = _zero(n)
        for c in expr.children:
            col = _add(col, twisted_column(c, label, t))
        return col
    if isinstance(expr, Twist):
        return twisted_column(expr.child, label, t + expr.k)
    if isinstance(expr, Quotient):
        # tensoring with a vector bundle keeps the sequence exact
        _, _, q = short_exact(
            twisted_column(expr.sub, label, t),
            twisted_column(expr.mid, label, t),
            (None,) * (n + 1),
            context=f"quotient (x) spinor at t={t} on Q{n}",
        )
        return tuple(q)
    child = normalize(expr.child)
    if isinstance(child, Atom):
        return twisted_column(restrict_atom(child), label, t)
    return _restricted_twisted_column(expr, child, label, t)


def _restricted_twisted_column(expr: Restrict, child: SheafExpr, label: int, t: int) -> Column:
    n = expr.n
    big = child.n
    quo = (None,) * (n + 1) + (ZERO,)

    def via(big_label: int) -> Column:
        # 0 -> F (x) S(t-1) -> F (x) S(t) -> (F (x) S)|(t) -> 0 on Q_{n+1}
        _, _, q = short_exact(
            twisted_column(child, big_label, t - 1),
            twisted_column(child, big_label, t),
            quo,
            context=f"restricted spinor twist at t={t}, Q{big} -> Q{n}",
        )
        return tuple(q[: n + 1])

    if big % 2 == 0:
        # S_a on Q_{n+1} restricts to the spinor of Q_n for either label
        cols = [via(a) for a in spinor_labels(big)]
        return tuple(
            CohomValue(max(v.lo for v in vs), min(v.hi for v in vs)) for vs in zip(*cols)
        )
    # the odd spinor restricts to S1 + S2; only the sum is determined
    total = via(bott.ODD_LABEL)
    return tuple(ZERO if v.hi == 0 else CohomValue(0, v.hi) for v in total)


@lru_cache(maxsize=200_000)
def bidegree_column(expr: SheafExpr, a: int, b: int) -> Column:
    """h^0..h^2 of expr(a, b) for an expression on Q_2."""
    if expr.n != 2:
        raise StructuralError("bidegree twists only exist on Q2")
    if a == b:
        return column(expr, a)
    if isinstance(expr, Atom):
        col = _zero(2)
        for g in expr.gens:
            if g.kind is Kind.SKYSCRAPER:
                col = _add(col, generator_column(2, g, 0))
                continue
            base = _bidegree_of(g)
            col = _add(col, tuple(exact(kunneth_cohom(base[0] + a, base[1] + b, i)) for i in range(3)))
        return col
    if isinstance(expr, Sum):
        col = _zero(2)
        for c in expr.children:
            col = _add(col, bidegree_column(c, a, b))
        return col
    if isinstance(expr, Twist):
        return bidegree_column(expr.child, a + expr.k, b + expr.k)
    if isinstance(expr, Quotient):
        _, _, q = short_exact(bidegree_column(expr.sub, a, b), bidegree_column(expr.mid, a, b),
                              (None,) * 3, context=f"quotient at ({a},{b}) on Q2")
        return tuple(q)
    child = normalize(expr.child)
    if isinstance(child, Atom):
        return bidegree_column(restrict_atom(child), a, b)
    raise AmbiguityError(f"off-diagonal bidegree ({a},{b}) of a non-split restriction is undetermined")


def _bidegree_of(g: Generator) -> tuple[int, int]:
    if g.kind is Kind.LINE:
        return g.twist, g.twist
    if g.kind is Kind.SPINOR:
        s = q2_spinor_bidegree(g.label)
        return s.a + g.twist, s.b + g.twist
    return g.twist, g.twist2


# -- tables ------------------------------------------------------------------


class CohomTable:
    """Queryable cohomology of a sheaf on Q_n: plain and spinor-twisted cells."""

    n: int
    window: tuple[int, int]

    def column(self, t: int) -> Column:
        raise NotImplementedError

    def twisted_column(self, label: int, t: int) -> Column:
        raise NotImplementedError

    def query(self, i: int, t: int) -> CohomValue:
        if i < 0 or i > self.n:
            return ZERO
        return self.column(t)[i]

    def query_twisted(self, label: int, i: int, t: int) -> CohomValue:
        if i < 0 or i > self.n:
            return ZERO
        return self.twisted_column(label, t)[i]

    @property
    def labels(self) -> tuple[int, ...]:
        return spinor_labels(self.n)

    def cells(self, window: Optional[tuple[int, int]] = None):
        lo, hi = window or self.window
        cols = {t: self.column(t) for t in range(lo, hi + 1)}
        for i in range(self.n + 1):
            for t in range(lo, hi + 1):
                yield i, t, cols[t][i]

    def twisted_cells(self, window: Optional[tuple[int, int]] = None):
        lo, hi = window or self.window
        for label in self.labels:
            cols = {t: self.twisted_column(label, t) for t in range(lo, hi + 1)}
            for i in range(self.n + 1):
                for t in range(lo, hi + 1):
                    yield label, i, t, cols[t][i]

    @property
    def exact_everywhere(self) -> bool:
        """True iff no plain or twisted cell in the window is a proper interval."""
        return all(v.exact for *_, v in self.cells()) and all(
            v.exact for *_, v in self.twisted_cells()
        )

    def is_zero(self, window: Optional[tuple[int, int]] = None) -> bool:
        return all(v.is_zero for *_, v in self.cells(window)) and all(
            v.is_zero for *_, v in self.twisted_cells(window)
        )


class ExprTable(CohomTable):
    def __init__(self, expr: SheafExpr, window: Optional[tuple[int, int]] = None):
        self.expr = normalize(expr)
        self.n = self.expr.n
        self.window = window or safe_window(self.expr)

    def column(self, t: int) -> Column:
        return column(self.expr, t)

    def twisted_column(self, label: int, t: int) -> Column:
        return twisted_column(self.expr, label, t)

    def query_bidegree(self, i: int, a: int, b: int) -> CohomValue:
        if i < 0 or i > 2:
            return ZERO
        return bidegree_column(self.expr, a, b)[i]

    def __repr__(self):
        return f"ExprTable({self.expr!r})"


class TwistedTable(CohomTable):
    """``base`` twisted by k: cells of F(k)."""

    def __init__(self, base: CohomTable, k: int):
        self.base, self.k, self.n = base, k, base.n
        self.window = (base.window[0] - k, base.window[1] - k)

    def column(self, t: int) -> Column:
        return self.base.column(t + self.k)

    def twisted_column(self, label: int, t: int) -> Column:
        return self.base.twisted_column(label, t + self.k)


class ResidualTable(CohomTable):
    """``base`` minus the tables of some generators, cell by cell.

    Only meaningful for exact tables; a negative cell raises
    :class:`InconsistentTableError` at query time.  Each residual subtracts
    its last generator from its parent, and columns are memoized.
    """

    def __init__(self, base: CohomTable, removed: tuple[Generator, ...] = (), parent=None):
        self.base, self.removed, self.n = base, tuple(removed), base.n
        self.window = base.window
        self._parent = parent
        self._plain: dict[int, Column] = {}
        self._twisted: dict[tuple[int, int], Column] = {}

    def minus(self, g: Generator) -> "ResidualTable":
        return ResidualTable(self.base, self.removed + (g,), parent=self)

    def _sub(self, col: Column, part: Column, where: str) -> Column:
        from .core import InconsistentTableError

        out = []
        for i, v in enumerate(col):
            if not v.exact:
                raise AmbiguityError(f"cannot subtract from interval cell h^{i} {where}")
            left = v.lo - part[i].lo
            if left < 0:
                raise InconsistentTableError(f"subtraction left h^{i} = {left} < 0 {where}")
            out.append(exact(left))
        return tuple(out)

    def column(self, t: int) -> Column:
        if t not in self._plain:
            if self._parent is None:
                col = self._sub(self.base.column(t), _zero(self.n), f"at t={t}")
                for g in self.removed:
                    col = self._sub(col, generator_column(self.n, g, t), f"at t={t}")
            else:
                g = self.removed[-1]
                col = self._sub(self._parent.column(t), generator_column(self.n, g, t), f"at t={t}")
            self._plain[t] = col
        return self._plain[t]

    def twisted_column(self, label: int, t: int) -> Column:
        key = (label, t)
        if key not in self._twisted:
            where = f"(x) S{label} at t={t}"
            if self._parent is None:
                col = self._sub(self.base.twisted_column(label, t), _zero(self.n), where)
                for g in self.removed:
                    col = self._sub(col, generator_twisted_column(self.n, g, label, t), where)
            else:
                g = self.removed[-1]
                col = self._sub(self._parent.twisted_column(label, t),
                                generator_twisted_column(self.n, g, label, t), where)
            self._twisted[key] = col
        return self._twisted[key]


def table(expr: SheafExpr, window: Optional[tuple[int, int]] = None) -> ExprTable:
    return ExprTable(expr, window)


def spinor_twisted_cohom(expr: SheafExpr, label: int, t: int, i: int) -> CohomValue:
    """h^i(expr(t) (x) S_label)."""
    return ExprTable(expr).query_twisted(label, i, t)


def euler_char(expr: SheafExpr, t: int) -> int:
    """Exact Euler characteristic of expr(t); additive, never an interval."""
    n = expr.n
    if isinstance(expr, Atom):
        return sum(bott.euler_char_generator(n, g, t) for g in expr.gens)
    if isinstance(expr, Sum):
        return sum(euler_char(c, t) for c in expr.children)
    if isinstance(expr, Twist):
        return euler_char(expr.child, t + expr.k)
    if isinstance(expr, Quotient):
        return euler_char(expr.mid, t) - euler_char(expr.sub, t)
    return euler_char(expr.child, t) - euler_char(expr.child, t - 1)


def safe_window(expr: SheafExpr) -> tuple[int, int]:
    """Twist range [-n - 2 - span, span + 2], span = max |twist| + depth."""
    twists = [0]
    for g in iter_generators(expr):
        if g.kind is Kind.BIDEGREE:
            twists += [abs(g.twist), abs(g.twist2)]
        elif g.kind is not Kind.SKYSCRAPER:
            twists.append(abs(g.twist))
    span = max(twists) + depth(expr)
    return -expr.n - 2 - span, span + 2


def first_chern(expr: SheafExpr) -> int:
    if isinstance(expr, Atom):
        return sum(bott.first_chern(expr.n, g) for g in expr.gens)
    if isinstance(expr, Sum):
        return sum(first_chern(c) for c in expr.children)
    if isinstance(expr, Twist):
        from .core import rank

        return first_chern(expr.child) + rank(expr.child) * expr.k
    if isinstance(expr, Quotient):
        return first_chern(expr.mid) - first_chern(expr.sub)
    if expr.n < 3:
        raise StructuralError("c_1 is not an integer on Q2 (Picard group Z^2)")
    return first_chern(expr.child)


def generator_table(n: int, *gens: Generator) -> ExprTable:
    return ExprTable(atom(n, *gens))
