"""Shared vocabulary: quadrics, generators, sheaf expressions, cohomology values.

Expressions are immutable trees.  Every node records the dimension ``n`` of the
quadric it lives on; a :class:`Restrict` node lives on ``Q_n`` while its child
lives on ``Q_{n+1}``.  Spinor twists are stored in the convention where the
spinor bundles are globally generated with no sections after twisting by -1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

NEG_INF = -math.inf

#: spinor label used on odd-dimensional quadrics
ODD_LABEL = 0


class QsheafError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(QsheafError, ValueError):
    """An expression or generator is malformed for its quadric."""


class AmbiguityError(QsheafError):
    """A decision needed an exact cell but only an interval was available."""

    def __init__(self, message: str, cells=()):
        super().__init__(message)
        self.cells = list(cells)


class InconsistentTableError(QsheafError):
    """No assignment of ranks makes a long exact sequence exact."""


@dataclass(frozen=True)
class Quadric:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise StructuralError(f"quadric dimension must be an integer >= 2, got {self.n!r}")

    @property
    def labels(self) -> tuple[int, ...]:
        return spinor_labels(self.n)

    @property
    def spinor_rank(self) -> int:
        return 2 ** ((self.n - 1) // 2)

    def __str__(self):
        return f"Q{self.n}"


def spinor_labels(n: int) -> tuple[int, ...]:
    return (ODD_LABEL,) if n % 2 else (1, 2)


class Kind(enum.IntEnum):
    # declaration order is the canonical sort order of generators
    LINE = 0
    SPINOR = 1
    BIDEGREE = 2
    SKYSCRAPER = 3


@dataclass(frozen=True, order=True)
class Generator:
    """An atomic sheaf.

    ``LINE``: O(twist).  ``SPINOR``: spinor bundle ``label`` twisted by
    ``twist``.  ``SKYSCRAPER``: a zero-dimensional sheaf of the given
    ``length``.  ``BIDEGREE``: O(twist, twist2) on Q_2 = P^1 x P^1 only.
    """

    kind: Kind
    twist: int = 0
    label: int = 0
    length: int = 0
    twist2: int = 0

    def twisted(self, k: int) -> "Generator":
        if self.kind is Kind.SKYSCRAPER or k == 0:
            return self
        if self.kind is Kind.BIDEGREE:
            return Generator(self.kind, self.twist + k, twist2=self.twist2 + k)
        return Generator(self.kind, self.twist + k, self.label)

    def validate(self, n: int) -> None:
        if self.kind is Kind.SPINOR and self.label not in spinor_labels(n):
            expected = "S" if n % 2 else "S1 or S2"
            raise StructuralError(f"invalid spinor label {self.label} on Q{n}; expected {expected}")
        if self.kind is Kind.SKYSCRAPER and self.length < 1:
            raise StructuralError(f"skyscraper length must be >= 1, got {self.length}")
        if self.kind is Kind.BIDEGREE and n != 2:
            raise StructuralError(f"bidegree line bundles only exist on Q2, not Q{n}")

    def rank(self, n: int) -> int:
        if self.kind is Kind.SPINOR:
            return 2 ** ((n - 1) // 2)
        if self.kind is Kind.SKYSCRAPER:
            return 0
        return 1

    def __str__(self):
        return generator_text(self)


def line(a: int = 0) -> Generator:
    return Generator(Kind.LINE, a)


def spinor(label: int = ODD_LABEL, a: int = 0) -> Generator:
    return Generator(Kind.SPINOR, a, label)


def skyscraper(length: int = 1) -> Generator:
    return Generator(Kind.SKYSCRAPER, length=length)


def bidegree(a: int, b: int) -> Generator:
    return Generator(Kind.BIDEGREE, a, twist2=b)


def generator_text(g: Generator) -> str:
    if g.kind is Kind.SKYSCRAPER:
        return f"Pt[{g.length}]"
    if g.kind is Kind.BIDEGREE:
        return f"O({g.twist},{g.twist2})"
    head = "O" if g.kind is Kind.LINE else ("S" if g.label == ODD_LABEL else f"S{g.label}")
    return head if g.twist == 0 else f"{head}({g.twist})"


# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """Direct sum of generators (a multiset, kept as a tuple)."""

    n: int
    gens: tuple[Generator, ...] = ()


@dataclass(frozen=True)
class Sum:
    n: int
    children: tuple["SheafExpr", ...]


@dataclass(frozen=True)
class Twist:
    n: int
    child: "SheafExpr"
    k: int


@dataclass(frozen=True)
class Quotient:
    """Cokernel of an injection ``sub -> mid``."""

    n: int
    sub: "SheafExpr"
    mid: "SheafExpr"


@dataclass(frozen=True)
class Restrict:
    """Restriction of ``child`` (on Q_{n+1}) to a hyperplane section Q_n."""

    n: int
    child: "SheafExpr"


SheafExpr = Union[Atom, Sum, Twist, Quotient, Restrict]


def atom(n: int, *gens: Generator) -> Atom:
    return Atom(n, tuple(gens))


def children(expr: SheafExpr) -> tuple[SheafExpr, ...]:
    if isinstance(expr, Sum):
        return expr.children
    if isinstance(expr, (Twist, Restrict)):
        return (expr.child,)
    if isinstance(expr, Quotient):
        return (expr.sub, expr.mid)
    return ()


def check(expr: SheafExpr) -> None:
    """Raise :class:`StructuralError` unless ``expr`` is well formed."""
    Quadric(expr.n)
    if isinstance(expr, Atom):
        for g in expr.gens:
            g.validate(expr.n)
        return
    if isinstance(expr, Restrict):
        if expr.child.n != expr.n + 1:
            raise StructuralError(
                f"restriction to Q{expr.n} needs a child on Q{expr.n + 1}, got Q{expr.child.n}"
            )
    else:
        for c in children(expr):
            if c.n != expr.n:
                raise StructuralError(f"mixed quadric dimensions: Q{expr.n} and Q{c.n}")
    for c in children(expr):
        check(c)
    if isinstance(expr, Quotient) and rank(expr.sub) > rank(expr.mid):
        raise StructuralError(
            f"quotient needs rank(sub) <= rank(mid), got {rank(expr.sub)} > {rank(expr.mid)}"
        )


def rank(expr: SheafExpr) -> int:
    if isinstance(expr, Atom):
        return sum(g.rank(expr.n) for g in expr.gens)
    if isinstance(expr, Sum):
        return sum(rank(c) for c in expr.children)
    if isinstance(expr, (Twist, Restrict)):
        return rank(expr.child)
    return rank(expr.mid) - rank(expr.sub)


def depth(expr: SheafExpr) -> int:
    if isinstance(expr, Atom):
        return 0
    if isinstance(expr, Twist):
        return depth(expr.child)
    return 1 + max(depth(c) for c in children(expr))


def iter_generators(expr: SheafExpr) -> Iterator[Generator]:
    if isinstance(expr, Atom):
        yield from expr.gens
    for c in children(expr):
        yield from iter_generators(c)


def _sort_key(expr: SheafExpr):
    return (type(expr).__name__, repr(expr))


def normalize(expr: SheafExpr) -> SheafExpr:
    """Canonical form: twists pushed into atoms, sums flattened and sorted.

    The cohomology table of the result equals that of the input cell for cell.
    """
    check(expr)
    return _normalize(expr, 0)


def _normalize(expr: SheafExpr, k: int) -> SheafExpr:
    if isinstance(expr, Twist):
        return _normalize(expr.child, k + expr.k)
    if isinstance(expr, Atom):
        return Atom(expr.n, tuple(sorted(g.twisted(k) for g in expr.gens)))
    if isinstance(expr, Quotient):
        return Quotient(expr.n, _normalize(expr.sub, k), _normalize(expr.mid, k))
    if isinstance(expr, Restrict):
        return Restrict(expr.n, _normalize(expr.child, k))
    gens: list[Generator] = []
    rest: list[SheafExpr] = []
    for c in expr.children:
        c = _normalize(c, k)
        if isinstance(c, Atom):
            gens.extend(c.gens)
        elif isinstance(c, Sum):
            for cc in c.children:
                if isinstance(cc, Atom):
                    gens.extend(cc.gens)
                else:
                    rest.append(cc)
        else:
            rest.append(c)
    parts: list[SheafExpr] = sorted(rest, key=_sort_key)
    if gens or not parts:
        parts.insert(0, Atom(expr.n, tuple(sorted(gens))))
    return parts[0] if len(parts) == 1 else Sum(expr.n, tuple(parts))


def is_split(expr: SheafExpr) -> bool:
    """True if the normalized expression is a plain direct sum of generators."""
    return isinstance(normalize(expr), Atom)


def has_finite_support(expr: SheafExpr) -> bool:
    """Structural test for zero-dimensional support (skyscrapers only)."""
    if isinstance(expr, Atom):
        return all(g.kind is Kind.SKYSCRAPER for g in expr.gens)
    if isinstance(expr, Sum):
        return all(has_finite_support(c) for c in expr.children)
    if isinstance(expr, Twist):
        return has_finite_support(expr.child)
    if isinstance(expr, Quotient):
        # sub injects into mid, so a finite mid bounds both
        return has_finite_support(expr.mid)
    # the generic hyperplane misses a finite support
    return has_finite_support(expr.child)


# -- cohomology values -------------------------------------------------------


@dataclass(frozen=True)
class CohomValue:
    """Exact dimension (lo == hi) or a closed interval of possible dimensions."""

    lo: int
    hi: int

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi):
            raise ValueError(f"invalid cohomology interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact_value(cls, v: int) -> "CohomValue":
        return cls(v, v)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.exact:
            raise AmbiguityError(f"cell is the interval {self}")
        return self.lo

    @property
    def is_zero(self) -> bool:
        return self.hi == 0

    @property
    def is_nonzero(self) -> bool:
        return self.lo > 0

    def __add__(self, other: "CohomValue") -> "CohomValue":
        return CohomValue(self.lo + other.lo, self.hi + other.hi)

    def scaled(self, k: int) -> "CohomValue":
        return CohomValue(self.lo * k, self.hi * k)

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __str__(self):
        return str(self.lo) if self.exact else f"{self.lo}..{self.hi}"


ZERO = CohomValue(0, 0)


def exact(v: int) -> CohomValue:
    return CohomValue(v, v)


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A cohomology cell h^i(F(t)), or h^i(F(t) (x) spinor ``label``) if label is set."""

    i: int
    t: int
    value: CohomValue
    label: Optional[int] = None

    def describe(self) -> str:
        tensor = "" if self.label is None else f" (x) {_label_text(self.label)}"
        return f"h^{self.i}(F({self.t}){tensor}) = {self.value}"


def _label_text(label: int) -> str:
    return "S" if label == ODD_LABEL else f"S{label}"


@dataclass
class QregCheck:
    """Outcome of testing one regularity condition at a fixed m."""

    ok: bool
    m: int
    witnesses: list[Witness] = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass
class QregReport:
    """``value`` is an int, ``NEG_INF``, or None when ambiguous (see ``bracket``)."""

    value: Union[int, float, None]
    witnesses: list[Witness] = field(default_factory=list)
    bracket: Optional[tuple[int, int]] = None
    kind: str = "qreg"

    @property
    def ambiguous(self) -> bool:
        return self.value is None

    def __str__(self):
        if self.value is None:
            return f"{self.kind} ambiguous in [{self.bracket[0]}, {self.bracket[1]}]"
        if self.value == NEG_INF:
            return f"{self.kind} = -inf"
        return f"{self.kind} = {self.value}"


RegReport = QregReport


@dataclass
class SplitReport:
    verdict: str  # "split" | "obstructed" | "ambiguous"
    decomposition: tuple[Generator, ...] = ()
    witness: Optional[Witness] = None
    cells: list[Witness] = field(default_factory=list)
    window: Optional[tuple[int, int]] = None
    reason: str = ""

    @property
    def satisfied(self) -> bool:
        return self.verdict == "split"

    def __str__(self):
        if self.verdict == "split":
            return "Split: " + " + ".join(map(str, self.decomposition))
        if self.verdict == "obstructed":
            where = self.witness.describe() if self.witness else self.reason
            return f"Obstructed: {where}"
        return f"Ambiguous: {len(self.cells)} interval cell(s)"
