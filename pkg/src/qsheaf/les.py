"""Dimension propagation through long exact sequences.

A long exact sequence ``0 -> V_0 -> V_1 -> ... -> V_{m-1} -> 0`` is exact iff
there are nonnegative integers r_k (the rank of V_k -> V_{k+1}) with

    dim V_k = r_{k-1} + r_k,    r_{-1} = r_{m-1} = 0.

Each slot carries bounds lo_k <= dim V_k <= hi_k (hi_k may be infinite for an
unknown).  The constraint graph is a path, so the set of feasible r_k is the
intersection of what the prefix allows (forward sweep) and what the suffix
allows (backward sweep), and every slot's achievable dimensions form the
interval (F_{k-1} + B_k) intersected with [lo_k, hi_k].  Both sweeps are exact
over the integers, so the returned intervals are the tightest possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import CohomValue, InconsistentTableError, StructuralError

INF = math.inf

Slot = Optional[CohomValue]


@dataclass
class LesInstance:
    slots: list[Slot]
    names: list[str] = field(default_factory=list)
    context: str = ""

    def name(self, k: int) -> str:
        return self.names[k] if k < len(self.names) else f"slot {k}"


def _bounds(slot: Slot) -> tuple[float, float]:
    if slot is None:
        return 0, INF
    return slot.lo, slot.hi


def solve(instance: LesInstance) -> list[CohomValue]:
    """Tightest interval for every slot; raises if no exact ranks exist."""
    bounds = [_bounds(s) for s in instance.slots]
    m = len(bounds)
    if m == 0:
        return []
    # fwd[k] = feasible r_k from slots 0..k; fwd[-1] is r_{-1} = 0
    fwd: list[tuple[float, float]] = []
    lo_prev, hi_prev = 0, 0
    for k, (lo, hi) in enumerate(bounds):
        a, b = max(0, lo - hi_prev), hi - lo_prev
        if a > b:
            raise _infeasible(instance, k)
        fwd.append((a, b))
        lo_prev, hi_prev = a, b
    if fwd[-1][0] > 0:
        raise _infeasible(instance, m - 1)
    # bwd[k] = feasible r_k from slots k+1..m-1; bwd[m-1] = {0}
    bwd: list[tuple[float, float]] = [(0, 0)] * m
    for k in range(m - 1, 0, -1):
        lo, hi = bounds[k]
        a, b = bwd[k]
        na, nb = max(0, lo - b), hi - a
        if na > nb:
            raise _infeasible(instance, k)
        bwd[k - 1] = (na, nb)
    out = []
    for k, (lo, hi) in enumerate(bounds):
        pa, pb = fwd[k - 1] if k > 0 else (0, 0)
        sa, sb = bwd[k]
        a, b = max(lo, pa + sa), min(hi, pb + sb)
        if a > b:
            raise _infeasible(instance, k)
        if b == INF:
            raise StructuralError(f"{instance.name(k)} is unbounded{_where(instance)}")
        out.append(CohomValue(int(a), int(b)))
    return out


def _where(instance: LesInstance) -> str:
    return f" ({instance.context})" if instance.context else ""


def _infeasible(instance: LesInstance, k: int) -> InconsistentTableError:
    return InconsistentTableError(
        f"long exact sequence cannot be exact at {instance.name(k)}{_where(instance)}"
    )


def short_exact(
    sub: Sequence[Slot],
    mid: Sequence[Slot],
    quo: Sequence[Slot],
    context: str = "",
) -> tuple[list[CohomValue], list[CohomValue], list[CohomValue]]:
    """Solve the LES of ``0 -> sub -> mid -> quo -> 0`` given per-degree columns.

    Columns are indexed by cohomological degree; all three must have equal
    length.  Returns the tightened columns in the same order.
    """
    if not (len(sub) == len(mid) == len(quo)):
        raise ValueError("columns of a short exact sequence must have equal length")
    slots: list[Slot] = []
    names: list[str] = []
    for i in range(len(sub)):
        for tag, col in (("sub", sub), ("mid", mid), ("quo", quo)):
            slots.append(col[i])
            names.append(f"h^{i}({tag})")
    res = solve(LesInstance(slots, names, context))
    return res[0::3], res[1::3], res[2::3]
