"""Brute-force validators that share no code path with the closed forms."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .core import AmbiguityError


@lru_cache(maxsize=None)
def monomial_h0(n: int, t: int) -> int:
    """dim of degree-t part of k[x_0..x_{n+1}] / (q), by enumerating standard monomials.

    Take q with leading term x_0^2 under lex order.  A single polynomial is a
    Groebner basis of its ideal, so the standard monomials are exactly those in
    which x_0 appears at most once.
    """
    if t < 0:
        return 0
    return sum(1 for mono in combinations_with_replacement(range(n + 2), t) if mono.count(0) <= 1)


def _chi_projective(N: int, t: int) -> int:
    # polynomial binomial C(t+N, N), valid for negative t as well
    num = 1
    for j in range(N):
        num *= t + N - j
    den = 1
    for j in range(1, N + 1):
        den *= j
    return num // den


def euler_via_ambient(n: int, t: int) -> int:
    """chi(Q_n, O(t)) from 0 -> O_P(t-2) -> O_P(t) -> O_Q(t) -> 0 on P^{n+1}."""
    return _chi_projective(n + 1, t) - _chi_projective(n + 1, t - 2)


def serre_check(table, dual_table, n: int, window: Optional[tuple[int, int]] = None) -> bool:
    """h^i(F(t)) == h^{n-i}(F^v(-n-t)) on every cell of the window."""
    lo, hi = window or table.window
    for i in range(n + 1):
        for t in range(lo, hi + 1):
            a = table.query(i, t)
            b = dual_table.query(n - i, -n - t)
            if not (a.exact and b.exact):
                raise AmbiguityError(f"interval cell at i={i}, t={t}")
            if a.lo != b.lo:
                return False
    return True


def les_brute_force(dims: Sequence[Optional[int]], cap: int = 12) -> Optional[list[set[int]]]:
    """Enumerate all rank assignments of a long exact sequence.

    ``dims`` holds known dimensions or None for unknowns.  Unknown dimensions
    are only bounded by ``cap`` on each rank.  Returns, per slot, the set of
    dimensions reached by some valid assignment; None if there is none.
    """
    m = len(dims)
    reached: list[set[int]] = [set() for _ in range(m)]
    found = False
    ranks: list[int] = []

    def walk(k: int, prev: int) -> None:
        nonlocal found
        if k == m:
            if prev == 0:
                found = True
                total = [0] + ranks
                for j in range(m):
                    reached[j].add(total[j] + total[j + 1])
            return
        if k == m - 1:
            options = [0]
        elif dims[k] is not None:
            options = [dims[k] - prev]
        else:
            options = range(cap + 1)
        for r in options:
            if r < 0:
                continue
            if dims[k] is not None and prev + r != dims[k]:
                continue
            ranks.append(r)
            walk(k + 1, r)
            ranks.pop()

    walk(0, 0)
    return reached if found else None

