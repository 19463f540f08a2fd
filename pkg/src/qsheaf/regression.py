"""Fixed regression suite behind ``qsheaf verify-paper``.

Each item returns (name, ok, detail).  Items never raise: an exception is
reported as a failure with its message.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Callable

from .core import Atom, line, spinor, spinor_labels
from .corpus import corpus, random_bidegree_sum, random_split_bundle
from .dsl import parse
from .q2 import hw_regular
from .calculus import ExprTable
from .regularity import check_sandwich, cm_reg, is_qregular, qreg
from .splitting import eg_check

DIMS = range(3, 7)


def _first_spinor(n: int):
    return spinor(spinor_labels(n)[0])


def item_qreg_generators(seed: int):
    bad = []
    for n in DIMS:
        for g in (line(0), _first_spinor(n)):
            e = Atom(n, (g,))
            if qreg(e).value != 0 or is_qregular(e, -1).ok:
                bad.append(f"Q{n} {g}")
    return not bad, "qreg(O) = qreg(S) = 0 on Q3..Q6" if not bad else "wrong: " + ", ".join(bad)


def item_reg_generators(seed: int):
    got = {n: (cm_reg(Atom(n, (line(0),))).value, cm_reg(Atom(n, (_first_spinor(n),))).value) for n in DIMS}
    ok = all(v == (1, 0) for v in got.values())
    return ok, "Reg(O), Reg(S) = " + ", ".join(f"Q{n}:{a},{b}" for n, (a, b) in got.items())


def item_sandwich(seed: int, per_n: int = 25):
    bundles = corpus(seed, per_n, DIMS)
    bad = [b for b in bundles if not check_sandwich(b)["holds"]]
    return not bad, f"{len(bundles) - len(bad)}/{len(bundles)} random bundles"


def item_q2(seed: int, count: int = 30):
    rng = random.Random(seed)
    misses = 0
    for _ in range(count):
        e = random_bidegree_sum(rng)
        t = ExprTable(e)
        for m in range(-5, 6):
            if is_qregular(t, m).ok != hw_regular(t, m, m):
                misses += 1
    return misses == 0, f"{count} bidegree sums, m in [-5, 5], {misses} mismatches"


def item_counterexamples(seed: int):
    p4 = eg_check(parse("Q4: quot(O, S1 + S2)"))
    p5 = eg_check(parse("Q5: quot(O, S)"))
    w4, w5 = p4.witness, p5.witness
    ok = (
        p4.verdict == "obstructed" and (w4.i, w4.t, w4.value.lo) == (3, -4, 1)
        and p5.verdict == "obstructed" and w5.i == 4
    )
    return ok, f"P4: {p4}; P5: {p5}"


def item_round_trip(seed: int, count: int = 50):
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        e = random_split_bundle(rng, rng.randint(3, 6))
        r = eg_check(e)
        if not r.satisfied or Counter(r.decomposition) != Counter(e.gens):
            bad += 1
    return bad == 0, f"{count - bad}/{count} peeled back to their generators"


ITEMS: list[tuple[str, Callable]] = [
    ("qreg of O and spinors", item_qreg_generators),
    ("Reg of O and spinors", item_reg_generators),
    ("sandwich Qreg <= Reg <= Qreg + 1", item_sandwich),
    ("Q2 agrees with bidegree regularity", item_q2),
    ("P4 and P5 obstructions", item_counterexamples),
    ("split round-trips", item_round_trip),
]


def run(seed: int = 0) -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in ITEMS:
        try:
            ok, detail = fn(seed)
        except Exception as exc:  # reported, not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, ok, detail))
    return out
