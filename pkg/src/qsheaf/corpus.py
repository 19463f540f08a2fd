"""Seeded random split bundles for regression suites."""

from __future__ import annotations

import random

from .core import Atom, Generator, Kind, spinor_labels


def random_generator(rng: random.Random, n: int, twists=(-4, 4), spinors: bool = True) -> Generator:
    a = rng.randint(*twists)
    if spinors and rng.random() < 0.5:
        return Generator(Kind.SPINOR, a, rng.choice(spinor_labels(n)))
    return Generator(Kind.LINE, a)


def random_split_bundle(
    rng: random.Random, n: int, max_summands: int = 5, twists=(-4, 4), spinors: bool = True
) -> Atom:
    k = rng.randint(1, max_summands)
    gens = tuple(sorted(random_generator(rng, n, twists, spinors) for _ in range(k)))
    return Atom(n, gens)


def random_bidegree_sum(rng: random.Random, max_summands: int = 4, twists=(-4, 4)) -> Atom:
    k = rng.randint(1, max_summands)
    gens = tuple(
        sorted(Generator(Kind.BIDEGREE, rng.randint(*twists), twist2=rng.randint(*twists)) for _ in range(k))
    )
    return Atom(2, gens)


def corpus(seed: int, per_n: int, dims=range(3, 7), **kw) -> list[Atom]:
    rng = random.Random(seed)
    return [random_split_bundle(rng, n, **kw) for n in dims for _ in range(per_n)]
