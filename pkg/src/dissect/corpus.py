"""Seeded random arrangement generators for tests and experiment scripts."""
from __future__ import annotations

import random
from fractions import Fraction

from .builders import (
    CentralSpec,
    DuplicateHyperplane,
    HyperplaneSpec,
    NotCellular2D,
    ParallelNormals,
    ToricSpec,
    build_hyperplane,
    build_toric,
)
from .closedforms import RankCensus

SMALL_RATIONALS = [Fraction(p, q) for q in (1, 2, 3) for p in range(-3, 4)]


def random_hyperplane_spec(rng: random.Random, max_dim: int = 3, max_n: int = 7) -> HyperplaneSpec:
    """Small-coefficient arrangement; coincidences (parallel, concurrent) are common."""
    l = rng.randint(1, max_dim)
    n = rng.randint(1, max_n)
    hs, keys = [], set()
    while len(hs) < n:
        normal = [rng.randint(-2, 2) for _ in range(l)]
        if not any(normal):
            continue
        offset = rng.choice(SMALL_RATIONALS) if rng.random() < 0.7 else Fraction(0)
        lead = next(c for c in normal if c)
        key = tuple(Fraction(c, lead) for c in normal) + (offset / lead,)
        if key in keys:
            if l == 1 and len(keys) >= 13:
                break
            continue
        keys.add(key)
        hs.append((normal, offset))
    return HyperplaneSpec(l, hs)


def random_toric_spec(rng: random.Random, n_range=(2, 4), max_entry: int = 3) -> ToricSpec:
    """Random cellular arrangement on T^2, possibly with imprimitive covectors."""
    offsets = [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4)]
    while True:
        n = rng.randint(*n_range)
        hs = []
        for _ in range(n):
            cov = [0, 0]
            while not any(cov):
                cov = [rng.randint(-max_entry, max_entry) for _ in range(2)]
            hs.append((cov, rng.choice(offsets)))
        try:
            spec = ToricSpec(2, hs)
            build_toric(spec)
        except (DuplicateHyperplane, NotCellular2D):
            continue
        return spec


def generic_lines(rng: random.Random, n: int, l: int = 2) -> HyperplaneSpec:
    """Hyperplanes with random rational coefficients in absolute general position.

    Genericity is verified by the flat census ``a_j == C(n, l - j)``.
    """
    from math import comb

    want = tuple(comb(n, l - j) for j in range(l + 1))
    while True:
        hs = [([Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(l)],
               Fraction(rng.randint(-40, 40), rng.randint(1, 9))) for _ in range(n)]
        if any(not any(h[0]) for h in hs):
            continue
        try:
            spec = HyperplaneSpec(l, hs)
        except DuplicateHyperplane:
            continue
        if RankCensus.of(build_hyperplane(spec)).a == want:
            return spec


def generic_central(rng: random.Random, n: int, l: int = 2) -> CentralSpec:
    """n central hyperplanes in R^(l+1) with every l+1 of them independent."""
    from itertools import combinations

    from .exactmath import rank

    while True:
        normals = [[Fraction(rng.randint(-9, 9)) for _ in range(l + 1)] for _ in range(n)]
        k = min(n, l + 1)
        if all(rank([normals[i] for i in idx]) == k for idx in combinations(range(n), k)):
            try:
                return CentralSpec(l, normals)
            except ParallelNormals:
                continue
