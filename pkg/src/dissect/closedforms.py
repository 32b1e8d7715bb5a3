"""Closed-form face counts for simple arrangements.

The census ``a`` is indexed by dimension: ``a[j]`` is the number of
j-dimensional elements of the intersection poset (so for n hyperplanes in
absolute general position ``a[j] = C(n, l - j)``).  Points of a sphere
arrangement are counted individually.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arrangement import ArrangementModel, PreconditionFailed, is_simple


@dataclass(frozen=True)
class RankCensus:
    a: tuple

    @classmethod
    def of(cls, m: ArrangementModel) -> RankCensus:
        a = [0] * (m.ambient_dim + 1)
        for node in m.flats.values():
            a[node.dim] += 1
        return cls(tuple(a))

    def __getitem__(self, j):
        return self.a[j] if 0 <= j < len(self.a) else 0


def _census(a) -> RankCensus:
    return a if isinstance(a, RankCensus) else RankCensus(tuple(a))


def f_simple_hyperplane(a, l: int, k: int) -> int:
    a = _census(a)
    _check_k(l, k)
    return sum(a[j] * comb(l - j, l - k) for j in range(k + 1))


def f_simple_toric(a0: int, l: int, k: int) -> int:
    _check_k(l, k)
    if a0 < 1:
        raise ValueError("a cellular toric arrangement has at least one vertex")
    return a0 * comb(l, l - k)


def f_simple_sphere(a, l: int, k: int) -> int:
    a = _census(a)
    _check_k(l, k)
    return 2 * sum(a[j] * comb(l - j, l - k) for j in range(2, k + 1, 2)) + a[0] * comb(l, k)


def f_buck_projective(n: int, l: int, k: int) -> int:
    _check_k(l, k)
    return sum(comb(n, l - j) * comb(l - j, l - k) for j in range(0, k + 1, 2))


def _check_k(l, k):
    if not 0 <= k <= l:
        raise ValueError(f"k={k} outside 0..{l}")


def closed_form_f_vector(m: ArrangementModel, force: bool = False) -> list[int]:
    """The family's closed form evaluated on ``m``'s census.

    Refuses non-simple models unless ``force`` is set.
    """
    if not force and not is_simple(m):
        raise PreconditionFailed("closed forms hold only for simple arrangements")
    l = m.ambient_dim
    census = RankCensus.of(m)
    if m.family == "hyperplane":
        return [f_simple_hyperplane(census, l, k) for k in range(l + 1)]
    if m.family == "toric":
        return [f_simple_toric(census[0], l, k) for k in range(l + 1)]
    if m.family == "sphere":
        return [f_simple_sphere(census, l, k) for k in range(l + 1)]
    if m.family == "projective":
        n = census[l - 1]
        return [f_buck_projective(n, l, k) for k in range(l + 1)]
    raise PreconditionFailed(f"no closed form for the {m.family} family")
