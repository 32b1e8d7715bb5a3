"""Annotated intersection posets and the counting formulas built on them.

An :class:`ArrangementModel` is the intersection poset of an arrangement
(ordered by reverse inclusion, so the ambient space is the minimum) whose
nodes carry the compactly supported Poincaré polynomial of the flat.  Every
count in this module is a Möbius-weighted sum over that poset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Mapping

from .exactmath import IntPolynomial, poly_evaluate
from .poset import Poset, interval_subposet, is_boolean, is_geometric_lattice

FAMILIES = ("hyperplane", "toric", "sphere", "projective", "circle", "abstract")


class ArrangementError(ValueError):
    pass


class NegativeCount(ArrangementError):
    """A face count came out negative: the model is not cellular."""


class PreconditionFailed(ArrangementError):
    pass


class MissingAssignment(ArrangementError):
    pass


class NotAChain(ArrangementError):
    pass


class InvalidModel(ArrangementError):
    pass


@dataclass(frozen=True)
class FlatNode:
    id: str
    dim: int
    poin_c: IntPolynomial
    handle: Any = None

    @property
    def kappa(self) -> int:
        return poly_evaluate(self.poin_c, -1)


@dataclass(eq=False)
class ArrangementModel:
    ambient_dim: int
    poset: Poset
    flats: dict[str, FlatNode]
    family: str = "abstract"
    asserted_cellular: bool = False
    source: Any = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidModel(f"unknown family {self.family!r}")
        validate_model(self)

    @property
    def X(self) -> str:
        return self.poset.bottom

    @cached_property
    def mobius(self) -> dict:
        return self.poset.mobius

    def mu(self, x, y) -> int:
        return self.mobius.get((x, y), 0)

    def kappa(self, y) -> int:
        return self.flats[y].kappa

    def dim(self, y) -> int:
        return self.flats[y].dim

    def ordered(self) -> list[str]:
        return sorted(self.poset.elements, key=self.poset.sort_key)

    def __repr__(self):
        return f"ArrangementModel({self.family}, l={self.ambient_dim}, {len(self.flats)} flats)"


def validate_model(m: ArrangementModel) -> None:
    if set(m.flats) != set(m.poset.elements):
        raise InvalidModel("flat table and poset elements differ")
    bottom = m.flats[m.poset.bottom]
    if bottom.dim != m.ambient_dim:
        raise InvalidModel(f"minimum {bottom.id!r} has dim {bottom.dim}, expected {m.ambient_dim}")
    for y, node in m.flats.items():
        if node.dim < 0 or node.dim > m.ambient_dim:
            raise InvalidModel(f"{y!r}: dim {node.dim} out of range")
        if node.poin_c.degree > node.dim:
            raise InvalidModel(f"{y!r}: Poin_c degree exceeds dim {node.dim}")
        if m.poset.rank_of[y] != m.ambient_dim - node.dim:
            raise InvalidModel(f"{y!r}: rank {m.poset.rank_of[y]} is not codimension {m.ambient_dim - node.dim}")


def model_from_flats(ambient_dim, flats: list[FlatNode], relations, family="abstract", **kw) -> ArrangementModel:
    """Assemble a model from nodes and ``(lower, upper)`` order pairs."""
    from .poset import build_poset

    poset = build_poset([f.id for f in flats], relations)
    return ArrangementModel(ambient_dim, poset, {f.id: f for f in flats}, family, **kw)


# ---------------------------------------------------------------------------
# counting


def generalized_char_poly(m: ArrangementModel) -> IntPolynomial:
    """``sum_Y μ(X, Y) Poin_c(Y, t)``."""
    x = m.X
    out = IntPolynomial()
    for y in m.ordered():
        out = out + m.flats[y].poin_c * m.mu(x, y)
    return out


def classical_char_poly(m: ArrangementModel) -> IntPolynomial:
    """``sum_Y μ(X, Y) t^dim Y``, the hyperplane-arrangement version."""
    x = m.X
    out = IntPolynomial()
    for y in m.ordered():
        out = out + IntPolynomial.monomial(m.dim(y), m.mu(x, y))
    return out


def restriction_chambers(m: ArrangementModel, y: str) -> int:
    """Number of chambers of the arrangement induced on the flat ``y``.

    ``(-1)^dim Y sum_{Z >= Y} μ(Y, Z) κ(Z)``; raises NegativeCount when the
    sum is negative.
    """
    total = sum(m.mu(y, z) * m.kappa(z) for z in m.poset.up[y])
    count = (-1) ** m.dim(y) * total
    if count < 0:
        raise NegativeCount(f"flat {y!r} gives chamber count {count}")
    return count


def chamber_count(m: ArrangementModel) -> int:
    return restriction_chambers(m, m.X)


def f_vector(m: ArrangementModel) -> list[int]:
    """Face numbers ``[f_0, ..., f_l]``: f_k sums the chambers of every k-dim flat."""
    f = [0] * (m.ambient_dim + 1)
    for y in m.ordered():
        f[m.dim(y)] += restriction_chambers(m, y)
    return f


def f_polynomial(m: ArrangementModel) -> IntPolynomial:
    """``sum_k f_k x^(l-k)``."""
    return f_polynomial_from_vector(f_vector(m))


def f_polynomial_from_vector(f) -> IntPolynomial:
    l = len(f) - 1
    return IntPolynomial(tuple(f[l - d] for d in range(l + 1)))


def _intervals(m: ArrangementModel):
    p = m.poset
    for y in p.elements:
        for z in p.up[y]:
            yield y, z


def all_intervals_geometric(m: ArrangementModel) -> bool:
    return all(is_geometric_lattice(interval_subposet(m.poset, y, z)) for y, z in _intervals(m))


def is_simple(m: ArrangementModel) -> bool:
    """Every interval of the intersection poset is Boolean."""
    return all(is_boolean(interval_subposet(m.poset, y, z)) for y, z in _intervals(m))


def f_polynomial_geometric(m: ArrangementModel, check: bool = True) -> IntPolynomial:
    """f-polynomial using sign alternation of μ on geometric intervals.

    ``sum_Z κ(Z) sum_{Y <= Z} (-1)^dim Z |μ(Y, Z)| x^(l - dim Y)``.
    """
    if check and not all_intervals_geometric(m):
        raise PreconditionFailed("some interval of the intersection poset is not a geometric lattice")
    l = m.ambient_dim
    out = IntPolynomial()
    for z in m.ordered():
        k = m.kappa(z)
        if k == 0:
            continue
        sign = (-1) ** m.dim(z)
        for y in m.poset.down[z]:
            out = out + IntPolynomial.monomial(l - m.dim(y), sign * k * abs(m.mu(y, z)))
    return out


def f_polynomial_simple(m: ArrangementModel, check: bool = True) -> IntPolynomial:
    """f-polynomial of a simple arrangement.

    On a Boolean interval ``[X, Z]`` the sum of ``x^(l - dim Y)`` collapses to
    ``(x + 1)^(l - dim Z)``, leaving ``sum_Z κ(Z) (-1)^dim Z (x + 1)^(l - dim Z)``.
    """
    if check and not is_simple(m):
        raise PreconditionFailed("arrangement is not simple (some interval is not Boolean)")
    l = m.ambient_dim
    x_plus_1 = IntPolynomial((1, 1))
    out = IntPolynomial()
    for z in m.ordered():
        out = out + (x_plus_1 ** (l - m.dim(z))) * (m.kappa(z) * (-1) ** m.dim(z))
    return out


def bayer_sturmfels_fiber(m: ArrangementModel, chain) -> int:
    """Number of face chains mapped onto ``chain`` (length >= 2) by the support map."""
    chain = list(chain)
    if len(chain) < 2:
        raise NotAChain("chain must have at least two flats")
    for y in chain:
        if y not in m.flats:
            raise NotAChain(f"unknown flat {y!r}")
    for a, b in zip(chain, chain[1:]):
        if not m.poset.lt(a, b):
            raise NotAChain(f"{a!r} is not strictly below {b!r}")
    prod = 1
    for a, b in zip(chain, chain[1:]):
        prod *= sum(abs(m.mu(a, z)) for z in m.poset.interval(a, b))
    last = chain[-1]
    return prod * abs(sum(m.mu(last, z) * m.kappa(z) for z in m.poset.up[last]))


# ---------------------------------------------------------------------------
# valuations and simple functions


@dataclass(frozen=True)
class SimpleFunction:
    """Finite rational combination of indicator functions of named sets."""

    terms: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {g: Fraction(c) for g, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def indicator(cls, generator: str) -> SimpleFunction:
        return cls({generator: Fraction(1)})

    def __add__(self, other: SimpleFunction) -> SimpleFunction:
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return SimpleFunction(out)

    def __neg__(self):
        return SimpleFunction({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, r):
        return SimpleFunction({g: c * r for g, c in self.terms.items()})

    __rmul__ = __mul__


@dataclass(frozen=True)
class Valuation:
    """Values of a valuation on generators: ints (κ) or IntPolynomials (ν)."""

    assign: Mapping[str, Any]


def integrate(f: SimpleFunction, v: Valuation):
    """``sum coeff * v(generator)``.

    Returns a Fraction for scalar valuations and an IntPolynomial for
    polynomial ones (ValueError if the polynomial has non-integer coefficients).
    """
    missing = [g for g in f.terms if g not in v.assign]
    if missing:
        raise MissingAssignment(f"no value for generators {sorted(missing)[:5]}")
    polys = any(isinstance(v.assign[g], IntPolynomial) for g in f.terms)
    if not polys:
        return sum((c * v.assign[g] for g, c in f.terms.items()), Fraction(0))
    acc: dict[int, Fraction] = {}
    for g, c in f.terms.items():
        val = v.assign[g]
        if not isinstance(val, IntPolynomial):
            val = IntPolynomial((int(val),))
        for d, a in enumerate(val.coeffs):
            acc[d] = acc.get(d, Fraction(0)) + c * a
    top = max(acc, default=-1)
    coeffs = [acc.get(d, Fraction(0)) for d in range(top + 1)]
    if any(x.denominator != 1 for x in coeffs):
        raise ValueError("integral has non-integer polynomial coefficients")
    return IntPolynomial(tuple(int(x) for x in coeffs))


def complement_indicator(m: ArrangementModel) -> SimpleFunction:
    """Indicator of the union of chambers, ``sum_Y μ(X, Y) I_Y``."""
    x = m.X
    return SimpleFunction({y: Fraction(m.mu(x, y)) for y in m.ordered()})


def kappa_valuation(m: ArrangementModel) -> Valuation:
    return Valuation({y: node.kappa for y, node in m.flats.items()})


def poincare_valuation(m: ArrangementModel) -> Valuation:
    return Valuation({y: node.poin_c for y, node in m.flats.items()})


# ---------------------------------------------------------------------------
# structural checks


def mobius_identity_holds(m: ArrangementModel) -> bool:
    """``sum_{x <= z <= y} μ(x, z) == δ(x, y)`` on every interval."""
    p = m.poset
    for x, y in _intervals(m):
        s = sum(m.mu(x, z) for z in p.interval(x, y))
        if s != (1 if x == y else 0):
            return False
    return True


def mobius_alternates(m: ArrangementModel) -> bool:
    """μ(x, y) is nonzero with sign ``(-1)^(rank y - rank x)``."""
    r = m.poset.rank_of
    return all(m.mu(x, y) * (-1) ** (r[y] - r[x]) > 0 for x, y in _intervals(m))


def euler_relation_holds(m: ArrangementModel) -> bool:
    f = f_vector(m)
    return sum((-1) ** k * fk for k, fk in enumerate(f)) == m.kappa(m.X)


def structural_report(m: ArrangementModel) -> dict[str, bool]:
    return {
        "mobius_identity": mobius_identity_holds(m),
        "geometric_intervals": all_intervals_geometric(m),
        "mobius_alternates": mobius_alternates(m),
        "euler_relation": euler_relation_holds(m),
    }


def report(m: ArrangementModel) -> dict:
    """JSON-ready summary of the counts."""
    return {
        "char_poly": generalized_char_poly(m).to_list(),
        "chambers": chamber_count(m),
        "f_vector": f_vector(m),
    }
