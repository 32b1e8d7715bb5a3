"""Builders turning concrete geometric input into arrangement models.

Node ids are stable slugs derived from supports: ``flat:X`` is the ambient
space, ``flat:H0.H2`` the flat whose containing hyperplanes are H0 and H2.
Toric components get ``#k`` suffixes, sphere points ``+``/``-``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import ArrangementError, ArrangementModel, FlatNode
from .exactmath import (
    IntPolynomial,
    hermite_normal_form,
    integer_inverse,
    mat_vec,
    rank,
    rref,
    smith_normal_form,
    solve_affine,
)
from .poset import build_poset

DEFAULT_CAP = 20
AMBIENT_ID = "flat:X"


class BuildError(ArrangementError):
    pass


class DuplicateHyperplane(BuildError):
    pass


class ParallelNormals(BuildError):
    pass


class EmptySpec(BuildError):
    pass


class NotCellular2D(BuildError):
    pass


class CapExceeded(BuildError):
    pass


def support_id(support, prefix: str = "H") -> str:
    if not support:
        return AMBIENT_ID
    return "flat:" + ".".join(f"{prefix}{i}" for i in sorted(support))


def _check_cap(n: int, cap: int | None):
    cap = DEFAULT_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"{n} hypersurfaces exceed the cap of {cap}")


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class HyperplaneSpec:
    """Affine hyperplanes ``normal . x == offset`` in R^ambient_dim."""

    ambient_dim: int
    hyperplanes: tuple = ()

    def __post_init__(self):
        hs = tuple(
            (tuple(Fraction(c) for c in normal), Fraction(offset)) for normal, offset in self.hyperplanes
        )
        object.__setattr__(self, "hyperplanes", hs)
        seen = {}
        for i, (normal, offset) in enumerate(hs):
            if len(normal) != self.ambient_dim:
                raise ValueError(f"hyperplane {i}: normal has length {len(normal)}, expected {self.ambient_dim}")
            if not any(normal):
                raise ValueError(f"hyperplane {i}: zero normal")
            key = _hyperplane_key(normal, offset)
            if key in seen:
                raise DuplicateHyperplane(f"hyperplanes {seen[key]} and {i} coincide")
            seen[key] = i

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def is_central(self) -> bool:
        return all(offset == 0 for _, offset in self.hyperplanes)


def _hyperplane_key(normal, offset):
    lead = next(c for c in normal if c != 0)
    return tuple(c / lead for c in normal) + (offset / lead,)


@dataclass(frozen=True)
class ToricSpec:
    """Toric hypersurfaces ``covector . x == offset (mod 1)`` in T^ambient_dim."""

    ambient_dim: int
    hypersurfaces: tuple = ()

    def __post_init__(self):
        hs = tuple((tuple(int(c) for c in cov), Fraction(off) % 1) for cov, off in self.hypersurfaces)
        object.__setattr__(self, "hypersurfaces", hs)
        seen = {}
        for i, (cov, off) in enumerate(hs):
            if len(cov) != self.ambient_dim:
                raise ValueError(f"hypersurface {i}: covector has length {len(cov)}, expected {self.ambient_dim}")
            if not any(cov):
                raise ValueError(f"hypersurface {i}: zero covector")
            lead = next(c for c in cov if c != 0)
            key = (cov, off) if lead > 0 else (tuple(-c for c in cov), (-off) % 1)
            if key in seen:
                raise DuplicateHyperplane(f"hypersurfaces {seen[key]} and {i} coincide")
            seen[key] = i

    @property
    def n(self) -> int:
        return len(self.hypersurfaces)


@dataclass(frozen=True)
class CentralSpec:
    """Central hyperplanes in R^(ambient_dim + 1), read on S^l or RP^l."""

    ambient_dim: int
    normals: tuple = ()

    def __post_init__(self):
        ns = tuple(tuple(Fraction(c) for c in v) for v in self.normals)
        object.__setattr__(self, "normals", ns)
        for i, v in enumerate(ns):
            if len(v) != self.ambient_dim + 1:
                raise ValueError(f"normal {i} has length {len(v)}, expected {self.ambient_dim + 1}")
            if not any(v):
                raise ValueError(f"normal {i} is zero")
        for i, j in itertools.combinations(range(len(ns)), 2):
            if rank([ns[i], ns[j]]) < 2:
                raise ParallelNormals(f"normals {i} and {j} are parallel")

    def hyperplane_spec(self) -> HyperplaneSpec:
        return HyperplaneSpec(self.ambient_dim + 1, tuple((v, 0) for v in self.normals))


SphereSpec = CentralSpec
ProjectiveSpec = CentralSpec


@dataclass(frozen=True)
class CircleSpec:
    """Points on S^1 given as fractions of a full turn."""

    points: tuple = ()

    def __post_init__(self):
        pts = tuple(Fraction(p) % 1 for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise DuplicateHyperplane("circle points must be distinct")


# ---------------------------------------------------------------------------
# hyperplanes


@dataclass(frozen=True)
class AffineFlat:
    """Handle of a hyperplane flat: its defining system and a parametrisation."""

    key: tuple
    support: frozenset
    point: tuple
    directions: tuple = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return len(self.directions)


def _flat_key(rows) -> tuple | None:
    """Canonical rref of an augmented system ``[A | b]``; None if infeasible."""
    if not rows:
        return ()
    r, red, pivots = rref(rows)
    if pivots and pivots[-1] == len(rows[0]) - 1:
        return None
    return tuple(tuple(row) for row in red[:r])


def _contains(hyperplane, point, directions) -> bool:
    normal, offset = hyperplane
    if sum(a * x for a, x in zip(normal, point)) != offset:
        return False
    return all(sum(a * d for a, d in zip(normal, v)) == 0 for v in directions)


def hyperplane_flats(spec: HyperplaneSpec) -> dict[frozenset, AffineFlat]:
    """Every nonempty intersection of hyperplanes, keyed by its support.

    Flats are found by closing the ambient space under intersection with
    single hyperplanes, deduplicated by the canonical rref of their systems.
    """
    l = spec.ambient_dim
    hs = spec.hyperplanes
    by_key: dict[tuple, AffineFlat] = {}
    ambient = AffineFlat((), frozenset(), tuple(Fraction(0) for _ in range(l)),
                         tuple(tuple(Fraction(int(i == j)) for j in range(l)) for i in range(l)))
    by_key[()] = ambient
    frontier = [ambient]
    while frontier:
        nxt = []
        for flat in frontier:
            rows = [list(row) for row in flat.key]
            for i, h in enumerate(hs):
                if i in flat.support:
                    continue
                key = _flat_key(rows + [list(h[0]) + [h[1]]])
                if key is None or key in by_key:
                    continue
                sol = solve_affine([row[:-1] for row in key], [row[-1] for row in key], dim=l)
                point, basis = tuple(sol.point), tuple(tuple(v) for v in sol.nullspace_basis)
                support = frozenset(j for j, g in enumerate(hs) if _contains(g, point, basis))
                new = AffineFlat(key, support, point, basis)
                by_key[key] = new
                nxt.append(new)
        frontier = nxt
    return {f.support: f for f in by_key.values()}


def _flat_sort_key(support):
    return (len(support), sorted(support))


def build_hyperplane(spec: HyperplaneSpec, cap: int | None = None) -> ArrangementModel:
    _check_cap(spec.n, cap)
    flats = hyperplane_flats(spec)
    supports = sorted(flats, key=_flat_sort_key)
    nodes = [
        FlatNode(support_id(s), flats[s].dim, IntPolynomial.monomial(flats[s].dim), flats[s])
        for s in supports
    ]
    relations = [(support_id(a), support_id(b)) for a in supports for b in supports if a < b]
    poset = build_poset([n.id for n in nodes], relations)
    return ArrangementModel(spec.ambient_dim, poset, {n.id: n for n in nodes}, "hyperplane", source=spec)


# ---------------------------------------------------------------------------
# toric


@dataclass(frozen=True)
class TorusComponent:
    """A coset ``witness + span(directions)`` of a subtorus of T^l.

    ``lattice`` is the Hermite basis of the integer covectors vanishing on the
    directions; ``coset`` is ``lattice @ witness mod 1``.  Together they
    identify the component.
    """

    lattice: tuple
    coset: tuple
    witness: tuple = field(compare=False)
    directions: tuple = field(compare=False)
    support: frozenset = field(default=frozenset(), compare=False)

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def key(self):
        return (self.lattice, self.coset)

    def contains_point(self, x) -> bool:
        return all((sum(c * xi for c, xi in zip(row, x)) - v).denominator == 1
                   for row, v in zip(self.lattice, self.coset))

    def contains(self, other: TorusComponent) -> bool:
        """``other`` is a subset of this component."""
        for d in other.directions:
            if any(sum(c * di for c, di in zip(row, d)) != 0 for row in self.lattice):
                return False
        return self.contains_point(other.witness)


def torus_components(covectors: Sequence[Sequence[int]], offsets: Sequence[Fraction], l: int) -> list[TorusComponent]:
    """Connected components of ``{x in T^l : A x == b (mod 1)}``.

    With ``U A V = D`` in Smith form and ``x = V y`` the system decouples into
    ``d_i y_i == (U b)_i (mod 1)``.  It is solvable iff rows with ``d_i == 0``
    have integral right-hand side, and then has ``prod d_i`` components.
    """
    if not covectors:
        directions = tuple(tuple(Fraction(int(i == j)) for j in range(l)) for i in range(l))
        return [TorusComponent((), (), tuple(Fraction(0) for _ in range(l)), directions)]
    u, d, v = smith_normal_form(covectors)
    k = len(covectors)
    diag = [d[i][i] for i in range(min(k, l))]
    r = sum(1 for x in diag if x)
    rhs = mat_vec(u, [Fraction(b) for b in offsets])
    if any(rhs[i].denominator != 1 for i in range(r, k)):
        return []
    v_inv = integer_inverse(v)
    lattice_rows = v_inv[:r]  # x -> y_1..y_r
    lattice = tuple(tuple(row) for row in hermite_normal_form(lattice_rows))
    directions = tuple(tuple(Fraction(v[i][j]) for i in range(l)) for j in range(r, l))
    out = []
    for shifts in itertools.product(*(range(diag[i]) for i in range(r))):
        y = [(rhs[i] + shifts[i]) / diag[i] for i in range(r)] + [Fraction(0)] * (l - r)
        x = tuple(sum(Fraction(v[i][j]) * y[j] for j in range(l)) for i in range(l))
        coset = tuple(sum(c * xi for c, xi in zip(row, x)) % 1 for row in lattice)
        out.append(TorusComponent(lattice, coset, x, directions))
    return out


def _torus_poin(dim: int) -> IntPolynomial:
    return IntPolynomial((1, 1)) ** dim


def build_toric(spec: ToricSpec, cap: int | None = None) -> ArrangementModel:
    """Intersection poset of a toric arrangement.

    Subsets are explored depth-first; an infeasible subset prunes all of its
    supersets.  Cellularity is checked when l <= 2 and only asserted above.
    """
    _check_cap(spec.n, cap)
    l = spec.ambient_dim
    hs = spec.hypersurfaces
    found: dict[tuple, TorusComponent] = {}

    def visit(subset: tuple):
        comps = torus_components([hs[i][0] for i in subset], [hs[i][1] for i in subset], l)
        if not comps:
            return
        for c in comps:
            found.setdefault(c.key, c)
        start = subset[-1] + 1 if subset else 0
        for j in range(start, len(hs)):
            visit(subset + (j,))

    visit(())
    comps = []
    for c in found.values():
        support = frozenset(i for i, (cov, off) in enumerate(hs) if _hypersurface_contains(cov, off, c))
        comps.append(TorusComponent(c.lattice, c.coset, c.witness, c.directions, support))

    comps.sort(key=lambda c: (-c.dim, sorted(c.support), c.coset, c.lattice))
    ids = {}
    counter: dict = {}
    for c in comps:
        base = support_id(c.support, "N")
        if c.support:
            k = counter.get(base, 0)
            counter[base] = k + 1
            ids[c.key] = f"{base}#{k}"
        else:
            ids[c.key] = base
    # drop the '#0' suffix when a support has a single component
    for c in comps:
        base = support_id(c.support, "N")
        if c.support and counter[base] == 1:
            ids[c.key] = base

    nodes = [FlatNode(ids[c.key], c.dim, _torus_poin(c.dim), c) for c in comps]
    relations = [
        (ids[a.key], ids[b.key])
        for a in comps for b in comps
        if a.key != b.key and a.dim > b.dim and a.contains(b)
    ]
    poset = build_poset([n.id for n in nodes], relations)
    model = ArrangementModel(l, poset, {n.id: n for n in nodes}, "toric",
                             asserted_cellular=l > 2, source=spec)
    if l <= 2:
        _check_toric_cellular(model)
    return model


def _hypersurface_contains(cov, off, comp: TorusComponent) -> bool:
    if any(sum(c * d for c, d in zip(cov, vec)) != 0 for vec in comp.directions):
        return False
    return (sum(c * x for c, x in zip(cov, comp.witness)) - off).denominator == 1


def _check_toric_cellular(m: ArrangementModel):
    vertices = [y for y, n in m.flats.items() if n.dim == 0]
    if not vertices:
        raise NotCellular2D("the arrangement has no vertex, so the torus is not cut into cells")
    for y, node in m.flats.items():
        if node.dim == 1 and not any(m.poset.leq(y, v) for v in vertices):
            raise NotCellular2D(f"{y} contains no vertex")


# ---------------------------------------------------------------------------
# spheres and projective spaces


def _central_nodes(spec: CentralSpec):
    flats = hyperplane_flats(spec.hyperplane_spec())
    supports = sorted((s for s, f in flats.items() if f.dim >= 1), key=_flat_sort_key)
    return flats, supports


def _ray_sign(direction) -> int:
    lead = next(c for c in direction if c != 0)
    return 1 if lead > 0 else -1


def build_sphere(spec: CentralSpec, cap: int | None = None) -> ArrangementModel:
    """Great-subsphere arrangement cut out of S^l by central hyperplanes.

    A central flat of dim d >= 2 is one sphere S^(d-1); a line meets S^l in two
    points, which become separate nodes tagged ``+`` and ``-`` by the sign of
    the first nonzero coordinate of the ray.
    """
    _check_cap(len(spec.normals), cap)
    flats, supports = _central_nodes(spec)
    nodes = []
    members: dict[frozenset, list[str]] = {}
    for s in supports:
        f = flats[s]
        sid = support_id(s)
        if f.dim == 1:
            ray = f.directions[0]
            ray = ray if _ray_sign(ray) > 0 else tuple(-c for c in ray)
            members[s] = []
            for sign, tag in ((1, "+"), (-1, "-")):
                nid = sid + tag
                nodes.append(FlatNode(nid, 0, IntPolynomial((1,)), (f, tuple(sign * c for c in ray))))
                members[s].append(nid)
        else:
            m = f.dim - 1
            nodes.append(FlatNode(sid, m, IntPolynomial((1,)) + IntPolynomial.monomial(m), (f, None)))
            members[s] = [sid]
    relations = [
        (x, y) for a in supports for b in supports if a < b
        for x in members[a] for y in members[b]
    ]
    poset = build_poset([n.id for n in nodes], relations)
    return ArrangementModel(spec.ambient_dim, poset, {n.id: n for n in nodes}, "sphere", source=spec)


def _projective_poin(m: int) -> IntPolynomial:
    if m % 2:
        return IntPolynomial((1,)) + IntPolynomial.monomial(m)
    return IntPolynomial((1,))


def build_projective(spec: CentralSpec, cap: int | None = None) -> ArrangementModel:
    """Projective hyperplane arrangement in RP^l.

    A central flat of dim d becomes RP^(d-1); over the rationals its compactly
    supported cohomology is 1 + t^m for odd m and 1 for even m.
    """
    _check_cap(len(spec.normals), cap)
    flats, supports = _central_nodes(spec)
    nodes = [
        FlatNode(support_id(s), flats[s].dim - 1, _projective_poin(flats[s].dim - 1), flats[s])
        for s in supports
    ]
    relations = [(support_id(a), support_id(b)) for a in supports for b in supports if a < b]
    poset = build_poset([n.id for n in nodes], relations)
    return ArrangementModel(spec.ambient_dim, poset, {n.id: n for n in nodes}, "projective", source=spec)


# ---------------------------------------------------------------------------
# circle


def build_circle(spec: CircleSpec) -> ArrangementModel:
    if not spec.points:
        raise EmptySpec("a circle arrangement needs at least one point")
    nodes = [FlatNode(AMBIENT_ID, 1, IntPolynomial((1, 1)), None)]
    order = sorted(range(len(spec.points)), key=lambda i: spec.points[i])
    for i in order:
        nodes.append(FlatNode(f"flat:p{i}", 0, IntPolynomial((1,)), spec.points[i]))
    relations = [(AMBIENT_ID, n.id) for n in nodes[1:]]
    poset = build_poset([n.id for n in nodes], relations)
    return ArrangementModel(1, poset, {n.id: n for n in nodes}, "circle", source=spec)


def build(spec, cap: int | None = None) -> ArrangementModel:
    """Dispatch on spec type; CentralSpec defaults to the sphere reading."""
    if isinstance(spec, HyperplaneSpec):
        return build_hyperplane(spec, cap)
    if isinstance(spec, ToricSpec):
        return build_toric(spec, cap)
    if isinstance(spec, CircleSpec):
        return build_circle(spec)
    if isinstance(spec, CentralSpec):
        return build_sphere(spec, cap)
    raise TypeError(f"no builder for {type(spec).__name__}")
