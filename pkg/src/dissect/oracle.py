"""Brute-force face enumeration used as ground truth for the formulas.

Nothing here touches Möbius functions or Poincaré polynomials: faces of a
hyperplane arrangement are the feasible sign vectors, found by exact
Fourier-Motzkin feasibility tests.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .builders import CapExceeded, HyperplaneSpec, NotCellular2D, ToricSpec, support_id
from .exactmath import fm_feasible, primitive, rank, solve_affine

DEFAULT_ORACLE_CAP = 12
SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}


class OracleError(ValueError):
    pass


class NotCentral(OracleError):
    pass


class OddPairing(OracleError):
    pass


class NotCellular(OracleError):
    pass


class NotAChain(OracleError):
    pass


def oracle_cap() -> int:
    env = os.environ.get("DISSECT_CAP")
    return int(env) if env else DEFAULT_ORACLE_CAP


def sign_string(sv: tuple) -> str:
    return "".join(SIGN_CHARS[s] for s in sv)


def face_le(f: tuple, g: tuple) -> bool:
    """``f`` lies in the closure of ``g``."""
    return all(a == 0 or a == b for a, b in zip(f, g))


@dataclass
class FacePoset:
    """Faces of a hyperplane arrangement as sign vectors, in lexicographic order."""

    spec: HyperplaneSpec
    faces: list
    dim_of: dict
    psi: dict

    def __len__(self):
        return len(self.faces)

    def le(self, f, g) -> bool:
        return face_le(f, g)

    def chambers(self) -> list:
        return [f for f in self.faces if 0 not in f]


def _feasible(hyperplanes, signs: tuple, dim: int) -> bool:
    eqs, ineqs = [], []
    for (normal, offset), s in zip(hyperplanes, signs):
        if s == 0:
            eqs.append((normal, offset))
        else:
            ineqs.append((normal, offset, s))
    return fm_feasible(eqs, ineqs, dim=dim)


def enumerate_faces(spec: HyperplaneSpec, cap: int | None = None) -> FacePoset:
    """All feasible sign vectors of ``spec``.

    Candidates are grown one hyperplane at a time; a prefix that is already
    infeasible cannot be completed, so its subtree of the 3^n cube is skipped.
    """
    cap = oracle_cap() if cap is None else cap
    if spec.n > cap:
        raise CapExceeded(
            f"face enumeration over {spec.n} hyperplanes exceeds the cap of {cap}; set DISSECT_CAP to raise it"
        )
    hs = spec.hyperplanes
    partial = [()]
    for i in range(spec.n):
        partial = [p + (s,) for p in partial for s in (-1, 0, 1) if _feasible(hs[: i + 1], p + (s,), spec.ambient_dim)]
    faces = sorted(partial)
    dim_of, psi = {}, {}
    for f in faces:
        zeros = [i for i, s in enumerate(f) if s == 0]
        dim_of[f] = spec.ambient_dim - (rank([hs[i][0] for i in zeros]) if zeros else 0)
        psi[f] = support_id(zeros)
    return FacePoset(spec, faces, dim_of, psi)


def oracle_f_vector(fp: FacePoset) -> list[int]:
    f = [0] * (fp.spec.ambient_dim + 1)
    for face in fp.faces:
        f[fp.dim_of[face]] += 1
    return f


def _zero_set(flat_id: str, fp: FacePoset) -> frozenset | None:
    for face in fp.faces:
        if fp.psi[face] == flat_id:
            return frozenset(i for i, s in enumerate(face) if s == 0)
    return None


def fiber_count_direct(fp: FacePoset, chain) -> int:
    """Count face chains ``F_1, ..., F_k`` with ``psi(F_i) = Y_i`` and each
    ``F_(i+1)`` in the closure of ``F_i``."""
    chain = list(chain)
    if not chain:
        raise NotAChain("empty chain")
    zsets = [_zero_set(y, fp) for y in chain]
    for y, z in zip(chain, zsets):
        if z is None:
            raise NotAChain(f"no face maps to {y!r}")
    for a, b in zip(zsets, zsets[1:]):
        if not a < b:
            raise NotAChain("chain is not strictly increasing")
    layers = [[f for f in fp.faces if fp.psi[f] == y] for y in chain]
    counts = {f: 1 for f in layers[-1]}
    for layer in reversed(layers[:-1]):
        counts = {f: sum(c for g, c in counts.items() if face_le(g, f)) for f in layer}
    return sum(counts.values())


# ---------------------------------------------------------------------------
# torus


def _lattice_solutions(c1, b1, c2, b2) -> set:
    """Points of T^2 on both ``c1.x == b1`` and ``c2.x == b2`` (mod 1)."""
    det = c1[0] * c2[1] - c1[1] * c2[0]
    if det == 0:
        return set()
    bound = [abs(c1[0]) + abs(c1[1]) + 1, abs(c2[0]) + abs(c2[1]) + 1]
    out = set()
    for k1 in range(-bound[0], bound[0] + 1):
        for k2 in range(-bound[1], bound[1] + 1):
            r1, r2 = b1 + k1, b2 + k2
            x = Fraction(r1 * c2[1] - r2 * c1[1], det)
            y = Fraction(c1[0] * r2 - c2[0] * r1, det)
            out.add((x % 1, y % 1))
    return out


def toric_chambers_2d(m) -> int:
    """Chambers of a cellular arrangement on T^2 from Euler's relation V - E + F = 0.

    Vertices are found by solving every pair of hypersurfaces over a box of
    integer shifts; circles are the distinct (primitive covector, level)
    pairs; E counts vertices on each circle.  Only the raw spec is used.
    """
    spec = getattr(m, "source", m)
    if not isinstance(spec, ToricSpec) or spec.ambient_dim != 2:
        raise OracleError("toric_chambers_2d needs a 2-dimensional toric arrangement")
    hs = spec.hypersurfaces
    vertices = set()
    for (c1, b1), (c2, b2) in itertools.combinations(hs, 2):
        vertices |= _lattice_solutions(c1, b1, c2, b2)
    circles = set()
    for cov, off in hs:
        p = primitive(cov)
        g = cov[0] // p[0] if p[0] else cov[1] // p[1]
        levels = [((off + j) / g) % 1 for j in range(g)]
        if p < (0, 0):
            p = (-p[0], -p[1])
            levels = [(-lv) % 1 for lv in levels]
        circles.update((p, lv) for lv in levels)
    edges = 0
    for p, level in circles:
        on = sum(1 for v in vertices if (p[0] * v[0] + p[1] * v[1] - level).denominator == 1)
        if on == 0:
            raise NotCellular2D(f"circle {p}.x = {level} carries no vertex")
        edges += on
    if not circles:
        raise NotCellular2D("empty arrangement does not cut the torus into cells")
    return edges - len(vertices)


# ---------------------------------------------------------------------------
# spheres and projective spaces


def quotient_counts(central: FacePoset, mode: str) -> list[int]:
    """Face numbers on S^l or RP^l from the faces of a central arrangement in R^(l+1).

    Each face other than the lineality space is an open cone missing the
    origin, so it meets S^l in one cell of one dimension less and RP^l in
    half of an antipodal pair.  The lineality space itself contributes
    nothing (a point), two 0-cells / one 0-cell (a line), or is not a cell.
    """
    if mode not in ("sphere", "projective"):
        raise ValueError(f"unknown mode {mode!r}")
    spec = central.spec
    if not spec.is_central():
        raise NotCentral("quotient counts need a central arrangement")
    l = spec.ambient_dim - 1
    cones = [0] * (l + 2)
    lineality_cells = 0
    lineality = tuple(0 for _ in range(spec.n))
    for face in central.faces:
        d = central.dim_of[face]
        if face != lineality:
            cones[d] += 1
        elif d >= 2:
            raise NotCellular(f"the common intersection has dim {d} and meets the quotient in a non-cell")
        elif d == 1:
            lineality_cells = 2 if mode == "sphere" else 1
    if mode == "sphere":
        f = cones[1:]
    else:
        present = set(central.faces)
        for face in central.faces:
            if face != lineality and tuple(-s for s in face) not in present:
                raise OddPairing(f"{sign_string(face)} has no antipode")
        f = [c // 2 for c in cones[1:]]
    f[0] += lineality_cells
    return f


def central_chambers(central: FacePoset) -> int:
    return len(central.chambers())


def witness_point(spec: HyperplaneSpec, face: tuple):
    """Some point on the flat spanned by ``face``'s zero set (None if empty)."""
    zeros = [i for i, s in enumerate(face) if s == 0]
    sol = solve_affine([spec.hyperplanes[i][0] for i in zeros], [spec.hyperplanes[i][1] for i in zeros],
                       dim=spec.ambient_dim)
    return None if sol is None else sol.point
