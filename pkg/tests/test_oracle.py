import random
from fractions import Fraction
from itertools import product

import pytest

from dissect import arrangement as arr
from dissect import oracle
from dissect.builders import CapExceeded, CentralSpec, HyperplaneSpec, NotCellular2D, ToricSpec, build_hyperplane, build_toric
from dissect.corpus import random_hyperplane_spec
from dissect.oracle import (
    NotAChain,
    NotCellular,
    NotCentral,
    enumerate_faces,
    fiber_count_direct,
    oracle_f_vector,
    quotient_counts,
    toric_chambers_2d,
)
from dissect.poset import enumerate_chains

AXES = HyperplaneSpec(2, [((1, 0), 0), ((0, 1), 0)])


def brute_faces(spec):
    """All 3^n sign vectors checked one by one, with no prefix pruning."""
    return sorted(s for s in product((-1, 0, 1), repeat=spec.n) if oracle._feasible(spec.hyperplanes, s, spec.ambient_dim))


def test_axes_faces():
    fp = enumerate_faces(AXES)
    assert len(fp) == 9
    assert oracle_f_vector(fp) == [1, 4, 4]
    assert len(fp.chambers()) == 4


@pytest.mark.parametrize("l", [1, 2, 3])
def test_one_hyperplane_three_faces(l):
    spec = HyperplaneSpec(l, [(tuple(int(i == 0) for i in range(l)), 0)])
    fp = enumerate_faces(spec)
    assert [oracle.sign_string(f) for f in fp.faces] == ["-", "0", "+"]


def test_parallel_lines_five_faces():
    fp = enumerate_faces(HyperplaneSpec(2, [((0, 1), 0), ((0, 1), 1)]))
    assert len(fp) == 5
    assert (0, 0) not in fp.faces


def test_f_vector_examples():
    assert oracle_f_vector(enumerate_faces(HyperplaneSpec(2, [((1, 1), 3)]))) == [0, 1, 2]
    gen = HyperplaneSpec(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 1)])
    assert oracle_f_vector(enumerate_faces(gen)) == [3, 9, 7]


def test_oracle_cap(monkeypatch):
    spec = HyperplaneSpec(1, [((1,), i) for i in range(5)])
    with pytest.raises(CapExceeded):
        enumerate_faces(spec, cap=4)
    monkeypatch.setenv("DISSECT_CAP", "3")
    with pytest.raises(CapExceeded):
        enumerate_faces(spec)
    monkeypatch.setenv("DISSECT_CAP", "5")
    assert len(enumerate_faces(spec)) == 11


@pytest.mark.parametrize("seed", range(12))
def test_pruned_search_matches_full_cube(seed):
    spec = random_hyperplane_spec(random.Random(seed), max_n=5)
    assert enumerate_faces(spec).faces == brute_faces(spec)


@pytest.mark.parametrize("seed", range(12))
def test_witness_points_realize_faces(seed):
    spec = random_hyperplane_spec(random.Random(50 + seed), max_n=5)
    for face in enumerate_faces(spec).faces:
        p = oracle.witness_point(spec, face)
        assert p is not None
        for (a, b), s in zip(spec.hyperplanes, face):
            if s == 0:
                assert sum(x * y for x, y in zip(a, p)) == b


# --- ψ -----------------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(15))
def test_psi_is_rank_order_preserving_and_surjective(seed):
    spec = random_hyperplane_spec(random.Random(300 + seed))
    m = build_hyperplane(spec)
    fp = enumerate_faces(spec)
    assert set(fp.psi.values()) == set(m.flats)
    for f in fp.faces:
        assert fp.dim_of[f] == m.dim(fp.psi[f])
    for f, g in product(fp.faces, repeat=2):
        if fp.le(f, g):
            assert m.poset.leq(fp.psi[g], fp.psi[f])


# --- fibers --------------------------------------------------------------------------------

def test_fiber_examples():
    fp = enumerate_faces(AXES)
    assert fiber_count_direct(fp, ["flat:H1", "flat:H0.H1"]) == 2
    assert fiber_count_direct(fp, ["flat:X", "flat:H1"]) == 4
    assert fiber_count_direct(fp, ["flat:H0"]) == 2
    assert fiber_count_direct(fp, ["flat:X", "flat:H0", "flat:H0.H1"]) == 4


def test_fiber_rejects_non_chains():
    fp = enumerate_faces(AXES)
    with pytest.raises(NotAChain):
        fiber_count_direct(fp, ["flat:H0", "flat:H1"])
    with pytest.raises(NotAChain):
        fiber_count_direct(fp, ["flat:H0.H1", "flat:H0"])
    with pytest.raises(NotAChain):
        fiber_count_direct(fp, [])


@pytest.mark.parametrize("seed", range(8))
def test_fiber_matches_formula(seed):
    spec = random_hyperplane_spec(random.Random(400 + seed), max_n=5)
    m = build_hyperplane(spec)
    fp = enumerate_faces(spec)
    for c in enumerate_chains(m.poset, 2):
        if len(c) <= 3:
            assert arr.bayer_sturmfels_fiber(m, c) == fiber_count_direct(fp, c)


# --- torus ---------------------------------------------------------------------------------

def test_toric_oracle_examples():
    m = build_toric(ToricSpec(2, [((1, 2), 0), ((2, 1), 0), ((1, -1), 0)]))
    assert toric_chambers_2d(m) == 6
    assert toric_chambers_2d(build_toric(ToricSpec(2, [((1, 0), 0), ((0, 1), 0)]))) == 1
    assert toric_chambers_2d(build_toric(ToricSpec(2, [((1, 1), 0), ((1, 2), Fraction(1, 2))]))) == 1


def test_toric_oracle_reads_raw_spec():
    spec = ToricSpec(2, [((2, 0), 0), ((0, 1), 0)])
    assert toric_chambers_2d(spec) == 2


def test_toric_oracle_rejects_non_cellular():
    with pytest.raises(NotCellular2D):
        toric_chambers_2d(ToricSpec(2, [((1, 0), 0)]))
    with pytest.raises(oracle.OracleError):
        toric_chambers_2d(build_hyperplane(AXES))


# --- quotients -----------------------------------------------------------------------------

def test_quotient_examples():
    two = CentralSpec(2, [(1, 0, 0), (0, 1, 0)]).hyperplane_spec()
    assert quotient_counts(enumerate_faces(two), "sphere") == [2, 4, 4]
    three = CentralSpec(2, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).hyperplane_spec()
    fp = enumerate_faces(three)
    assert oracle_f_vector(fp) == [1, 6, 12, 8]
    assert quotient_counts(fp, "projective") == [3, 6, 4]
    assert quotient_counts(fp, "sphere") == [6, 12, 8]


def test_quotient_guards():
    one = CentralSpec(2, [(0, 0, 1)]).hyperplane_spec()
    with pytest.raises(NotCellular):
        quotient_counts(enumerate_faces(one), "sphere")
    with pytest.raises(NotCentral):
        quotient_counts(enumerate_faces(HyperplaneSpec(2, [((1, 0), 1)])), "sphere")
    with pytest.raises(ValueError):
        quotient_counts(enumerate_faces(one), "torus")


def test_quotient_with_line_lineality():
    # one line through the origin of R^2 meets S^1 in two antipodal points
    spec = CentralSpec(1, [(1, 0)]).hyperplane_spec()
    fp = enumerate_faces(spec)
    assert quotient_counts(fp, "sphere") == [2, 2]
    assert quotient_counts(fp, "projective") == [1, 1]
