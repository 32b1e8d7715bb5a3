"""Compare two census conventions for the great-sphere closed form against the oracle.

Convention "dimension" reads a[j] as the number of j-dimensional flats on the
sphere (points counted individually); "rank" reads it as the number of
elements of rank j.  Only one of them reproduces the oracle.
"""
import argparse
import random

from dissect import oracle
from dissect.builders import build_sphere
from dissect.closedforms import RankCensus, f_simple_sphere
from dissect.corpus import generic_central


def rank_census(m):
    a = [0] * (m.ambient_dim + 1)
    for y in m.flats:
        a[m.poset.rank_of[y]] += 1
    return RankCensus(tuple(a))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=5)
    a = ap.parse_args()
    rng = random.Random(a.seed)
    print(f"{'l':>2} {'n':>2}  {'oracle':<18} {'dimension':<18} {'rank':<18}")
    for l in (2, 3):
        for n in range(l, a.max_n + 1):  # fewer than l great spheres leave a non-cell
            spec = generic_central(rng, n, l)
            m = build_sphere(spec)
            want = oracle.quotient_counts(oracle.enumerate_faces(spec.hyperplane_spec()), "sphere")
            by_dim = [f_simple_sphere(RankCensus.of(m), l, k) for k in range(l + 1)]
            by_rank = [f_simple_sphere(rank_census(m), l, k) for k in range(l + 1)]
            mark = lambda v: f"{v}{'' if v == want else ' x'}"
            print(f"{l:>2} {n:>2}  {str(want):<18} {mark(by_dim):<18} {mark(by_rank):<18}")


if __name__ == "__main__":
    main()
