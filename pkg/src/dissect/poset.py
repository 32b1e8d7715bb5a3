"""Finite graded posets with a unique minimum, and their Möbius functions."""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from fractions import Fraction
from functools import cached_property

from .exactmath import IntPolynomial


class PosetError(ValueError):
    pass


class CycleError(PosetError):
    pass


class NotGraded(PosetError):
    pass


class NoUniqueMinimum(PosetError):
    pass


class NotComparable(PosetError):
    pass


class Poset:
    """Immutable finite poset with a unique minimal element and a rank function.

    Build instances with :func:`build_poset`.  ``up[x]`` is the set of elements
    ``>= x`` and ``down[x]`` the set of elements ``<= x`` (both include ``x``).
    """

    def __init__(self, elements, up, covers, rank_of):
        self.elements: tuple = tuple(elements)
        self.up: dict = {x: frozenset(up[x]) for x in self.elements}
        self.covers: tuple = tuple(covers)
        self.rank_of: dict = dict(rank_of)
        down = {x: {x} for x in self.elements}
        for x in self.elements:
            for y in self.up[x]:
                down[y].add(x)
        self.down: dict = {x: frozenset(s) for x, s in down.items()}
        self._order = {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.up

    def __repr__(self):
        return f"Poset({len(self)} elements, rank {self.rank})"

    @cached_property
    def bottom(self):
        return next(x for x in self.elements if self.rank_of[x] == 0)

    @property
    def rank(self) -> int:
        return max(self.rank_of.values())

    def leq(self, x, y) -> bool:
        return y in self.up[x]

    def lt(self, x, y) -> bool:
        return x != y and y in self.up[x]

    def sort_key(self, x):
        return (self.rank_of[x], self._order[x])

    def upper_covers(self, x) -> list:
        return [b for a, b in self.covers if a == x]

    def interval(self, x, y) -> frozenset:
        return self.up[x] & self.down[y]

    @cached_property
    def mobius(self) -> dict:
        return mobius_table(self)

    def mu(self, x, y) -> int:
        """μ(x, y); zero when x is not below y."""
        return self.mobius.get((x, y), 0)

    def hasse_text(self) -> str:
        """Hasse listing, one line per element grouped by rank."""
        lines = []
        lower = {x: sorted((a for a, b in self.covers if b == x), key=self.sort_key) for x in self.elements}
        for r in range(self.rank + 1):
            for x in sorted((e for e in self.elements if self.rank_of[e] == r), key=self.sort_key):
                lines.append(f"rank {r}: {x} (covers: {', '.join(map(str, lower[x]))})")
        return "\n".join(lines)


def build_poset(elements: Iterable[Hashable], relation_pairs: Iterable[tuple]) -> Poset:
    """Poset generated by ``relation_pairs`` (each ``(a, b)`` meaning a <= b).

    Computes the transitive closure and the cover relation, assigns ranks by
    longest chain from the bottom and checks gradedness.
    """
    elements = list(dict.fromkeys(elements))
    if not elements:
        raise PosetError("empty poset")
    known = set(elements)
    succ: dict = {x: set() for x in elements}
    for a, b in relation_pairs:
        if a not in known or b not in known:
            raise PosetError(f"relation ({a!r}, {b!r}) mentions an unknown element")
        if a != b:
            succ[a].add(b)

    up: dict = {}
    # iterative DFS with colour marks for cycle detection
    state: dict = {}
    for root in elements:
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                reach = {node}
                for c in succ[node]:
                    reach |= up[c]
                up[node] = reach
                state[node] = 2
            elif state.get(child) == 1:
                raise CycleError(f"relation has a cycle through {child!r}")
            elif child not in state:
                state[child] = 1
                stack.append((child, iter(succ[child])))

    has_lower = {y for x in elements for y in up[x] if y != x}
    minimal = [x for x in elements if x not in has_lower]
    if len(minimal) != 1:
        raise NoUniqueMinimum(f"{len(minimal)} minimal elements: {minimal[:5]!r}")

    covers = []
    for a in elements:
        strict = up[a] - {a}
        for b in strict:
            if not any(b in up[c] for c in strict if c != b):
                covers.append((a, b))

    # longest chain from the bottom, in topological order
    order = sorted(elements, key=lambda x: -len(up[x]))
    cover_succ: dict = {x: [] for x in elements}
    for a, b in covers:
        cover_succ[a].append(b)
    rank_of = {x: 0 for x in elements}
    for a in order:
        for b in cover_succ[a]:
            rank_of[b] = max(rank_of[b], rank_of[a] + 1)
    for a, b in covers:
        if rank_of[b] != rank_of[a] + 1:
            raise NotGraded(f"cover {a!r} < {b!r} jumps from rank {rank_of[a]} to {rank_of[b]}")

    index = {x: i for i, x in enumerate(elements)}
    covers.sort(key=lambda p: (rank_of[p[0]], index[p[0]], index[p[1]]))
    return Poset(elements, up, covers, rank_of)


def mobius_table(p: Poset) -> dict:
    """μ(x, y) for every comparable pair, keyed by ``(x, y)``."""
    table = {}
    for x in p.elements:
        above = sorted(p.up[x], key=p.sort_key)
        mx = {}
        for y in above:
            if y == x:
                mx[y] = 1
            else:
                mx[y] = -sum(mx[z] for z in p.down[y] if z != y and z in mx)
            table[(x, y)] = mx[y]
    return table


def mobius_invert(p: Poset, g: Mapping) -> dict:
    """Return ``f`` with ``f(y) = sum_{x <= y} μ(x, y) g(x)``.

    This inverts ``g(y) = sum_{x <= y} f(x)``.
    """
    mu = p.mobius
    return {y: sum((mu[(x, y)] * Fraction(g[x]) for x in p.down[y]), Fraction(0)) for y in p.elements}


def characteristic_polynomial_of_poset(p: Poset, n: int | None = None) -> IntPolynomial:
    """``sum_x μ(0, x) t^(n - rank x)``; ``n`` defaults to the rank of ``p``."""
    if n is None:
        n = p.rank
    if n < p.rank:
        raise ValueError(f"n={n} is below the poset rank {p.rank}")
    out = IntPolynomial()
    z = p.bottom
    for x in p.elements:
        out = out + IntPolynomial.monomial(n - p.rank_of[x], p.mu(z, x))
    return out


def interval_subposet(p: Poset, x, y) -> Poset:
    if not p.leq(x, y):
        raise NotComparable(f"{x!r} is not below {y!r}")
    members = [e for e in p.elements if e in p.interval(x, y)]
    up = {e: p.up[e] & p.down[y] for e in members}
    covers = [(a, b) for a, b in p.covers if a in up and b in up]
    base = p.rank_of[x]
    return Poset(members, up, covers, {e: p.rank_of[e] - base for e in members})


def _least(p: Poset, candidates):
    """Unique least element of ``candidates`` in ``p``, or None."""
    for c in candidates:
        if all(p.leq(c, o) for o in candidates):
            return c
    return None


def _greatest(p: Poset, candidates):
    for c in candidates:
        if all(p.leq(o, c) for o in candidates):
            return c
    return None


def join(p: Poset, x, y):
    return _least(p, p.up[x] & p.up[y])


def meet(p: Poset, x, y):
    return _greatest(p, p.down[x] & p.down[y])


def is_lattice(p: Poset) -> bool:
    els = p.elements
    for i, x in enumerate(els):
        for y in els[i + 1:]:
            if join(p, x, y) is None or meet(p, x, y) is None:
                return False
    return True


def atoms(p: Poset) -> list:
    return [x for x in p.elements if p.rank_of[x] == 1]


def is_geometric_lattice(p: Poset) -> bool:
    """Lattice that is atomic and upper semimodular."""
    if not is_lattice(p):
        return False
    ats = atoms(p)
    for x in p.elements:
        if p.rank_of[x] < 2:
            continue
        below = [a for a in ats if p.leq(a, x)]
        j = below[0]
        for a in below[1:]:
            j = join(p, j, a)
        if j != x:
            return False
    cover_set = set(p.covers)
    for z in p.elements:
        ups = p.upper_covers(z)
        for i, x in enumerate(ups):
            for y in ups[i + 1:]:
                j = join(p, x, y)
                if (x, j) not in cover_set or (y, j) not in cover_set:
                    return False
    return True


def is_boolean(p: Poset) -> bool:
    """True iff ``p`` is isomorphic to the lattice of subsets of its atoms."""
    ats = atoms(p)
    if len(p) != 2 ** len(ats):
        return False
    seen = set()
    for x in p.elements:
        below = frozenset(a for a in ats if p.leq(a, x))
        if len(below) != p.rank_of[x] or below in seen:
            return False
        seen.add(below)
    return True


def enumerate_chains(p: Poset, min_length: int = 1) -> list[tuple]:
    """All chains with at least ``min_length`` elements, each in increasing order."""
    out = []
    ordered = sorted(p.elements, key=p.sort_key)

    def extend(chain):
        if len(chain) >= min_length:
            out.append(tuple(chain))
        last = chain[-1]
        for y in ordered:
            if p.lt(last, y):
                chain.append(y)
                extend(chain)
                chain.pop()

    for x in ordered:
        extend([x])
    return out
