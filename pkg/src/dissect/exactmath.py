"""Exact rational/integer linear algebra and integer polynomials.

Matrices are plain lists of rows.  Rational entries are
:class:`fractions.Fraction`, integer entries are Python ``int``; both are
arbitrary precision so nothing here can overflow or round.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from math import gcd
from typing import NamedTuple, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or an int) into a Fraction.

    Raises ValueError on malformed text or a zero denominator.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with integer coefficients, ``coeffs[i]`` of ``t**i``.

    The zero polynomial has an empty coefficient tuple; otherwise the last
    coefficient is nonzero.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        for c, orig in zip(cs, self.coeffs):
            if c != orig:
                raise ValueError(f"non-integer coefficient {orig!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        return poly_evaluate(self, t)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return IntPolynomial(
            tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))
        )

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        return format_polynomial(self)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _as_poly(x):
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return IntPolynomial((x,))
    return NotImplemented


def poly_evaluate(p: IntPolynomial, t):
    """Horner evaluation; exact for int or Fraction ``t``."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def format_polynomial(p: IntPolynomial, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for deg in range(p.degree, -1, -1):
        c = p.coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# rational linear algebra


def to_fraction_matrix(m: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def rref(m: Sequence[Sequence]) -> tuple[int, list[list[Fraction]], list[int]]:
    """Reduced row-echelon form over the rationals.

    Returns ``(rank, reduced, pivots)``; ``reduced`` has the same shape as ``m``
    with zero rows at the bottom.
    """
    a = to_fraction_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return r, a, pivots


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[0]


class AffineSolution(NamedTuple):
    point: list[Fraction]
    nullspace_basis: list[list[Fraction]]


def solve_affine(a: Sequence[Sequence], b: Sequence, dim: int | None = None) -> AffineSolution | None:
    """Solve ``a @ x = b`` exactly.

    Returns None when the system is infeasible, otherwise a particular
    solution (free variables set to zero) and a basis of the null space of
    ``a``.  ``dim`` gives the number of unknowns when ``a`` has no rows.
    """
    if len(a) != len(b):
        raise ValueError("row count of a and length of b differ")
    n = len(a[0]) if a else dim
    if n is None:
        raise ValueError("dim is required for an empty system")
    if a and dim is not None and dim != n:
        raise ValueError("dim does not match column count")
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, red, pivots = rref(aug) if aug else (0, [], [])
    if n in pivots:
        return None
    point = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        point[c] = red[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return AffineSolution(point, basis)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def mat_vec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum(ai * xi for ai, xi in zip(row, x)) for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# integer lattices


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``u @ a @ v == d`` with ``u``, ``v`` unimodular.

    ``d`` is diagonal with nonnegative entries, each dividing the next.  The
    pivot at each stage is an entry of minimal nonzero absolute value.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [[int(x) for x in row] for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row[dst] += k * row[src]
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col[dst] += k * col[src]
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nonzero:
                return u, d, v
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def snf_diagonal(a: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_normal_form(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``a``.

    Zero rows are dropped.  Pivots are positive and entries above a pivot lie
    in ``[0, pivot)``, so the result is a canonical basis of the row lattice.
    """
    h = [[int(x) for x in row] for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if h[i][c]]
            if not rows:
                break
            piv = min(rows, key=lambda i: abs(h[i][c]))
            h[r], h[piv] = h[piv], h[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    done = done and h[i][c] == 0
            if done:
                break
        if r < m and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
            r += 1
    return [row for row in h if any(row)]


def integer_inverse(v: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    n = len(v)
    r, red, _ = rref([list(row) + identity(n)[i] for i, row in enumerate(v)])
    if r < n:
        raise ValueError("matrix is singular")
    inv = [row[n:] for row in red[:n]]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(x) // g for x in v)


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _normalize_constraint(g: list[Fraction], h: Fraction):
    """Scale ``g.y + h > 0`` so the first nonzero of ``g`` has magnitude 1."""
    lead = next((x for x in g if x != 0), None)
    if lead is None:
        return tuple(g), h
    s = abs(lead)
    return tuple(x / s for x in g), h / s


def _direction(d) -> int:
    if d in (1, "+", "plus"):
        return 1
    if d in (-1, "-", "minus"):
        return -1
    raise ValueError(f"bad direction {d!r}")


def fm_feasible(equalities, strict_inequalities, dim: int | None = None) -> bool:
    """Decide nonemptiness of an open polyhedron by Fourier-Motzkin elimination.

    ``equalities`` are ``(coeffs, rhs)`` meaning ``coeffs . x == rhs``;
    ``strict_inequalities`` are ``(coeffs, rhs, direction)`` meaning
    ``direction * (coeffs . x - rhs) > 0`` with direction ``+1``/``-1`` (or
    ``"+"``/``"-"``).
    """
    vecs = [c for c, _ in equalities] + [c for c, _, _ in strict_inequalities]
    if dim is None:
        if not vecs:
            return True
        dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise ValueError("constraint vectors differ in dimension")

    sol = solve_affine([list(c) for c, _ in equalities], [r for _, r in equalities], dim=dim)
    if sol is None:
        return False
    point, basis = sol

    # constraints on the free parameters y: g.y + h > 0
    best: dict[tuple, Fraction] = {}
    for coeffs, rhs, direction in strict_inequalities:
        s = _direction(direction)
        a = [Fraction(x) for x in coeffs]
        g = [s * sum(ai * bi for ai, bi in zip(a, b)) for b in basis]
        h = s * (sum(ai * pi for ai, pi in zip(a, point)) - Fraction(rhs))
        key, h = _normalize_constraint(g, h)
        if key not in best or h < best[key]:
            best[key] = h

    nvar = len(basis)
    for var in range(nvar):
        pos, neg, rest = [], [], {}
        for g, h in best.items():
            if g[var] > 0:
                pos.append((g, h))
            elif g[var] < 0:
                neg.append((g, h))
            else:
                rest[g] = h
        for gp, hp in pos:
            for gq, hq in neg:
                cp, cq = -gq[var], gp[var]
                g = [cp * x + cq * y for x, y in zip(gp, gq)]
                key, h = _normalize_constraint(g, cp * hp + cq * hq)
                if key not in rest or h < rest[key]:
                    rest[key] = h
        for g, h in rest.items():
            if not any(g) and h <= 0:
                return False
        best = rest
    return all(h > 0 for h in best.values())
