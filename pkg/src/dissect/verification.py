"""Formula-versus-oracle comparison tables."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import arrangement as arr
from . import oracle
from .builders import CentralSpec, CircleSpec, HyperplaneSpec, ToricSpec
from .poset import enumerate_chains

MAX_FIBER_CHAINS = 2000


@dataclass
class Check:
    quantity: str
    formula: Any
    oracle: Any

    @property
    def ok(self) -> bool:
        return self.formula == self.oracle

    def row(self) -> dict:
        return {"quantity": self.quantity, "formula": _plain(self.formula), "oracle": _plain(self.oracle),
                "status": "PASS" if self.ok else "FAIL"}


def _plain(value):
    """JSON-safe copy: integral Fractions become ints, others ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def structural_checks(m: arr.ArrangementModel) -> list[Check]:
    return [Check(name, value, True) for name, value in arr.structural_report(m).items()]


def valuation_checks(m: arr.ArrangementModel) -> list[Check]:
    ind = arr.complement_indicator(m)
    l = m.ambient_dim
    return [
        Check("integral_kappa", arr.integrate(ind, arr.kappa_valuation(m)), (-1) ** l * arr.chamber_count(m)),
        Check("integral_poincare", arr.integrate(ind, arr.poincare_valuation(m)).to_list(),
              arr.generalized_char_poly(m).to_list()),
    ]


def hyperplane_checks(m: arr.ArrangementModel, spec: HyperplaneSpec, max_chain: int = 3) -> list[Check]:
    fp = oracle.enumerate_faces(spec)
    f = arr.f_vector(m)
    checks = [
        Check("chambers", arr.chamber_count(m), len(fp.chambers())),
        Check("f_vector", f, oracle.oracle_f_vector(fp)),
        Check("f_polynomial_geometric", arr.f_polynomial_geometric(m).to_list(),
              arr.f_polynomial_from_vector(oracle.oracle_f_vector(fp)).to_list()),
        Check("classical_char_poly", arr.generalized_char_poly(m).to_list(), arr.classical_char_poly(m).to_list()),
        Check("psi_surjective", sorted(set(fp.psi.values())), sorted(m.flats)),
    ]
    chains = [c for c in enumerate_chains(m.poset, 2) if len(c) <= max_chain][:MAX_FIBER_CHAINS]
    bad = [c for c in chains if arr.bayer_sturmfels_fiber(m, c) != oracle.fiber_count_direct(fp, c)]
    checks.append(Check(f"fibers ({len(chains)} chains)", len(chains) - len(bad), len(chains)))
    return checks


def central_checks(m: arr.ArrangementModel, spec: CentralSpec, mode: str) -> list[Check]:
    fp = oracle.enumerate_faces(spec.hyperplane_spec())
    q = oracle.quotient_counts(fp, mode)
    checks = [Check("f_vector", arr.f_vector(m), q), Check("chambers", arr.chamber_count(m), q[-1])]
    central = oracle.central_chambers(fp)
    expected = central if mode == "sphere" else central // 2
    checks.append(Check("central_chambers_relation", arr.chamber_count(m), expected))
    return checks


def toric_checks(m: arr.ArrangementModel, spec: ToricSpec) -> list[Check]:
    checks = [Check("toric_specialization", arr.chamber_count(m),
                    (-1) ** m.ambient_dim * sum(m.mu(m.X, y) for y in m.flats if m.dim(y) == 0))]
    if spec.ambient_dim == 2:
        checks.insert(0, Check("chambers (torus Euler)", arr.chamber_count(m), oracle.toric_chambers_2d(spec)))
    return checks


def circle_checks(m: arr.ArrangementModel, spec: CircleSpec) -> list[Check]:
    n = len(spec.points)
    return [Check("chambers", arr.chamber_count(m), n), Check("f_vector", arr.f_vector(m), [n, n])]


def verify_model(m: arr.ArrangementModel) -> list[Check]:
    """Every applicable formula/oracle pair for ``m`` plus structural checks."""
    spec = m.source
    checks: list[Check] = []
    if m.family == "hyperplane":
        checks += hyperplane_checks(m, spec)
    elif m.family in ("sphere", "projective"):
        checks += central_checks(m, spec, m.family)
    elif m.family == "toric":
        checks += toric_checks(m, spec)
    elif m.family == "circle":
        checks += circle_checks(m, spec)
    checks += structural_checks(m)
    checks += valuation_checks(m)
    checks.append(Check("chamber_identity", arr.chamber_count(m),
                        (-1) ** m.ambient_dim * arr.generalized_char_poly(m)(-1)))
    return checks
