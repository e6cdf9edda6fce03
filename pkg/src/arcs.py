"""
Arcs joining pairs of framed points, with exact identity checks and certificates that
every entry minus its residual value is topologically nilpotent on the closed unit disk.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil, comb
from typing import Dict, List, Optional, Sequence, Tuple

from .coeffs import INFINITY, I, ZETA8, CycloElem, Val, field_inverse, simplify_scalar, val2
from .deform import DeformParams, PreconditionError, delta_of
from .mat2 import Mat2, commutator, commute_criterion, group_word
from .points import FamilyMismatchError, FramedPoint, make_point
from .polyring import LocalizedPoly, LocalizedRing, SparsePoly, VarSet

logger = logging.getLogger(__name__)

T_VARS = VarSet(("t",))


class ArcFamily(str, Enum):
    BOGEN1 = "bogen1"
    BOGEN2 = "bogen2"

    @property
    def point_family(self) -> str:
        return "punkte1" if self is ArcFamily.BOGEN1 else "punkte2"


@dataclass
class Arc:
    X: Mat2
    Y: Mat2
    Z: Mat2
    unit: SparsePoly
    family: ArcFamily
    n: int
    params: DeformParams
    x_exponent: int

    @property
    def ring(self) -> LocalizedRing:
        return self.X.a11.ring

    @property
    def label(self) -> str:
        return f"{self.family.value}/{self.n}"

    def specialize(self, t) -> FramedPoint:
        """The framed point at a value of t."""
        values = {"t": t}

        def at(m: Mat2) -> Mat2:
            return m.map(lambda e: CycloElem.coerce(e.evaluate(values)))

        return FramedPoint(at(self.X), at(self.Y), at(self.Z), self.params)

    def endpoint_indices(self) -> Tuple[int, int]:
        return (self.n, self.n + 2)


@dataclass
class NilpotenceCertificate:
    degree: int
    min_valuation: Val
    tail_bound: Val

    @property
    def certified(self) -> bool:
        return self.min_valuation.is_positive() and self.tail_bound.is_positive()

    def to_json(self) -> Dict:
        return {
            "degree": self.degree,
            "min_valuation": self.min_valuation.to_json(),
            "tail_bound": self.tail_bound.to_json(),
        }


@dataclass
class ArcReport:
    arc: Arc
    checks: Dict[str, bool] = field(default_factory=dict)
    certificates: Dict[str, NilpotenceCertificate] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> Dict:
        worst = min((c.min_valuation for c in self.certificates.values()), default=INFINITY)
        return {
            "checks": dict(sorted(self.checks.items())),
            "min_entry_valuation": worst.to_json(),
            "certified_entries": sum(c.certified for c in self.certificates.values()),
        }


def _x_matrix(ring: LocalizedRing, lam, s: int) -> Mat2:
    t = SparsePoly.variable(T_VARS, "t")
    inv = ring.unit_power(0, -s)
    if not lam:
        p = 1 - t * t * 6 + t ** 3 * 4
        q = t * (1 - t) * (2 + t * 4)
        r = t * (1 - t) * (6 - t * 4)
        return Mat2(inv * p, inv * q, inv * r, inv * (-p))
    lower = ring.unit_power(0, -2 * s) * (t * (1 - t)) * simplify_scalar(field_inverse(lam) * 4)
    return Mat2(inv * (1 - t * 2), ring.constant(simplify_scalar(lam)), lower, inv * (t * 2 - 1))


def make_arc(family, n: int, lam=0, mu=0, kappa=0) -> Arc:
    """
    Build arc n of a family.

    bogen1 (mu = 0) uses a(t) = 1 + (zeta8 - 1)t, Z = (a, kappa; 0, c*a) with c = zeta8 or i,
    Y = Z^2 and X(t) scaled by a^-4. bogen2 (mu a unit) uses b(t) = 1 + (i - 1)t,
    Y = (b, mu; 0, c*b) with c = i or -1, Z = 1 + (kappa/mu)(Y - 1) and X(t) scaled by b^-2.
    """
    family = ArcFamily(family)
    if n not in (1, 2):
        raise FamilyMismatchError(f"Arc index must be 1 or 2, got {n}")
    params = DeformParams(lam, mu, kappa)
    if not params.is_normalized():
        raise PreconditionError(f"lambda, mu, kappa must each be 0 or a unit: {params.to_json()}")

    t = SparsePoly.variable(T_VARS, "t")
    lam_s, mu_s, kappa_s = params.scalars()
    if family is ArcFamily.BOGEN1:
        if params.mu:
            raise FamilyMismatchError(f"{family.value} requires mu = 0, got {params.mu}")
        unit, s = 1 + t * (ZETA8 - 1), 4
        ring = LocalizedRing(T_VARS, (unit,))
        z22 = ZETA8 if n == 1 else I
        Z = Mat2(ring.element(unit), ring.constant(kappa_s), ring.constant(0), ring.element(unit * z22))
        Y = Z * Z
    else:
        if val2(params.mu) != 0:
            raise FamilyMismatchError(f"{family.value} requires mu to be a unit, got {params.mu}")
        unit, s = 1 + t * (I - 1), 2
        ring = LocalizedRing(T_VARS, (unit,))
        y22 = I if n == 1 else -1
        Y = Mat2(ring.element(unit), ring.constant(mu_s), ring.constant(0), ring.element(unit * y22))
        ratio = simplify_scalar(params.kappa * field_inverse(params.mu))
        Z = Mat2.identity(ring.constant(0)) + (Y - 1) * ratio
    X = _x_matrix(ring, params.lam, s)
    return Arc(X, Y, Z, unit, family, n, params, s)


def nilpotence_certificate(entry: LocalizedPoly) -> NilpotenceCertificate:
    """
    Certify that p(t) * u(t)^-k has only coefficients of positive valuation, with u = 1 + c*t.

    The expansion is checked up to degree M = deg p + ceil(1/w), w = v(c). Beyond M every
    coefficient has valuation at least min v(p_j) + (M + 1 - deg p) * w, because the degree-d
    coefficient (-1)^d C(k + d - 1, d) c^d of u^-k has valuation at least d * w.

    Raises:
        PreconditionError: u is not of the form 1 + c*t with v(c) > 0, or p has a
            non-integral coefficient
    """
    p = entry.numerator
    if not p:
        return NilpotenceCertificate(0, INFINITY, INFINITY)
    if any(val2(c) < 0 for c in p.terms.values()):
        raise PreconditionError(f"Numerator {p.canonical()} has non-integral coefficients")
    k = entry.power
    u = entry.ring.units[0]
    if u.degree() != 1 or u.constant_term() != 1:
        raise PreconditionError(f"Unit {u.canonical()} is not of the form 1 + c*t")
    c = u.coefficient_of((1,))
    w = val2(c)
    if not w.is_positive() or w.is_infinite:
        raise PreconditionError(f"Unit {u.canonical()} has a linear coefficient of valuation {w}")

    deg_p = p.degree()
    M = deg_p + ceil(1 / w.value)
    expansion = [1] + [0] * M
    if k:
        for d in range(1, M + 1):
            expansion[d] = (-1) ** d * comb(k + d - 1, d) * c ** d

    coefficients = []
    for m in range(M + 1):
        total = 0
        for j in range(min(m, deg_p) + 1):
            pj = p.coefficient_of((j,))
            if pj and expansion[m - j]:
                total = total + pj * expansion[m - j]
        coefficients.append(total)

    min_valuation = min((val2(CycloElem.coerce(x)) for x in coefficients), default=INFINITY)
    min_p = min(val2(CycloElem.coerce(x)) for x in p.terms.values())
    if k:
        tail = min_p + Val(Fraction(M + 1 - deg_p) * w.value)
    else:
        tail = INFINITY
    certificate = NilpotenceCertificate(M, min_valuation, tail)
    logger.debug(f"Nilpotence of {entry.canonical()}: {certificate.to_json()}")
    return certificate


def _same_point(a: FramedPoint, b: FramedPoint) -> bool:
    return a.canonical() == b.canonical()


def verify_arc(arc: Arc) -> ArcReport:
    """Check relation, power identities, endpoints, delta and nilpotence exactly."""
    ring = arc.ring
    zero = ring.constant(0)
    s = arc.x_exponent
    report = ArcReport(arc)

    report.checks["relation"] = group_word(arc.X, arc.Y, arc.Z).is_identity()
    report.checks["x_square"] = arc.X * arc.X == Mat2.scalar(ring.unit_power(0, -2 * s), zero)
    report.checks["y_fourth_power"] = arc.Y ** 4 == Mat2.scalar(ring.unit_power(0, 2 * s), zero)
    report.checks["commutator_direct"] = commutator(arc.Y, arc.Z).is_identity()
    report.checks["commute_criterion"] = commute_criterion(arc.Y, arc.Z)

    lam, mu, kappa = arc.params.scalars()
    first, second = arc.endpoint_indices()
    family = arc.family.point_family
    report.checks["start_point"] = _same_point(arc.specialize(0), make_point(family, first, lam, mu, kappa))
    report.checks["end_point"] = _same_point(arc.specialize(1), make_point(family, second, lam, mu, kappa))

    delta = delta_of(arc.X, arc.Y)
    expected = 1 if arc.n == 1 else -1
    report.checks["delta_constant"] = (delta.is_polynomial() and delta.numerator.is_constant()
                                       and delta == expected)

    bases = {"X": Mat2(1, lam, 0, 1), "Y": Mat2(1, mu, 0, 1), "Z": Mat2(1, kappa, 0, 1)}
    for name, base in bases.items():
        difference = getattr(arc, name) - base
        for position, entry in zip(("11", "12", "21", "22"), difference.entries):
            report.certificates[f"{name}{position}"] = nilpotence_certificate(entry)
    report.checks["nilpotent"] = all(c.certified for c in report.certificates.values())

    if report.passed:
        logger.debug(f"Arc {arc.label} verified for {arc.params.to_json()}")
    else:
        failed = sorted(name for name, ok in report.checks.items() if not ok)
        logger.warning(f"Arc {arc.label} failed {failed} for {arc.params.to_json()}")
    return report


def _endpoint_keys(arc: Arc):
    def key(p: FramedPoint):
        return tuple(sorted(p.canonical().items()))
    return key(arc.specialize(0)), key(arc.specialize(1))


def validate_chain(arcs: Sequence[Arc]) -> bool:
    """Consecutive arcs share an endpoint, so the arcs join y0, y1, ..., yn in order."""
    if not arcs:
        return False
    ends = [_endpoint_keys(a) for a in arcs]
    for current in ends[0]:
        for start, end in ends:
            if current == start:
                current = end
            elif current == end:
                current = start
            else:
                break
        else:
            return True
    return False


@dataclass
class PointClass:
    members: List[str]
    deltas: List[CycloElem]

    @property
    def delta_constant(self) -> bool:
        return all(d == self.deltas[0] for d in self.deltas)


def component_classes(points: Sequence[FramedPoint], arcs: Sequence[Arc]) -> List[PointClass]:
    """Group points joined by arcs (union-find) and collect delta on each group."""
    keys = [tuple(sorted(p.canonical().items())) for p in points]
    index = {key: i for i, key in enumerate(keys)}
    parent = list(range(len(points)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for arc in arcs:
        start, end = _endpoint_keys(arc)
        if start in index and end in index:
            parent[find(index[start])] = find(index[end])
        else:
            logger.debug(f"Arc {arc.label} has an endpoint outside the given points")

    groups: Dict[int, List[int]] = {}
    for i in range(len(points)):
        groups.setdefault(find(i), []).append(i)
    classes = []
    for members in sorted(groups.values()):
        classes.append(PointClass(
            members=[points[i].label for i in members],
            deltas=[CycloElem.coerce(delta_of(points[i].X, points[i].Y)) for i in members],
        ))
    return classes


def distinct_deltas(classes: Sequence[PointClass]) -> List[CycloElem]:
    out: List[CycloElem] = []
    for cls in classes:
        if cls.delta_constant and cls.deltas[0] not in out:
            out.append(cls.deltas[0])
    return out


def grid_arcs(lam=0, mu=0, kappa=0, families: Optional[Sequence[str]] = None) -> List[Arc]:
    """Both arcs of every family admissible for the given parameters."""
    wanted = [ArcFamily(f) for f in families] if families else list(ArcFamily)
    mu = CycloElem.coerce(mu)
    arcs = []
    for family in wanted:
        if family is ArcFamily.BOGEN1 and mu:
            continue
        if family is ArcFamily.BOGEN2 and not mu:
            continue
        arcs.extend(make_arc(family, n, lam, mu, kappa) for n in (1, 2))
    return arcs
