"""
Explicit K-points of the deformation ring in the two upper-triangular families
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from .coeffs import I, ZETA8, CycloElem, field_inverse, val2
from .deform import DeformParams, delta_of, f_element_vanishes_at, triangular_f_element
from .mat2 import Mat2, commutator, commute_criterion, group_word

logger = logging.getLogger(__name__)


class FamilyMismatchError(ValueError):
    """Parameters do not fit the requested family."""


class LocusMembershipError(ValueError):
    """A point is not of the upper-triangular form the classifier expects."""


class Family(str, Enum):
    PUNKTE1 = "punkte1"
    PUNKTE2 = "punkte2"


# Diagonal entries of Z (first family) and of Y (second family), indexed by n
_Z_DIAGONALS = {
    1: (CycloElem(1), ZETA8),
    2: (CycloElem(1), I),
    3: (ZETA8, I),
    4: (ZETA8, ZETA8 ** 3),
}
_Y_DIAGONALS = {
    1: (CycloElem(1), I),
    2: (CycloElem(1), CycloElem(-1)),
    3: (I, CycloElem(-1)),
    4: (I, -I),
}


@dataclass
class FramedPoint:
    X: Mat2
    Y: Mat2
    Z: Mat2
    params: DeformParams
    family: Optional[Family] = None
    n: Optional[int] = None

    @property
    def label(self) -> str:
        if self.family is None:
            return "synthetic"
        return f"{self.family.value}/{self.n}"

    def canonical(self) -> Dict[str, str]:
        return {"X": self.X.canonical(), "Y": self.Y.canonical(), "Z": self.Z.canonical()}


@dataclass
class PointReport:
    relation_ok: bool
    reduction_ok: bool
    eps1: CycloElem
    eps2: CycloElem
    delta: CycloElem
    schnitt_case: Optional[int]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def idempotents(self):
        """(e+, e-) = ((1 + delta)/2, (1 - delta)/2)."""
        return ((1 + self.delta) / 2, (1 - self.delta) / 2)

    @property
    def passed(self) -> bool:
        return self.relation_ok and self.reduction_ok and all(self.checks.values())

    def to_json(self) -> Dict:
        return {
            "eps1": self.eps1.to_json(),
            "eps2": self.eps2.to_json(),
            "delta": self.delta.to_json(),
            "schnitt_case": self.schnitt_case,
            "relation_ok": self.relation_ok,
            "reduction_ok": self.reduction_ok,
            "checks": dict(sorted(self.checks.items())),
        }


def _upper(a, b, d) -> Mat2:
    return Mat2(CycloElem.coerce(a), CycloElem.coerce(b), CycloElem(0), CycloElem.coerce(d))


def make_point(family, n: int, lam=0, mu=0, kappa=0) -> FramedPoint:
    """
    Build point n of a family.

    The first family has X = (1 lam; 0 -1), Z = (z1 kappa; 0 z2) and Y = Z^2 and needs mu = 0.
    The second has Y = (y1 mu; 0 y2) and Z = 1 + (kappa/mu)(Y - 1) and needs mu to be a unit.
    """
    family = Family(family)
    if n not in (1, 2, 3, 4):
        raise FamilyMismatchError(f"Point index must be 1..4, got {n}")
    params = DeformParams(lam, mu, kappa)
    X = _upper(1, params.lam, -1)
    if family is Family.PUNKTE1:
        if params.mu:
            raise FamilyMismatchError(f"{family.value} requires mu = 0, got {params.mu}")
        z1, z2 = _Z_DIAGONALS[n]
        Z = _upper(z1, params.kappa, z2)
        Y = Z * Z
    else:
        if val2(params.mu) != 0:
            raise FamilyMismatchError(f"{family.value} requires mu to be a unit, got {params.mu}")
        y1, y2 = _Y_DIAGONALS[n]
        Y = _upper(y1, params.mu, y2)
        ratio = params.kappa * field_inverse(params.mu)
        Z = Mat2.identity(CycloElem(0)) + (Y - 1) * ratio
    return FramedPoint(X, Y, Z, params, family, n)


def family_points(family, lam=0, mu=0, kappa=0) -> List[FramedPoint]:
    return [make_point(family, n, lam, mu, kappa) for n in (1, 2, 3, 4)]


def _reduces_to_residual(p: FramedPoint) -> bool:
    lam, mu, kappa = p.params.lam, p.params.mu, p.params.kappa
    differences = [
        p.X - Mat2(1, lam, 0, 1),
        p.Y - Mat2(1, mu, 0, 1),
        p.Z - Mat2(1, kappa, 0, 1),
    ]
    return all(val2(CycloElem.coerce(e)).is_positive() for m in differences for e in m.entries)


def _shortcut_eps(p: FramedPoint):
    if p.family is Family.PUNKTE1:
        return p.Z.a11 ** 4, -(p.Z.a22 ** 4)
    if p.family is Family.PUNKTE2:
        return p.Y.a11 ** 2, -(p.Y.a22 ** 2)
    return None


def verify_point(p: FramedPoint) -> PointReport:
    """Check a point exactly; failures are recorded in the report."""
    word = group_word(p.X, p.Y, p.Z)
    relation_ok = word.is_identity()
    reduction_ok = _reduces_to_residual(p)
    eps1 = CycloElem.coerce(p.X.a11 * p.Y.a11 ** 2)
    eps2 = CycloElem.coerce(p.X.a22 * p.Y.a22 ** 2)
    delta = CycloElem.coerce(delta_of(p.X, p.Y))

    try:
        case = schnitt_case(p)
    except LocusMembershipError as e:
        logger.warning(f"Point {p.label} is outside the classified locus: {e}")
        case = None

    e_plus, e_minus = (1 + delta) / 2, (1 - delta) / 2
    checks = {
        "signs": all(v in (1, -1) for v in (eps1, eps2, delta)),
        "idempotents": e_plus in (0, 1) and e_minus in (0, 1) and e_plus + e_minus == 1,
        "y_fourth_power": (p.Y ** 4).is_identity(),
        "commutator": commutator(p.Y, p.Z).is_identity(),
        "commute_criterion": commute_criterion(p.Y, p.Z),
    }
    if (p.X ** 2).is_identity():
        checks["word_form"] = p.Y ** 5 * p.Z == p.Z * p.Y
    shortcut = _shortcut_eps(p)
    if shortcut is not None:
        checks["shortcut_eps"] = shortcut == (eps1, eps2)
    if checks["signs"] and p.Y.is_upper_triangular() and p.Z.is_upper_triangular():
        f = triangular_f_element(p.params, int(eps1.to_rational()), int(eps2.to_rational()))
        checks["f_element_vanishes"] = f_element_vanishes_at(f, p.X, p.Y, p.Z, p.params)

    report = PointReport(relation_ok, reduction_ok, eps1, eps2, delta, case, checks)
    if not report.passed:
        logger.warning(f"Point {p.label} failed: relation={relation_ok}, reduction={reduction_ok}, {checks}")
    else:
        logger.debug(f"Point {p.label}: eps=({eps1}, {eps2}), delta={delta}, case={case}")
    return report


def schnitt_case(p: FramedPoint) -> int:
    """
    Which of the three upper-triangular conditions holds, checked in order 1, 2, 3:

    1. y11 != y22 and (y11 - y22)(kappa + z12) = (mu + y12)(z11 - z22)
    2. y11 = y22 and mu = y12 = 0
    3. y11 = y22 and z11~ = 5 z22~

    Raises:
        LocusMembershipError: X is not (1 lam; 0 -1), Y or Z not upper triangular,
            (1 + y11)^4 or (1 + y22)^4 not 1, or none of the conditions holds
    """
    X, Y, Z = p.X, p.Y, p.Z
    if not (X.a11 == 1 and X.a12 == p.params.lam and not X.a21 and X.a22 == -1):
        raise LocusMembershipError(f"X = {X.canonical()} is not (1 lambda; 0 -1)")
    if Y.a21 or Z.a21:
        raise LocusMembershipError("Y and Z must be upper triangular")
    if Y.a11 ** 4 != 1 or Y.a22 ** 4 != 1:
        raise LocusMembershipError("Diagonal of Y is not a fourth root of unity")

    if Y.a11 != Y.a22:
        if (Y.a11 - Y.a22) * Z.a12 == Y.a12 * (Z.a11 - Z.a22):
            return 1
    else:
        if not p.params.mu and not Y.a12:
            return 2
        if Z.a11 == 5 * Z.a22:
            return 3
    raise LocusMembershipError(f"Point {p.label} satisfies none of the three conditions")
