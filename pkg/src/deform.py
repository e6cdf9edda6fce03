"""
Relation computer for the framed deformation ring S = A / (f11, f12, f21, f22).

A is modelled by TruncSeries over the twelve canonical variables. X, Y, Z are the
lifts (1 + x11, lam + x12; x21, 1 + x22) etc. of the residual matrices, and the f_ij are
the entries of X^2 Y^4 [Y, Z] - I.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

from .coeffs import CycloElem, field_inverse, simplify_scalar, val2
from .mat2 import Mat2, group_word
from .polyring import (
    CANONICAL_NAMES,
    CANONICAL_VARS,
    LocalizedRing,
    SparsePoly,
    TruncSeries,
    VarSet,
)

logger = logging.getLogger(__name__)

SHIFT_VARIABLES = ("x12", "y12", "z12")


class PreconditionError(ValueError):
    """Input outside the domain of an operation."""


class CongruenceError(PreconditionError):
    """Two parameter tuples are not congruent modulo 2."""


class IdentityError(AssertionError):
    """A certified identity failed to hold."""


@dataclass(frozen=True)
class DeformParams:
    """Residual upper-right entries (lam, mu, kappa) and the truncation cap."""

    lam: CycloElem = CycloElem(0)
    mu: CycloElem = CycloElem(0)
    kappa: CycloElem = CycloElem(0)
    cap: int = 6

    def __post_init__(self):
        for name in ("lam", "mu", "kappa"):
            value = CycloElem.coerce(getattr(self, name))
            object.__setattr__(self, name, value)
            if val2(value) < 0:
                raise PreconditionError(f"{name} = {value} is not integral")
        if self.cap < 1:
            raise PreconditionError(f"cap must be positive, got {self.cap}")

    def is_normalized(self) -> bool:
        """Each of lam, mu, kappa is 0 or a unit."""
        return all(not v or val2(v) == 0 for v in (self.lam, self.mu, self.kappa))

    def scalars(self) -> Tuple:
        return tuple(simplify_scalar(v) for v in (self.lam, self.mu, self.kappa))

    def with_cap(self, cap: int) -> "DeformParams":
        return DeformParams(self.lam, self.mu, self.kappa, cap)

    def to_json(self) -> Dict:
        return {
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "kappa": self.kappa.to_json(),
            "cap": self.cap,
        }


@dataclass
class RelationF:
    f11: TruncSeries
    f12: TruncSeries
    f21: TruncSeries
    f22: TruncSeries

    def entries(self) -> Tuple[TruncSeries, TruncSeries, TruncSeries, TruncSeries]:
        return (self.f11, self.f12, self.f21, self.f22)

    def origin_values(self) -> Tuple:
        return tuple(f.constant_term() for f in self.entries())

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(f) for f in self.entries())

    def canonical(self) -> Dict[str, str]:
        return {name: f.canonical() for name, f in zip(("f11", "f12", "f21", "f22"), self.entries())}


@dataclass
class DeltaWitness:
    delta: TruncSeries
    combination: TruncSeries
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def build_matrices(params: DeformParams, graded: Optional[Iterable[str]] = None) -> Tuple[Mat2, Mat2, Mat2]:
    """The lifted matrices X, Y, Z over the truncated 12-variable series ring."""
    graded = tuple(graded) if graded is not None else None

    def var(name: str) -> TruncSeries:
        return TruncSeries.variable(CANONICAL_VARS, params.cap, name, graded)

    lam, mu, kappa = params.scalars()
    X = Mat2(1 + var("x11"), lam + var("x12"), var("x21"), 1 + var("x22"))
    Y = Mat2(1 + var("y11"), mu + var("y12"), var("y21"), 1 + var("y22"))
    Z = Mat2(1 + var("z11"), kappa + var("z12"), var("z21"), 1 + var("z22"))
    return X, Y, Z


@lru_cache(maxsize=4)
def _relation(params: DeformParams, graded: Optional[Tuple[str, ...]]) -> RelationF:
    X, Y, Z = build_matrices(params, graded)
    W = group_word(X, Y, Z)
    rel = RelationF(W.a11 - 1, W.a12, W.a21, W.a22 - 1)
    logger.info(f"Computed relation at cap {params.cap} for {params.to_json()}: term counts {rel.sizes()}")
    return rel


def compute_relation(params: DeformParams, graded: Optional[Iterable[str]] = None) -> RelationF:
    return _relation(params, tuple(graded) if graded is not None else None)


def origin_checks(params: DeformParams, rel: RelationF) -> Dict[str, bool]:
    """Constant terms: f11 = f21 = f22 = 0 and f12 = 2 lam + 4 mu, all in the maximal ideal."""
    c11, c12, c21, c22 = rel.origin_values()
    expected = 2 * params.lam + 4 * params.mu
    return {
        "f11_origin_zero": c11 == 0,
        "f21_origin_zero": c21 == 0,
        "f22_origin_zero": c22 == 0,
        "f12_origin": c12 == expected,
        "in_maximal_ideal": all(val2(c).is_positive() for c in (c11, c12, c21, c22)),
    }


def delta_of(X: Mat2, Y: Mat2):
    """delta = det X * (det Y)^2."""
    return X.det() * Y.det() ** 2


def delta_witness(params: DeformParams) -> DeltaWitness:
    """
    delta^2 - 1 = f11 + f22 + f11 f22 - f12 f21, plus the idempotent identities for
    e+ = (1 + delta)/2 and e- = (1 - delta)/2.
    """
    X, Y, _ = build_matrices(params)
    rel = compute_relation(params)
    delta = delta_of(X, Y)
    combination = rel.f11 + rel.f22 + rel.f11 * rel.f22 - rel.f12 * rel.f21
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    e_plus = (1 + delta) * half
    e_minus = (1 - delta) * half
    witness = DeltaWitness(delta, combination)
    witness.checks = {
        "delta_squared": delta * delta - 1 == combination,
        "idempotent_plus": e_plus * e_plus - e_plus == combination * quarter,
        "idempotents_sum": e_plus + e_minus == 1,
        "idempotents_product": e_plus * e_minus == combination * (-quarter),
    }
    if not witness.holds:
        logger.warning(f"delta witness failed for {params.to_json()}: {witness.checks}")
    return witness


def shift_isomorphism_check(params1: DeformParams, params2: DeformParams) -> bool:
    """
    Substitute x12 -> x12 + (lam2 - lam1), y12 -> y12 + (mu2 - mu1), z12 -> z12 + (kappa2 - kappa1)
    into the relation for params1 and compare with the relation for params2.

    The shifted variables are left ungraded so the shift is an automorphism of the
    truncated ring.
    """
    if params1.cap != params2.cap:
        raise PreconditionError(f"Caps differ: {params1.cap} vs {params2.cap}")
    diffs = {
        "x12": params2.lam - params1.lam,
        "y12": params2.mu - params1.mu,
        "z12": params2.kappa - params1.kappa,
    }
    for name, d in diffs.items():
        if val2(d) < 1:
            raise CongruenceError(f"Shift of {name} by {d} does not lie in 2*O")

    graded = tuple(n for n in CANONICAL_NAMES if n not in SHIFT_VARIABLES)
    rel1 = compute_relation(params1, graded)
    rel2 = compute_relation(params2, graded)
    assignment = {
        name: SparsePoly.variable(CANONICAL_VARS, name) + simplify_scalar(d)
        for name, d in diffs.items() if d
    }
    for f1, f2 in zip(rel1.entries(), rel2.entries()):
        shifted = f1.substitute(assignment) if assignment else f1
        if shifted != f2:
            return False
    return True


def triangular_locus(params: DeformParams) -> Tuple[TruncSeries, TruncSeries, TruncSeries]:
    """
    Specialize x21 = y21 = z21 = 0 and certify the upper-triangular form of the relation.

    Returns:
        (f11, f22, f12) after specialization

    Raises:
        IdentityError: when one of the displayed identities fails
    """
    rel = compute_relation(params)
    lower = ("x21", "y21", "z21")
    f11, f12, f21, f22 = (f.specialize_zero(lower) for f in rel.entries())

    def var(name: str) -> TruncSeries:
        return TruncSeries.variable(CANONICAL_VARS, params.cap, name)

    lam, mu, kappa = params.scalars()
    x11, x12, x22 = 1 + var("x11"), lam + var("x12"), 1 + var("x22")
    y11, y12, y22 = 1 + var("y11"), mu + var("y12"), 1 + var("y22")
    z11, z12, z22 = 1 + var("z11"), kappa + var("z12"), 1 + var("z22")

    if f21:
        raise IdentityError("f21 does not vanish on the upper-triangular locus")
    if f11 != x11 ** 2 * y11 ** 4 - 1:
        raise IdentityError("f11 differs from x11~^2 y11~^4 - 1")
    if f22 != x22 ** 2 * y22 ** 4 - 1:
        raise IdentityError("f22 differs from x22~^2 y22~^4 - 1")

    commutator_entry = (y11 - y22) * z12 + y12 * (z22 - z11)
    upper = x11 ** 2 * y12 * (y11 + y22) * (y11 ** 2 + y22 ** 2) + x12 * (x11 + x22) * y22 ** 4
    displayed = upper * y22 * z22 + commutator_entry
    if f12 * y22 * z22 - displayed != f11 * commutator_entry:
        raise IdentityError("f12 differs from the displayed off-diagonal expression")
    logger.info(f"Upper-triangular locus identities hold for {params.to_json()}")
    return f11, f22, f12


TRIANGULAR_VARS = VarSet(("x12", "y11", "y12", "y22", "z11", "z12", "z22"))


@dataclass
class FElementReport:
    eps: Tuple[int, int]
    f: SparsePoly
    checks: Dict[str, bool] = field(default_factory=dict)
    coefficient_y12_z11: object = 0

    @property
    def holds(self) -> bool:
        return all(self.checks.values())


def _tilde(params: DeformParams):
    v = {name: SparsePoly.variable(TRIANGULAR_VARS, name) for name in TRIANGULAR_VARS}
    lam, mu, kappa = params.scalars()
    return {
        "x12": lam + v["x12"],
        "y11": 1 + v["y11"],
        "y12": mu + v["y12"],
        "y22": 1 + v["y22"],
        "z11": 1 + v["z11"],
        "z12": kappa + v["z12"],
        "z22": 1 + v["z22"],
    }


@lru_cache(maxsize=64)
def triangular_f_element(params: DeformParams, eps1: int, eps2: int) -> SparsePoly:
    """
    The relation on the component x11~ = eps1 y11~^-2, x22~ = eps2 y22~^-2 of the
    upper-triangular locus, multiplied by y11~^4 y22~ z22~.
    """
    if eps1 not in (1, -1) or eps2 not in (1, -1):
        raise PreconditionError(f"Component signs must be +-1, got ({eps1}, {eps2})")
    t = _tilde(params)
    ring = LocalizedRing(TRIANGULAR_VARS, (t["y11"], t["y22"], t["z11"], t["z22"]))
    y11_inv2 = ring.unit_power(0, -2)
    y22_inv2 = ring.unit_power(1, -2)
    X = Mat2(y11_inv2 * eps1, ring.element(t["x12"]), ring.constant(0), y22_inv2 * eps2)
    Y = Mat2(ring.element(t["y11"]), ring.element(t["y12"]), ring.constant(0), ring.element(t["y22"]))
    Z = Mat2(ring.element(t["z11"]), ring.element(t["z12"]), ring.constant(0), ring.element(t["z22"]))
    W = group_word(X, Y, Z)
    if not (W.a11 == 1 and W.a22 == 1 and not W.a21):
        raise IdentityError("Diagonal of the word is not 1 on the chosen component")
    return W.a12.cleared(t["y11"] ** 4 * t["y22"] * t["z22"])


def f_element_report(params: DeformParams, eps1: int, eps2: int) -> FElementReport:
    """Compare the f-element with its printed form and its two substitutions."""
    f = triangular_f_element(params, eps1, eps2)
    t = _tilde(params)
    y11, y12, y22 = t["y11"], t["y12"], t["y22"]
    x12, z11, z12, z22 = t["x12"], t["z11"], t["z12"], t["z22"]
    commutator_entry = (y11 - y22) * z12 + y12 * (z22 - z11)
    printed = (y12 * (y11 + y22) * (y11 ** 2 + y22 ** 2) * y22 * z22
               + x12 * y11 ** 2 * (y22 ** 2 * eps1 + y11 ** 2 * eps2) * y22 ** 3 * z22
               + commutator_entry * y11 ** 4)

    y22_var = SparsePoly.variable(TRIANGULAR_VARS, "y22")
    equal_diagonal = f.substitute({"y11": y22_var}, partial=True)
    expected_equal = x12 * y22 ** 7 * z22 * (eps1 + eps2) + y12 * (z22 * 5 - z11) * y22 ** 4
    opposite_diagonal = f.substitute({"y11": -y22_var - 2}, partial=True)
    expected_opposite = (x12 * y22 ** 7 * z22 * (eps1 + eps2)
                         + (y22 * z12 * (-2) + y12 * (z22 - z11)) * y22 ** 4)

    coefficient = f.coefficient_of(TRIANGULAR_VARS.monomial(y12=1, z11=1))
    report = FElementReport((eps1, eps2), f, coefficient_y12_z11=coefficient)
    report.checks = {
        "printed_form": f == printed,
        "equal_diagonal_substitution": equal_diagonal == expected_equal,
        "opposite_diagonal_substitution": opposite_diagonal == expected_opposite,
        "coefficient_y12_z11": coefficient == -1,
    }
    return report


def f_element_vanishes_at(f: SparsePoly, X: Mat2, Y: Mat2, Z: Mat2, params: DeformParams) -> bool:
    """Evaluate the f-element at an upper-triangular framed point."""
    lam, mu, kappa = params.scalars()
    values = {
        "x12": X.a12 - lam,
        "y11": Y.a11 - 1,
        "y12": Y.a12 - mu,
        "y22": Y.a22 - 1,
        "z11": Z.a11 - 1,
        "z12": Z.a12 - kappa,
        "z22": Z.a22 - 1,
    }
    return not f.evaluate(values)


BIJECTION_VARS = VarSet(("y12", "z11"))


@dataclass
class BijektionReport:
    psi: Tuple[CycloElem, CycloElem, CycloElem]
    relation: SparsePoly
    constant_term: object
    coefficient: object
    sign: Optional[str]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())


def bijektion_specialization(psi_x, psi_y, psi_z, params: DeformParams) -> BijektionReport:
    """
    Specialize x11~ = psi_x, x12 = x21 = x22 = 0, y11~ = psi_y, y21 = y22 = 0,
    z12 = z21 = 0, z22~ = psi_z / z11~ and return the single remaining relation in (y12, z11).

    The sign of the y12*z11^2 coefficient relative to psi_z^-1 is recorded as computed.
    """
    psi = tuple(CycloElem.coerce(p) for p in (psi_x, psi_y, psi_z))
    for name, p in zip(("psi_x", "psi_y", "psi_z"), psi):
        if not val2(p - 1).is_positive():
            raise PreconditionError(f"{name} = {p} is not congruent to 1 modulo the maximal ideal")
    px, py, pz = psi
    if px ** 2 * py ** 4 != 1:
        raise PreconditionError(f"psi_x^2 psi_y^4 = {px ** 2 * py ** 4}, expected 1")

    lam, mu, kappa = params.scalars()
    y12 = SparsePoly.variable(BIJECTION_VARS, "y12")
    z11 = 1 + SparsePoly.variable(BIJECTION_VARS, "z11")
    ring = LocalizedRing(BIJECTION_VARS, (z11,))
    pz_inv = field_inverse(pz)

    X = Mat2(ring.constant(simplify_scalar(px)), ring.constant(lam), ring.constant(0), ring.constant(1))
    Y = Mat2(ring.constant(simplify_scalar(py)), ring.element(mu + y12), ring.constant(0), ring.constant(1))
    Z = Mat2(ring.element(z11), ring.constant(kappa), ring.constant(0),
             ring.unit_power(0, -1) * simplify_scalar(pz))
    W = group_word(X, Y, Z)
    if not (W.a11 == 1 and W.a22 == 1 and not W.a21):
        raise IdentityError("Diagonal of the specialized word is not 1")
    relation = W.a12.to_poly()

    y12_tilde = mu + y12
    displayed = (y12_tilde * (py + 1) * (py ** 2 + 1) * px ** 2 + (px + 1) * lam
                 + z11 * ((py - 1) * kappa * pz_inv)
                 + y12_tilde * (1 - z11 ** 2 * pz_inv))

    constant = relation.constant_term()
    coefficient = relation.coefficient_of(BIJECTION_VARS.monomial(y12=1, z11=2))
    if coefficient == pz_inv:
        sign = "+"
    elif coefficient == -pz_inv:
        sign = "-"
    else:
        sign = None
    report = BijektionReport(psi, relation, constant, coefficient, sign)
    report.checks = {
        "displayed_form": relation == displayed,
        "constant_in_maximal_ideal": val2(constant).is_positive(),
        "coefficient_is_unit": val2(coefficient) == 0,
        "coefficient_is_pm_inverse": sign is not None,
    }
    logger.info(f"Specialized relation for psi={[p.to_json() for p in psi]}: coefficient sign {sign}")
    return report


R1_VARS = VarSet(("y",))


def r1_relation() -> SparsePoly:
    y = SparsePoly.variable(R1_VARS, "y")
    return (1 + y) ** 2 - 1


def r1_component(b) -> str:
    """Component of (1 + y)^2 = 1 through y = b: plus for b = 0, minus for b = -2."""
    b = CycloElem.coerce(b)
    if (1 + b) ** 2 != 1:
        raise PreconditionError(f"(1 + {b})^2 != 1")
    return "plus" if not b else "minus"


def r1_idempotent_check() -> bool:
    """e = -y/2 satisfies e^2 = e modulo (1 + y)^2 - 1."""
    y = SparsePoly.variable(R1_VARS, "y")
    e = y * Fraction(-1, 2)
    return (e * e - e).exact_div(r1_relation()) is not None


def r1_torsion_free() -> bool:
    """The relation (1 + y)^2 - 1 is not divisible by 2, i.e. has a coefficient of valuation 0."""
    return any(val2(c) == 0 for c in r1_relation().terms.values())
