"""
2x2 matrices over a commutative ring and small finite local rings.

Entries may be ints, Fractions, CycloElem, ModInt, DualNumber, TruncSeries or
LocalizedPoly; the ring supplies unit inversion through `inverse()`.
"""
import logging
from dataclasses import dataclass
from itertools import product
from numbers import Rational
from typing import List, Tuple

from .coeffs import ModInt
from .polyring import format_coefficient, scalar_inverse

logger = logging.getLogger(__name__)


class SingularMatrixError(ArithmeticError):
    """The determinant of a matrix is not invertible in its ring."""


def ring_inverse(x):
    if isinstance(x, Rational):
        return scalar_inverse(x)
    return x.inverse()


def _is_zero(x) -> bool:
    return not x


class Mat2:
    """Immutable 2x2 matrix (a11 a12; a21 a22)."""

    __slots__ = ("a11", "a12", "a21", "a22")

    def __init__(self, a11, a12, a21, a22):
        self.a11 = a11
        self.a12 = a12
        self.a21 = a21
        self.a22 = a22

    @classmethod
    def identity(cls, like=0) -> "Mat2":
        zero = like - like
        one = zero + 1
        return cls(one, zero, zero, one)

    @classmethod
    def scalar(cls, c, like=0) -> "Mat2":
        zero = like - like
        return cls(zero + c, zero, zero, zero + c)

    @property
    def entries(self) -> Tuple:
        return (self.a11, self.a12, self.a21, self.a22)

    def map(self, fn) -> "Mat2":
        return Mat2(*(fn(x) for x in self.entries))

    def __add__(self, other):
        if isinstance(other, Mat2):
            return Mat2(*(a + b for a, b in zip(self.entries, other.entries)))
        return self + Mat2.scalar(other, self.a11)

    def __sub__(self, other):
        if isinstance(other, Mat2):
            return Mat2(*(a - b for a, b in zip(self.entries, other.entries)))
        return self - Mat2.scalar(other, self.a11)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
            )
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Mat2.identity(self.a11)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self):
        return self.a11 + self.a22

    def adjugate(self) -> "Mat2":
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)

    def inverse(self) -> "Mat2":
        d = self.det()
        try:
            d_inv = ring_inverse(d)
        except ArithmeticError as e:
            raise SingularMatrixError(f"Determinant is not invertible: {e}") from e
        return self.adjugate() * d_inv

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def is_identity(self) -> bool:
        return self.a11 == 1 and _is_zero(self.a12) and _is_zero(self.a21) and self.a22 == 1

    def is_upper_triangular(self) -> bool:
        return _is_zero(self.a21)

    def canonical(self) -> str:
        def text(x):
            return x.canonical() if hasattr(x, "canonical") else format_coefficient(x)
        return "[[" + ", ".join(map(text, self.entries[:2])) + "], [" + ", ".join(map(text, self.entries[2:])) + "]]"

    def __repr__(self) -> str:
        return f"Mat2({self.a11!r}, {self.a12!r}; {self.a21!r}, {self.a22!r})"


def commutator(Y: Mat2, Z: Mat2) -> Mat2:
    """[Y, Z] = Y Z Y^-1 Z^-1."""
    return Y * Z * Y.inverse() * Z.inverse()


def group_word(X: Mat2, Y: Mat2, Z: Mat2) -> Mat2:
    """X^2 Y^4 [Y, Z]."""
    return X ** 2 * Y ** 4 * commutator(Y, Z)


def commutator_minors(A: Mat2, B: Mat2) -> Tuple:
    """
    The 2x2 minors of ((a11 - a22, a12, a21), (b11 - b22, b12, b21)).

    AB - BA = (m3, m1; -m2, -m3), so A and B commute iff all three vanish.
    """
    da = A.a11 - A.a22
    db = B.a11 - B.a22
    m1 = da * B.a12 - A.a12 * db
    m2 = da * B.a21 - A.a21 * db
    m3 = A.a12 * B.a21 - A.a21 * B.a12
    return (m1, m2, m3)


def commute_criterion(A: Mat2, B: Mat2) -> bool:
    return all(_is_zero(m) for m in commutator_minors(A, B))


class DualNumber:
    """a + b*e in F2[e]/(e^2)."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = a % 2
        self.b = b % 2

    @staticmethod
    def _lift(other):
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, int):
            return DualNumber(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else DualNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else DualNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else DualNumber(o.a - self.a, o.b - self.b)

    def __neg__(self):
        return DualNumber(-self.a, -self.b)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "DualNumber":
        if not self.a:
            raise ZeroDivisionError(f"{self} lies in the maximal ideal")
        return DualNumber(1, -self.b)

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"{self.a}+{self.b}e"


@dataclass(frozen=True)
class FiniteRingSpec:
    """A small commutative finite ring: Z/n or F2[e]/(e^2)."""

    kind: str
    modulus: int = 2

    @classmethod
    def z_mod(cls, n: int) -> "FiniteRingSpec":
        return cls("Z/n", n)

    @classmethod
    def f2(cls) -> "FiniteRingSpec":
        return cls("Z/n", 2)

    @classmethod
    def dual_f2(cls) -> "FiniteRingSpec":
        return cls("F2[e]/(e^2)", 2)

    @property
    def label(self) -> str:
        if self.kind == "F2[e]/(e^2)":
            return "F2[e]/(e^2)"
        return "F2" if self.modulus == 2 else f"Z/{self.modulus}"

    @property
    def local_with_residue_f2(self) -> bool:
        if self.kind == "F2[e]/(e^2)":
            return True
        return self.modulus & (self.modulus - 1) == 0 and self.modulus <= 8

    def elements(self) -> List:
        if self.kind == "F2[e]/(e^2)":
            return [DualNumber(a, b) for a in range(2) for b in range(2)]
        return [ModInt(v, self.modulus) for v in range(self.modulus)]

    def residue(self, x) -> int:
        """Image in the residue field F2 (only for local rings with residue field F2)."""
        if isinstance(x, DualNumber):
            return x.a
        return x.value % 2

    def all_matrices(self):
        elems = self.elements()
        for entries in product(elems, repeat=4):
            yield Mat2(*entries)


def unipotent_fiber(spec: FiniteRingSpec) -> List[Mat2]:
    """Matrices in GL2(R) reducing to (1 *; 0 1) modulo the maximal ideal."""
    if not spec.local_with_residue_f2:
        raise ValueError(f"{spec.label} is not a supported local ring with residue field F2")
    fiber = []
    for m in spec.all_matrices():
        if (spec.residue(m.a11) == 1 and spec.residue(m.a22) == 1
                and spec.residue(m.a21) == 0 and spec.residue(m.det()) == 1):
            fiber.append(m)
    return fiber


def unipotent_fiber_order(spec: FiniteRingSpec) -> int:
    order = len(unipotent_fiber(spec))
    logger.debug(f"Unipotent fiber over {spec.label} has order {order}")
    return order


def is_closed_under_products(mats: List[Mat2]) -> bool:
    keys = {m.entries for m in mats}
    return all((a * b).entries in keys for a in mats for b in mats)
