"""
Exact scalars: rationals, the cyclotomic field Q(zeta8) = Q[w]/(w^4 + 1) with its
2-adic valuation, and residues modulo n.
"""
import logging
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Optional, Tuple, Union

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, "CycloElem", "ModInt"]

_ZERO = Fraction(0)


def v2_int(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v2 of 0 is infinite")
    n = abs(n)
    return (n & -n).bit_length() - 1


def format_rational(q: Rational) -> str:
    """Serialize a rational as "num/den" (denominator always present)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@total_ordering
class Val:
    """A 2-adic valuation value: an exact rational, or +inf for zero."""

    __slots__ = ("value",)

    def __init__(self, value: Optional[Rational] = None):
        self.value = None if value is None else Fraction(value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def is_positive(self) -> bool:
        return self.value is None or self.value > 0

    def __add__(self, other: "Val") -> "Val":
        if not isinstance(other, Val):
            other = Val(other)
        if self.is_infinite or other.is_infinite:
            return INFINITY
        return Val(self.value + other.value)

    def _key(self, other):
        if isinstance(other, Val):
            return other.value
        if isinstance(other, Rational):
            return Fraction(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        key = self._key(other)
        if key is NotImplemented:
            return NotImplemented
        return self.value == key

    def __lt__(self, other) -> bool:
        key = self._key(other)
        if key is NotImplemented:
            return NotImplemented
        if self.value is None:
            return False
        if key is None:
            return True
        return self.value < key

    def __hash__(self) -> int:
        return hash(("Val", self.value))

    def __repr__(self) -> str:
        return "+inf" if self.value is None else f"Val({self.value})"

    def to_json(self) -> str:
        return "+inf" if self.value is None else format_rational(self.value)


INFINITY = Val(None)


class CycloElem:
    """
    Element c0 + c1*w + c2*w^2 + c3*w^3 of Q(zeta8), w = zeta8, reduced modulo w^4 + 1.

    Instances are immutable. Plain ints and Fractions mix freely with CycloElem in
    arithmetic and comparisons.
    """

    __slots__ = ("_c",)

    def __init__(self, c0: Rational = 0, c1: Rational = 0, c2: Rational = 0, c3: Rational = 0):
        self._c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @classmethod
    def _raw(cls, coords: Tuple[Fraction, Fraction, Fraction, Fraction]) -> "CycloElem":
        obj = object.__new__(cls)
        obj._c = coords
        return obj

    @classmethod
    def coerce(cls, value) -> "CycloElem":
        if isinstance(value, CycloElem):
            return value
        if isinstance(value, Rational):
            return cls(value)
        raise TypeError(f"Cannot interpret {value!r} as an element of Q(zeta8)")

    @property
    def coords(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._c

    def is_rational(self) -> bool:
        return not (self._c[1] or self._c[2] or self._c[3])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c[0]

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Rational):
            c = self._c
            return CycloElem._raw((c[0] + other, c[1], c[2], c[3]))
        if not isinstance(other, CycloElem):
            return NotImplemented
        return CycloElem._raw(tuple(a + b for a, b in zip(self._c, other._c)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._raw(tuple(-a for a in self._c))

    def __sub__(self, other):
        if isinstance(other, Rational):
            c = self._c
            return CycloElem._raw((c[0] - other, c[1], c[2], c[3]))
        if not isinstance(other, CycloElem):
            return NotImplemented
        return CycloElem._raw(tuple(a - b for a, b in zip(self._c, other._c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return CycloElem._raw(tuple(a * other for a in self._c))
        if not isinstance(other, CycloElem):
            return NotImplemented
        a, b = self._c, other._c
        r = [_ZERO] * 7
        for i in range(4):
            if a[i]:
                for j in range(4):
                    if b[j]:
                        r[i + j] += a[i] * b[j]
        # w^4 = -1
        return CycloElem._raw((r[0] - r[4], r[1] - r[5], r[2] - r[6], r[3]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta8)")
            return CycloElem._raw(tuple(a / other for a in self._c))
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloElem):
            return self._c == other._c
        if isinstance(other, Rational):
            return self.is_rational() and self._c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self._c[0])
        return hash(self._c)

    # Galois structure

    def conjugate(self, k: int) -> "CycloElem":
        """Image under the automorphism w -> w^k (k odd)."""
        if k % 2 == 0:
            raise ValueError(f"w -> w^{k} is not an automorphism of Q(zeta8)")
        out = [_ZERO] * 4
        for j, c in enumerate(self._c):
            if not c:
                continue
            m = (j * k) % 8
            if m < 4:
                out[m] += c
            else:
                out[m - 4] -= c
        return CycloElem._raw(tuple(out))

    def inverse(self) -> "CycloElem":
        return field_inverse(self)

    def to_json(self):
        if self.is_rational():
            return format_rational(self._c[0])
        return [format_rational(c) for c in self._c]

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self._c):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*w^{j}")
        return "CycloElem(" + (" + ".join(terms) or "0") + ")"


ONE = CycloElem(1)
ZETA8 = CycloElem(0, 1)
I = CycloElem(0, 0, 1)


def norm(a: Union[CycloElem, Rational]) -> Fraction:
    """Norm from Q(zeta8) to Q: the product of the four conjugates."""
    a = CycloElem.coerce(a)
    if a.is_rational():
        return a.coords[0] ** 4
    product = a * a.conjugate(3) * a.conjugate(5) * a.conjugate(7)
    return product.to_rational()


def field_inverse(a: Union[CycloElem, Rational]) -> CycloElem:
    """Inverse in Q(zeta8): conj3 * conj5 * conj7 / norm."""
    a = CycloElem.coerce(a)
    if not a:
        raise ZeroDivisionError("0 has no inverse in Q(zeta8)")
    if a.is_rational():
        return CycloElem(1 / a.coords[0])
    cofactor = a.conjugate(3) * a.conjugate(5) * a.conjugate(7)
    return cofactor / norm(a)


def val2(a) -> Val:
    """
    2-adic valuation normalized by v(2) = 1, so v(zeta8 - 1) = 1/4.

    Args:
        a: int, Fraction or CycloElem

    Returns:
        Val, +inf for zero
    """
    if isinstance(a, CycloElem):
        if not a:
            return INFINITY
        if a.is_rational():
            return val2(a.coords[0])
        n = norm(a)
        return Val(Fraction(v2_int(n.numerator) - v2_int(n.denominator), 4))
    if isinstance(a, Rational):
        if a == 0:
            return INFINITY
        q = Fraction(a)
        return Val(v2_int(q.numerator) - v2_int(q.denominator))
    raise TypeError(f"No 2-adic valuation for {type(a).__name__}")


def is_unit(a) -> bool:
    """True when a is a unit of the valuation ring (valuation exactly 0)."""
    return val2(a) == 0


def simplify_scalar(a):
    """Narrow a scalar to int or Fraction when it is rational."""
    if isinstance(a, CycloElem):
        if not a.is_rational():
            return a
        a = a.coords[0]
    if isinstance(a, Fraction) and a.denominator == 1:
        return a.numerator
    return a


def scalar_to_json(a):
    if isinstance(a, (CycloElem, Val)):
        return a.to_json()
    if isinstance(a, ModInt):
        return a.value
    if isinstance(a, Rational):
        return format_rational(a)
    raise TypeError(f"Cannot serialize scalar {a!r}")


class ModInt:
    """Residue class modulo n."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 2:
            raise ValueError(f"Modulus must be at least 2, got {modulus}")
        self.value = value % modulus
        self.modulus = modulus

    def _other(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError(f"Cannot mix Z/{self.modulus} and Z/{other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else ModInt(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else ModInt(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else ModInt(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else ModInt(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return ModInt(pow(self.value, exponent, self.modulus), self.modulus)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = ModInt(other, self.modulus)
        return self * other.inverse()

    def inverse(self) -> "ModInt":
        try:
            return ModInt(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError:
            raise ZeroDivisionError(f"{self.value} is not invertible modulo {self.modulus}") from None

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"
