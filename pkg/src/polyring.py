"""
Sparse multivariate polynomials, truncated power series and polynomials localized at
designated units.

Polynomials are sympy ``PolyElement``s of a graded-lex ``PolyRing`` over QQ, over the
cyclotomic field QQ(zeta8) or over a prime field GF(p). The ground domain follows the
coefficients and widens when operands meet (QQ into QQ(zeta8) or into GF(p)); callers see
exact Python scalars (int, Fraction, CycloElem, ModInt) through ``terms``.

A truncated series lives in the same kind of ring with one extra leading generator whose
exponent is the graded degree of the monomial, so ``sympy.polys.ring_series`` truncates,
multiplies and inverts it with that generator as the series variable.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from sympy import I, Symbol, exp, isprime, pi
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import grlex
from sympy.polys.ring_series import rs_mul, rs_pow, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, PolyRing

from .coeffs import CycloElem, ModInt, format_rational, is_unit, simplify_scalar

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

CANONICAL_NAMES = (
    "x11", "x12", "x21", "x22",
    "y11", "y12", "y21", "y22",
    "z11", "z12", "z21", "z22",
)

# QQ[w]/(w^4 + 1); the ANP [1, 0] is zeta8.
CYCLOTOMIC = QQ.algebraic_field(exp(I * pi / 4))

DEGREE_GENERATOR = "_deg"


class IncompatibleRingError(ValueError):
    """Operands live in different rings (variables, cap, grading, units or ground field differ)."""


class NotAUnitError(ArithmeticError):
    """An element that must be inverted is not a unit of its ring."""


class UnboundVariableError(ValueError):
    """A substitution or evaluation leaves a variable without a value."""


def is_scalar(value) -> bool:
    return isinstance(value, (Rational, CycloElem, ModInt))


def scalar_inverse(c):
    if isinstance(c, Rational):
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return simplify_scalar(Fraction(1) / c)
    return c.inverse()


def format_coefficient(c) -> str:
    if isinstance(c, CycloElem):
        if c.is_rational():
            return format_rational(c.coords[0])
        return "[" + ",".join(format_rational(x) for x in c.coords) + "]"
    if isinstance(c, ModInt):
        return str(c.value)
    return format_rational(c)


# ground domains

@lru_cache(maxsize=None)
def prime_field(modulus: int):
    if not isprime(modulus):
        raise IncompatibleRingError(f"Polynomial coefficients modulo {modulus} need a prime modulus")
    return GF(modulus)


def domain_of(c):
    """Smallest ground domain holding the scalar c."""
    if isinstance(c, ModInt):
        return prime_field(c.modulus)
    if isinstance(c, CycloElem) and not c.is_rational():
        return CYCLOTOMIC
    if isinstance(c, (Rational, CycloElem)):
        return QQ
    raise TypeError(f"Not an exact scalar: {c!r}")


def join_domains(a, b):
    if a == b:
        return a
    if a.is_FiniteField or b.is_FiniteField:
        if a == QQ:
            return b
        if b == QQ:
            return a
        raise IncompatibleRingError(f"Coefficients over {a} and {b} do not mix")
    return CYCLOTOMIC


def _rational(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def to_domain(c, domain):
    """The scalar c as an element of the ground domain."""
    if domain.is_FiniteField:
        if isinstance(c, ModInt):
            if c.modulus != domain.mod:
                raise IncompatibleRingError(f"{c!r} is not an element of {domain}")
            return domain(c.value)
        if isinstance(c, CycloElem):
            if not c.is_rational():
                raise IncompatibleRingError(f"{c!r} is not an element of {domain}")
            c = c.coords[0]
        q = Fraction(c)
        if q.denominator % domain.mod == 0:
            raise ZeroDivisionError(f"{q} has no residue modulo {domain.mod}")
        return domain(q.numerator) / domain(q.denominator)
    if isinstance(c, ModInt):
        raise IncompatibleRingError(f"{c!r} is not an element of {domain}")
    if domain == QQ:
        if isinstance(c, CycloElem):
            if not c.is_rational():
                raise IncompatibleRingError(f"{c!r} is not rational")
            c = c.coords[0]
        q = Fraction(c)
        return QQ(q.numerator, q.denominator)
    coords = CycloElem.coerce(c).coords
    return domain([QQ(x.numerator, x.denominator) for x in reversed(coords)])


def from_domain(a, domain):
    """An element of the ground domain as int, Fraction, CycloElem or ModInt."""
    if domain.is_FiniteField:
        return ModInt(int(a) % domain.mod, domain.mod)
    if domain == QQ:
        return simplify_scalar(_rational(a))
    coords = [_rational(q) for q in reversed(a.to_list())]
    coords += [Fraction(0)] * (4 - len(coords))
    return simplify_scalar(CycloElem(*coords))


def _convert(element: PolyElement, ring: PolyRing) -> PolyElement:
    source = element.ring.domain
    target = ring.domain
    if source == target:
        return ring.from_dict(dict(element))
    if source == QQ and target == CYCLOTOMIC:
        return ring.from_dict({m: target([c]) for m, c in element.items()})
    return ring.from_dict({m: to_domain(from_domain(c, source), target) for m, c in element.items()})


@lru_cache(maxsize=None)
def poly_ring(names: Tuple[str, ...], domain) -> PolyRing:
    return PolyRing(tuple(Symbol(name) for name in names), domain, grlex)


class VarSet:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise ValueError(f"Duplicate variable names in {self.names}")
        if DEGREE_GENERATOR in self._index:
            raise ValueError(f"{DEGREE_GENERATOR!r} is reserved for the series degree")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnboundVariableError(f"Unknown variable {name!r} (ring has {self.names})") from None

    def monomial(self, **exponents: int) -> Monomial:
        exps = [0] * len(self.names)
        for name, e in exponents.items():
            exps[self.index(name)] = e
        return tuple(exps)

    def extend(self, *names: str) -> "VarSet":
        return VarSet(self.names + names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarSet({', '.join(self.names)})"


CANONICAL_VARS = VarSet(CANONICAL_NAMES)


class SparsePoly:
    """Polynomial over a VarSet, stored as a sympy PolyElement of a graded-lex ring."""

    __slots__ = ("varset", "element", "_terms")

    def __init__(self, varset: VarSet, terms: Optional[Mapping[Monomial, object]] = None):
        clean: Dict[Monomial, object] = {}
        domain = QQ
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != len(varset):
                raise ValueError(f"Exponent vector {m} does not match {varset}")
            if any(e < 0 for e in m):
                raise ValueError(f"Negative exponent in {m}")
            if c:
                clean[m] = clean.get(m, 0) + c
                domain = join_domains(domain, domain_of(c))
        ring = poly_ring(varset.names, domain)
        self.varset = varset
        self.element = ring.from_dict({m: to_domain(c, domain) for m, c in clean.items() if c})
        self._terms = None

    @classmethod
    def _wrap(cls, varset: VarSet, element: PolyElement) -> "SparsePoly":
        obj = object.__new__(cls)
        obj.varset = varset
        obj.element = element
        obj._terms = None
        return obj

    @classmethod
    def constant(cls, varset: VarSet, c) -> "SparsePoly":
        return cls(varset, {(0,) * len(varset): c})

    @classmethod
    def variable(cls, varset: VarSet, name: str) -> "SparsePoly":
        return cls._wrap(varset, poly_ring(varset.names, QQ).gens[varset.index(name)])

    @property
    def domain(self):
        return self.element.ring.domain

    @property
    def terms(self) -> Mapping[Monomial, object]:
        if self._terms is None:
            domain = self.domain
            self._terms = {m: from_domain(c, domain) for m, c in self.element.items()}
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self.element)

    def __bool__(self) -> bool:
        return bool(self.element)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.element), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.varset.index(name)
        return max((m[i] for m in self.element), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * len(self.varset), 0)

    def is_constant(self) -> bool:
        return self.element.is_ground

    def leading_term(self) -> Tuple[Monomial, object]:
        """Leading (monomial, coefficient) in graded lexicographic order."""
        if not self.element:
            raise ValueError("zero polynomial has no leading term")
        return self.element.LM, from_domain(self.element.LC, self.domain)

    def coefficient_of(self, monomial: Monomial):
        return self.terms.get(tuple(monomial), 0)

    # arithmetic

    def over(self, domain) -> PolyElement:
        """The underlying element with its coefficients moved into `domain`."""
        if self.domain == domain:
            return self.element
        return _convert(self.element, poly_ring(self.varset.names, domain))

    def _pair(self, other) -> Optional[Tuple[PolyElement, PolyElement]]:
        if isinstance(other, SparsePoly):
            if other.varset != self.varset:
                raise IncompatibleRingError(f"{self.varset} vs {other.varset}")
            domain = join_domains(self.domain, other.domain)
            return self.over(domain), other.over(domain)
        if is_scalar(other):
            domain = join_domains(self.domain, domain_of(other))
            mine = self.over(domain)
            return mine, mine.ring.ground_new(to_domain(other, domain))
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return SparsePoly._wrap(self.varset, pair[0] + pair[1])

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._wrap(self.varset, -self.element)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return SparsePoly._wrap(self.varset, pair[0] - pair[1])

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return SparsePoly._wrap(self.varset, pair[1] - pair[0])

    def scale(self, c) -> "SparsePoly":
        domain = join_domains(self.domain, domain_of(c))
        return SparsePoly._wrap(self.varset, self.over(domain).mul_ground(to_domain(c, domain)))

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return SparsePoly._wrap(self.varset, pair[0] * pair[1])

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return SparsePoly._wrap(self.varset, self.element ** exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly) and other.varset != self.varset:
            return False
        try:
            pair = self._pair(other)
        except IncompatibleRingError:
            return False
        if pair is None:
            return NotImplemented
        return pair[0] == pair[1]

    __hash__ = None

    def map_coefficients(self, fn) -> "SparsePoly":
        return SparsePoly(self.varset, {m: fn(c) for m, c in self.terms.items()})

    # substitution / evaluation

    def substitute(self, assignment: Mapping[str, object], partial: bool = False) -> "SparsePoly":
        """
        Ring homomorphism sending each variable to a polynomial or scalar.

        Args:
            assignment: variable name -> SparsePoly or scalar
            partial: keep unassigned variables as themselves (same ring)

        Returns:
            SparsePoly over the ring of the assigned polynomials
        """
        target = self.varset if partial else None
        domain = self.domain
        for value in assignment.values():
            if isinstance(value, SparsePoly):
                if target is not None and value.varset != target:
                    raise IncompatibleRingError(f"Substitution mixes {target} and {value.varset}")
                target = value.varset
                domain = join_domains(domain, value.domain)
            else:
                domain = join_domains(domain, domain_of(value))
        if target is None:
            target = self.varset
        ring = poly_ring(target.names, domain)

        images = []
        for name in self.varset.names:
            if name in assignment:
                value = assignment[name]
                if isinstance(value, SparsePoly):
                    images.append(value.over(domain))
                else:
                    images.append(ring.ground_new(to_domain(value, domain)))
            elif partial:
                images.append(ring.gens[target.index(name)])
            else:
                images.append(None)

        source = self.over(domain)
        occurring = {i for m in source for i, e in enumerate(m) if e}
        for i in sorted(occurring):
            if images[i] is None:
                raise UnboundVariableError(f"No value for variable {self.varset.names[i]!r}")

        if target == self.varset:
            return SparsePoly._wrap(target, source.compose(
                [(ring.gens[i], images[i]) for i in sorted(occurring)]
            ))

        powers: Dict[Tuple[int, int], PolyElement] = {}

        def power(i: int, e: int) -> PolyElement:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[key]

        acc = ring.zero
        for m, c in source.items():
            term = ring.ground_new(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return SparsePoly._wrap(target, acc)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at scalar values for every variable that occurs."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    name = self.varset.names[i]
                    if name not in values:
                        raise UnboundVariableError(f"No value for variable {name!r}")
                    term = term * values[name] ** e
            total = total + term
        return total

    def exact_div(self, divisor: "SparsePoly") -> Optional["SparsePoly"]:
        """Quotient self / divisor when the division is exact, otherwise None."""
        numerator, denominator = self._pair(divisor)
        if not denominator:
            raise ZeroDivisionError("division by the zero polynomial")
        quotient, remainder = numerator.div(denominator)
        if remainder:
            return None
        return SparsePoly._wrap(self.varset, quotient)

    # serialization

    def sorted_terms(self):
        domain = self.domain
        return [(m, from_domain(c, domain)) for m, c in self.element.terms()]

    def canonical(self) -> str:
        """Byte-stable text: graded-lex descending, explicit exponents."""
        if not self.element:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [format_coefficient(c)]
            for name, e in zip(self.varset.names, m):
                if e:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePoly({self.canonical()})"


def substitute(a: SparsePoly, assignment: Mapping[str, object]) -> SparsePoly:
    return a.substitute(assignment)


def coefficient_of(a: Union[SparsePoly, "TruncSeries"], monomial: Monomial):
    return a.coefficient_of(monomial)


class TruncSeries:
    """
    Power series truncated at graded degree `cap`.

    By default every variable is graded, i.e. terms of total degree > cap are discarded.
    A subset of graded variables gives the truncation by degree in those variables only;
    the ungraded ones then behave as polynomial variables.

    The element lives in a ring whose first generator carries the graded degree of each
    monomial; the series operations truncate in that generator at `cap + 1`.
    """

    __slots__ = ("varset", "cap", "graded", "element", "_positions")

    def __init__(self, poly: SparsePoly, cap: int, graded: Optional[Iterable[str]] = None):
        self._setup(poly.varset, cap, graded)
        ring = self._ring(poly.domain)
        positions = self._positions
        stamped = {}
        for m, c in poly.element.items():
            degree = sum(m[i] for i in positions)
            if degree <= cap:
                stamped[(degree,) + m] = c
        self.element = ring.from_dict(stamped)

    def _setup(self, varset: VarSet, cap: int, graded):
        if cap < 0:
            raise ValueError(f"Truncation cap must be non-negative, got {cap}")
        self.varset = varset
        self.cap = cap
        names = varset.names if graded is None else tuple(graded)
        self.graded = frozenset(names)
        self._positions = tuple(sorted(varset.index(name) for name in self.graded))

    def _ring(self, domain) -> PolyRing:
        return poly_ring((DEGREE_GENERATOR,) + self.varset.names, domain)

    @classmethod
    def _raw(cls, like: "TruncSeries", element: PolyElement, cap: Optional[int] = None) -> "TruncSeries":
        obj = object.__new__(cls)
        obj.varset = like.varset
        obj.cap = like.cap if cap is None else cap
        obj.graded = like.graded
        obj._positions = like._positions
        obj.element = element
        return obj

    @classmethod
    def constant(cls, varset: VarSet, cap: int, c, graded=None) -> "TruncSeries":
        return cls(SparsePoly.constant(varset, c), cap, graded)

    @classmethod
    def variable(cls, varset: VarSet, cap: int, name: str, graded=None) -> "TruncSeries":
        return cls(SparsePoly.variable(varset, name), cap, graded)

    @property
    def domain(self):
        return self.element.ring.domain

    @property
    def prec(self) -> int:
        return self.cap + 1

    def _check(self, other: "TruncSeries"):
        if (other.varset != self.varset or other.cap != self.cap
                or other.graded != self.graded):
            raise IncompatibleRingError(
                f"Truncated rings differ: cap {self.cap} vs {other.cap}, {self.varset} vs {other.varset}"
            )

    def _over(self, domain) -> PolyElement:
        if self.domain == domain:
            return self.element
        return _convert(self.element, self._ring(domain))

    def _pair(self, other) -> Optional[Tuple[PolyElement, PolyElement]]:
        if isinstance(other, TruncSeries):
            self._check(other)
            domain = join_domains(self.domain, other.domain)
            return self._over(domain), other._over(domain)
        if is_scalar(other):
            domain = join_domains(self.domain, domain_of(other))
            mine = self._over(domain)
            return mine, mine.ring.ground_new(to_domain(other, domain))
        return None

    @property
    def poly(self) -> SparsePoly:
        ring = poly_ring(self.varset.names, self.domain)
        return SparsePoly._wrap(self.varset, ring.from_dict({m[1:]: c for m, c in self.element.items()}))

    def __len__(self) -> int:
        return len(self.element)

    def __bool__(self) -> bool:
        return bool(self.element)

    def constant_term(self):
        c = self.element.get(self.element.ring.zero_monom)
        return 0 if c is None else from_domain(c, self.domain)

    def coefficient_of(self, monomial: Monomial):
        monomial = tuple(monomial)
        degree = sum(monomial[i] for i in self._positions)
        c = self.element.get((degree,) + monomial)
        return 0 if c is None else from_domain(c, self.domain)

    def degree_zero_part(self) -> SparsePoly:
        """Terms of graded degree 0 (a polynomial in the ungraded variables)."""
        ring = poly_ring(self.varset.names, self.domain)
        return SparsePoly._wrap(self.varset, ring.from_dict(
            {m[1:]: c for m, c in self.element.items() if not m[0]}
        ))

    # arithmetic

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return TruncSeries._raw(self, pair[0] + pair[1])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self, -self.element)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return TruncSeries._raw(self, pair[0] - pair[1])

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return TruncSeries._raw(self, pair[1] - pair[0])

    def scale(self, c) -> "TruncSeries":
        domain = join_domains(self.domain, domain_of(c))
        return TruncSeries._raw(self, self._over(domain).mul_ground(to_domain(c, domain)))

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return TruncSeries._raw(self, rs_mul(a, b, a.ring.gens[0], self.prec))

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.invert_unit() ** (-exponent)
        if exponent == 0:
            return TruncSeries._raw(self, self.element.ring.one)
        return TruncSeries._raw(self, rs_pow(self.element, exponent, self.element.ring.gens[0], self.prec))

    def invert_unit(self) -> "TruncSeries":
        """Inverse by Newton iteration in the degree generator; the degree-0 part must be a unit scalar."""
        head = self.degree_zero_part()
        if not head.is_constant():
            raise NotAUnitError(f"Degree-0 part {head.canonical()} is not a scalar")
        a0 = head.constant_term()
        if not a0 or not (isinstance(a0, ModInt) or is_unit(a0)):
            raise NotAUnitError(f"Constant term {a0!r} is not a unit of the valuation ring")
        degree = self.element.ring.gens[0]
        try:
            inverse = rs_series_inversion(self.element, degree, self.prec)
        except (NotImplementedError, ValueError) as e:
            raise NotAUnitError(str(e)) from e
        return TruncSeries._raw(self, rs_trunc(inverse, degree, self.prec))

    def inverse(self) -> "TruncSeries":
        return self.invert_unit()

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries) and (
                other.varset != self.varset or other.cap != self.cap or other.graded != self.graded):
            return False
        try:
            pair = self._pair(other)
        except IncompatibleRingError:
            return False
        if pair is None:
            return NotImplemented
        return pair[0] == pair[1]

    __hash__ = None

    def truncate(self, cap: int) -> "TruncSeries":
        if cap > self.cap:
            raise ValueError(f"Cannot raise the cap from {self.cap} to {cap}")
        if cap < 0:
            raise ValueError(f"Truncation cap must be non-negative, got {cap}")
        return TruncSeries._raw(self, rs_trunc(self.element, self.element.ring.gens[0], cap + 1), cap)

    def substitute(self, assignment: Mapping[str, object]) -> "TruncSeries":
        """Apply a substitution to the stored polynomial and re-truncate."""
        return TruncSeries(self.poly.substitute(assignment, partial=True), self.cap, self.graded)

    def specialize_zero(self, names: Iterable[str]) -> "TruncSeries":
        """Set the named variables to 0."""
        slots = [1 + self.varset.index(name) for name in names]
        kept = {m: c for m, c in self.element.items() if not any(m[i] for i in slots)}
        return TruncSeries._raw(self, self.element.ring.from_dict(kept))

    def canonical(self) -> str:
        return self.poly.canonical()

    def __repr__(self) -> str:
        return f"TruncSeries(cap={self.cap}, terms={len(self.element)})"


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def invert_unit(a: TruncSeries) -> TruncSeries:
    return a.invert_unit()


class LocalizedRing:
    """Polynomials over a VarSet with a tuple of designated units inverted."""

    __slots__ = ("varset", "units", "_key")

    def __init__(self, varset: VarSet, units: Sequence[SparsePoly]):
        self.varset = varset
        self.units = tuple(units)
        for u in self.units:
            if u.varset != varset:
                raise IncompatibleRingError(f"Unit {u.canonical()} is not over {varset}")
            if u.is_constant():
                raise ValueError(f"Designated unit {u.canonical()} must not be constant")
            if not is_unit(u.constant_term()):
                raise NotAUnitError(f"Unit {u.canonical()} needs a constant term of valuation 0")
        self._key = (varset, tuple(u.canonical() for u in self.units))

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalizedRing) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def element(self, numerator, powers: Optional[Sequence[int]] = None) -> "LocalizedPoly":
        if not isinstance(numerator, SparsePoly):
            numerator = SparsePoly.constant(self.varset, numerator)
        return LocalizedPoly(self, numerator, powers)

    def constant(self, c) -> "LocalizedPoly":
        return self.element(c)

    def variable(self, name: str) -> "LocalizedPoly":
        return self.element(SparsePoly.variable(self.varset, name))

    def unit_power(self, index: int, k: int) -> "LocalizedPoly":
        """units[index]^k for any integer k."""
        if k >= 0:
            return self.element(self.units[index] ** k)
        powers = [0] * len(self.units)
        powers[index] = -k
        return self.element(SparsePoly.constant(self.varset, 1), powers)

    def denominator(self, powers: Sequence[int]) -> SparsePoly:
        d = SparsePoly.constant(self.varset, 1)
        for u, k in zip(self.units, powers):
            if k:
                d = d * u ** k
        return d


class LocalizedPoly:
    """
    numerator * prod(units[i] ** -powers[i]).

    Normalized so that no unit with a positive power divides the numerator.
    """

    __slots__ = ("ring", "numerator", "powers")

    def __init__(self, ring: LocalizedRing, numerator: SparsePoly, powers: Optional[Sequence[int]] = None):
        if numerator.varset != ring.varset:
            raise IncompatibleRingError(f"Numerator over {numerator.varset}, ring over {ring.varset}")
        powers = list(powers) if powers is not None else [0] * len(ring.units)
        if len(powers) != len(ring.units) or min(powers, default=0) < 0:
            raise ValueError(f"Invalid unit powers {powers}")
        if not numerator:
            powers = [0] * len(powers)
        for i, u in enumerate(ring.units):
            while powers[i]:
                q = numerator.exact_div(u)
                if q is None:
                    break
                numerator = q
                powers[i] -= 1
        self.ring = ring
        self.numerator = numerator
        self.powers = tuple(powers)

    @property
    def power(self) -> int:
        """Exponent of the single designated unit."""
        if len(self.powers) != 1:
            raise ValueError("power is defined for rings with one designated unit")
        return self.powers[0]

    def _lift(self, other) -> Optional["LocalizedPoly"]:
        if isinstance(other, LocalizedPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise IncompatibleRingError("Localized polynomials over different rings")
            return other
        if isinstance(other, SparsePoly):
            return self.ring.element(other)
        if is_scalar(other):
            return self.ring.constant(other)
        return None

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        powers = [max(a, b) for a, b in zip(self.powers, other.powers)]
        left = self.numerator * self.ring.denominator([k - a for k, a in zip(powers, self.powers)])
        right = other.numerator * self.ring.denominator([k - b for k, b in zip(powers, other.powers)])
        return LocalizedPoly(self.ring, left + right, powers)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedPoly(self.ring, -self.numerator, self.powers)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            return LocalizedPoly(self.ring, self.numerator.scale(other), self.powers)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        powers = [a + b for a, b in zip(self.powers, other.powers)]
        return LocalizedPoly(self.ring, self.numerator * other.numerator, powers)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return LocalizedPoly(self.ring, self.numerator ** exponent, [k * exponent for k in self.powers])

    def inverse(self) -> "LocalizedPoly":
        """Inverse when the numerator is a scalar times a product of unit powers."""
        rest = self.numerator
        if not rest:
            raise ZeroDivisionError("0 has no inverse")
        found = [0] * len(self.ring.units)
        for i, u in enumerate(self.ring.units):
            while True:
                q = rest.exact_div(u)
                if q is None:
                    break
                rest = q
                found[i] += 1
        if not rest.is_constant():
            raise NotAUnitError(f"{self.numerator.canonical()} is not a unit of the localized ring")
        c_inv = scalar_inverse(rest.constant_term())
        up = [max(0, k - j) for k, j in zip(self.powers, found)]
        down = [max(0, j - k) for k, j in zip(self.powers, found)]
        return LocalizedPoly(self.ring, self.ring.denominator(up).scale(c_inv), down)

    def cross_terms(self, other: "LocalizedPoly") -> Tuple[SparsePoly, SparsePoly]:
        """(self.num * den(other), other.num * den(self)): equal iff the values are equal."""
        other = self._lift(other)
        return (self.numerator * self.ring.denominator(other.powers),
                other.numerator * self.ring.denominator(self.powers))

    def __eq__(self, other) -> bool:
        try:
            lifted = self._lift(other)
        except IncompatibleRingError:
            return False
        if lifted is None:
            return NotImplemented
        left, right = self.cross_terms(lifted)
        return left == right

    __hash__ = None

    def is_polynomial(self) -> bool:
        return not any(self.powers)

    def to_poly(self) -> SparsePoly:
        if not self.is_polynomial():
            raise ValueError(f"{self.canonical()} still has a unit denominator")
        return self.numerator

    def cleared(self, multiplier: SparsePoly) -> SparsePoly:
        """The polynomial self * multiplier; raises when multiplier does not clear the denominator."""
        product = self.numerator * multiplier
        q = product.exact_div(self.ring.denominator(self.powers))
        if q is None:
            raise ValueError(f"{multiplier.canonical()} does not clear the denominator of {self.canonical()}")
        return q

    def evaluate(self, values: Mapping[str, object]):
        num = self.numerator.evaluate(values)
        den = 1
        for u, k in zip(self.ring.units, self.powers):
            if k:
                den = den * u.evaluate(values) ** k
        if not den:
            raise ZeroDivisionError("designated unit vanishes at this point")
        return simplify_scalar(num * scalar_inverse(den))

    def canonical(self) -> str:
        text = f"({self.numerator.canonical()})"
        for u, k in zip(self.ring.units, self.powers):
            if k:
                text += f"*({u.canonical()})^-{k}"
        return text

    def __repr__(self) -> str:
        return f"LocalizedPoly({self.canonical()})"
