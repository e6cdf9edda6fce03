"""
Buchberger's algorithm over prime fields and the Krull dimension of the quotient ring,
read off the leading monomials.

The loop runs on sympy ``PolyElement``s over ``GF(p)`` in a ring whose generators are
listed from largest to smallest and whose ordering is sympy's ``grevlex`` or ``grlex``.
SparsePoly inputs are moved into that ring and the basis is moved back.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul
from sympy.polys.orderings import grevlex, grlex
from sympy.polys.rings import PolyElement, PolyRing

from .config import Config
from .polyring import Monomial, SparsePoly, VarSet, join_domains, poly_ring, prime_field

logger = logging.getLogger(__name__)

ORDERINGS = {"degrevlex": grevlex, "deglex": grlex}
ORDER_KINDS = tuple(ORDERINGS)


@dataclass(frozen=True)
class MonomialOrder:
    """A graded order; `variables` lists the ring's variables from largest to smallest."""

    kind: str
    variables: Tuple[str, ...]

    def __post_init__(self):
        if self.kind not in ORDERINGS:
            raise ValueError(f"Unknown monomial order {self.kind!r}, expected one of {ORDER_KINDS}")

    def positions(self, varset: VarSet) -> Tuple[int, ...]:
        positions = tuple(varset.index(name) for name in self.variables)
        if len(positions) != len(varset):
            raise ValueError(f"Order over {self.variables} does not cover {varset}")
        return positions

    def key_function(self, varset: VarSet):
        positions = self.positions(varset)
        ordering = ORDERINGS[self.kind]

        def key(m: Monomial):
            return ordering(tuple(m[i] for i in positions))
        return key

    def ring(self, domain) -> PolyRing:
        return PolyRing(tuple(Symbol(name) for name in self.variables), domain, ORDERINGS[self.kind])


def to_ordered(f: SparsePoly, order: MonomialOrder, ring: PolyRing) -> PolyElement:
    """f as an element of `ring`, whose generators follow the order's variables."""
    positions = order.positions(f.varset)
    return ring.from_dict({tuple(m[i] for i in positions): c for m, c in f.over(ring.domain).items()})


def from_ordered(h: PolyElement, order: MonomialOrder, varset: VarSet) -> SparsePoly:
    positions = order.positions(varset)
    target = poly_ring(varset.names, h.ring.domain)
    terms = {}
    for m, c in h.items():
        exps = [0] * len(varset)
        for i, e in zip(positions, m):
            exps[i] = e
        terms[tuple(exps)] = c
    return SparsePoly._wrap(varset, target.from_dict(terms))


def _common_ring(polys: Sequence[SparsePoly], order: MonomialOrder) -> PolyRing:
    domain = polys[0].domain
    for f in polys[1:]:
        domain = join_domains(domain, f.domain)
    return order.ring(domain)


@dataclass
class GroebnerBasis:
    generators: List[SparsePoly]
    order: MonomialOrder
    varset: VarSet
    reduced: bool = True
    inputs_reduce_to_zero: bool = True

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def leading_monomials(self) -> List[Monomial]:
        key = self.order.key_function(self.varset)
        return [max(g.terms, key=key) for g in self.generators]

    def canonical(self) -> List[str]:
        return sorted(g.canonical() for g in self.generators)


# the loop on ring elements

def s_poly(f: PolyElement, g: PolyElement) -> PolyElement:
    lcm = monomial_lcm(f.LM, g.LM)
    return (f.monic().mul_monom(monomial_div(lcm, f.LM))
            - g.monic().mul_monom(monomial_div(lcm, g.LM)))


def normal_form(f: PolyElement, basis: Sequence[PolyElement]) -> PolyElement:
    """Full reduction: no term of the result is divisible by a leading monomial of basis."""
    divisors = [g for g in basis if g]
    if not divisors or not f:
        return f
    return f.rem(divisors)


def _interreduce(basis: List[PolyElement]) -> List[PolyElement]:
    leads = [g.LM for g in basis]
    minimal = []
    for i, g in enumerate(basis):
        dominated = any(
            j != i and monomial_divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        )
        if not dominated:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(normal_form(g, others).monic())
    order = basis[0].ring.order
    return sorted(out, key=lambda p: order(p.LM), reverse=True)


def groebner_elements(gens: Sequence[PolyElement]) -> Tuple[List[PolyElement], int]:
    """
    Reduced Groebner basis of ring elements with the normal selection strategy and the
    coprime leading monomial criterion. Returns the basis and the number of reductions.
    """
    basis = [g.monic() for g in gens if g]
    if not basis:
        return [], 0
    ring = basis[0].ring
    order = ring.order
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    reductions = 0

    while pairs:
        pair = min(pairs, key=lambda p: order(monomial_lcm(basis[p[0]].LM, basis[p[1]].LM)))
        pairs.remove(pair)
        f, g = basis[pair[0]], basis[pair[1]]
        if monomial_mul(f.LM, g.LM) == monomial_lcm(f.LM, g.LM):
            continue
        h = normal_form(s_poly(f, g), basis)
        reductions += 1
        if h:
            basis.append(h.monic())
            new = len(basis) - 1
            pairs.extend((k, new) for k in range(new))
            if h.is_ground:
                break

    if any(g.is_ground for g in basis):
        return [ring.one], reductions
    return _interreduce(basis), reductions


# SparsePoly surface

def reduce(f: SparsePoly, basis: Sequence[SparsePoly], order: MonomialOrder) -> SparsePoly:
    """Normal form of f modulo basis: no term is divisible by a leading monomial."""
    ring = _common_ring([f, *basis], order)
    reduced = normal_form(to_ordered(f, order, ring), [to_ordered(g, order, ring) for g in basis])
    return from_ordered(reduced, order, f.varset)


def s_polynomial(f: SparsePoly, g: SparsePoly, order: MonomialOrder) -> SparsePoly:
    ring = _common_ring([f, g], order)
    return from_ordered(s_poly(to_ordered(f, order, ring), to_ordered(g, order, ring)), order, f.varset)


def buchberger(gens: Sequence[SparsePoly], order: MonomialOrder,
               varset: Optional[VarSet] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens, as SparsePolys over their VarSet."""
    if varset is None:
        if not gens:
            raise ValueError("buchberger needs generators or an explicit varset")
        varset = gens[0].varset
    nonzero = [g for g in gens if g]
    if not nonzero:
        return GroebnerBasis([], order, varset)
    ring = _common_ring(nonzero, order)
    elements = [to_ordered(g, order, ring) for g in nonzero]
    basis, reductions = groebner_elements(elements)
    result = GroebnerBasis([from_ordered(h, order, varset) for h in basis], order, varset)
    result.inputs_reduce_to_zero = all(not normal_form(e, basis) for e in elements)
    logger.debug(f"Groebner basis with {len(basis)} elements after {reductions} reductions")
    if not result.inputs_reduce_to_zero:
        logger.warning("An input generator does not reduce to 0 modulo the computed basis")
    return result


def is_groebner(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of the basis reduces to 0."""
    if not gb.generators:
        return True
    ring = _common_ring(gb.generators, gb.order)
    elements = [to_ordered(g, gb.order, ring) for g in gb.generators]
    return all(not normal_form(s_poly(f, g), elements) for f, g in combinations(elements, 2))


def dim_quotient(gb: GroebnerBasis, num_vars: int) -> int:
    """
    Krull dimension of k[x_1..x_n]/I: the size of the largest set of variables S such that
    no leading monomial involves only variables of S. The unit ideal gives -1.
    """
    if gb.is_unit_ideal():
        return -1
    if num_vars != len(gb.varset):
        raise ValueError(f"Basis lives in {len(gb.varset)} variables, not {num_vars}")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    for size in range(num_vars, -1, -1):
        for subset in combinations(range(num_vars), size):
            chosen = frozenset(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0


def polynomial_over(varset: VarSet, modulus: int, terms: Dict[Monomial, int]) -> SparsePoly:
    """A polynomial with integer coefficients read in GF(modulus)."""
    ring = poly_ring(varset.names, prime_field(modulus))
    return SparsePoly._wrap(varset, ring.from_dict({tuple(m): ring.domain(c) for m, c in terms.items()}))


def variable_over(varset: VarSet, modulus: int, name: str) -> SparsePoly:
    return polynomial_over(varset, modulus, {varset.monomial(**{name: 1}): 1})


DETERMINANTAL_VARS = VarSet(("x", "y", "z", "x21", "y21", "z21"))
SHIFTED_VARS = VarSet(("x12", "y12", "z12", "x21", "y21", "z21"))


def two_by_two_minors(top: Sequence[SparsePoly], bottom: Sequence[SparsePoly]) -> List[SparsePoly]:
    """Minors of the matrix with rows `top` and `bottom`, column pairs (1,2), (1,3), (2,3)."""
    return [top[i] * bottom[j] - top[j] * bottom[i] for i, j in ((0, 1), (0, 2), (1, 2))]


def determinantal_ideal(modulus: int, varset: VarSet = DETERMINANTAL_VARS,
                        shift: Tuple[int, int, int] = (0, 0, 0)) -> List[SparsePoly]:
    """The 2x2 minors of (s1 + v1, s2 + v2, s3 + v3; v4, v5, v6) over GF(modulus)."""
    v = [variable_over(varset, modulus, name) for name in varset]
    top = [v[i] + s for i, s in enumerate(shift)]
    return two_by_two_minors(top, v[3:])


@dataclass
class DeterminantalReport:
    dim_f2: int
    dim_f3: int
    dim_two_minors: int
    dims_random_orders: List[int]
    random_orders: List[Tuple[str, ...]]
    shift_checks: Dict[str, bool] = field(default_factory=dict)
    groebner_ok: bool = True

    @property
    def holds(self) -> bool:
        return (self.dim_f2 == 4 and self.dim_f3 == 4 and self.groebner_ok
                and all(d == 4 for d in self.dims_random_orders)
                and all(self.shift_checks.values()))

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> Dict:
        return {
            "dim_f2": self.dim_f2,
            "dim_f3": self.dim_f3,
            "dim_two_minors": self.dim_two_minors,
            "dims_random_orders": self.dims_random_orders,
            "random_orders": [list(o) for o in self.random_orders],
            "shift_checks": dict(sorted(self.shift_checks.items())),
        }


def _dimension(gens: List[SparsePoly], order: MonomialOrder) -> Tuple[int, bool]:
    gb = buchberger(gens, order)
    ok = gb.inputs_reduce_to_zero and is_groebner(gb)
    return dim_quotient(gb, len(gb.varset)), ok


def determinantal_check(seed: Optional[int] = None) -> DeterminantalReport:
    """
    Dimension of the ideal of 2x2 minors of (x y z; x21 y21 z21): over F2 and F3, for the
    subideal of the first two minors, and under three shuffled variable orders. Also checks
    that the minors in the shifted entries (l + x12, m + y12, k + z12) map onto the unshifted
    minors under x12 -> x - l, y12 -> y - m, z12 -> z - k for every residue triple in F2^3.
    """
    rng = random.Random(Config.RANDOM_SEED if seed is None else seed)
    default = MonomialOrder("degrevlex", DETERMINANTAL_VARS.names)
    minors_f2 = determinantal_ideal(2)

    dim_f2, ok_f2 = _dimension(minors_f2, default)
    dim_f3, ok_f3 = _dimension(determinantal_ideal(3), default)
    dim_two, ok_two = _dimension(minors_f2[:2], default)

    dims_random, orders = [], []
    for _ in range(3):
        names = list(DETERMINANTAL_VARS.names)
        rng.shuffle(names)
        order = MonomialOrder("degrevlex", tuple(names))
        d, _ = _dimension(minors_f2, order)
        dims_random.append(d)
        orders.append(order.variables)

    shift_checks = {}
    for triple in product((0, 1), repeat=3):
        shifted = determinantal_ideal(2, SHIFTED_VARS, triple)
        assignment = {
            name: variable_over(DETERMINANTAL_VARS, 2, target) - s
            for name, target, s in zip(("x12", "y12", "z12"), ("x", "y", "z"), triple)
        }
        for name in ("x21", "y21", "z21"):
            assignment[name] = variable_over(DETERMINANTAL_VARS, 2, name)
        images = [g.substitute(assignment) for g in shifted]
        shift_dim, _ = _dimension(shifted, MonomialOrder("degrevlex", SHIFTED_VARS.names))
        label = "".join(map(str, triple))
        shift_checks[label] = images == minors_f2 and shift_dim == 4

    report = DeterminantalReport(dim_f2, dim_f3, dim_two, dims_random, orders, shift_checks,
                                 groebner_ok=ok_f2 and ok_f3 and ok_two)
    logger.info(f"Determinantal ideal: dim over F2 {dim_f2}, over F3 {dim_f3}, two minors {dim_two}")
    return report
