#!/usr/bin/env python3
"""
Polynomial Ring Test
Sparse polynomials and truncated series against sympy, plus localized polynomials.
"""

import sys
import random
from fractions import Fraction

import pytest
import sympy
from colorama import init, Fore, Style

from sympy.polys.domains import QQ

from src.coeffs import ZETA8, CycloElem, ModInt, simplify_scalar
from src.config import Config
from src.polyring import (
    CYCLOTOMIC, DEGREE_GENERATOR, IncompatibleRingError, LocalizedRing, NotAUnitError, SparsePoly,
    TruncSeries, UnboundVariableError, VarSet, prime_field,
)
from src.verification import CHECKS

# Initialize colorama
init()

VARS = VarSet(("a", "b", "c"))
SYMBOLS = sympy.symbols("a b c")


def random_poly(rng: random.Random, terms: int = 5, max_exp: int = 3, constant=None) -> SparsePoly:
    out = {}
    for _ in range(terms):
        m = tuple(rng.randint(0, max_exp) for _ in range(3))
        out[m] = rng.randint(-4, 4)
    if constant is not None:
        out[(0, 0, 0)] = constant
    return SparsePoly(VARS, out)


def as_sympy(p: SparsePoly):
    return sum(c * sympy.Mul(*(s ** e for s, e in zip(SYMBOLS, m))) for m, c in p.terms.items())


def from_sympy(expr, max_degree=None) -> SparsePoly:
    poly = sympy.Poly(sympy.expand(expr), *SYMBOLS)
    terms = {}
    for m, c in poly.terms():
        if max_degree is None or sum(m) <= max_degree:
            terms[m] = Fraction(int(c.p), int(c.q))
    return SparsePoly(VARS, terms)


def test_products_match_sympy():
    print(f"{Fore.CYAN}Testing sparse products against sympy...{Style.RESET_ALL}")
    rng = random.Random(Config.RANDOM_SEED)
    for _ in range(15):
        f, g = random_poly(rng), random_poly(rng)
        assert f * g == from_sympy(as_sympy(f) * as_sympy(g))
        assert f - g == from_sympy(as_sympy(f) - as_sympy(g))
        assert f ** 2 == f * f
    print(f"{Fore.GREEN}✅ Products agree{Style.RESET_ALL}")


def test_zero_coefficients_are_dropped():
    a = SparsePoly.variable(VARS, "a")
    assert len(a - a) == 0 and not (a - a)
    assert (a - a).degree() == -1
    assert SparsePoly(VARS, {(1, 0, 0): 0}) == 0


def test_substitution_and_evaluation():
    a, b, c = (SparsePoly.variable(VARS, n) for n in VARS)
    f = a * a * b + c * 3 - 1
    shifted = f.substitute({"a": a + 2}, partial=True)
    assert shifted == (a + 2) * (a + 2) * b + c * 3 - 1
    assert f.evaluate({"a": 2, "b": 5, "c": 1}) == 22
    assert f.evaluate({"a": ZETA8, "b": 1, "c": 0}) == ZETA8 ** 2 - 1
    with pytest.raises(UnboundVariableError):
        f.evaluate({"a": 1})
    with pytest.raises(UnboundVariableError):
        VARS.index("d")


def test_exact_division():
    rng = random.Random(Config.RANDOM_SEED + 1)
    for _ in range(10):
        f, g = random_poly(rng), random_poly(rng, constant=1)
        assert (f * g).exact_div(g) == f
    a = SparsePoly.variable(VARS, "a")
    assert (a + 1).exact_div(a) is None
    with pytest.raises(ZeroDivisionError):
        a.exact_div(SparsePoly(VARS))


def test_canonical_text_is_stable():
    a, b = SparsePoly.variable(VARS, "a"), SparsePoly.variable(VARS, "b")
    f = a * b * 2 + a * a - Fraction(1, 3)
    assert f.canonical() == "1/1*a^2 + 2/1*a^1*b^1 + -1/3"
    assert SparsePoly(VARS).canonical() == "0"


def test_mixed_rings_are_rejected():
    other = VarSet(("a", "b"))
    with pytest.raises(IncompatibleRingError):
        SparsePoly.variable(VARS, "a") + SparsePoly.variable(other, "a")


def test_truncated_products_match_sympy():
    print(f"\n{Fore.CYAN}Testing truncated products against sympy...{Style.RESET_ALL}")
    rng = random.Random(Config.RANDOM_SEED + 2)
    cap = 4
    for _ in range(10):
        f, g = random_poly(rng), random_poly(rng)
        product = TruncSeries(f, cap) * TruncSeries(g, cap)
        assert product.poly == from_sympy(as_sympy(f) * as_sympy(g), max_degree=cap)
    print(f"{Fore.GREEN}✅ Truncated products agree{Style.RESET_ALL}")


def test_truncation_commutes_with_products():
    rng = random.Random(Config.RANDOM_SEED + 3)
    for _ in range(10):
        f = TruncSeries(random_poly(rng), 5)
        g = TruncSeries(random_poly(rng), 5)
        assert (f * g).truncate(3) == f.truncate(3) * g.truncate(3)
    with pytest.raises(ValueError):
        f.truncate(6)


def test_unit_inverse():
    print(f"\n{Fore.CYAN}Testing unit inversion...{Style.RESET_ALL}")
    rng = random.Random(Config.RANDOM_SEED + 4)
    for constant in (1, -1, 3, Fraction(5, 3)):
        u = TruncSeries(random_poly(rng, constant=constant), 5)
        assert u * u.invert_unit() == 1
    # 1 / (1 + a) = 1 - a + a^2 - ...
    a = TruncSeries.variable(VARS, 3, "a")
    expected = TruncSeries(SparsePoly(VARS, {(0, 0, 0): 1, (1, 0, 0): -1, (2, 0, 0): 1, (3, 0, 0): -1}), 3)
    assert (1 + a).invert_unit() == expected
    with pytest.raises(NotAUnitError):
        (2 + a).invert_unit()
    with pytest.raises(NotAUnitError):
        a.invert_unit()
    print(f"{Fore.GREEN}✅ u * u^-1 = 1{Style.RESET_ALL}")


def test_graded_subset_truncation():
    """Ungraded variables behave polynomially"""
    a = TruncSeries.variable(VARS, 2, "a", graded=("b", "c"))
    b = TruncSeries.variable(VARS, 2, "b", graded=("b", "c"))
    assert len(a ** 6) == 1
    assert not b ** 3
    assert (a ** 4 * b * b) == TruncSeries(SparsePoly(VARS, {(4, 2, 0): 1}), 2, ("b", "c"))
    with pytest.raises(IncompatibleRingError):
        a + TruncSeries.variable(VARS, 2, "a")


def test_specialize_zero():
    a, b, c = (TruncSeries.variable(VARS, 3, n) for n in VARS)
    f = a * b + c + 1
    assert f.specialize_zero(["b"]) == c + 1
    assert f.specialize_zero(["a", "c"]) == 1


def test_localized_normalization():
    print(f"\n{Fore.CYAN}Testing localized polynomials...{Style.RESET_ALL}")
    t_vars = VarSet(("t",))
    t = SparsePoly.variable(t_vars, "t")
    u = 1 + t * (ZETA8 - 1)
    ring = LocalizedRing(t_vars, (u,))
    inv = ring.unit_power(0, -3)
    assert inv.power == 3
    assert ring.element(u) * inv == ring.unit_power(0, -2)
    assert (ring.element(u ** 2) * inv).power == 1
    assert inv * ring.element(u ** 3) == 1
    assert inv.inverse() == ring.element(u ** 3)
    assert (inv * 2).evaluate({"t": 0}) == 2
    assert inv.evaluate({"t": 1}) == ZETA8 ** -3
    with pytest.raises(NotAUnitError):
        ring.element(t).inverse()
    with pytest.raises(NotAUnitError):
        LocalizedRing(t_vars, (t * 1 + 2,))
    print(f"{Fore.GREEN}✅ Localized arithmetic as expected{Style.RESET_ALL}")


def test_cleared_denominator():
    t_vars = VarSet(("t",))
    t = SparsePoly.variable(t_vars, "t")
    u = 1 + t
    ring = LocalizedRing(t_vars, (u,))
    f = ring.element(t) * ring.unit_power(0, -2)
    assert f.cleared(u ** 2) == t
    assert f.cleared(u ** 3) == t * u
    with pytest.raises(ValueError):
        f.cleared(u)

def test_substitution_is_a_ring_homomorphism():
    rng = random.Random(Config.RANDOM_SEED + 5)
    for _ in range(25):
        f, g = random_poly(rng), random_poly(rng)
        images = {name: random_poly(rng, terms=2, max_exp=1) for name in VARS}
        images["b"] = random_poly(rng, terms=2, max_exp=1) * ZETA8
        assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)
        assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)


def test_localized_matches_cross_multiplication():
    print(f"\n{Fore.CYAN}Testing localized arithmetic against cross-multiplication...{Style.RESET_ALL}")
    rng = random.Random(Config.RANDOM_SEED + 6)
    a, b = SparsePoly.variable(VARS, "a"), SparsePoly.variable(VARS, "b")
    ring = LocalizedRing(VARS, (1 + a * (ZETA8 - 1), 1 - a * b))
    for _ in range(20):
        f, g = random_poly(rng, terms=3), random_poly(rng, terms=3)
        pf, pg = [rng.randint(0, 2) for _ in range(2)], [rng.randint(0, 2) for _ in range(2)]
        p, q = ring.element(f, pf), ring.element(g, pg)
        df, dg = ring.denominator(pf), ring.denominator(pg)
        assert (p + q).cleared(df * dg) == f * dg + g * df
        assert (p - q).cleared(df * dg) == f * dg - g * df
        assert (p * q).cleared(df * dg) == f * g
        assert (p == q) == (f * dg == g * df)
    print(f"{Fore.GREEN}✅ Localized sums and products clear correctly{Style.RESET_ALL}")


def test_invert_unit_on_random_units():
    rng = random.Random(Config.RANDOM_SEED + 7)
    for _ in range(200):
        constant = rng.choice((1, -1, 3, -5, Fraction(1, 3), ZETA8, 1 + ZETA8 * 2))
        u = TruncSeries(random_poly(rng, constant=constant), 3)
        inverse = u.invert_unit()
        assert u * inverse == 1
        assert inverse.constant_term() == simplify_scalar(CycloElem.coerce(constant).inverse())


def test_ground_domains():
    a = SparsePoly.variable(VARS, "a")
    assert a.domain == QQ
    assert (a * ZETA8).domain == CYCLOTOMIC
    assert (a * ZETA8).terms[(1, 0, 0)] == ZETA8
    assert isinstance((a * ZETA8 * ZETA8 ** 7).terms[(1, 0, 0)], int)
    assert (a + ModInt(3, 5)).domain == prime_field(5)
    assert (a * 7 + ModInt(3, 5)).terms == {(1, 0, 0): ModInt(2, 5), (0, 0, 0): ModInt(3, 5)}
    with pytest.raises(IncompatibleRingError):
        a * ZETA8 + ModInt(1, 5)
    with pytest.raises(IncompatibleRingError):
        a + ModInt(1, 4)
    assert a * ZETA8 != a * ModInt(1, 5)


def test_series_carry_their_graded_degree():
    rng = random.Random(Config.RANDOM_SEED + 8)
    f = TruncSeries(random_poly(rng), 3, graded=("a", "b"))
    g = TruncSeries(random_poly(rng), 3, graded=("a", "b"))
    product = f * g
    assert product.element.ring.symbols[0].name == DEGREE_GENERATOR
    assert all(m[0] == m[1] + m[2] <= 3 for m in product.element)
    assert product == TruncSeries(f.poly * g.poly, 3, ("a", "b"))


def test_polynomial_property_checks():
    passed, witness = CHECKS["properties.polyring"].func(samples=5, seed=Config.RANDOM_SEED)
    assert passed and witness == {"samples": 5, "failures": 0}
    passed, witness = CHECKS["properties.truncation"].func(samples=5, seed=Config.RANDOM_SEED)
    assert passed and witness == {"samples": 5, "failures": 0}



def main():
    """Run all tests"""
    print(f"""
{Fore.CYAN}╔══════════════════════════════════════════════════════════════╗
║                  POLYNOMIAL RING TEST                        ║
╚══════════════════════════════════════════════════════════════╝{Style.RESET_ALL}
""")
    tests = [
        ("Products vs sympy", test_products_match_sympy),
        ("Zero Coefficients", test_zero_coefficients_are_dropped),
        ("Substitution", test_substitution_and_evaluation),
        ("Exact Division", test_exact_division),
        ("Canonical Text", test_canonical_text_is_stable),
        ("Mixed Rings", test_mixed_rings_are_rejected),
        ("Truncated Products", test_truncated_products_match_sympy),
        ("Truncation Commutes", test_truncation_commutes_with_products),
        ("Unit Inverse", test_unit_inverse),
        ("Graded Subset", test_graded_subset_truncation),
        ("Specialize Zero", test_specialize_zero),
        ("Localized Normalization", test_localized_normalization),
        ("Cleared Denominator", test_cleared_denominator),
        ("Substitution Homomorphism", test_substitution_is_a_ring_homomorphism),
        ("Localized vs Cross-Multiplied", test_localized_matches_cross_multiplication),
        ("Random Unit Inverses", test_invert_unit_on_random_units),
        ("Ground Domains", test_ground_domains),
        ("Graded Degree Generator", test_series_carry_their_graded_degree),
        ("Property Checks", test_polynomial_property_checks),
    ]
    failed = 0
    for test_name, test_func in tests:
        try:
            test_func()
            print(f"  • {test_name}: {Fore.GREEN}✅ PASS{Style.RESET_ALL}")
        except Exception as e:
            failed += 1
            print(f"  • {test_name}: {Fore.RED}❌ FAIL ({type(e).__name__}: {e}){Style.RESET_ALL}")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
