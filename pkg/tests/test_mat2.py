#!/usr/bin/env python3
"""
2x2 Matrix Test
Matrix arithmetic over exact rings, the commutation criterion and unipotent fibres.
"""

import sys
import random

import pytest
import sympy
from colorama import init, Fore, Style

from src.coeffs import I, ZETA8, CycloElem, ModInt
from src.config import Config
from src.mat2 import (
    DualNumber, FiniteRingSpec, Mat2, SingularMatrixError,
    commutator, commutator_minors, commute_criterion, group_word,
    is_closed_under_products, unipotent_fiber, unipotent_fiber_order,
)
from src.polyring import SparsePoly, TruncSeries, VarSet
from src.verification import CHECKS

# Initialize colorama
init()

SERIES_VARS = VarSet(("s", "u"))


def random_int_matrix(rng: random.Random) -> Mat2:
    return Mat2(*(rng.randint(-5, 5) for _ in range(4)))


def as_sympy(m: Mat2) -> sympy.Matrix:
    return sympy.Matrix([[m.a11, m.a12], [m.a21, m.a22]])


def test_products_match_sympy():
    print(f"{Fore.CYAN}Testing matrix products against sympy...{Style.RESET_ALL}")
    rng = random.Random(Config.RANDOM_SEED)
    for _ in range(20):
        a, b = random_int_matrix(rng), random_int_matrix(rng)
        assert as_sympy(a * b) == as_sympy(a) * as_sympy(b)
        assert a.det() == as_sympy(a).det()
        assert as_sympy(a ** 3) == as_sympy(a) ** 3
    print(f"{Fore.GREEN}✅ Products agree{Style.RESET_ALL}")


def test_minor_identity_symbolically():
    """AB - BA = (m3, m1; -m2, -m3) in the generic matrix entries"""
    a = Mat2(*sympy.symbols("a11 a12 a21 a22"))
    b = Mat2(*sympy.symbols("b11 b12 b21 b22"))
    m1, m2, m3 = commutator_minors(a, b)
    diff = a * b - b * a
    expected = (m3, m1, -m2, -m3)
    assert all(sympy.expand(x - y) == 0 for x, y in zip(diff.entries, expected))


def test_inverse_and_singular():
    m = Mat2(ZETA8, CycloElem(1), CycloElem(0), I)
    assert (m * m.inverse()).is_identity()
    assert (m ** -2 * m ** 2).is_identity()
    with pytest.raises(SingularMatrixError):
        Mat2(1, 2, 2, 4).inverse()
    with pytest.raises(SingularMatrixError):
        Mat2(ModInt(2, 4), ModInt(0, 4), ModInt(0, 4), ModInt(1, 4)).inverse()


def test_commutator_and_group_word():
    y = Mat2(I, CycloElem(1), CycloElem(0), CycloElem(-1))
    z = Mat2.identity(CycloElem(0)) + (y - 1) * 3
    x = Mat2(CycloElem(1), CycloElem(0), CycloElem(0), CycloElem(-1))
    assert commutator(y, z).is_identity()
    assert commute_criterion(y, z)
    # X^2 = 1 and Y^4 = 1, so the word is trivial
    assert group_word(x, y, z).is_identity()
    swap = Mat2(CycloElem(0), CycloElem(1), CycloElem(1), CycloElem(0))
    assert not commute_criterion(y, swap)
    assert not commutator(y, swap).is_identity()


def test_commute_criterion_exhaustive():
    print(f"\n{Fore.CYAN}Testing the commutation criterion exhaustively...{Style.RESET_ALL}")
    for spec in (FiniteRingSpec.f2(), FiniteRingSpec.z_mod(3)):
        mats = list(spec.all_matrices())
        assert len(mats) == spec.modulus ** 4
        for a in mats:
            for b in mats:
                assert commute_criterion(a, b) == (a * b == b * a)
        print(f"{Fore.GREEN}✅ {spec.label}: {len(mats) ** 2} pairs{Style.RESET_ALL}")


def test_dual_numbers():
    e = DualNumber(0, 1)
    assert e * e == 0
    assert (1 + e) * (1 + e).inverse() == 1
    assert (1 + e) * (1 + e) == 1
    with pytest.raises(ZeroDivisionError):
        e.inverse()


def test_unipotent_fiber_orders():
    print(f"\n{Fore.CYAN}Testing unipotent fibre orders...{Style.RESET_ALL}")
    expected = {
        FiniteRingSpec.f2(): 2,
        FiniteRingSpec.dual_f2(): 32,
        FiniteRingSpec.z_mod(4): 32,
        FiniteRingSpec.z_mod(8): 512,
    }
    for spec, order in expected.items():
        assert unipotent_fiber_order(spec) == order
        print(f"  • {spec.label}: {order}")
    for spec in (FiniteRingSpec.f2(), FiniteRingSpec.dual_f2(), FiniteRingSpec.z_mod(4)):
        assert is_closed_under_products(unipotent_fiber(spec))
    with pytest.raises(ValueError):
        unipotent_fiber(FiniteRingSpec.z_mod(3))
    print(f"{Fore.GREEN}✅ Fibre orders are 2, 32, 32, 512{Style.RESET_ALL}")

def random_cyclo(rng: random.Random) -> CycloElem:
    while True:
        a = CycloElem(*(rng.randint(-4, 4) for _ in range(4)))
        if a:
            return a


def random_cyclo_matrix(rng: random.Random) -> Mat2:
    while True:
        m = Mat2(*(random_cyclo(rng) for _ in range(4)))
        if m.det():
            return m


def random_series(rng: random.Random, constant=None) -> TruncSeries:
    terms = {tuple(rng.randint(0, 2) for _ in range(2)): rng.randint(-3, 3) for _ in range(4)}
    terms[(0, 0)] = rng.randint(-3, 3) if constant is None else constant
    return TruncSeries(SparsePoly(SERIES_VARS, terms), 3)


def random_series_matrix(rng: random.Random, invertible: bool = False) -> Mat2:
    if not invertible:
        return Mat2(*(random_series(rng) for _ in range(4)))
    return Mat2(random_series(rng, rng.choice((1, -1, ZETA8))), random_series(rng, 0),
                random_series(rng, 0), random_series(rng, rng.choice((1, 3, I))))


def test_determinant_trace_adjugate_randomly():
    print(f"\n{Fore.CYAN}Testing det, trace and adjugate on random matrices...{Style.RESET_ALL}")
    rng = random.Random(Config.RANDOM_SEED + 1)
    for make in (random_cyclo_matrix, random_series_matrix):
        for _ in range(15):
            a, b = make(rng), make(rng)
            assert (a * b).det() == a.det() * b.det()
            assert (a * b).trace() == (b * a).trace()
            assert a * a.adjugate() == Mat2.scalar(a.det(), a.a11)
            assert a.adjugate() * a == Mat2.scalar(a.det(), a.a11)
    print(f"{Fore.GREEN}✅ Multiplicative det, symmetric trace, adjugate identity{Style.RESET_ALL}")


def test_group_word_commutes_with_conjugation():
    rng = random.Random(Config.RANDOM_SEED + 2)
    makers = ((random_cyclo_matrix, random_cyclo_matrix),
              (random_series_matrix, lambda r: random_series_matrix(r, invertible=True)))
    for make, make_invertible in makers:
        for _ in range(5):
            x = make(rng)
            g, y, z = (make_invertible(rng) for _ in range(3))
            g_inv = g.inverse()
            assert (g * g_inv).is_identity()
            conjugated = group_word(g * x * g_inv, g * y * g_inv, g * z * g_inv)
            assert conjugated == g * group_word(x, y, z) * g_inv


def test_matrix_property_check():
    passed, witness = CHECKS["properties.mat2"].func(samples=3, seed=Config.RANDOM_SEED)
    assert passed, witness
    assert witness["failures"] == {"cyclotomic": 0, "series": 0}



def main():
    """Run all tests"""
    print(f"""
{Fore.CYAN}╔══════════════════════════════════════════════════════════════╗
║                     2x2 MATRIX TEST                          ║
╚══════════════════════════════════════════════════════════════╝{Style.RESET_ALL}
""")
    tests = [
        ("Products vs sympy", test_products_match_sympy),
        ("Minor Identity", test_minor_identity_symbolically),
        ("Inverse", test_inverse_and_singular),
        ("Commutator and Word", test_commutator_and_group_word),
        ("Exhaustive Criterion", test_commute_criterion_exhaustive),
        ("Dual Numbers", test_dual_numbers),
        ("Unipotent Fibres", test_unipotent_fiber_orders),
        ("Random det, trace, adjugate", test_determinant_trace_adjugate_randomly),
        ("Conjugation", test_group_word_commutes_with_conjugation),
        ("Matrix Property Check", test_matrix_property_check),
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
