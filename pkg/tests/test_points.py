#!/usr/bin/env python3
"""
Framed Points Test
The two explicit point families: relation, reduction, sign pairs, delta and the cut case.
"""

import sys
from itertools import product

import pytest
from colorama import init, Fore, Style

from src.coeffs import ZETA8, CycloElem
from src.deform import DeformParams
from src.mat2 import Mat2
from src.points import (
    Family, FamilyMismatchError, FramedPoint, LocusMembershipError,
    family_points, make_point, schnitt_case, verify_point,
)
from src.verification import synthetic_point

# Initialize colorama
init()

# point index -> (eps1, eps2, delta), the same for both families
EXPECTED = {
    1: (1, 1, 1),
    2: (1, -1, -1),
    3: (-1, -1, 1),
    4: (-1, 1, -1),
}

FAMILY_MU = {Family.PUNKTE1: 0, Family.PUNKTE2: 1}


def test_family_points_table():
    print(f"{Fore.CYAN}Testing both point families on the (lambda, kappa) grid...{Style.RESET_ALL}")
    for family, mu in FAMILY_MU.items():
        for lam, kappa in product((0, 1), repeat=2):
            for point in family_points(family, lam, mu, kappa):
                report = verify_point(point)
                assert report.passed, (point.label, report.checks)
                assert (report.eps1, report.eps2, report.delta) == EXPECTED[point.n]
                assert report.schnitt_case == 1
                assert "f_element_vanishes" in report.checks
                assert "word_form" in report.checks
        print(f"  • {family.value}: {Fore.GREEN}8 x 4 points verified{Style.RESET_ALL}")
    print(f"{Fore.GREEN}✅ Sign pairs and delta as expected{Style.RESET_ALL}")


def test_idempotents_at_points():
    for n, (_, _, delta) in EXPECTED.items():
        report = verify_point(make_point("punkte2", n, 1, 1, 1))
        e_plus, e_minus = report.idempotents
        assert (e_plus, e_minus) == ((1, 0) if delta == 1 else (0, 1))


def test_report_serialization():
    report = verify_point(make_point(Family.PUNKTE1, 2, lam=1))
    data = report.to_json()
    assert data["eps1"] == "1/1" and data["eps2"] == "-1/1" and data["delta"] == "-1/1"
    assert data["schnitt_case"] == 1
    assert list(data["checks"]) == sorted(data["checks"])


def test_point_labels():
    assert make_point("punkte1", 3).label == "punkte1/3"
    assert synthetic_point(2).label == "synthetic"


def test_family_mismatch():
    with pytest.raises(FamilyMismatchError):
        make_point("punkte1", 1, mu=1)
    with pytest.raises(FamilyMismatchError):
        make_point("punkte2", 1, mu=0)
    with pytest.raises(FamilyMismatchError):
        make_point("punkte2", 1, mu=2)
    with pytest.raises(FamilyMismatchError):
        make_point("punkte1", 5)
    with pytest.raises(ValueError):
        make_point("punkte3", 1)


def test_broken_point_fails():
    good = make_point("punkte1", 1)
    broken = FramedPoint(good.X, good.Y * ZETA8, good.Z, good.params, good.family, good.n)
    report = verify_point(broken)
    assert not report.relation_ok
    assert report.schnitt_case is None
    assert not report.passed


def test_schnitt_synthetic_cases():
    print(f"\n{Fore.CYAN}Testing the cut conditions on synthetic points...{Style.RESET_ALL}")
    assert schnitt_case(synthetic_point(2)) == 2
    assert schnitt_case(synthetic_point(3)) == 3
    print(f"{Fore.GREEN}✅ Conditions 2 and 3 are detected{Style.RESET_ALL}")


def test_schnitt_rejects_points_off_the_locus():
    one = CycloElem(1)
    zero = CycloElem(0)
    identity = Mat2(one, zero, zero, one)
    with pytest.raises(LocusMembershipError):
        schnitt_case(FramedPoint(identity, identity, identity, DeformParams()))
    x = Mat2(one, zero, zero, -one)
    lower = Mat2(one, zero, one, one)
    with pytest.raises(LocusMembershipError):
        schnitt_case(FramedPoint(x, lower, identity, DeformParams()))
    y = Mat2(CycloElem(3), zero, zero, one)
    with pytest.raises(LocusMembershipError):
        schnitt_case(FramedPoint(x, y, identity, DeformParams()))


def main():
    """Run all tests"""
    print(f"""
{Fore.CYAN}╔══════════════════════════════════════════════════════════════╗
║                    FRAMED POINTS TEST                        ║
╚══════════════════════════════════════════════════════════════╝{Style.RESET_ALL}
""")
    tests = [
        ("Family Table", test_family_points_table),
        ("Idempotents", test_idempotents_at_points),
        ("Serialization", test_report_serialization),
        ("Labels", test_point_labels),
        ("Family Mismatch", test_family_mismatch),
        ("Broken Point", test_broken_point_fails),
        ("Synthetic Cut Cases", test_schnitt_synthetic_cases),
        ("Off-locus Points", test_schnitt_rejects_points_off_the_locus),
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
