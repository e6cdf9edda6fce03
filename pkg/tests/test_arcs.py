#!/usr/bin/env python3
"""
Arcs Test
Arcs between framed points, nilpotence certificates and connected classes of points.
"""

import sys
from fractions import Fraction
from itertools import product

import pytest
from colorama import init, Fore, Style

from src.arcs import (
    T_VARS, ArcFamily, component_classes, distinct_deltas, grid_arcs, make_arc,
    nilpotence_certificate, validate_chain, verify_arc,
)
from src.coeffs import ZETA8
from src.deform import PreconditionError
from src.points import FamilyMismatchError, family_points, make_point
from src.polyring import LocalizedRing, SparsePoly
from src.verification import CHECKS

# Initialize colorama
init()

FAMILY_MU = {ArcFamily.BOGEN1: 0, ArcFamily.BOGEN2: 1}


def test_all_arcs_verify():
    print(f"{Fore.CYAN}Testing both arcs of both families on the (lambda, kappa) grid...{Style.RESET_ALL}")
    for family, mu in FAMILY_MU.items():
        for lam, kappa in product((0, 1), repeat=2):
            for n in (1, 2):
                report = verify_arc(make_arc(family, n, lam, mu, kappa))
                assert report.passed, (family.value, n, lam, kappa, report.checks)
                assert len(report.certificates) == 12
        print(f"  • {family.value}: {Fore.GREEN}8 arcs verified{Style.RESET_ALL}")
    print(f"{Fore.GREEN}✅ Relation, powers, endpoints, delta and nilpotence hold{Style.RESET_ALL}")


def test_arc_endpoints():
    arc = make_arc("bogen2", 1, 1, 1, 0)
    assert arc.endpoint_indices() == (1, 3)
    start, end = arc.specialize(0), arc.specialize(1)
    assert start.canonical() == make_point("punkte2", 1, 1, 1, 0).canonical()
    assert end.canonical() == make_point("punkte2", 3, 1, 1, 0).canonical()
    assert arc.label == "bogen2/1"
    assert ArcFamily.BOGEN1.point_family == "punkte1"


def test_arc_report_serialization():
    data = verify_arc(make_arc("bogen1", 2)).to_json()
    assert data["certified_entries"] == 12
    assert data["min_entry_valuation"] == "1/4"
    assert list(data["checks"]) == sorted(data["checks"])


def test_make_arc_preconditions():
    with pytest.raises(FamilyMismatchError):
        make_arc("bogen1", 1, mu=1)
    with pytest.raises(FamilyMismatchError):
        make_arc("bogen2", 1, mu=0)
    with pytest.raises(FamilyMismatchError):
        make_arc("bogen1", 3)
    with pytest.raises(PreconditionError):
        make_arc("bogen1", 1, lam=2)


def test_nilpotence_certificate():
    print(f"\n{Fore.CYAN}Testing nilpotence certificates...{Style.RESET_ALL}")
    t = SparsePoly.variable(T_VARS, "t")
    u = 1 + t * (ZETA8 - 1)
    ring = LocalizedRing(T_VARS, (u,))

    entry = ring.unit_power(0, -1) - 1
    cert = nilpotence_certificate(entry)
    assert cert.certified
    assert cert.degree == 5
    assert cert.min_valuation == Fraction(1, 4)
    assert cert.tail_bound == Fraction(3, 2)

    assert not nilpotence_certificate(ring.unit_power(0, -1)).certified
    assert nilpotence_certificate(ring.constant(0)).certified

    with pytest.raises(PreconditionError):
        nilpotence_certificate(ring.element(t * Fraction(1, 2)) * ring.unit_power(0, -1))
    quadratic = LocalizedRing(T_VARS, (1 + t * t * 2,))
    with pytest.raises(PreconditionError):
        nilpotence_certificate(quadratic.unit_power(0, -1))
    slow = LocalizedRing(T_VARS, (1 + t,))
    with pytest.raises(PreconditionError):
        nilpotence_certificate(slow.unit_power(0, -1))
    print(f"{Fore.GREEN}✅ Certificates as expected{Style.RESET_ALL}")


def test_chains():
    a1, a2 = make_arc("bogen1", 1), make_arc("bogen1", 2)
    assert validate_chain([a1])
    assert validate_chain([a1, a1])
    assert not validate_chain([a1, a2])
    assert not validate_chain([])


def test_components_check_walks_two_arc_chains():
    passed, witness = CHECKS["arcs.components"].func(lam=0, kappa=1)
    assert passed, witness
    # four arcs: each alone and each out and back, plus one disjoint pair per family
    assert witness["chains"] == 8 and witness["broken_chains"] == 2
    assert witness["chains_ok"]


def test_component_classes():
    print(f"\n{Fore.CYAN}Testing connected classes of points...{Style.RESET_ALL}")
    for lam, kappa in product((0, 1), repeat=2):
        points = family_points("punkte1", lam, 0, kappa) + family_points("punkte2", lam, 1, kappa)
        arcs = grid_arcs(lam, 0, kappa) + grid_arcs(lam, 1, kappa)
        classes = component_classes(points, arcs)
        assert len(classes) == 4
        assert all(c.delta_constant for c in classes)
        assert sorted(c.members for c in classes) == [
            ["punkte1/1", "punkte1/3"], ["punkte1/2", "punkte1/4"],
            ["punkte2/1", "punkte2/3"], ["punkte2/2", "punkte2/4"],
        ]
        assert sorted(d.to_json() for d in distinct_deltas(classes)) == ["-1/1", "1/1"]
    print(f"{Fore.GREEN}✅ Four classes, delta constant on each, two values{Style.RESET_ALL}")


def test_grid_arcs_family_filter():
    assert [a.label for a in grid_arcs(0, 0, 0)] == ["bogen1/1", "bogen1/2"]
    assert [a.label for a in grid_arcs(0, 1, 0)] == ["bogen2/1", "bogen2/2"]
    assert grid_arcs(0, 0, 0, families=["bogen2"]) == []


def main():
    """Run all tests"""
    print(f"""
{Fore.CYAN}╔══════════════════════════════════════════════════════════════╗
║                         ARCS TEST                            ║
╚══════════════════════════════════════════════════════════════╝{Style.RESET_ALL}
""")
    tests = [
        ("All Arcs", test_all_arcs_verify),
        ("Endpoints", test_arc_endpoints),
        ("Serialization", test_arc_report_serialization),
        ("Preconditions", test_make_arc_preconditions),
        ("Nilpotence Certificates", test_nilpotence_certificate),
        ("Chains", test_chains),
        ("Chains in the Components Check", test_components_check_walks_two_arc_chains),
        ("Component Classes", test_component_classes),
        ("Family Filter", test_grid_arcs_family_filter),
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
