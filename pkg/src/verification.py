"""
Check registry and batch runner behind the `verify` command
"""
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .arcs import component_classes, distinct_deltas, grid_arcs, make_arc, validate_chain, verify_arc
from .coeffs import I, ZETA8, CycloElem, field_inverse, norm, scalar_to_json, val2
from .config import Config
from .deform import (
    CongruenceError,
    DeformParams,
    PreconditionError,
    bijektion_specialization,
    compute_relation,
    delta_witness,
    f_element_report,
    origin_checks,
    r1_component,
    r1_idempotent_check,
    r1_torsion_free,
    shift_isomorphism_check,
    triangular_locus,
)
from .groebner import determinantal_check
from .mat2 import FiniteRingSpec, Mat2, commute_criterion, group_word, is_closed_under_products, unipotent_fiber
from .points import Family, FramedPoint, family_points, make_point, schnitt_case, verify_point
from .polyring import LocalizedRing, SparsePoly, TruncSeries, VarSet

logger = logging.getLogger(__name__)

SUITES = ("relation", "delta", "triangular", "points", "arcs", "schnitt",
          "groebner", "bijektion", "finite", "properties")
FAMILY_SUITES = ("points", "arcs", "schnitt")

PSI_GRID = (
    ("1", "1", "1"),
    ("-1", "1", "1"),
    ("1", "-1", "1"),
    ("i", "zeta8", "1"),
    ("1", "1", "-1"),
    ("1", "1", "3"),
    ("1", "1", "zeta8"),
)

FIBER_ORDERS = {"F2": 2, "F2[e]/(e^2)": 32, "Z/4": 32, "Z/8": 512}

_NAMED_SCALARS = {"i": I, "zeta8": ZETA8}


def parse_scalar(text: str) -> CycloElem:
    """Parse an integer, `i`, `zeta8` or `zeta8^k`, optionally negated."""
    text = text.strip()
    sign = 1
    if text.startswith("-") and not text[1:].isdigit():
        sign, text = -1, text[1:]
    if text in _NAMED_SCALARS:
        return _NAMED_SCALARS[text] * sign
    if text.startswith("zeta8^"):
        return ZETA8 ** int(text[len("zeta8^"):]) * sign
    return CycloElem(int(text) * sign)


@dataclass(frozen=True)
class Check:
    check_id: str
    reference: str
    func: Callable


CHECKS: Dict[str, Check] = {}


def register(check_id: str, reference: str):
    def decorator(func):
        CHECKS[check_id] = Check(check_id, reference, func)
        return func
    return decorator


# relation

@register("relation.origin", "relation generators at the origin (f12 = 2 lambda + 4 mu)")
def check_relation_origin(lam, mu, kappa, cap):
    params = DeformParams(lam, mu, kappa, cap)
    rel = compute_relation(params)
    checks = origin_checks(params, rel)
    witness = {
        "checks": checks,
        "f12_origin": scalar_to_json(rel.f12.constant_term()),
        "term_counts": list(rel.sizes()),
    }
    return all(checks.values()), witness


_SHIFT_TARGETS = {"x12": (2, 0, 0), "y12": (0, 2, 0), "z12": (0, 0, 2)}


@register("relation.shift", "normalization of lambda, mu, kappa: shift automorphism of A")
def check_relation_shift(variable, cap):
    target = _SHIFT_TARGETS[variable]
    ok = shift_isomorphism_check(DeformParams(cap=cap), DeformParams(*target, cap=cap))
    return ok, {"target": list(target)}


@register("relation.shift_congruence", "normalization of lambda, mu, kappa: shifts must lie in 2*O")
def check_shift_congruence(cap):
    try:
        shift_isomorphism_check(DeformParams(cap=cap), DeformParams(1, 0, 0, cap))
    except CongruenceError as e:
        return True, {"rejected": str(e)}
    return False, {"rejected": None}


# delta

@register("delta.witness", "the element delta: delta^2 = 1 and the idempotents (1 +- delta)/2")
def check_delta_witness(lam, mu, kappa, cap):
    witness = delta_witness(DeformParams(lam, mu, kappa, cap))
    return witness.holds, {"checks": witness.checks, "delta_terms": len(witness.delta)}


# triangular locus

@register("triangular.locus", "upper-triangular locus: f21 = 0, diagonal and off-diagonal forms")
def check_triangular_locus(lam, mu, kappa, cap):
    f11, f22, f12 = triangular_locus(DeformParams(lam, mu, kappa, cap))
    return True, {"term_counts": [len(f11), len(f22), len(f12)]}


@register("triangular.f_element", "four components of the upper-triangular locus: the f-element")
def check_f_element(lam, mu, kappa, eps1, eps2):
    report = f_element_report(DeformParams(lam, mu, kappa), eps1, eps2)
    witness = {
        "checks": report.checks,
        "coefficient_y12_z11": scalar_to_json(report.coefficient_y12_z11),
        "terms": len(report.f),
    }
    return report.holds, witness


# points

@register("points.verify", "explicit points on the components: relation, reduction, eps and delta")
def check_point(family, n, lam, mu, kappa):
    report = verify_point(make_point(family, n, lam, mu, kappa))
    expected_delta = 1 if n % 2 else -1
    witness = report.to_json()
    witness["expected_delta"] = expected_delta
    return report.passed and report.delta == expected_delta, witness


@register("points.family_signs", "explicit points on the components: one point per sign pair")
def check_family_signs(family, lam, mu, kappa):
    reports = [verify_point(p) for p in family_points(family, lam, mu, kappa)]
    pairs = {(r.eps1, r.eps2) for r in reports}
    expected = {(CycloElem(a), CycloElem(b)) for a, b in product((1, -1), repeat=2)}
    witness = {"sign_pairs": sorted([r.eps1.to_json(), r.eps2.to_json()] for r in reports)}
    return pairs == expected, witness


# schnitt

@register("schnitt.case", "cut with the upper-triangular locus: case of each explicit point")
def check_schnitt_case(family, n, lam, mu, kappa):
    case = schnitt_case(make_point(family, n, lam, mu, kappa))
    return case == 1, {"case": case}


def synthetic_point(case: int) -> FramedPoint:
    """Points on the upper-triangular locus satisfying only condition 2 or only condition 3."""
    X = Mat2(CycloElem(1), CycloElem(0), CycloElem(0), CycloElem(-1))
    if case == 2:
        Y = Mat2.identity(CycloElem(0))
        Z = Mat2(CycloElem(1), CycloElem(1), CycloElem(0), CycloElem(1))
        params = DeformParams(0, 0, 1)
    elif case == 3:
        Y = Mat2(CycloElem(1), CycloElem(1), CycloElem(0), CycloElem(1))
        Z = Mat2(CycloElem(5), CycloElem(0), CycloElem(0), CycloElem(1))
        params = DeformParams(0, 1, 0)
    else:
        raise ValueError(f"No synthetic point for case {case}")
    return FramedPoint(X, Y, Z, params)


@register("schnitt.synthetic", "cut with the upper-triangular locus: conditions 2 and 3")
def check_schnitt_synthetic(case):
    found = schnitt_case(synthetic_point(case))
    return found == case, {"case": found}


# arcs

@register("arcs.verify", "arcs between points: relation, powers, endpoints, delta, nilpotence")
def check_arc(family, n, lam, mu, kappa):
    report = verify_arc(make_arc(family, n, lam, mu, kappa))
    return report.passed, report.to_json()


@register("arcs.components", "chains of arcs: delta is constant on connected points")
def check_components(lam, kappa):
    points = family_points(Family.PUNKTE1, lam, 0, kappa) + family_points(Family.PUNKTE2, lam, 1, kappa)
    arcs = grid_arcs(lam, 0, kappa) + grid_arcs(lam, 1, kappa)
    classes = component_classes(points, arcs)
    deltas = distinct_deltas(classes)
    # out and back along one arc; arcs 1 and 2 of a family share no endpoint
    chains = [[arc] for arc in arcs] + [[arc, arc] for arc in arcs]
    broken = [list(pair) for pair in zip(arcs[0::2], arcs[1::2])]
    chains_ok = all(validate_chain(c) for c in chains) and not any(validate_chain(c) for c in broken)
    ok = (chains_ok and len(classes) == 4 and all(c.delta_constant for c in classes)
          and sorted(d.to_json() for d in deltas) == ["-1/1", "1/1"])
    witness = {
        "classes": [{"members": c.members, "delta": c.deltas[0].to_json()} for c in classes],
        "distinct_deltas": sorted(d.to_json() for d in deltas),
        "chains_ok": chains_ok,
        "chains": len(chains),
        "broken_chains": len(broken),
    }
    return ok, witness


# groebner

@register("groebner.determinantal", "singular locus bound: 2x2 minors of a generic 2x3 matrix, dimension 4")
def check_determinantal(seed):
    report = determinantal_check(seed)
    return report.holds, report.to_json()


# bijektion

@register("bijektion.specialization", "points of the determinant-one fibre: the remaining relation in (y12, z11)")
def check_bijektion(psi_x, psi_y, psi_z, lam, kappa):
    psi = [parse_scalar(p) for p in (psi_x, psi_y, psi_z)]
    report = bijektion_specialization(*psi, DeformParams(lam, 0, kappa))
    witness = {
        "checks": report.checks,
        "coefficient_y12_z11^2": scalar_to_json(report.coefficient),
        "sign": report.sign,
        "constant_term": scalar_to_json(report.constant_term),
        "relation": report.relation.canonical(),
    }
    return report.holds, witness


@register("bijektion.r1", "the ring O[[y]]/((1 + y)^2 - 1): components, idempotent, torsion")
def check_r1():
    try:
        r1_component(1)
        rejects_one = False
    except PreconditionError:
        rejects_one = True
    checks = {
        "component_plus": r1_component(0) == "plus",
        "component_minus": r1_component(-2) == "minus",
        "rejects_non_root": rejects_one,
        "idempotent": r1_idempotent_check(),
        "torsion_free": r1_torsion_free(),
    }
    return all(checks.values()), {"checks": checks}


# finite rings

def _finite_ring(label: str) -> FiniteRingSpec:
    if label == "F2[e]/(e^2)":
        return FiniteRingSpec.dual_f2()
    if label == "F2":
        return FiniteRingSpec.f2()
    return FiniteRingSpec.z_mod(int(label.split("/")[1]))


@register("finite.unipotent_fiber", "presentation of the framed deformation ring: unipotent fibre over small rings")
def check_unipotent_fiber(ring):
    spec = _finite_ring(ring)
    fiber = unipotent_fiber(spec)
    order = len(fiber)
    witness = {"order": order, "expected": FIBER_ORDERS[ring]}
    ok = order == FIBER_ORDERS[ring] and order & (order - 1) == 0
    if order <= 64:
        witness["closed"] = is_closed_under_products(fiber)
        ok = ok and witness["closed"]
    return ok, witness


@register("finite.commute_criterion", "commutation criterion via the 2x2 minors, exhaustive")
def check_commute_criterion(ring):
    mats = list(_finite_ring(ring).all_matrices())
    mismatches = sum(
        commute_criterion(a, b) != (a * b == b * a)
        for a in mats for b in mats
    )
    return mismatches == 0, {"pairs": len(mats) ** 2, "mismatches": mismatches}


# randomized properties

def _random_cyclo(rng: random.Random) -> CycloElem:
    while True:
        a = CycloElem(*(rng.randint(-8, 8) for _ in range(4)))
        if a:
            return a


@register("properties.valuation", "valuation and norm on Q(zeta8): multiplicativity and inverses")
def check_valuation_properties(samples, seed):
    rng = random.Random(seed)
    failures = 0
    for _ in range(samples):
        a, b = _random_cyclo(rng), _random_cyclo(rng)
        if val2(a * b) != val2(a) + val2(b) or norm(a * b) != norm(a) * norm(b):
            failures += 1
        elif a * field_inverse(a) != 1:
            failures += 1
    return failures == 0, {"samples": samples, "failures": failures}


_PROPERTY_VARS = VarSet(("a", "b", "c"))
SERIES_SAMPLES = 200


def _random_poly(rng: random.Random, constant=None, terms: int = 6, max_exp: int = 2) -> SparsePoly:
    out = {}
    for _ in range(terms):
        m = tuple(rng.randint(0, max_exp) for _ in range(3))
        out[m] = rng.randint(-3, 3)
    out[(0, 0, 0)] = rng.randint(-3, 3) if constant is None else constant
    return SparsePoly(_PROPERTY_VARS, out)


def _random_series(rng: random.Random, cap: int, unit: bool) -> TruncSeries:
    return TruncSeries(_random_poly(rng, rng.choice((1, -1, 3)) if unit else None), cap)


@register("properties.truncation", "truncated series: products commute with lowering the cap, unit inverses")
def check_truncation_properties(samples, seed):
    rng = random.Random(seed)
    failures = 0
    for _ in range(samples):
        a, b = _random_series(rng, 4, False), _random_series(rng, 4, True)
        if (a * b).truncate(2) != a.truncate(2) * b.truncate(2):
            failures += 1
        elif b * b.invert_unit() != 1:
            failures += 1
    return failures == 0, {"samples": samples, "failures": failures}


@register("properties.polyring", "substitution is a ring homomorphism; localized sums and products clear to polynomials")
def check_polyring_properties(samples, seed):
    rng = random.Random(seed)
    a = SparsePoly.variable(_PROPERTY_VARS, "a")
    b = SparsePoly.variable(_PROPERTY_VARS, "b")
    c = SparsePoly.variable(_PROPERTY_VARS, "c")
    ring = LocalizedRing(_PROPERTY_VARS, (1 + a * (ZETA8 - 1), 1 - b * c))
    failures = 0
    for _ in range(samples):
        f, g = _random_poly(rng, terms=4), _random_poly(rng, terms=4)
        images = {name: _random_poly(rng, terms=2, max_exp=1) for name in _PROPERTY_VARS}
        if ((f + g).substitute(images) != f.substitute(images) + g.substitute(images)
                or (f * g).substitute(images) != f.substitute(images) * g.substitute(images)):
            failures += 1
            continue
        pf, pg = [rng.randint(0, 2) for _ in range(2)], [rng.randint(0, 2) for _ in range(2)]
        p, q = ring.element(f, pf), ring.element(g, pg)
        df, dg = ring.denominator(pf), ring.denominator(pg)
        if (p + q).cleared(df * dg) != f * dg + g * df or (p * q).cleared(df * dg) != f * g:
            failures += 1
        elif p * ring.unit_power(0, -1) != ring.element(f, [pf[0] + 1, pf[1]]):
            failures += 1
    return failures == 0, {"samples": samples, "failures": failures}


def _random_cyclo_matrix(rng: random.Random, invertible: bool = False) -> Mat2:
    while True:
        m = Mat2(*(_random_cyclo(rng) for _ in range(4)))
        if not invertible or m.det():
            return m


def _random_series_matrix(rng: random.Random, cap: int, invertible: bool = False) -> Mat2:
    """With `invertible`, the diagonal has unit constant terms and the off-diagonal none."""
    if not invertible:
        return Mat2(*(_random_series(rng, cap, False) for _ in range(4)))
    off = [_random_series(rng, cap, False) for _ in range(2)]
    off = [x - x.constant_term() for x in off]
    return Mat2(_random_series(rng, cap, True), off[0], off[1], _random_series(rng, cap, True))


def _matrix_identities(A: Mat2, B: Mat2, G: Mat2, X: Mat2, Y: Mat2, Z: Mat2) -> bool:
    G_inv = G.inverse()

    def conjugate(M: Mat2) -> Mat2:
        return G * M * G_inv

    return ((A * B).det() == A.det() * B.det()
            and (A * B).trace() == (B * A).trace()
            and A * A.adjugate() == Mat2.scalar(A.det(), A.a11)
            and group_word(conjugate(X), conjugate(Y), conjugate(Z)) == conjugate(group_word(X, Y, Z)))


@register("properties.mat2", "2x2 matrices over Q(zeta8) and truncated series: det, trace, adjugate, conjugation")
def check_matrix_properties(samples, seed):
    rng = random.Random(seed)
    failures = {"cyclotomic": 0, "series": 0}
    for _ in range(samples):
        A, B, X = (_random_cyclo_matrix(rng) for _ in range(3))
        G, Y, Z = (_random_cyclo_matrix(rng, invertible=True) for _ in range(3))
        if not _matrix_identities(A, B, G, X, Y, Z):
            failures["cyclotomic"] += 1
        A, B, X = (_random_series_matrix(rng, 3) for _ in range(3))
        G, Y, Z = (_random_series_matrix(rng, 3, invertible=True) for _ in range(3))
        if not _matrix_identities(A, B, G, X, Y, Z):
            failures["series"] += 1
    return not any(failures.values()), {"samples": samples, "failures": failures}


# planning and running

@dataclass
class Grid:
    cap: int
    recheck_cap: Optional[int] = None
    lambdas: Sequence[int] = (0, 1)
    mus: Sequence[int] = (0, 1)
    kappas: Sequence[int] = (0, 1)
    families: Optional[Sequence[str]] = None

    def to_json(self) -> Dict:
        return {
            "cap": self.cap,
            "recheck_cap": self.recheck_cap,
            "lambda": list(self.lambdas),
            "mu": list(self.mus),
            "kappa": list(self.kappas),
            "families": list(self.families) if self.families else None,
        }

    def caps(self) -> List[int]:
        return sorted({self.cap} | ({self.recheck_cap} if self.recheck_cap else set()))

    def triples(self):
        return product(self.lambdas, self.mus, self.kappas)

    def point_families(self):
        """(family, mu) pairs admissible for the grid: mu = 0 for the first, a unit for the second."""
        out = []
        for family in Family:
            if self.families and family.value not in self.families:
                continue
            for mu in self.mus:
                if (family is Family.PUNKTE1) == (mu == 0):
                    out.append((family.value, mu))
        return out


Task = Tuple[str, Dict]


def plan_suite(suite: str, grid: Grid) -> List[Task]:
    tasks: List[Task] = []
    if suite == "relation":
        for cap in grid.caps():
            for lam, mu, kappa in grid.triples():
                tasks.append(("relation.origin", {"lam": lam, "mu": mu, "kappa": kappa, "cap": cap}))
        for variable in _SHIFT_TARGETS:
            tasks.append(("relation.shift", {"variable": variable, "cap": grid.cap}))
        tasks.append(("relation.shift_congruence", {"cap": grid.cap}))
    elif suite == "delta":
        for cap in grid.caps():
            for lam, mu, kappa in grid.triples():
                tasks.append(("delta.witness", {"lam": lam, "mu": mu, "kappa": kappa, "cap": cap}))
    elif suite == "triangular":
        for lam, mu, kappa in grid.triples():
            tasks.append(("triangular.locus", {"lam": lam, "mu": mu, "kappa": kappa, "cap": grid.cap}))
            for eps1, eps2 in product((1, -1), repeat=2):
                tasks.append(("triangular.f_element",
                              {"lam": lam, "mu": mu, "kappa": kappa, "eps1": eps1, "eps2": eps2}))
    elif suite in ("points", "schnitt"):
        check = "points.verify" if suite == "points" else "schnitt.case"
        for family, mu in grid.point_families():
            for lam, kappa in product(grid.lambdas, grid.kappas):
                for n in (1, 2, 3, 4):
                    tasks.append((check, {"family": family, "n": n, "lam": lam, "mu": mu, "kappa": kappa}))
                if suite == "points":
                    tasks.append(("points.family_signs", {"family": family, "lam": lam, "mu": mu, "kappa": kappa}))
        if suite == "schnitt":
            tasks.extend(("schnitt.synthetic", {"case": case}) for case in (2, 3))
    elif suite == "arcs":
        for family, mu in grid.point_families():
            arc_family = "bogen1" if family == Family.PUNKTE1.value else "bogen2"
            for lam, kappa in product(grid.lambdas, grid.kappas):
                for n in (1, 2):
                    tasks.append(("arcs.verify", {"family": arc_family, "n": n, "lam": lam, "mu": mu, "kappa": kappa}))
        for lam, kappa in product(grid.lambdas, grid.kappas):
            tasks.append(("arcs.components", {"lam": lam, "kappa": kappa}))
    elif suite == "groebner":
        tasks.append(("groebner.determinantal", {"seed": Config.RANDOM_SEED}))
    elif suite == "bijektion":
        for psi in PSI_GRID:
            for lam, kappa in product(grid.lambdas, grid.kappas):
                tasks.append(("bijektion.specialization",
                              {"psi_x": psi[0], "psi_y": psi[1], "psi_z": psi[2], "lam": lam, "kappa": kappa}))
        tasks.append(("bijektion.r1", {}))
    elif suite == "finite":
        for ring in FIBER_ORDERS:
            tasks.append(("finite.unipotent_fiber", {"ring": ring}))
        for ring in ("F2", "Z/3"):
            tasks.append(("finite.commute_criterion", {"ring": ring}))
    elif suite == "properties":
        tasks.append(("properties.valuation", {"samples": Config.PROPERTY_SAMPLES, "seed": Config.RANDOM_SEED}))
        series_samples = {"samples": min(Config.PROPERTY_SAMPLES, SERIES_SAMPLES), "seed": Config.RANDOM_SEED}
        tasks.append(("properties.truncation", dict(series_samples)))
        tasks.append(("properties.polyring", dict(series_samples)))
        tasks.append(("properties.mat2", dict(series_samples)))
    else:
        raise ValueError(f"Unknown suite {suite!r}")
    return tasks


def _params_key(params: Dict) -> str:
    return json.dumps(params, sort_keys=True)


def run_check(check_id: str, params: Dict) -> Tuple[Dict, float]:
    """Run one check; exceptions become a failed record."""
    check = CHECKS[check_id]
    started = time.perf_counter()
    try:
        passed, witness = check.func(**params)
        status = "pass" if passed else "fail"
    except Exception as e:
        logger.error(f"Check {check_id} {_params_key(params)} raised {type(e).__name__}: {e}")
        status = "fail"
        witness = {"error": f"{type(e).__name__}: {e}"}
    elapsed = time.perf_counter() - started
    record = {
        "check": check_id,
        "reference": check.reference,
        "params": params,
        "status": status,
        "witness": witness,
    }
    return record, elapsed


class Verifier:
    """Plans, runs and reports verification suites"""

    def __init__(self, cap: Optional[int] = None, jobs: Optional[int] = None):
        self.cap = cap if cap is not None else Config.VERIFY_CAP
        self.jobs = jobs if jobs is not None else Config.VERIFY_JOBS
        self.stats = {
            'total_checks': 0,
            'passed': 0,
            'failed': 0,
            'errors': 0,
        }
        logger.info(f"Verifier initialized with cap {self.cap}, {self.jobs} job(s)")

    def plan(self, suite: str, grid: Grid) -> List[Task]:
        suites = SUITES if suite == "all" else (suite,)
        tasks = []
        for name in suites:
            tasks.extend(plan_suite(name, grid))
        logger.info(f"Planned {len(tasks)} checks for suite {suite!r}")
        return tasks

    def run(self, tasks: Sequence[Task]) -> Tuple[List[Dict], List[Dict]]:
        """Run the tasks, in a process pool when jobs > 1; returns (records, timings)."""
        if self.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                futures = [pool.submit(run_check, check_id, params) for check_id, params in tasks]
                results = [f.result() for f in futures]
        else:
            results = [run_check(check_id, params) for check_id, params in tasks]

        records, timings = [], []
        for record, elapsed in results:
            self._count(record)
            records.append(record)
            timings.append({"check": record["check"], "params": record["params"], "seconds": round(elapsed, 6)})
        records.sort(key=lambda r: (r["check"], _params_key(r["params"])))
        timings.sort(key=lambda t: (t["check"], _params_key(t["params"])))
        return records, timings

    def _count(self, record: Dict):
        self.stats['total_checks'] += 1
        if record["status"] == "pass":
            self.stats['passed'] += 1
        else:
            self.stats['failed'] += 1
            if "error" in record["witness"]:
                self.stats['errors'] += 1
            logger.warning(f"FAILED {record['check']} {_params_key(record['params'])}")

    def verify(self, suite: str, grid: Grid) -> Dict:
        started = time.perf_counter()
        records, timings = self.run(self.plan(suite, grid))
        report = {
            "version": __version__,
            "command": suite,
            "parameters": grid.to_json(),
            "checks": records,
            "summary": dict(self.stats),
            "timing": {"total_seconds": round(time.perf_counter() - started, 3), "checks": timings},
        }
        logger.info(f"Verification of {suite!r} completed: {self.stats}")
        return report

    @property
    def all_passed(self) -> bool:
        return self.stats['failed'] == 0


def dump_report(report: Dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
