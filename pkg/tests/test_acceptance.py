"""Acceptance criteria 1-10.

Each test prints one line ``CRITERION n: PASS|FAIL ...`` with the elapsed
time against its limit.  All comparisons are exact (Fractions or canonical
motivic scalars).  Caches are cleared first, so timings include the
brute-force enumeration.  Run as a script for the summary alone:

    python3 tests/test_acceptance.py
"""

import importlib
import pkgutil
import sys
import time
from fractions import Fraction

import pytest

import motivic_hall
from motivic_hall.coeffring import evaluate, gaussian_multinomial
from motivic_hall.equivariant import equivariant_period_domain, inner_product, sym_character_table
from motivic_hall.ffield import field, gl_elements
from motivic_hall.groups import symmetric_group
from motivic_hall.hall import (
    HallElement, groupoid_count, integrate_counting, motivic_class_total, verify_integration_morphism,
)
from motivic_hall.protoexact import quiver as qv
from motivic_hall.protoexact.categories import PointedSetCategory, RepCategory
from motivic_hall.protoexact.hecke import convolution_constants, hecke_structure_constants
from motivic_hall.protoexact.quiver import QuiverRep
from motivic_hall.protoexact.waldhausen import verify_2segal_counting
from motivic_hall.slope import (
    FlagType, StabilityData, count_flags_bruteforce, count_semistable_bruteforce, hn_stratum_counts,
    period_domain_bruteforce, semistable_motivic_class,
)
from motivic_hall.verify import suite_characters

QUIVERS = [qv.A1(), qv.A2(), qv.kronecker()]


def _thetas(Q):
    return [(1,), (0,), (-1,)] if Q.n == 1 else [(1, 0), (0, 1), (1, -1)]


def _effective(Q, bound):
    return [a for a in qv.vectors_up_to(Q.n, bound) if any(a)]


def _clear_caches():
    for info in pkgutil.walk_packages(motivic_hall.__path__, "motivic_hall."):
        mod = importlib.import_module(info.name)
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


def _compositions(r):
    if r == 0:
        yield ()
        return
    for k in range(1, r + 1):
        for rest in _compositions(r - k):
            yield (k,) + rest


# ---- the criteria: each returns (ok, number of checks, first failure) ----


def c1_counting_measure():
    n, bad = 0, None
    for Q in QUIVERS:
        for alpha in _effective(Q, 3):
            for q in (2, 3):
                n += 1
                if evaluate(motivic_class_total(Q, alpha), q) != groupoid_count(Q, alpha, q):
                    bad = bad or (str(Q), alpha, q)
    return bad is None, n, bad


def c2_integration_morphism():
    n, bad = 0, None
    for Q in QUIVERS:
        for q, bound in ((2, 3), (3, 2)):
            report = verify_integration_morphism(Q, bound, q)
            n += len(report.entries)
            if not report.ok:
                bad = bad or report.failures()[0].params
    return bad is None, n, bad


def c3_closed_form():
    n, bad = 0, None
    for q in (2, 3):
        F = field(q)
        for d in (1, 2, 3):
            n += 1
            phi = HallElement.indicator(QuiverRep.zero(qv.A1(), q, (d,)))
            aut = len(gl_elements(F, d))  # brute force
            closed = Fraction(1)
            for i in range(d):
                closed /= q ** d - q ** i
            got = integrate_counting(phi)
            if not (got.coeffs == {(d,): closed} and closed == Fraction(1, aut)):
                bad = bad or (q, d)
    return bad is None, n, bad


def c4_hn_partition():
    n, bad = 0, None
    for Q in QUIVERS:
        for theta in _thetas(Q):
            s = StabilityData(theta)
            for alpha in _effective(Q, 3):
                for q in (2, 3):
                    n += 1
                    strata = hn_stratum_counts(Q, alpha, s, q)
                    if sum(strata.values(), Fraction(0)) != groupoid_count(Q, alpha, q):
                        bad = bad or (str(Q), theta, alpha, q)
    return bad is None, n, bad


def c5_triple_agreement():
    n, bad = 0, None
    for Q in QUIVERS:
        for theta in _thetas(Q):
            s = StabilityData(theta)
            for alpha in _effective(Q, 3):
                rec = semistable_motivic_class(Q, alpha, s, "recursive")
                inv = semistable_motivic_class(Q, alpha, s, "inversion")
                n += 1
                if rec != inv:
                    bad = bad or ("recursion vs inversion", str(Q), theta, alpha)
                for q in (2, 3):
                    n += 1
                    if evaluate(rec, q) != count_semistable_bruteforce(Q, alpha, s, q):
                        bad = bad or ("oracle", str(Q), theta, alpha, q)
    return bad is None, n, bad


def c6_flag_formula():
    n, bad = 0, None
    for q in (2, 3):
        for r in range(1, 5):
            for delta in _compositions(r):
                n += 1
                if gaussian_multinomial(r, delta)(q) != count_flags_bruteforce(q, r, delta):
                    bad = bad or (q, r, delta)
    return bad is None, n, bad


PERIOD_FQ = [(2, (1, 1), (1, 0)), (2, (1, 1), (3, -1)), (2, (1, 1), (5, 2)), (2, (2,), (0,))]
PERIOD_F1 = [(2, (1, 1), (1, 0)), (2, (1, 1), (0, 0)),
             (3, (1, 1, 1), (2, 1, 0)), (3, (1, 1, 1), (3, 1, 0)), (3, (1, 2), (1, 0)),
             (4, (1, 1, 2), (2, 1, 0)), (4, (2, 2), (1, 0)), (4, (1, 3), (1, 0)), (4, (1, 1, 1, 1), (3, 2, 1, 0))]


def c7_period_domains():
    n, bad = 0, None
    for r, delta, w in PERIOD_FQ:
        ft = FlagType(r, delta, w)
        for q in (2, 3):
            value = equivariant_period_domain(ft, "Fq", q).identity_value()
            n += 1
            if value.evaluate(q) != period_domain_bruteforce(ft, "Fq", q, 1):
                bad = bad or ("Fq", r, delta, w, q)
    for r, delta, w in PERIOD_F1:
        ft = FlagType(r, delta, w)
        value = equivariant_period_domain(ft, "F1").identity_value()
        n += 1
        if value.evaluate(1) != period_domain_bruteforce(ft, "F1", 1):
            bad = bad or ("F1", r, delta, w, "t=1")
        if r <= 3:
            n += 1
            if value.evaluate(2) != period_domain_bruteforce(ft, "F1", 2):
                bad = bad or ("F1", r, delta, w, "t=2")
    return bad is None, n, bad


def c8_two_segal():
    n, bad = 0, None
    for ctx in (RepCategory(qv.A1(), 2), RepCategory(qv.A2(), 2), PointedSetCategory()):
        report = verify_2segal_counting(ctx, 3)
        n += len(report.checks)
        if not report.ok or {c.map for c in report.checks} != {"lower", "upper"}:
            bad = bad or repr(ctx)
    return bad is None, n, bad


def c9_characters():
    report = suite_characters(rmax=5)
    n, bad = len(report.entries), (report.failures()[0].params if not report.ok else None)
    table = sym_character_table(6)
    for a in table.partitions:
        for b in table.partitions:
            n += 1
            if inner_product(table.character(a), table.character(b)).evaluate(2) != int(a == b):
                bad = bad or ("orthogonality", 6, a, b)
    return bad is None, n, bad


def c10_hecke():
    G = symmetric_group(3)
    K = G.young_subgroup((2, 1)).embedding
    H = hecke_structure_constants(G, K)
    ok = H.is_associative() and H.constants == convolution_constants(G, K).constants
    return ok, 2, None if ok else "S_3/S_2"


CRITERIA = [
    (1, "counting measure vs groupoid count", c1_counting_measure, 60),
    (2, "integration map is an algebra morphism", c2_integration_morphism, 120),
    (3, "integration of 1_{F_q^d} closed form", c3_closed_form, 10),
    (4, "HN strata sum to the total count", c4_hn_partition, 120),
    (5, "recursion = inversion = brute force", c5_triple_agreement, 120),
    (6, "flag-variety polynomial vs flag count", c6_flag_formula, 60),
    (7, "period domains vs semistable-flag count", c7_period_domains, 120),
    (8, "2-Segal counting checks", c8_two_segal, 120),
    (9, "character layer", c9_characters, 60),
    (10, "Hecke algebra (S_3, S_2)", c10_hecke, 5),
]


def run_criterion(num, name, fn, limit):
    _clear_caches()
    start = time.perf_counter()
    ok, n, bad = fn()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < limit
    line = f"CRITERION {num}: {'PASS' if passed else 'FAIL'}  {name}  ({n} exact checks, {elapsed:.2f}s < {limit}s)"
    if not ok:
        line += f"  first failure: {bad}"
    elif elapsed >= limit:
        line += "  over time limit"
    return passed, line


@pytest.mark.parametrize("num,name,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, limit, capsys):
    passed, line = run_criterion(num, name, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
