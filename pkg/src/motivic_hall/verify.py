"""Fixed parameter grids that exercise each identity end to end.

Every suite returns a ``Report`` of ``CheckEntry`` items; an entry names the
identity it tests and the exact parameters.
"""

import random
from fractions import Fraction

from .coeffring import evaluate, gaussian_multinomial
from .equivariant import (
    ClassFunction,
    equivariant_period_domain,
    induce,
    inner_product,
    lefschetz_count,
    restrict,
    sym_character_table,
)
from .groups import symmetric_group
from .hall import CheckEntry, Report, motivic_class_total, verify_associativity, verify_integration_morphism
from .protoexact import quiver as qv
from .protoexact.categories import PointedSetCategory, RepCategory
from .protoexact.hecke import convolution_constants, hecke_structure_constants
from .protoexact.waldhausen import verify_2segal_counting
from .slope import (
    FlagType,
    StabilityData,
    count_semistable_bruteforce,
    hn_stratum_class,
    hn_stratum_counts,
    period_domain_bruteforce,
    period_domain_polynomial,
    semistable_motivic_class,
)

QUIVERS = {"a1": qv.A1, "a2": qv.A2, "kronecker": qv.kronecker}
SUITES = ("2segal", "assoc", "integration", "recursion", "periodic", "characters", "hecke")


def _merge(name, reports):
    entries = []
    for r in reports:
        entries += r.entries
    return Report(name, entries)


def suite_2segal(contexts=None, bound=3):
    if contexts is None:
        contexts = [RepCategory(qv.zero_quiver(), 2), RepCategory(qv.A1(), 2), RepCategory(qv.A2(), 2),
                    RepCategory(qv.A1(), 3), RepCategory(qv.A2(), 3), PointedSetCategory()]
    entries = []
    for ctx in contexts:
        rep = verify_2segal_counting(ctx, bound)
        for c in rep.checks:
            entries.append(CheckEntry(f"2-Segal {c.map} map (counting level)",
                                      {"context": repr(ctx), "bound": bound, "component": repr(c.grade)},
                                      c.source, c.target))
    return Report("2segal", entries)


def suite_assoc(quivers=None, q=2, bound=3):
    quivers = quivers or [qv.A1(), qv.A2(), qv.kronecker()]
    return _merge("assoc", [verify_associativity(Q, bound, q) for Q in quivers])


def suite_integration(quivers=None, grid=((2, 3), (3, 2))):
    quivers = quivers or [qv.A1(), qv.A2(), qv.kronecker()]
    return _merge("integration", [verify_integration_morphism(Q, b, q) for Q in quivers for q, b in grid])


def default_thetas(n):
    if n == 1:
        return [(1,), (0,), (-1,)]
    return [(1, 0), (0, 1), (1, -1)]


def suite_recursion(quivers=None, qs=(2, 3), bound=3):
    """HN partition identity, recursion = inversion, and both against brute force."""
    quivers = quivers or [qv.A1(), qv.A2(), qv.kronecker()]
    entries = []
    for Q in quivers:
        for theta in default_thetas(Q.n):
            s = StabilityData(theta)
            for alpha in qv.vectors_up_to(Q.n, bound):
                if not any(alpha):
                    continue
                base = {"quiver": str(Q), "theta": list(theta), "alpha": list(alpha)}
                rec = semistable_motivic_class(Q, alpha, s, "recursive")
                inv = semistable_motivic_class(Q, alpha, s, "inversion")
                entries.append(CheckEntry("HN recursion agrees with Reineke inversion", base, rec, inv))
                for q in qs:
                    p = dict(base, q=q)
                    strata = hn_stratum_counts(Q, alpha, s, q)
                    entries.append(CheckEntry("HN partition identity (strata sum to the total)", p,
                                              sum(strata.values(), Fraction(0)),
                                              evaluate(motivic_class_total(Q, alpha), q)))
                    entries.append(CheckEntry("counting measure of the semistable class", p,
                                              evaluate(rec, q), count_semistable_bruteforce(Q, alpha, s, q)))
                    for tau, c in sorted(strata.items()):
                        entries.append(CheckEntry("HN stratum class", dict(p, type=[list(a) for a in tau]),
                                                  evaluate(hn_stratum_class(Q, tau, s), q), c))
    return Report("recursion", entries)


PERIOD_GRID_FQ = [
    FlagType(2, (1, 1), (1, 0)),
    FlagType(2, (1, 1), (3, -1)),
    FlagType(2, (2,), (0,)),
]
PERIOD_GRID_F1 = [
    FlagType(2, (1, 1), (1, 0)),
    FlagType(3, (1, 1, 1), (2, 1, 0)),
    FlagType(3, (1, 1, 1), (3, 1, 0)),
    FlagType(3, (1, 2), (1, 0)),
    FlagType(4, (1, 1, 2), (2, 1, 0)),
    FlagType(4, (2, 2), (1, 0)),
    FlagType(4, (1, 3), (1, 0)),
]


def suite_periodic():
    entries = []
    for ft in PERIOD_GRID_FQ:
        for q in (2, 3):
            f = equivariant_period_domain(ft, "Fq", q)
            poly = period_domain_polynomial(ft, "Fq", q)
            p = {"field": "Fq", "q": q, "r": ft.r, "delta": list(ft.delta), "weights": [str(w) for w in ft.weights]}
            entries.append(CheckEntry("equivariant formula forgets to the non-equivariant recursion", p,
                                      f.identity_value().evaluate(q), poly(q)))
            for k in (1, 2):
                entries.append(CheckEntry("period domain point count (identity, t = q^k)", dict(p, k=k),
                                          f.identity_value().evaluate(q**k), period_domain_bruteforce(ft, "Fq", q, k)))
            if q == 2:
                G = f.group
                for cl, v in zip(G.classes, f.values):
                    entries.append(CheckEntry("Lefschetz trace at a group element", dict(p, element=G.class_labels[G.class_of[cl[0]]]),
                                              v.evaluate(q), lefschetz_count(ft, "Fq", q, cl[0], 1)))
    for ft in PERIOD_GRID_F1:
        f = equivariant_period_domain(ft, "F1")
        p = {"field": "F1", "r": ft.r, "delta": list(ft.delta), "weights": [str(w) for w in ft.weights]}
        entries.append(CheckEntry("F_1 period domain at t = 1 (semistable subset chains)", p,
                                  f.identity_value().evaluate(1), period_domain_bruteforce(ft, "F1", 1)))
        for q in (2, 3):
            entries.append(CheckEntry("F_1 period domain at t = q (flags against coordinate subspaces)", dict(p, q=q),
                                      f.identity_value().evaluate(q), period_domain_bruteforce(ft, "F1", q)))
        if ft.r <= 3:
            G = f.group
            for lab, cl, v in zip(G.class_labels, G.classes, f.values):
                entries.append(CheckEntry("Lefschetz trace at a permutation", dict(p, element=lab),
                                          v.evaluate(2), lefschetz_count(ft, "F1", 2, cl[0], 1)))
    return Report("periodic", entries)


def _young_compositions(r):
    out = []

    def rec(left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(1, left + 1):
            rec(left - k, acc + [k])

    rec(r, [])
    return out


def _random_class_function(group, rng):
    return ClassFunction(group, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in group.classes])


def suite_characters(rmax=5, seed=0):
    rng = random.Random(seed)
    entries = []
    for r in range(1, rmax + 1):
        table = sym_character_table(r)
        G = symmetric_group(r)
        for lam in table.partitions:
            for mu in table.partitions:
                entries.append(CheckEntry("S_r character orthogonality", {"r": r, "rows": [list(lam), list(mu)]},
                                          inner_product(table.character(lam), table.character(mu)).evaluate(2),
                                          Fraction(int(lam == mu))))
        for eta in _young_compositions(r):
            if len(eta) == 1 and r > 1:
                continue
            H = G.young_subgroup(eta)
            f = _random_class_function(H, rng)
            ind = induce(f, G)
            for lam in table.partitions:
                chi = table.character(lam)
                entries.append(CheckEntry("Frobenius reciprocity", {"r": r, "eta": list(eta), "chi": list(lam)},
                                          inner_product(ind, chi), inner_product(f, restrict(chi, H))))
            # transitivity through a finer Young subgroup: split each block e as (1, e - 1)
            finer = tuple(x for e in eta for x in ((1, e - 1) if e > 1 else (1,)))
            direct = G.young_subgroup(finer)
            perms = set(direct.elements)
            sub = H.subgroup([i for i, p in enumerate(H.elements) if p in perms], f"S_{finer}<{H.name}")
            g = _random_class_function(sub, rng)
            where = {p: i for i, p in enumerate(sub.elements)}
            g_direct = ClassFunction.from_elements(direct, lambda x: g.at(where[direct.elements[x]]))
            entries.append(CheckEntry("induction transitivity", {"r": r, "eta": list(eta), "finer": list(finer)},
                                      induce(induce(g, H), G).values, induce(g_direct, G).values))
        gauss_ok = all(gaussian_multinomial(r, eta)(1) == _multinomial(r, eta) for eta in _young_compositions(r))
        entries.append(CheckEntry("Gaussian multinomial at t = 1 is the multinomial", {"r": r}, gauss_ok, True))
    return Report("characters", entries)


def _multinomial(r, eta):
    from math import factorial

    out = factorial(r)
    for e in eta:
        out //= factorial(e)
    return out


def suite_hecke():
    entries = []
    grid = [("S_3", symmetric_group(3), (2, 1)), ("S_4", symmetric_group(4), (2, 2)), ("S_4", symmetric_group(4), (3, 1))]
    from .groups import general_linear_group

    for name, G, eta in grid:
        K = G.young_subgroup(eta).embedding
        H = hecke_structure_constants(G, K)
        p = {"group": name, "K": f"S_{eta}"}
        entries.append(CheckEntry("Hecke structure constants match double-coset convolution", p,
                                  H.constants, convolution_constants(G, K).constants))
        entries.append(CheckEntry("Hecke algebra associativity", p, H.is_associative(), True))
    for q in (2, 3):
        G = general_linear_group(2, q)
        B = G.parabolic((1, 1)).embedding
        H = hecke_structure_constants(G, B)
        p = {"group": f"GL_2(F_{q})", "K": "Borel"}
        entries.append(CheckEntry("Hecke structure constants match double-coset convolution", p,
                                  H.constants, convolution_constants(G, B).constants))
        entries.append(CheckEntry("Iwahori quadratic relation T^2 = q + (q-1) T", p,
                                  H.constants[(1, 1)], {0: Fraction(q), 1: Fraction(q - 1)}))
    return Report("hecke", entries)


def run_suite(name, **kw):
    if name == "2segal":
        return suite_2segal(**kw)
    if name == "assoc":
        return suite_assoc(**kw)
    if name == "integration":
        return suite_integration(**kw)
    if name == "recursion":
        return suite_recursion(**kw)
    if name == "periodic":
        return suite_periodic(**kw)
    if name == "characters":
        return suite_characters(**kw)
    if name == "hecke":
        return suite_hecke(**kw)
    raise KeyError(name)
