from fractions import Fraction
from itertools import product

import pytest

from motivic_hall.errors import BudgetExceeded, ValidationError, budget
from motivic_hall.ffield import field, gl_order
from motivic_hall.protoexact import quiver as qv
from motivic_hall.protoexact.quiver import Quiver, QuiverRep


def _all_reps(Q, q, bound):
    for alpha in qv.vectors_up_to(Q.n, bound):
        yield from qv.enumerate_reps(Q, alpha, q).representatives


def test_a2_enumeration():
    t = qv.enumerate_reps(qv.A2(), (1, 1), 2)
    assert len(t) == 2 and t.aut_orders == [1, 1]
    t3 = qv.enumerate_reps(qv.A2(), (1, 1), 3)
    assert len(t3) == 2 and t3.groupoid_cardinality() == Fraction(3, 4)
    one = qv.enumerate_reps(qv.A1(), (1,), 3)
    assert len(one) == 1 and one.aut_orders == [2]


@pytest.mark.parametrize("Q", [qv.A1(), qv.A2(), qv.kronecker()], ids=str)
@pytest.mark.parametrize("q", [2, 3])
def test_orbit_stabilizer(Q, q):
    for alpha in qv.vectors_up_to(Q.n, 3 if q == 2 else 2):
        t = qv.enumerate_reps(Q, alpha, q)
        gl = 1
        for d in alpha:
            gl *= gl_order(q, d)
        assert sum(gl // a for a in t.aut_orders) == q ** Q.rep_space_dim(alpha)
        # representatives are canonical and pairwise distinct
        assert len({r.mats for r in t.representatives}) == len(t)
        for r, a in zip(t.representatives, t.aut_orders):
            assert qv.aut_order(r) == a


def test_subobject_examples():
    Q = qv.A2()
    zero = QuiverRep(Q, 2, (1, 1), (((0,),),))
    iso = QuiverRep(Q, 2, (1, 1), (((1,),),))
    assert sorted(s.dim for s in qv.subobjects(zero)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert sorted(s.dim for s in qv.subobjects(iso)) == [(0, 0), (0, 1), (1, 1)]
    assert len(qv.subobjects(QuiverRep.zero(Q, 2))) == 1


def _dual(E):
    Qop = Quiver(E.quiver.vertices, tuple((t, s) for s, t in E.quiver.arrows))
    mats = tuple(tuple(zip(*M)) if M and M[0] else tuple(() for _ in range(E.dim[s]))
                 for (s, t), M in zip(E.quiver.arrows, E.mats))
    return QuiverRep(Qop, E.q, E.dim, mats)


@pytest.mark.parametrize("Q", [qv.A2(), qv.kronecker()], ids=str)
def test_subobjects_match_quotients_of_dual(Q):
    # U -> annihilator of U is a bijection between subobjects of E and of its dual
    for E in _all_reps(Q, 2, 3):
        subs = qv.subobjects(E)
        dual_subs = qv.subobjects(_dual(E))
        assert len(subs) == len(dual_subs)
        assert sorted(s.dim for s in subs) == sorted(tuple(a - b for a, b in zip(E.dim, s.dim)) for s in dual_subs)
        for s in subs:
            assert tuple(a + b for a, b in zip(s.sub.dim, s.quotient.dim)) == E.dim


def _hom_count(A, B):
    F = field(A.q)
    spaces = [list(product(range(A.q), repeat=A.dim[i] * B.dim[i])) for i in range(A.quiver.n)]
    count = 0
    images = set()
    for fs in product(*spaces):
        f = [[fs[i][r * A.dim[i]:(r + 1) * A.dim[i]] for r in range(B.dim[i])] for i in range(A.quiver.n)]
        coboundary = []
        for (s, t), Ma, Mb in zip(A.quiver.arrows, A.mats, B.mats):
            # B_e f_s - f_t A_e, as a B.dim[t] x A.dim[s] matrix
            m = []
            for r in range(B.dim[t]):
                row = []
                for c in range(A.dim[s]):
                    x = sum(Mb[r][k] * f[s][k][c] for k in range(B.dim[s])) - sum(f[t][r][k] * Ma[k][c] for k in range(A.dim[t]))
                    row.append(x % F.p)
                m.append(tuple(row))
            coboundary.append(tuple(m))
        coboundary = tuple(coboundary)
        images.add(coboundary)
        if all(all(x == 0 for row in m for x in row) for m in coboundary):
            count += 1
    cocycles = A.q ** sum(A.dim[s] * B.dim[t] for s, t in A.quiver.arrows)
    return count, cocycles // len(images)


@pytest.mark.parametrize("Q", [qv.A2(), qv.kronecker()], ids=str)
def test_hom_ext_against_cocycle_count(Q):
    reps = list(_all_reps(Q, 2, 2))
    for A in reps:
        for B in reps:
            homs, exts = _hom_count(A, B)
            assert homs == 2 ** qv.hom_dim(A, B)
            assert exts == 2 ** qv.ext1_dim(A, B)
            assert qv.hom_dim(A, B) - qv.ext1_dim(A, B) == qv.euler_form_values(Q, A.dim, B.dim)


def test_hom_ext_examples():
    Q = qv.A2()
    S1, S2 = QuiverRep.simple(Q, 2, 0), QuiverRep.simple(Q, 2, 1)
    assert (qv.hom_dim(S1, S1), qv.ext1_dim(S1, S1)) == (1, 0)
    assert (qv.hom_dim(S1, S2), qv.ext1_dim(S1, S2)) == (0, 1)
    Z = QuiverRep.zero(Q, 2)
    assert (qv.hom_dim(Z, S1), qv.ext1_dim(Z, S1)) == (0, 0)


def test_validation():
    with pytest.raises(ValidationError):
        Quiver(("a", "b"), ((0, 1), (1, 0)))
    with pytest.raises(ValidationError):
        Quiver(("a",), ((0, 0),))
    with pytest.raises(ValidationError):
        QuiverRep(qv.A2(), 4, (1, 1), (((1,),),))
    with pytest.raises(ValidationError):
        QuiverRep(qv.A2(), 2, (1, 2), (((1,),),))
    with pytest.raises(ValidationError):
        Quiver.from_json({"vertices": ["1"], "arrows": [{"src": "1", "tgt": "9"}]})


def test_budget_is_enforced():
    with budget(100):
        with pytest.raises(BudgetExceeded):
            qv.IsoClassTable(qv.kronecker(), (2, 2), 2)


def test_json_round_trip():
    Q = qv.kronecker()
    assert Quiver.from_json(Q.to_json()) == Q
    E = QuiverRep(Q, 3, (1, 2), (((1,), (2,)), ((0,), (1,))))
    assert QuiverRep.from_json(Q, E.to_json()) == E
