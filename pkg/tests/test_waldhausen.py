from fractions import Fraction

import pytest

from motivic_hall.ffield import count_subspaces
from motivic_hall.protoexact import quiver as qv
from motivic_hall.protoexact.categories import PointedSetCategory, RepCategory
from motivic_hall.protoexact.waldhausen import verify_2segal_counting, waldhausen_cells


def test_low_cells():
    ctx = RepCategory(qv.A1(), 2)
    s0 = waldhausen_cells(ctx, 0, 1)
    assert s0.cardinality() == 1
    s1 = waldhausen_cells(ctx, 1, 1)
    assert sorted(a for _, a in s1.components) == [1, 1]


@pytest.mark.parametrize("q", [2, 3])
def test_s2_cardinality_is_flag_count(q):
    # chains 0 < U < F_q^2 with dim U = 1, up to GL_2: one component, aut = the Borel
    ctx = RepCategory(qv.A1(), q)
    s2 = waldhausen_cells(ctx, 2, 2)
    graded = s2.by_grade()
    lines = count_subspaces(q, 1, 2)
    gl2 = (q * q - 1) * (q * q - q)
    # grade = iso classes of (A_01, A_02, A_12)
    assert graded[(((1,), ()), ((2,), ()), ((1,), ()))] == Fraction(lines, gl2)


@pytest.mark.parametrize("ctx", [RepCategory(qv.zero_quiver(), 2), RepCategory(qv.A1(), 2), RepCategory(qv.A2(), 2),
                                 RepCategory(qv.A1(), 3), RepCategory(qv.A2(), 3), PointedSetCategory()], ids=repr)
def test_2segal(ctx):
    report = verify_2segal_counting(ctx, 3)
    assert report.checks and report.ok, report.failures()
    assert {c.map for c in report.checks} == {"lower", "upper"}
