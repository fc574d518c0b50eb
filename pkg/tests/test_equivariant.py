import random
from fractions import Fraction

import pytest

from motivic_hall.coeffring import L, MotivicScalar, QScalar, evaluate, gaussian_multinomial
from motivic_hall.equivariant import (
    ClassFunction, class_function_from_json, decomposition, equivariant_period_domain, external_product,
    flag_character, induce, inner_product, lefschetz_count, parabolic_induction, restrict, sym_character_table,
)
from motivic_hall.errors import ValidationError
from motivic_hall.groups import symmetric_group
from motivic_hall.slope import FlagType, period_domain_bruteforce, period_domain_polynomial


def test_small_tables():
    assert sym_character_table(1).rows == ((1,),)
    t2 = sym_character_table(2)
    assert sorted(t2.rows) == [(1, -1), (1, 1)]
    t3 = sym_character_table(3)
    assert sorted(row[0] for row in t3.rows) == [1, 1, 2]


@pytest.mark.parametrize("r", range(1, 7))
def test_orthogonality(r):
    table = sym_character_table(r)
    for a in table.partitions:
        for b in table.partitions:
            assert inner_product(table.character(a), table.character(b)) == QScalar(int(a == b))
    assert sum(row[0] ** 2 for row in table.rows) == symmetric_group(r).order


def test_permutation_character():
    G = symmetric_group(3)
    H = G.young_subgroup((2, 1))
    ind = induce(ClassFunction.trivial(H), G)
    assert [v.evaluate(2) for v in ind.values] == [3, 1, 0]
    S2 = symmetric_group(2)
    reg = induce(ClassFunction.trivial(S2.young_subgroup((1, 1))), S2)
    assert [v.evaluate(2) for v in reg.values] == [2, 0]
    f = sym_character_table(3).character((2, 1))
    assert induce(f, G) == f
    assert decomposition(ind) == {(3,): QScalar(1), (2, 1): QScalar(1), (1, 1, 1): QScalar(0)}


@pytest.mark.parametrize("r", [3, 4, 5])
def test_frobenius_reciprocity(r):
    rng = random.Random(r)
    G = symmetric_group(r)
    table = sym_character_table(r)
    for eta in [(1, r - 1), (2, r - 2), (1, 1, r - 2)]:
        H = G.young_subgroup(eta)
        f = ClassFunction(H, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in H.classes])
        for lam in table.partitions:
            chi = table.character(lam)
            assert inner_product(induce(f, G), chi) == inner_product(f, restrict(chi, H))


def test_external_product():
    S2 = symmetric_group(2)
    sign = sym_character_table(2).character((1, 1))
    triv = ClassFunction.trivial(S2)
    assert [v.evaluate(2) for v in external_product(sign, sign).values] == [1, -1, -1, 1]
    tt = external_product(triv, triv)
    assert tt == ClassFunction.trivial(tt.group)
    f = sym_character_table(3).character((2, 1))
    assert external_product(f, sign).identity_value() == f.identity_value() * sign.identity_value()


def test_flag_character_and_gaussian():
    ft = FlagType(3, (3,), (0,))
    f = equivariant_period_domain(ft, "F1")
    assert f == ClassFunction.trivial(f.group)
    g = flag_character((1, 1), "Fq", 2)
    assert g.identity_value().evaluate(2) == 3
    assert ClassFunction(symmetric_group(3), [0, 0, 0]).identity_value() == QScalar(0)


def test_parabolic_induction_is_gaussian_times_index():
    G = symmetric_group(4)
    chi = parabolic_induction(G, (2, 2), [flag_character((1, 1), "F1"), flag_character((2,), "F1")])
    assert chi.identity_value() == QScalar(MotivicScalar(gaussian_multinomial(2, (1, 1)))) * 6


@pytest.mark.parametrize("weights", [(1, 0), (3, -1)])
@pytest.mark.parametrize("q", [2, 3])
def test_fq_forgets_to_count(weights, q):
    ft = FlagType(2, (1, 1), weights)
    f = equivariant_period_domain(ft, "Fq", q)
    for k in (1, 2):
        assert f.identity_value().evaluate(q ** k) == period_domain_bruteforce(ft, "Fq", q, k)
    assert f.identity_value() == QScalar(MotivicScalar(period_domain_polynomial(ft, "Fq", q)))


def test_lefschetz_on_every_class():
    ft = FlagType(2, (1, 1), (1, 0))
    f = equivariant_period_domain(ft, "Fq", 2)
    for cl, v in zip(f.group.classes, f.values):
        for k in (1, 2):
            assert v.evaluate(2 ** k) == lefschetz_count(ft, "Fq", 2, cl[0], k)
    ft = FlagType(3, (1, 1, 1), (2, 1, 0))
    f = equivariant_period_domain(ft, "F1")
    for cl, v in zip(f.group.classes, f.values):
        assert v.evaluate(2) == lefschetz_count(ft, "F1", 2, cl[0], 1)


@pytest.mark.parametrize("ft", [FlagType(2, (1, 1), (1, 0)), FlagType(3, (1, 1, 1), (2, 1, 0)),
                                FlagType(3, (1, 2), (1, 0)), FlagType(4, (1, 1, 2), (2, 1, 0))], ids=repr)
def test_f1_forgets_to_count(ft):
    f = equivariant_period_domain(ft, "F1")
    assert f.identity_value().evaluate(1) == period_domain_bruteforce(ft, "F1", 1)
    assert f.identity_value().evaluate(2) == period_domain_bruteforce(ft, "F1", 2)


def test_json_round_trip():
    f = equivariant_period_domain(FlagType(3, (1, 1, 1), (2, 1, 0)), "F1")
    data = f.to_json()
    assert data["group"] == "S_3" and data["classes"] == ["1^3", "21", "3"]
    assert class_function_from_json(data, f.group) == f
    with pytest.raises(ValidationError):
        class_function_from_json(dict(data, classes=["a", "b", "c"]), f.group)


def test_limits():
    with pytest.raises(ValidationError):
        equivariant_period_domain(FlagType(3, (1, 2), (1, 0)), "Fq", 2)
    with pytest.raises(ValidationError):
        ClassFunction(symmetric_group(3), [1, 2])
