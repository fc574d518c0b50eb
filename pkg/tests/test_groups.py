import pytest

from motivic_hall.errors import ValidationError
from motivic_hall.equivariant import parabolic
from motivic_hall.ffield import gl_order
from motivic_hall.groups import FiniteGroup, cycle_type, general_linear_group, partition_label, symmetric_group


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_symmetric_classes(r):
    G = symmetric_group(r)
    assert sum(len(c) for c in G.classes) == G.order
    assert sorted(x for c in G.classes for x in c) == list(range(G.order))
    assert G.classes[0] == [G.identity] or tuple(G.classes[0]) == (G.identity,)
    for cl in G.classes:
        assert len({cycle_type(G.elements[x]) for x in cl}) == 1


def test_labels():
    assert partition_label((2, 1)) == "21"
    assert partition_label((1, 1, 1)) == "1^3"
    assert list(symmetric_group(3).class_labels) == ["1^3", "21", "3"]


@pytest.mark.parametrize("q", [2, 3])
def test_gl2_classes(q):
    G = general_linear_group(2, q)
    assert G.order == gl_order(q, 2)
    assert sum(len(c) for c in G.classes) == G.order
    assert G.class_labels[0] == "10/01"


@pytest.mark.parametrize("G,eta", [(symmetric_group(r), eta) for r, eta in
                                   [(3, (2, 1)), (4, (2, 2)), (5, (2, 1, 2)), (5, (1, 4))]]
                         + [(general_linear_group(2, q), eta) for q in (2, 3) for eta in [(1, 1), (2,)]], ids=str)
def test_parabolic_orders(G, eta):
    P = parabolic(G, eta)
    assert P.order == P.expected_order()
    assert G.is_subgroup(P.subgroup.embedding)


def test_from_json_validates():
    G = symmetric_group(3)
    assert FiniteGroup.from_json(G.to_json()).order == 6
    with pytest.raises(ValidationError):
        FiniteGroup.from_json({"name": "bad", "table": [[0, 1], [0, 1]]})
