from math import comb

import pytest

from utils.cohomology import (
    SymSpaceId,
    bidegree_of_omega,
    bigrade_report,
    combine_bigrades,
    compact_dual,
    compact_dual_pair,
    euler_characteristic,
    even_nontrivial,
    poincare_bigrade,
    rank_difference,
    space_dimension,
)
from utils.errors import UnsupportedSpace
from utils.families import AlgebraSpec
from utils.grammar import parse_pair


def all_spaces():
    spaces = [SymSpaceId("Point")]
    spaces += [SymSpaceId("Sphere", (d,)) for d in range(1, 8)]
    spaces += [SymSpaceId("CPn", (d,)) for d in range(1, 6)]
    for p in range(1, 4):
        for q in range(1, 4):
            spaces += [SymSpaceId("GrassC", (p, q)), SymSpaceId("GrassH", (p, q))]
    spaces += [SymSpaceId("GrassR_oriented", (p, q)) for p in range(1, 5) for q in range(1, 5)]
    spaces += [SymSpaceId("SU_over_SO", (n,)) for n in range(2, 7)]
    spaces += [SymSpaceId("SU2n_over_Sp", (n,)) for n in range(1, 4)]
    spaces += [SymSpaceId("SO2n_over_U", (n,)) for n in range(1, 5)]
    spaces += [SymSpaceId("Sp_over_U", (n,)) for n in range(1, 4)]
    spaces += [SymSpaceId("GroupManifold", (n,), "SU") for n in range(2, 5)]
    spaces += [SymSpaceId("GroupManifold", (n,), "SO") for n in range(2, 7)]
    spaces += [SymSpaceId("GroupManifold", (n,), "SP") for n in range(1, 4)]
    return spaces


@pytest.mark.parametrize("space", all_spaces(), ids=lambda s: s.text)
def test_bigrade_adds_up_to_dimension(space):
    grade = poincare_bigrade(space)
    assert grade.dim_even_top + grade.dim_odd_top == space_dimension(space)
    assert len(grade.primitive_degrees) == rank_difference(space)
    assert all(d % 2 == 1 for d in grade.primitive_degrees)
    assert all(c >= 0 for c in grade.even_coefficients)
    if grade.primitive_degrees:
        assert euler_characteristic(space) == 0


@pytest.mark.parametrize("d", range(1, 6))
def test_euler_characteristic_of_projective_space(d):
    assert euler_characteristic(SymSpaceId("CPn", (d,))) == d + 1


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_euler_characteristic_of_grassmannians(p, q):
    assert euler_characteristic(SymSpaceId("GrassC", (p, q))) == comb(p + q, p)
    assert euler_characteristic(SymSpaceId("GrassH", (p, q))) == comb(p + q, p)


def test_small_series():
    assert poincare_bigrade(SymSpaceId("GrassC", (2, 2))).even_coefficients == (1, 0, 1, 0, 2, 0, 1, 0, 1)
    assert poincare_bigrade(SymSpaceId("GrassR_oriented", (3, 3))).primitive_degrees == (5,)
    assert poincare_bigrade(SymSpaceId("GroupManifold", (4,), "SO")).primitive_degrees == (3, 3)
    assert poincare_bigrade(SymSpaceId("Sphere", (4,))).even_coefficients == (1, 0, 0, 0, 1)


def test_products_combine():
    s2 = poincare_bigrade(SymSpaceId("Sphere", (2,)))
    s3 = poincare_bigrade(SymSpaceId("Sphere", (3,)))
    both = combine_bigrades([s2, s2, s3])
    assert both.even_coefficients == (1, 0, 2, 0, 1)
    assert both.primitive_degrees == (3,)


def test_even_nontrivial():
    assert even_nontrivial(SymSpaceId("CPn", (1,)))
    assert not even_nontrivial(SymSpaceId("Sphere", (7,)))
    assert not even_nontrivial(SymSpaceId("Point"))


def test_compact_duals():
    assert compact_dual(AlgebraSpec("SO", (7, 1))) == [SymSpaceId("GrassR_oriented", (7, 1))]
    assert compact_dual(AlgebraSpec("SU", (2, 1))) == [SymSpaceId("GrassC", (2, 1))]
    assert compact_dual(AlgebraSpec("SL_R", (4,))) == [SymSpaceId("SU_over_SO", (4,))]
    assert compact_dual(AlgebraSpec("SO", (3, 0))) == [SymSpaceId("Point")]
    assert compact_dual(AlgebraSpec("SL_C", (3,))) == [SymSpaceId("GroupManifold", (3,), "SU")]


def test_compact_dual_pair():
    g_dual, h_dual = compact_dual_pair(parse_pair("SO(3,2)/SO(3,1)"))
    assert g_dual == [SymSpaceId("GrassR_oriented", (3, 2))]
    assert h_dual == [SymSpaceId("GrassR_oriented", (3, 1))]
    g_dual, h_dual = compact_dual_pair(parse_pair("GROUP(SU(2,1))"))
    assert g_dual == [SymSpaceId("GrassC", (2, 1))] * 2
    assert h_dual == [SymSpaceId("GrassC", (2, 1))]


def test_bidegree_of_omega():
    vanishing = bidegree_of_omega(parse_pair("SO(1,2)/SO(1,1)"))
    assert (vanishing.a, vanishing.b) == (2, -1)
    assert vanishing.vanish_signal
    chern_weil = bidegree_of_omega(parse_pair("SO(2,2)/SO(2,1)"))
    assert (chern_weil.a, chern_weil.b) == (2, 0)
    assert chern_weil.chern_weil
    group = bidegree_of_omega(parse_pair("GROUP(SU(2,1))"))
    assert (group.a, group.b) == (4, 0)


def test_bigrade_report():
    report = bigrade_report(SymSpaceId("CPn", (3,)))
    assert report["space"] == "CP(3)"
    assert report["dimension"] == 6
    assert report["euler_characteristic"] == 4
    assert report["total_betti"] == 4
    assert report["even_nontrivial"] is True


def test_invalid_spaces():
    with pytest.raises(UnsupportedSpace):
        SymSpaceId("Torus", (2,))
    with pytest.raises(UnsupportedSpace):
        SymSpaceId("GrassC", (2,))
