from fractions import Fraction

import pytest

from utils import rational
from utils.catalog import builtin_catalog
from utils.errors import DegenerateForm, IncompatiblePair
from utils.families import AlgebraSpec
from utils.grammar import parse_pair
from utils.pairs import (
    GROUP_SPACE,
    REAL_FORM,
    UPPER_LEFT,
    PairSpec,
    Subspace,
    check_l_invariance,
    embed_pair,
    orthogonal_complement,
)

CATALOG = builtin_catalog()


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.id)
def test_dimension_of_V_matches_quotient_dimensions(entry):
    rp = embed_pair(entry.pair)
    d = rp.dims()
    assert d["V"] == (d["g"] - d["h"]) - (d["k"] - d["l"])
    assert d["V"] == d["p"]
    assert rp.dim_GH == d["p"] + d["q"]
    gram = rational.gram(rp.V.basis, rp.g.killing)
    assert rational.signature(gram) == (d["V"], 0, 0)
    assert check_l_invariance(rp)


@pytest.mark.parametrize(
    "text, dims",
    [
        ("SO(1,2)/SO(1,1)", {"g": 3, "h": 1, "k": 1, "l": 0, "V": 1}),
        ("SL_R(3)/SL_R(2)", {"g": 8, "h": 3, "k": 3, "l": 1, "V": 3}),
        ("SO(2,2)/SO(2,1)", {"g": 6, "h": 3, "k": 2, "l": 1, "V": 2}),
        ("GROUP(SL_R(2))", {"g": 6, "h": 3, "k": 2, "l": 1, "V": 2}),
        ("SL_C(2)/SU(1,1)", {"g": 6, "h": 3, "k": 3, "l": 1, "V": 1}),
        ("SL_R(3)/SO(3)", {"g": 8, "h": 3, "k": 3, "l": 3, "V": 5}),
        ("SO_C(3)/SO_C(2)", {"g": 6, "h": 2, "k": 3, "l": 1, "V": 2}),
        ("SO_C(5)/SO_C(2)xSO_C(3)", {"g": 20, "h": 8, "k": 10, "l": 4, "V": 6}),
        ("SL_R(5)/SL_R(2)xSL_R(3)", {"g": 24, "h": 11, "k": 10, "l": 4, "V": 7}),
    ],
)
def test_small_pair_dimensions(text, dims):
    d = embed_pair(parse_pair(text)).dims()
    assert {k: d[k] for k in dims} == dims


def test_l_is_h_intersect_k():
    rp = embed_pair(parse_pair("SO(3,2)/SO(3,1)"))
    k_rows = [[Fraction(int(i == j)) for i in range(rp.g.dim)] for j in rp.g.k_indices]
    meet = rational.intersect(rp.h_subspace.basis, k_rows, rp.g.dim)
    assert len(meet) == rp.l_subspace.dim == 3


def test_group_space_embedding_is_diagonal():
    ps = parse_pair("GROUP(SU(2,1))")
    assert ps.embedding == GROUP_SPACE
    rp = embed_pair(ps)
    assert rp.g.dim == 16
    assert rp.h_subspace.dim == 8
    assert rp.dims()["V"] == 4


def test_embedding_inference():
    assert parse_pair("SO(3,2)/SO(3,1)").embedding == UPPER_LEFT
    assert parse_pair("SL_C(3)/SU(2,1)").embedding == REAL_FORM
    assert parse_pair("SO_C(4)/SOSTAR(4)").embedding == REAL_FORM


def test_incompatible_pairs():
    with pytest.raises(IncompatiblePair):
        embed_pair(PairSpec(AlgebraSpec("SO", (2, 2)), AlgebraSpec("SL_R", (2,)), UPPER_LEFT))
    with pytest.raises(IncompatiblePair):
        embed_pair(parse_pair("SO(2,2)/SO(1,2)"))
    with pytest.raises(IncompatiblePair):
        PairSpec(AlgebraSpec("SL_R", (3,)), AlgebraSpec("SL_R", (2,)), GROUP_SPACE)


def test_orthogonal_complement():
    form = rational.to_fraction_matrix([[1, 0, 0], [0, 2, 0], [0, 0, -1]])
    s = Subspace(3, rational.to_fraction_matrix([[1, 1, 0]]))
    comp = orthogonal_complement(s, form)
    assert comp.dim == 2
    for v in comp.basis:
        assert rational.bilinear(s.basis[0], form, v) == 0
    with pytest.raises(DegenerateForm):
        orthogonal_complement(s, rational.to_fraction_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1]]))


def test_complement_of_whole_space_and_double_complement():
    form = rational.to_fraction_matrix([[1, 0, 0], [0, 2, 0], [0, 0, -1]])
    assert orthogonal_complement(Subspace(3, rational.identity(3)), form).dim == 0
    s = Subspace(3, rational.to_fraction_matrix([[1, 1, 0], [0, 1, 3]]))
    twice = orthogonal_complement(orthogonal_complement(s, form), form)
    assert twice.dim == s.dim
    assert rational.row_space(twice.basis) == rational.row_space(s.basis)

    g = embed_pair(parse_pair("SL_R(3)/SL_R(2)")).g
    h = Subspace(g.dim, rational.to_fraction_matrix([[1 if i == k else 0 for i in range(g.dim)] for k in g.k_indices]))
    back = orthogonal_complement(orthogonal_complement(h, g.killing), g.killing)
    assert rational.row_space(back.basis) == rational.row_space(h.basis)
