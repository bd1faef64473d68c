import pytest

from utils.cohomology import SymSpaceId
from utils.errors import IncompatiblePair, ParseError, UnsupportedFamily
from utils.families import AlgebraSpec
from utils.grammar import parse_pair, parse_space, parse_spec
from utils.pairs import GROUP_SPACE, REAL_FORM, UPPER_LEFT


def test_pair_examples():
    ps = parse_pair("SO(3,2)/SO(3,1)")
    assert ps.g_spec == AlgebraSpec("SO", (3, 2))
    assert ps.h_spec == AlgebraSpec("SO", (3, 1))
    assert ps.embedding == UPPER_LEFT
    assert ps.text == "SO(3,2)/SO(3,1)"

    group = parse_pair("GROUP(SU(2,1))")
    assert group.embedding == GROUP_SPACE
    assert group.text == "GROUP(SU(2,1))"

    assert parse_pair("SL_C(3)/SU(2,1)").embedding == REAL_FORM


def test_case_and_surrounding_whitespace():
    assert parse_pair("  sl_r(4)/sl_r(2) ").text == "SL_R(4)/SL_R(2)"


def test_compact_shorthand():
    assert parse_spec("SO(3)") == AlgebraSpec("SO", (3, 0))
    assert parse_pair("SL_R(3)/SO(3)").h_spec == AlgebraSpec("SO", (3, 0))


@pytest.mark.parametrize(
    "text, position",
    [
        ("SO(3,2)SO(3,1)", 7),
        ("SO(3,2)/", 8),
        ("XX(3)/SO(2)", 0),
        ("SO(3,2)/SO(3,1)y", 15),
        ("SO_C(5)/SO_C(2)x", 16),
        ("SO(3, 2)/SO(3,1)", 5),
        ("SL_R(3,1)/SL_R(2)", 0),
        ("GROUP(SL_R(2)", 13),
    ],
)
def test_parse_errors_point_at_the_problem(text, position):
    with pytest.raises(ParseError) as info:
        parse_pair(text)
    assert info.value.position == position
    assert info.value.expected


def test_empty_input():
    with pytest.raises(ParseError):
        parse_pair("   ")


def test_semantic_errors_are_validation_errors():
    with pytest.raises(UnsupportedFamily):
        parse_pair("SOSTAR(5)/SO(2)")
    with pytest.raises(IncompatiblePair):
        parse_pair("SO(3,2)/SO(2)xSO(1,2)")
    with pytest.raises(IncompatiblePair):
        parse_pair("SO_C(5)/SO_C(2)xSO_C(2)")


def test_block_product_pairs():
    ps = parse_pair("so_c(5)/so_c(2)xso_c(3)")
    assert ps.embedding == UPPER_LEFT
    assert ps.h_factors == (AlgebraSpec("SO_C", (2,)), AlgebraSpec("SO_C", (3,)))
    assert ps.text == "SO_C(5)/SO_C(2)xSO_C(3)"
    assert parse_pair("SL_R(3)/SL_R(2)").h_second is None


@pytest.mark.parametrize(
    "text, space",
    [
        ("S^4", SymSpaceId("Sphere", (4,))),
        ("S(3)", SymSpaceId("Sphere", (3,))),
        ("CP(2)", SymSpaceId("CPn", (2,))),
        ("GrC(2,2)", SymSpaceId("GrassC", (2, 2))),
        ("GrH(1,2)", SymSpaceId("GrassH", (1, 2))),
        ("GrR(3,2)", SymSpaceId("GrassR_oriented", (3, 2))),
        ("SU(4)/SO(4)", SymSpaceId("SU_over_SO", (4,))),
        ("SU(6)/SP(3)", SymSpaceId("SU2n_over_Sp", (3,))),
        ("SO(6)/U(3)", SymSpaceId("SO2n_over_U", (3,))),
        ("SP(2)/U(2)", SymSpaceId("Sp_over_U", (2,))),
        ("SU(3)", SymSpaceId("GroupManifold", (3,), "SU")),
        ("point", SymSpaceId("Point")),
    ],
)
def test_parse_space(text, space):
    parsed = parse_space(text)
    assert parsed == space
    assert parse_space(parsed.text) == space


@pytest.mark.parametrize("text", ["SU(5)/SP(3)", "SO(4)/SP(2)", "T(2)", "CP(1,2)"])
def test_bad_spaces(text):
    with pytest.raises(ParseError):
        parse_space(text)
