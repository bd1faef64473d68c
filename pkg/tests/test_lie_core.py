from fractions import Fraction
from math import lcm

import numpy as np
import pytest

from utils.errors import DimensionCapExceeded, DimensionMismatch, UnsupportedFamily
from utils.families import AlgebraSpec, group_rank, maximal_compact_rank
from utils import rational
from utils.lie_core import (
    _structure_tensor,
    build_algebra,
    cartan_decomposition,
    check_invariants,
    direct_sum,
    killing_form,
)

SMALL_SPECS = [
    AlgebraSpec("SL_R", (3,)),
    AlgebraSpec("SO", (2, 2)),
    AlgebraSpec("SO", (3, 1)),
    AlgebraSpec("SU", (2, 1)),
    AlgebraSpec("SP", (1, 1)),
    AlgebraSpec("SL_C", (2,)),
    AlgebraSpec("SO_C", (4,)),
    AlgebraSpec("SP_C", (1,)),
    AlgebraSpec("SOSTAR", (4,)),
    AlgebraSpec("SL_H", (2,)),
]


def brute_force_killing(spec):
    """tr(ad X ad Y) with ad read off matrix brackets through basis coordinates"""
    a = build_algebra(spec)
    scale = lcm(*a.norms)
    ad = np.zeros((a.dim, a.dim, a.dim), dtype=np.int64)
    for i, x in enumerate(a.basis):
        for j, y in enumerate(a.basis):
            coords = a.coordinates(x @ y - y @ x)
            ad[i, :, j] = [int(c * scale) for c in coords]
    traces = np.einsum("ikl,jlk->ij", ad, ad)
    return a, [[Fraction(int(v), scale * scale) for v in row] for row in traces]


def trace_form(a):
    return np.einsum("iab,jba->ij", a.basis, a.basis)


@pytest.mark.parametrize("n", range(3, 9))
def test_killing_so_n(n):
    a, brute = brute_force_killing(AlgebraSpec("SO", (n, 0)))
    expected = [[Fraction(int(v) * (n - 2)) for v in row] for row in trace_form(a)]
    assert brute == expected
    assert killing_form(a) == expected


@pytest.mark.parametrize("n", range(2, 6))
def test_killing_sl_n(n):
    a, brute = brute_force_killing(AlgebraSpec("SL_R", (n,)))
    expected = [[Fraction(int(v) * 2 * n) for v in row] for row in trace_form(a)]
    assert brute == expected
    assert killing_form(a) == expected


@pytest.mark.parametrize("spec, factor", [(AlgebraSpec("SL_C", (2,)), 4), (AlgebraSpec("SL_C", (3,)), 6), (AlgebraSpec("SO_C", (3,)), 1), (AlgebraSpec("SO_C", (4,)), 2)])
def test_killing_complex_families(spec, factor):
    a, brute = brute_force_killing(spec)
    expected = [[Fraction(int(v) * factor) for v in row] for row in trace_form(a)]
    assert brute == expected
    assert killing_form(a) == expected


def test_killing_literals():
    so3 = build_algebra(AlgebraSpec("SO", (3, 0)))
    assert killing_form(so3) == [[Fraction(-2 if i == j else 0) for j in range(3)] for i in range(3)]
    sl2 = build_algebra(AlgebraSpec("SL_R", (2,)))
    h = sl2.coordinates(np.array([[1, 0], [0, -1]], dtype=np.int64))
    assert rational.bilinear(h, killing_form(sl2), h) == 8


def test_structure_tensor_chunks_agree():
    a = build_algebra(AlgebraSpec("SU", (2, 1)))
    norms = np.array(a.norms, dtype=np.int64)
    whole, d_whole = _structure_tensor(a.basis, norms, chunk=a.dim)
    pieces, d_pieces = _structure_tensor(a.basis, norms, chunk=3)
    assert d_whole == d_pieces
    assert np.array_equal(whole, pieces)


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=lambda s: s.text)
def test_structure_and_signature(spec):
    a = build_algebra(spec)
    assert a.dim == spec.dimension
    k_idx, p_idx = cartan_decomposition(a)
    assert k_idx == list(range(len(k_idx)))
    assert len(k_idx) + len(p_idx) == a.dim
    for x, s in zip(a.basis, a.theta_signature):
        assert np.array_equal(-x.T, s * x)
    assert check_invariants(a) is None


def test_compact_forms_have_empty_p_part():
    for spec in (AlgebraSpec("SO", (5, 0)), AlgebraSpec("SU", (3, 0)), AlgebraSpec("SP", (2, 0))):
        a = build_algebra(spec)
        assert a.p_indices == []
        assert len(a.k_indices) == spec.dimension


def test_dimension_cap():
    with pytest.raises(DimensionCapExceeded):
        build_algebra(AlgebraSpec("SL_R", (20,)))
    assert build_algebra(AlgebraSpec("SL_R", (4,)), dimension_cap=15).dim == 15


def test_unsupported_family():
    with pytest.raises(UnsupportedFamily):
        AlgebraSpec("G2", (1,))
    with pytest.raises(UnsupportedFamily):
        AlgebraSpec("SOSTAR", (5,))
    with pytest.raises(UnsupportedFamily):
        AlgebraSpec("SO", (3,))


def test_coordinates_reject_matrices_outside():
    a = build_algebra(AlgebraSpec("SL_R", (2,)))
    with pytest.raises(DimensionMismatch):
        a.coordinates(np.eye(2, dtype=np.int64))
    x = np.array([[1, 2], [0, -1]], dtype=np.int64)
    coords = a.coordinates(x)
    rebuilt = sum(float(c) * b for c, b in zip(coords, a.basis))
    assert np.allclose(rebuilt, x)


def test_direct_sum_keeps_k_first():
    a = build_algebra(AlgebraSpec("SL_R", (2,)))
    s = direct_sum(a, a)
    assert s.dim == 6
    assert s.theta_signature == (1, 1, -1, -1, -1, -1)
    cartan_decomposition(s)


def test_ranks():
    assert group_rank(AlgebraSpec("SL_R", (5,))) == 4
    assert maximal_compact_rank(AlgebraSpec("SL_R", (5,))) == 2
    assert group_rank(AlgebraSpec("SO", (3, 2))) == 2
    assert maximal_compact_rank(AlgebraSpec("SO", (3, 2))) == 2
    assert group_rank(AlgebraSpec("SU", (2, 1))) == maximal_compact_rank(AlgebraSpec("SU", (2, 1))) == 2
