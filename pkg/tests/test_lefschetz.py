import random
from fractions import Fraction

import pytest

from utils.cohomology import SymSpaceId
from utils import lefschetz
from utils.errors import DegeneratePairing, InvariantError, NotARingMap, UnsupportedSpace
from utils.lefschetz import (
    GradedRing,
    build_ring,
    check_ring_map,
    dual_basis,
    identity_endomorphism,
    lefschetz_class,
    lefschetz_number,
    lefschetz_pairing,
    lefschetz_trace,
    scalar_endomorphism,
    so_volume_coefficients,
    su_volume_coefficients,
)


def random_fraction(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def test_rings_satisfy_poincare_duality():
    for space in [SymSpaceId("CPn", (d,)) for d in range(1, 5)] + [SymSpaceId("Sphere", (d,)) for d in range(1, 6)]:
        ring = build_ring(space)
        assert ring.is_graded_commutative()
        assert ring.pairing_nondegenerate()


def test_pairing_equals_trace_on_projective_spaces():
    rng = random.Random(0)
    for _ in range(50):
        d = rng.randint(1, 4)
        ring = build_ring(SymSpaceId("CPn", (d,)))
        factor = random_fraction(rng)
        f_star = scalar_endomorphism(ring, factor)
        expected = sum((factor**k for k in range(d + 1)), Fraction(0))
        assert lefschetz_number(ring, f_star) == lefschetz_trace(ring, f_star) == expected


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("m", [-3, -1, 0, 2, 5])
def test_sphere_maps_of_degree_m(d, m):
    ring = build_ring(SymSpaceId("Sphere", (d,)))
    f_star = scalar_endomorphism(ring, m)
    assert lefschetz_number(ring, f_star) == 1 + (-1) ** d * m
    assert lefschetz_pairing(ring, f_star) == lefschetz_trace(ring, f_star)


def test_identity_gives_euler_characteristic():
    ring = build_ring(SymSpaceId("CPn", (3,)))
    assert lefschetz_number(ring, identity_endomorphism(ring)) == 4
    sphere = build_ring(SymSpaceId("Sphere", (5,)))
    assert lefschetz_number(sphere, identity_endomorphism(sphere)) == 0


def test_lefschetz_class_rendering():
    assert lefschetz_class(build_ring(SymSpaceId("CPn", (1,)))).render() == "w⊗1 + 1⊗w"
    assert lefschetz_class(build_ring(SymSpaceId("Sphere", (3,)))).render() == "vol⊗1 - 1⊗vol"
    cls = lefschetz_class(build_ring(SymSpaceId("CPn", (2,)))).as_dict()
    assert cls == {(2, 0): 1, (1, 1): 1, (0, 2): 1}


def test_non_multiplicative_map_is_rejected():
    ring = build_ring(SymSpaceId("CPn", (2,)))
    f_star = {0: [[Fraction(1)]], 2: [[Fraction(2)]], 4: [[Fraction(3)]]}
    with pytest.raises(NotARingMap):
        check_ring_map(ring, f_star)
    with pytest.raises(NotARingMap):
        lefschetz_number(ring, {0: [[Fraction(1)]], 2: [[Fraction(2)]]})


def test_disagreeing_trace_is_an_error(monkeypatch):
    ring = build_ring(SymSpaceId("CPn", (2,)))
    f_star = scalar_endomorphism(ring, 3)
    honest = lefschetz_trace(ring, f_star)
    monkeypatch.setattr(lefschetz, "lefschetz_trace", lambda r, f: honest + 1)
    with pytest.raises(InvariantError):
        lefschetz_number(ring, f_star)


def test_degenerate_pairing():
    zero, one = Fraction(0), Fraction(1)
    ring = GradedRing(
        space=SymSpaceId("Sphere", (2,)),
        dimension=2,
        labels=("1", "x"),
        degrees=(0, 2),
        products=(((one, zero), (zero, one)), ((zero, one), (zero, zero))),
        integral=(zero, zero),
    )
    assert not ring.pairing_nondegenerate()
    with pytest.raises(DegeneratePairing):
        dual_basis(ring, 0)


def test_unsupported_ring():
    with pytest.raises(UnsupportedSpace):
        build_ring(SymSpaceId("GrassC", (2, 2)))


def test_volume_formulas():
    su = su_volume_coefficients(2)
    assert [c for c, _ in su.terms] == [1, 1, 1]
    assert [str(s) for s in su.coefficients] == ["tau_0", "tau_1", "tau_2"]
    assert su.to_dict()["prefactor"] == "Vol(SU(3))"
    so_even = so_volume_coefficients(2)
    so_odd = so_volume_coefficients(3)
    assert [c for c, _ in so_even.terms] == [1, 1]
    assert [c for c, _ in so_odd.terms] == [1, -1]
    assert so_odd.to_dict()["group"] == "SO(3,1)"
