import pytest # type: ignore
from hypothesis import given, strategies as st # type: ignore

from utils.arithmetic_utils.gf2_utils import make_field # type: ignore
from utils.arithmetic_utils.dring_utils import ( # type: ignore
    arith, congruent_mod, elements, from_teichmuller_digits, invert, lift, make_ring, reduce,
    residue_over_uniformizer, teichmuller, teichmuller_digits, times_uniformizer_power, units, valuation
)

F4 = make_field(2)
F8 = make_field(3)
R = make_ring(F4, 4)
R8 = make_ring(F8, 3)


def ring_elems(ring):
    return st.lists(st.integers(0, ring.mask - 1), min_size=ring.f, max_size=ring.f).map(ring.elem)


def ring_units(ring):
    return ring_elems(ring).filter(lambda x: x.is_unit())


@given(ring_elems(R), ring_elems(R), ring_elems(R))
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a - b) + b == a
    assert a + (-a) == R.zero()
    assert arith('neg', a) == -a


@given(ring_elems(R8), ring_elems(R8))
def test_reduce_is_a_homomorphism(a, b):
    assert reduce(a + b) == reduce(a) + reduce(b)
    assert reduce(a * b) == reduce(a) * reduce(b)


@given(ring_units(R8))
def test_invert(u):
    assert u * invert(u) == R8.one()
    assert u ** -1 == invert(u)


def test_invert_non_unit_raises():
    with pytest.raises(ValueError, match="not a unit"):
        invert(R.from_int(2))
    with pytest.raises(ValueError):
        invert(R.zero())


@given(ring_elems(R), ring_elems(R))
def test_valuation_laws(x, y):
    vx, vy = valuation(x), valuation(y)
    assert valuation(x + y) >= min(vx, vy)
    if min(vx, vy) < R.m:
        assert valuation(x * y) == min(R.m, vx + vy)


def test_valuation_values():
    assert valuation(R.zero()) == 4
    assert valuation(R.one()) == 0
    assert valuation(R.from_int(2)) == 1
    assert valuation(R.from_int(12)) == 2
    assert valuation(R.from_int(8)) == 3
    R3 = make_ring(F4, 3)
    assert all(valuation(u * R3.uniformizer()) == 1 for u in units(R3))


@pytest.mark.parametrize("m", range(1, 7))
def test_integer_oracle(m):
    Z = make_ring(make_field(1), m)
    for x in range(Z.mask):
        for y in range(Z.mask):
            assert (Z.from_int(x) * Z.from_int(y)).coeffs == ((x * y) % Z.mask,)
            assert (Z.from_int(x) + Z.from_int(y)).coeffs == ((x + y) % Z.mask,)


@pytest.mark.parametrize("f,m", [(1, 4), (2, 4), (3, 3), (4, 2)])
def test_teichmuller_lift(f, m):
    ring = make_ring(make_field(f), m)
    field = ring.field
    for a in [field.elem(v) for v in range(field.q)]:
        t = teichmuller(a, ring)
        assert reduce(t) == a
        assert t ** field.q == t
        for b in [field.elem(v) for v in range(field.q)]:
            assert teichmuller(a * b, ring) == t * teichmuller(b, ring)


def test_teichmuller_of_one_and_zero():
    assert teichmuller(F4.one(), R) == R.one()
    assert teichmuller(F4.zero(), R) == R.zero()


def test_teichmuller_rejects_foreign_residue():
    with pytest.raises(ValueError):
        teichmuller(F8.one(), R)


def test_lift_is_coordinate_lift():
    w = F4.elem(0b10)
    assert lift(w, R).coeffs == (0, 1)
    assert reduce(lift(w, R)) == w


def test_congruent_mod():
    assert congruent_mod(R.from_int(5), R.from_int(1), 2)
    assert not congruent_mod(R.from_int(5), R.from_int(1), 3)
    assert congruent_mod(R.one(), R.from_int(3), 0)
    with pytest.raises(ValueError):
        congruent_mod(R.one(), R.one(), 5)
    with pytest.raises(ValueError):
        congruent_mod(R.one(), R.one(), -1)


def test_residue_over_uniformizer():
    w = F4.elem(0b10)
    assert residue_over_uniformizer(R.from_int(2)) == F4.one()
    assert residue_over_uniformizer(R.from_int(2) * teichmuller(w, R)) == w
    assert residue_over_uniformizer(R.from_int(4)) == F4.zero()
    with pytest.raises(ValueError, match="not in p"):
        residue_over_uniformizer(R.one())
    with pytest.raises(ValueError):
        residue_over_uniformizer(make_ring(F4, 1).zero())


def test_times_uniformizer_power():
    assert times_uniformizer_power(R.one(), 3) == R.from_int(8)
    assert times_uniformizer_power(R.one(), 4) == R.zero()


def test_teichmuller_digit_expansion():
    x = R.elem([5, 11])
    digits = teichmuller_digits(x)
    assert len(digits) == R.m
    assert from_teichmuller_digits(digits, R) == x
    with pytest.raises(ValueError):
        from_teichmuller_digits([1] * 5, R)


def test_enumeration_sizes():
    small = make_ring(F4, 2)
    assert sum(1 for _ in elements(small)) == 16
    assert sum(1 for _ in units(small)) == 12
    assert sum(1 for _ in elements(R)) == 256


def test_enumeration_refuses_large_rings():
    with pytest.raises(ValueError):
        next(elements(make_ring(make_field(5), 4)))


def test_make_ring_rejects_zero_precision():
    with pytest.raises(ValueError):
        make_ring(F4, 0)


def test_cross_ring_operation_raises():
    with pytest.raises(ValueError, match="different rings"):
        R.one() + make_ring(F4, 3).one()


def test_describe():
    assert R.describe() == {'m': 4}
    assert R.size == 256
