import pytest # type: ignore
from hypothesis import given, strategies as st # type: ignore

from utils.arithmetic_utils.gf2_utils import ( # type: ignore
    arith, default_modulus, elements, generator, log, make_field, parse_elem, parse_modulus,
    poly_str, product, psi, trace, units
)

F16 = make_field(4)


def field_elems(spec):
    return st.integers(0, spec.q - 1).map(spec.elem)


def field_units(spec):
    return st.integers(1, spec.q - 1).map(spec.elem)


def test_default_moduli_are_least_irreducible():
    assert default_modulus(1) == 0b10
    assert default_modulus(2) == 0b111
    assert default_modulus(3) == 0b1011
    assert default_modulus(4) == 0b10011


def test_gf4_anchors(gf4):
    w = generator(gf4)
    assert w.value == 0b10
    assert w * w * w == gf4.one()
    assert trace(gf4.one()) == 0
    assert trace(w) == 1
    assert gf4.one().inverse() == gf4.one()


def test_psi_of_one_in_gf2(gf2):
    assert trace(gf2.one()) == 1
    assert psi(gf2.one()) == -1


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(0)
    with pytest.raises(ValueError, match="reducible"):
        make_field(2, 0b100)
    with pytest.raises(ValueError, match="degree"):
        make_field(2, 0b1011)
    with pytest.raises(ValueError, match="positive"):
        make_field(2, -7)
    with pytest.raises(ValueError, match="positive"):
        make_field(2, 0)


def test_reducible_modulus_message_names_a_factor():
    with pytest.raises(ValueError, match=r"divisible by X\+1"):
        make_field(2, 0b101)


def test_alternative_modulus_gives_same_field_size():
    F = make_field(3, 0b1101)
    assert F.q == 8
    assert len({u.value for u in units(F)}) == 7


@given(field_elems(F16), field_elems(F16), field_elems(F16))
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + a == F16.zero()
    assert a - b == a + b


@given(field_units(F16))
def test_inverse(a):
    assert arith('mul', arith('inv', a), a) == F16.one()
    assert a / a == F16.one()


@given(field_units(F16), st.integers(-40, 40))
def test_log_of_power(a, k):
    assert log(arith('pow', a, k)) == (log(a) * k) % F16.order


def test_inverse_of_zero_raises(gf4):
    with pytest.raises(ValueError):
        gf4.zero().inverse()


def test_log_of_zero_raises(gf4):
    with pytest.raises(ValueError):
        log(gf4.zero())


def test_unknown_operation_raises(gf4):
    with pytest.raises(ValueError, match="Unknown field operation"):
        arith('frobenius', gf4.one())


def test_cross_field_operation_raises(gf4, gf8):
    with pytest.raises(ValueError, match="different fields"):
        gf4.one() + gf8.one()


@pytest.mark.parametrize("f", range(1, 9))
def test_psi_frobenius_invariance(f):
    F = make_field(f)
    assert all(psi(x * x) == psi(x) for x in elements(F))


@pytest.mark.parametrize("f", range(1, 7))
def test_psi_sums(f):
    F = make_field(f)
    assert sum(psi(x) for x in elements(F)) == 0
    assert sum(psi(x) for x in units(F)) == -1


@pytest.mark.parametrize("f", range(1, 7))
def test_units_are_generator_powers(f):
    F = make_field(f)
    g = generator(F)
    us = units(F)
    assert len(us) == F.q - 1
    assert all(u == g ** k for k, u in enumerate(us))
    assert product(us, F) == F.one()


def test_squaring_is_a_bijection():
    assert len({(x * x).value for x in elements(F16)}) == F16.q


def test_parse_elem(gf8):
    g = generator(gf8)
    assert parse_elem('0', gf8) == gf8.zero()
    assert parse_elem('1', gf8) == gf8.one()
    assert parse_elem('g', gf8) == g
    assert parse_elem('g^5', gf8) == g ** 5
    assert parse_elem('g^-1', gf8) == g.inverse()
    assert parse_elem('0b101', gf8).value == 5
    with pytest.raises(ValueError):
        parse_elem('omega', gf8)
    with pytest.raises(ValueError):
        parse_elem('0b1111', gf8)


def test_parse_modulus():
    assert parse_modulus('0b111') == 7
    assert parse_modulus('111') == 7
    assert parse_modulus('default') is None
    assert parse_modulus(None) is None


@pytest.mark.parametrize("text", ['-111', '+111', '0b-111', '121', '0x7', 'g^2'])
def test_parse_modulus_rejects_non_binary_text(text):
    with pytest.raises(ValueError, match="bit string"):
        parse_modulus(text)


def test_rendering(gf4):
    assert poly_str(0b1011) == "X^3+X+1"
    assert str(generator(gf4)) == "g^1"
    assert str(gf4.one()) == "1"
    assert gf4.describe() == {'f': 2, 'q': 4, 'modulus_bits': '111'}
