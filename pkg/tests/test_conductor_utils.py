from fractions import Fraction
from types import SimpleNamespace
import pytest # type: ignore

from utils.conductor_utils import conductor_utils as cond # type: ignore


@pytest.mark.parametrize("n", range(1, 101))
def test_conductor_identities(n):
    dim = 2 * n + 1
    split = cond.swan_split(n)
    assert cond.artin_rankin_selberg(n) == dim * dim + 2 * n - 1
    assert split.sum == 2 * n
    assert split.difference == 0
    assert split.swan_wedge == split.swan_sym == n
    assert cond.artin_adjoint(n) == 2 * (n * n + n)
    assert cond.gamma_abs(n, 2).exponent == n * n + n
    assert cond.formal_degree_match(n, 2)


def test_anchors():
    assert cond.conductor_summary(2, 4) == {'artin_rs': 28, 'swan_ad': 2, 'gamma': '4^6'}
    assert [cond.artin_rankin_selberg(n) for n in (1, 2, 3)] == [10, 28, 54]
    assert cond.gamma_abs(1, 2).value == 4
    assert str(cond.gamma_abs(3, 8)) == "8^12"


def test_formal_degree_detects_a_wrong_root_count():
    assert not cond.formal_degree_match(3, 4, positive_roots=10)
    assert not cond.formal_degree_match(3, 4, rank=2)


def test_depth_and_parameter_invariants():
    assert cond.depth_pair(2) == (Fraction(1, 4), Fraction(1, 5))
    inv = cond.param_invariants(2)
    assert (inv.dim, inv.artin, inv.swan, inv.depth) == (5, 6, 1, Fraction(1, 5))


@pytest.mark.parametrize("n", [1, 2, 7])
def test_inertia_bookkeeping(n):
    book = cond.inertia_bookkeeping(n)
    assert book.consistent
    assert book.artin_sym + book.artin_wedge == cond.artin_rankin_selberg(n)
    assert book.dim_sym + book.dim_wedge == (2 * n + 1) ** 2


def test_param_spec_validation():
    assert cond.param_spec(2, 4).dim == 5
    with pytest.raises(ValueError, match="degree"):
        cond.ParamSpec(n=2, q=4, K_degree=4)
    with pytest.raises(ValueError, match="quadratic"):
        cond.ParamSpec(n=2, q=4, K_degree=5, xi_order=3)


@pytest.mark.parametrize("q", [0, 1, 3, 6, 12])
def test_q_must_be_a_power_of_two(q):
    with pytest.raises(ValueError, match="power of 2"):
        cond.gamma_abs(1, q)


def test_rank_must_be_positive():
    with pytest.raises(ValueError):
        cond.artin_rankin_selberg(0)
    with pytest.raises(ValueError):
        cond.depth_pair(-1)


def test_conductor_table():
    df = cond.conductor_table(range(1, 4), 4)
    assert list(df['n']) == [1, 2, 3]
    assert list(df['artin_rs']) == [10, 28, 54]
    assert list(df['gamma']) == ['4^2', '4^6', '4^12']
    assert df['formal_degree_match'].all()
    assert df.loc[1, 'depth_group'] == '1/4'
    assert list(df.columns)[:3] == ['n', 'artin_rs', 'swan_sum']


@pytest.mark.parametrize("q", [2, 4, 16])
def test_swan_difference_comes_from_the_adams_square(q):
    for n in (1, 2, 5):
        spec = cond.param_spec(n, q)
        assert cond.adams_square_swan(spec) == 0
        assert cond.swan_split(n, q) == cond.swan_split(n)
        assert cond.swan_split(n, q).difference == cond.adams_square_swan(spec)


def test_adams_square_is_wild_when_xi_squared_is_not_trivial():
    assert cond.adams_square_swan(SimpleNamespace(xi_order=4, xi_swan=1)) == 1
    assert cond.adams_square_swan(SimpleNamespace(xi_order=1, xi_swan=0)) == 0


def test_swan_split_checks_q():
    with pytest.raises(ValueError, match="power of 2"):
        cond.swan_split(2, 6)
