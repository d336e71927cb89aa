from itertools import permutations
import pytest # type: ignore
from hypothesis import given, settings, strategies as st # type: ignore

from utils.arithmetic_utils.gf2_utils import make_field # type: ignore
from utils.arithmetic_utils.dring_utils import make_ring, teichmuller # type: ignore
from utils.matrixGroup_utils.matrix_utils import ( # type: ignore
    Mat, charpoly, det, diagonal, from_entries, from_rows, identity, inverse, mat_from_json, transpose, zeros
)
from utils.verification_utils.sampling_utils import random_invertible # type: ignore

F4 = make_field(2)
R = make_ring(F4, 4)


def matrices(N, ring=R):
    entry = st.lists(st.integers(0, ring.mask - 1), min_size=ring.f, max_size=ring.f).map(ring.elem)
    return st.lists(st.lists(entry, min_size=N, max_size=N), min_size=N, max_size=N).map(
        lambda rows: from_rows(rows, ring))


def leibniz_det(A: Mat):
    N = A.n_dim
    total = A.ring.zero()
    for perm in permutations(range(N)):
        sign = 1
        for i in range(N):
            for j in range(i + 1, N):
                if perm[i] > perm[j]:
                    sign = -sign
        term = A.ring.from_int(sign)
        for i in range(N):
            term = term * A.entries[i][perm[i]]
        total = total + term
    return total


def test_charpoly_2x2():
    A = from_rows([[3, 5], [7, 2]], R)
    c = charpoly(A)
    assert c[0] == R.one()
    assert c[1] == R.from_int(-5)
    assert c[2] == R.from_int(3 * 2 - 5 * 7)


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_det_matches_leibniz(A):
    assert det(A) == leibniz_det(A)


@settings(max_examples=25, deadline=None)
@given(matrices(4))
def test_charpoly_trace_and_det(A):
    c = charpoly(A)
    trace = R.zero()
    for i in range(4):
        trace = trace + A.entries[i][i]
    assert len(c) == 5
    assert c[1] == -trace
    assert c[4] == leibniz_det(A)


@settings(max_examples=25, deadline=None)
@given(matrices(3), matrices(3))
def test_det_is_multiplicative(A, B):
    assert det(A @ B) == det(A) * det(B)


def test_inverse(rng):
    for N in (1, 2, 3, 5):
        A = random_invertible(N, R, rng)
        assert A @ inverse(A) == identity(N, R)
        assert inverse(A) @ A == identity(N, R)
        assert A ** -2 == inverse(A @ A)


def test_inverse_of_singular_reduction_raises():
    with pytest.raises(ValueError, match="not invertible"):
        inverse(from_rows([[2, 1], [4, 2]], R))


def test_one_indexed_access_and_update():
    A = from_entries(3, R, {(3, 1): 2, (1, 2): 1})
    assert A.at(3, 1) == R.from_int(2)
    assert A.at(1, 2) == R.one()
    B = A.with_entry(2, 2, 5)
    assert B.at(2, 2) == R.from_int(5)
    assert A.at(2, 2) == R.zero()


def test_equality_ignores_group_tag():
    A = identity(2, R)
    assert A.tagged('Sp') == A
    assert hash(A.tagged('Sp')) == hash(A)


def test_shape_validation():
    with pytest.raises(ValueError):
        Mat(R, 2, ((R.one(),), (R.one(),)))
    with pytest.raises(ValueError):
        identity(2, R) @ identity(3, R)


def test_builders():
    D = diagonal([1, 2, 3], R)
    assert transpose(D) == D
    assert D - D == zeros(3, R)
    assert D.scale(2) == diagonal([2, 4, 6], R)
    assert identity(2, R).upper_left(1) == identity(1, R)
    assert diagonal([1, 2], R).valuations() == [[0, 4], [4, 1]]


def test_matrix_json_teichmuller_digits():
    w = F4.elem(0b10)
    data = {'n_dim': 2, 'entries': [[[1], [0, 2]], [0, [1, 1]]]}
    A = mat_from_json(data, R)
    assert A.at(1, 1) == R.one()
    assert A.at(1, 2) == R.from_int(2) * teichmuller(w, R)
    assert A.at(2, 1) == R.zero()
    assert A.at(2, 2) == R.from_int(3)


def test_matrix_json_coefficients_and_group():
    data = {'n_dim': 2, 'group': 'Sp', 'encoding': 'coefficients', 'entries': [[-1, 1], [[14, 0], [0, 1]]]}
    A = mat_from_json(data, R)
    assert A.group == 'Sp'
    assert A.at(1, 1) == R.from_int(-1)
    assert A.at(2, 1) == R.from_int(-2)
    assert A.at(2, 2).coeffs == (0, 1)
    assert mat_from_json(A.to_json(), R) == A


@pytest.mark.parametrize("data", [
    {'entries': [[1]]},
    {'n_dim': 2, 'entries': [[1, 0]]},
    {'n_dim': 1, 'entries': [[1]], 'encoding': 'base64'},
])
def test_matrix_json_rejects_malformed_input(data):
    with pytest.raises(ValueError):
        mat_from_json(data, R)
