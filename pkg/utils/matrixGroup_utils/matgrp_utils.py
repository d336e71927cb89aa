from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple
import logging

from utils.arithmetic_utils.gf2_utils import FieldElem # type: ignore
from utils.arithmetic_utils.dring_utils import ( # type: ignore
    RingElem, RingSpec, congruent_mod, invert, reduce, residue_over_uniformizer, teichmuller, valuation
)
from utils.matrixGroup_utils.matrix_utils import ( # type: ignore
    Mat, charpoly, from_entries, identity, inverse, transpose
)

logger = logging.getLogger(__name__)

GL = 'GL'
SP = 'Sp'


class FiltrationClass(Enum):
    OUTSIDE = 'Outside'
    IWAHORI = 'Iwahori'
    IWAHORI_PLUS = 'IwahoriPlus'
    IWAHORI_PLUS_PLUS = 'IwahoriPlusPlus'

    @property
    def depth(self) -> int:
        return _DEPTH[self]

    def within(self, other: 'FiltrationClass') -> bool:
        """True if this class is contained in ``other`` (I++ within I+ within I)."""
        return self.depth >= other.depth


_DEPTH = {
    FiltrationClass.OUTSIDE: -1,
    FiltrationClass.IWAHORI: 0,
    FiltrationClass.IWAHORI_PLUS: 1,
    FiltrationClass.IWAHORI_PLUS_PLUS: 2,
}


@dataclass(frozen=True)
class AffineComponents:
    values: Tuple[FieldElem, ...]
    group: str

    def is_generic(self) -> bool:
        return all(v.value != 0 for v in self.values)


@dataclass(frozen=True)
class ShiftedCharPoly:
    """
    det(T I - g) written as (T-1)^N + a_{N-1}(T-1)^{N-1} + ... + a_0.

    Attributes:
        coeffs (Tuple[RingElem, ...]): a_0, ..., a_{N-1}
    """
    coeffs: Tuple[RingElem, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def a(self, i: int) -> RingElem:
        return self.coeffs[i]

    def times_shift(self) -> 'ShiftedCharPoly':
        """Multiply by (T-1)."""
        ring = self.coeffs[0].spec
        return ShiftedCharPoly((ring.zero(),) + self.coeffs)


@dataclass(frozen=True)
class EisensteinResult:
    passes: bool
    constant_term: RingElem


def _check_odd(N: int, what: str) -> int:
    if N % 2 == 0:
        raise ValueError(f"{what} needs odd dimension 2n+1, got {N}")
    return (N - 1) // 2


def antidiag_J(N: int, ring: RingSpec) -> Mat:
    """(i, N+1-i) entry (-1)^(i-1), zero elsewhere."""
    return from_entries(N, ring, {(i, N + 1 - i): (-1) ** (i - 1) for i in range(1, N + 1)})


def is_symplectic(g: Mat) -> bool:
    if g.n_dim % 2:
        raise ValueError(f"Symplectic test needs even dimension, got {g.n_dim}")
    J = antidiag_J(g.n_dim, g.ring)
    return transpose(g) @ J @ g == J


def radical_bound(i: int, j: int, k: int, N: int) -> int:
    """Valuation bound of entry (i, j) in the k-th power of the Iwahori radical of M_N(O)."""
    return max(0, -((j - i - k) // N))


def in_radical_power(A: Mat, k: int) -> bool:
    N, m = A.n_dim, A.ring.m
    return all(valuation(A.entries[i][j]) >= min(m, radical_bound(i + 1, j + 1, k, N))
               for i in range(N) for j in range(N))


def congruent_mod_radical(A: Mat, B: Mat, k: int) -> bool:
    """A - B lies in the k-th radical power, read at the working precision."""
    return in_radical_power(A - B, k)


def _is_iwahori(g: Mat) -> bool:
    N = g.n_dim
    for i in range(N):
        if not g.entries[i][i].is_unit():
            return False
        for j in range(i):
            if g.entries[i][j].is_unit():
                return False
    return True


def classify_filtration(g: Mat, group: str = GL) -> FiltrationClass:
    """
    Finest Iwahori filtration class containing g.

    For Sp the GL pattern is intersected with the symplectic group; a
    non-symplectic input is Outside.
    """
    if group == SP and (g.n_dim % 2 or not is_symplectic(g)):
        return FiltrationClass.OUTSIDE
    if not _is_iwahori(g):
        return FiltrationClass.OUTSIDE
    diff = g - identity(g.n_dim, g.ring)
    if not in_radical_power(diff, 1):
        return FiltrationClass.IWAHORI
    if not in_radical_power(diff, 2):
        return FiltrationClass.IWAHORI_PLUS
    return FiltrationClass.IWAHORI_PLUS_PLUS


def _require_plus(g: Mat, group: str) -> None:
    if not classify_filtration(g, group).within(FiltrationClass.IWAHORI_PLUS):
        raise ValueError(f"Element is not in I+ of {group}_{g.n_dim}")


def affine_components(g: Mat, group: str = GL) -> AffineComponents:
    """
    Coordinates of g in I+/I++: the residues of the superdiagonal band and of
    the corner divided by the uniformizer.

    Raises:
        ValueError: if g is not in I+ of the group
    """
    N = g.n_dim
    if N < 2:
        raise ValueError("Affine components need dimension >= 2")
    _require_plus(g, group)
    if group == SP:
        n = N // 2
        band = [reduce(g.at(i, i + 1)) for i in range(1, n + 1)]
    else:
        band = [reduce(g.at(i, i + 1)) for i in range(1, N)]
    return AffineComponents(tuple(band) + (residue_over_uniformizer(g.at(N, 1)),), group)


def is_affine_generic(y: Mat, group: str = GL) -> bool:
    return affine_components(y, group).is_generic()


def eta(g: Mat) -> Mat:
    """
    J tg J^-1, so that theta(g) = eta(g)^-1.

    Entry (i, j) is (-1)^(i+j) g_{N+1-j, N+1-i} in every dimension.
    """
    N = g.n_dim
    rows = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            entry = g.at(N + 1 - j, N + 1 - i)
            row.append(-entry if (i + j) % 2 else entry)
        rows.append(tuple(row))
    return Mat(g.ring, N, tuple(rows))


def theta(g: Mat) -> Mat:
    """
    The involution J tg^-1 J^-1 on GL_{2n+1}.

    Raises:
        ValueError: for even dimension or a non-invertible g
    """
    _check_odd(g.n_dim, "theta")
    return inverse(eta(g))


def theta_norm(x: Mat) -> Mat:
    return x @ theta(x)


def is_theta_affine_generic(x: Mat) -> bool:
    n = _check_odd(x.n_dim, "theta-affine genericity")
    _require_plus(x, GL)
    N = x.n_dim
    for i in range(1, n + 1):
        if not (x.at(i, i + 1) + x.at(N - i, N + 1 - i)).is_unit():
            return False
    return valuation(x.at(N, 1)) == 1


def shifted_charpoly(g: Mat) -> ShiftedCharPoly:
    """Characteristic polynomial in the variable S = T - 1, i.e. det(S I - (g - I))."""
    N = g.n_dim
    p = charpoly(g - identity(N, g.ring))
    return ShiftedCharPoly(tuple(p[N - i] for i in range(N)))


def eisenstein_check(x: Mat) -> EisensteinResult:
    """
    Test whether the characteristic polynomial of x theta(x) is (T-1) times an
    Eisenstein polynomial in (T-1).

    Returns:
        EisensteinResult: ``passes`` and the constant term a_1 of the Eisenstein factor
    """
    n = _check_odd(x.n_dim, "Eisenstein check")
    _require_plus(x, GL)
    p = shifted_charpoly(theta_norm(x))
    a = p.coeffs
    passes = (a[0].is_zero()
              and all(not a[i].is_unit() for i in range(1, 2 * n + 1))
              and valuation(a[1]) == 1)
    return EisensteinResult(passes, a[1])


def sp_eisenstein_check(y: Mat) -> EisensteinResult:
    """Eisenstein test on the shifted characteristic polynomial of y in I+ of Sp_2n; constant term a_0."""
    _require_plus(y, SP)
    a = shifted_charpoly(y).coeffs
    passes = all(not c.is_unit() for c in a) and valuation(a[0]) == 1
    return EisensteinResult(passes, a[0])


def _nonzero_unit(u: FieldElem) -> None:
    if u.value == 0:
        raise ValueError("Parameter must be a nonzero element of the residue field")


def _corner(u: FieldElem, ring: RingSpec) -> RingElem:
    if ring.m < 2:
        raise ValueError(f"Precision m={ring.m} cannot hold the corner entry 2u; need m >= 2")
    return ring.from_int(2) * teichmuller(u, ring)


def make_g(n: int, u: FieldElem, ring: RingSpec) -> Mat:
    """I + E_{1,2} + ... + E_{n,n+1} + 2[u] E_{2n+1,1} in GL_{2n+1}."""
    _nonzero_unit(u)
    N = 2 * n + 1
    values = {(i, i): 1 for i in range(1, N + 1)}
    values.update({(i, i + 1): 1 for i in range(1, n + 1)})
    values[(N, 1)] = _corner(u, ring)
    return from_entries(N, ring, values).tagged(GL)


def expected_theta_g(n: int, u: FieldElem, ring: RingSpec) -> Mat:
    """Closed form of theta(g_u): unipotent all-ones block on rows n+1..2n+1, -2[u] down the first column."""
    _nonzero_unit(u)
    N = 2 * n + 1
    c = _corner(u, ring)
    values: Dict[Tuple[int, int], object] = {(i, i): 1 for i in range(1, N + 1)}
    for i in range(n + 1, N + 1):
        for j in range(i + 1, N + 1):
            values[(i, j)] = 1
        values[(i, 1)] = -c
    return from_entries(N, ring, values)


def expected_norm_g(n: int, u: FieldElem, ring: RingSpec) -> Mat:
    """Closed form of g_u theta(g_u)."""
    _nonzero_unit(u)
    N = 2 * n + 1
    c = _corner(u, ring)
    one = ring.one()
    rows = [[ring.zero()] * N for _ in range(N)]
    for i in range(1, N + 1):
        rows[i - 1][i - 1] = one
    for i in range(1, n):
        rows[i - 1][i] = one
    for i in range(n, 2 * n + 1):
        for j in range(i + 1, N + 1):
            rows[i - 1][j - 1] = one
        rows[i - 1][0] = rows[i - 1][0] - c
    return Mat(ring, N, tuple(tuple(r) for r in rows))


def h_blocks(n: int, u: FieldElem, ring: RingSpec) -> Tuple[Mat, Mat, Mat, Mat]:
    """The n x n blocks P, X, Y, Q of h_u = [[P, X], [Y, Q]]."""
    _nonzero_unit(u)
    c = _corner(u, ring)
    P_vals: Dict[Tuple[int, int], object] = {(i, i): 1 for i in range(1, n + 1)}
    P_vals.update({(i, i + 1): 1 for i in range(1, n)})
    P_vals[(n, 1)] = (ring.one() - c) if n == 1 else -c
    X_vals = {(n, j): 1 for j in range(1, n + 1)}
    Y_vals = {(i, 1): -c for i in range(1, n + 1)}
    Q_vals = {(i, j): 1 for i in range(1, n + 1) for j in range(i, n + 1)}
    return (from_entries(n, ring, P_vals), from_entries(n, ring, X_vals),
            from_entries(n, ring, Y_vals), from_entries(n, ring, Q_vals))


def make_h(n: int, u: FieldElem, ring: RingSpec) -> Mat:
    """h_u in Sp_2n assembled from its blocks; equals the upper-left 2n minor of g_u theta(g_u)."""
    P, X, Y, Q = h_blocks(n, u, ring)
    rows = [P.entries[i] + X.entries[i] for i in range(n)] + [Y.entries[i] + Q.entries[i] for i in range(n)]
    return Mat(ring, 2 * n, tuple(tuple(r) for r in rows), SP)


def g_h_block_identities(n: int, u: FieldElem, ring: RingSpec) -> Dict[str, bool]:
    """The four block equations equivalent to th J_{2n} h = J_{2n}."""
    P, X, Y, Q = h_blocks(n, u, ring)
    Jn = antidiag_J(n, ring)
    tJn = transpose(Jn)
    sign_Jn = Jn if n % 2 == 0 else -Jn
    zero = Jn - Jn
    tP, tX, tY, tQ = transpose(P), transpose(X), transpose(Y), transpose(Q)
    return {
        'PY': tP @ Jn @ Y - tY @ tJn @ P == zero,
        'PQ': tP @ Jn @ Q - tY @ tJn @ X == Jn,
        'XY': tX @ Jn @ Y - tQ @ tJn @ P == sign_Jn,
        'XQ': tX @ Jn @ Q - tQ @ tJn @ X == zero,
    }


def phi_with_corner(N: int, corner: RingElem) -> Mat:
    values: Dict[Tuple[int, int], object] = {(i, i + 1): 1 for i in range(1, N)}
    values[(N, 1)] = corner
    return from_entries(N, corner.spec, values)


def make_phi(N: int, a: FieldElem, ring: RingSpec) -> Mat:
    """[[0, I_{N-1}], [2[a], 0]], whose N-th power is 2[a] I_N."""
    _nonzero_unit(a)
    return phi_with_corner(N, _corner(a, ring)).tagged(GL)


def norm_correspondence_check(g: Mat, h: Mat) -> bool:
    """charpoly(g theta(g)) == (T-1) charpoly(h), coefficientwise in O/p^m."""
    if g.n_dim != h.n_dim + 1 or h.n_dim % 2:
        raise ValueError(f"Norm correspondence needs sizes 2n+1 and 2n, got {g.n_dim} and {h.n_dim}")
    return shifted_charpoly(theta_norm(g)) == shifted_charpoly(h).times_shift()


def iwahori_theta_congruences(x: Mat, xp: Optional[Mat] = None) -> Dict[str, bool]:
    """
    Congruences for the entries of theta(x) and x theta(x), x in I+ of GL_{2n+1}.

    ``xp`` is theta(x) when the caller already has it.
    """
    n = _check_odd(x.n_dim, "Iwahori congruences")
    N = x.n_dim
    if xp is None:
        xp = theta(x)
    z = x @ xp
    X = x.at
    out = {}
    for i in range(1, 2 * n + 1):
        mirror = X(N - i, N + 1 - i)
        out[f'theta_band_{i}'] = congruent_mod(xp.at(i, i + 1), mirror, 1)
        out[f'norm_band_{i}'] = congruent_mod(z.at(i, i + 1), X(i, i + 1) + mirror, 1)
    corner = X(N, 1)
    out['theta_2n_1'] = congruent_mod(xp.at(2 * n, 1), X(N, 2) - X(1, 2) * corner, 2)
    out['theta_2n+1_2'] = congruent_mod(xp.at(N, 2), X(2 * n, 1) - X(2 * n, N) * corner, 2)
    out['theta_corner'] = congruent_mod(xp.at(N, 1), -corner, 2)
    out['norm_2n_1'] = congruent_mod(
        z.at(2 * n, 1), X(2 * n, 1) + X(N, 2) - (X(1, 2) + X(2 * n, N)) * corner, 2)
    out['norm_2n+1_2'] = congruent_mod(z.at(N, 2), X(2 * n, 1) + X(N, 2), 2)
    out['norm_corner'] = congruent_mod(z.at(N, 1), x.ring.zero(), 2)
    return out


def iwahori_expansion_check(x: Mat, xp: Optional[Mat] = None) -> Dict[str, bool]:
    """x^-1 = I - X + X^2 and theta(x) = I - eta(X) + eta(X)^2 modulo the cube of the radical, x = I + X."""
    _check_odd(x.n_dim, "theta expansion")
    if xp is None:
        xp = theta(x)
    I = identity(x.n_dim, x.ring)
    X = x - I
    eX = eta(X)
    return {
        'inverse': congruent_mod_radical(inverse(x), I - X + X @ X, 3),
        'theta': congruent_mod_radical(xp, I - eX + eX @ eX, 3),
    }


def charpoly_a1_congruences(x: Mat) -> Dict[str, bool]:
    """The constant term a_1 of the Eisenstein factor against its two closed forms mod p^2."""
    n = _check_odd(x.n_dim, "a_1 congruence")
    N = x.n_dim
    z = theta_norm(x)
    a1 = shifted_charpoly(z).coeffs[1]
    ring = x.ring
    middle = ring.one()
    for i in range(2, 2 * n):
        middle = middle * z.at(i, i + 1)
    full = -(middle * (z.at(2 * n, N) * z.at(N, 2) + z.at(2 * n, 1) * z.at(1, 2)))
    band_sq = ring.one()
    for i in range(1, n + 1):
        band_sq = band_sq * z.at(i, i + 1) * z.at(i, i + 1)
    return {
        'full_form': congruent_mod(a1, full, 2),
        'squared_band_form': congruent_mod(a1, band_sq * x.at(N, 1), 2),
    }


def eta_phi_identity(N: int, a: FieldElem, ring: RingSpec) -> bool:
    """eta(phi_a) = -phi' where phi' carries the corner -2[a] (odd N)."""
    _check_odd(N, "eta(phi_a) identity")
    phi = make_phi(N, a, ring)
    return eta(phi) == -phi_with_corner(N, -_corner(a, ring))


def sp_band_symmetric(y: Mat) -> bool:
    """Residues of y_{i,i+1} and y_{2n-i,2n+1-i} agree for i < n."""
    n = y.n_dim // 2
    return all(reduce(y.at(i, i + 1)) == reduce(y.at(2 * n - i, 2 * n + 1 - i)) for i in range(1, n))


def corner_valuation_bound(k: int, N: int) -> int:
    """Guaranteed valuation of the (N, 1) entry of elements of I phi^k, k >= 0."""
    if k < 0:
        raise ValueError(f"Power k must be >= 0, got {k}")
    return (k - 2) // N + 2


def theta_norm_coset_survivors(n: int, r_min: int) -> List[Tuple[int, int]]:
    """Pairs (r, s), r_min <= r <= 0 and 0 <= s < 2n, meeting the corner-valuation requirement."""
    return [(r, s) for r in range(r_min, 1) for s in range(2 * n)
            if 2 * r + 1 >= (2 * r + 2 * s - 2) // (2 * n + 1) + 2]


def sp_root_element(n: int, i: int, j: int, r: RingElem) -> Mat:
    """
    Unipotent root element of Sp_2n through the (i, j) entry.

    I + r(E_ij - s_i s_j E_{j'i'}) with s_i = (-1)^(i-1), i' = 2n+1-i, or
    I + r E_{i,i'} for the long roots j = i'.
    """
    N = 2 * n
    if i == j or not (1 <= i <= N and 1 <= j <= N):
        raise ValueError(f"({i}, {j}) is not a root position of Sp_{N}")
    ring = r.spec
    values: Dict[Tuple[int, int], object] = {(k, k): 1 for k in range(1, N + 1)}
    ip, jp = N + 1 - i, N + 1 - j
    if j == ip:
        values[(i, j)] = r
    else:
        sign = (-1) ** (i - 1) * (-1) ** (j - 1)
        values[(i, j)] = r
        values[(jp, ip)] = r if sign == -1 else -r
    return from_entries(N, ring, values).tagged(SP)


def sp_torus(values: List[RingElem], ring: RingSpec) -> Mat:
    """diag(t_1, ..., t_n, t_n^-1, ..., t_1^-1)."""
    diag = list(values) + [invert(t) for t in reversed(values)]
    return from_entries(len(diag), ring, {(i + 1, i + 1): v for i, v in enumerate(diag)}).tagged(SP)


def theta_torus(values: List[RingElem], ring: RingSpec) -> Mat:
    """diag(t_1, ..., t_n, 1, t_n^-1, ..., t_1^-1), fixed by theta."""
    diag = list(values) + [ring.one()] + [invert(t) for t in reversed(values)]
    return from_entries(len(diag), ring, {(i + 1, i + 1): v for i, v in enumerate(diag)}).tagged(GL)


def sp_root_positions(n: int) -> List[Tuple[int, int]]:
    """One representative (i, j) per root of Sp_2n."""
    N = 2 * n
    seen, out = set(), []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i == j:
                continue
            key = frozenset({(i, j), (N + 1 - j, N + 1 - i)})
            if key not in seen:
                seen.add(key)
                out.append((i, j))
    return out


def minus_identity_in_plus_plus(n: int, ring: RingSpec) -> bool:
    minus = -identity(2 * n, ring)
    return classify_filtration(minus.tagged(SP), SP) == FiltrationClass.IWAHORI_PLUS_PLUS
