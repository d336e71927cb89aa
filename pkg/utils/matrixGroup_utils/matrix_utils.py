from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from utils.arithmetic_utils.dring_utils import ( # type: ignore
    RingElem, RingSpec, from_teichmuller_digits, invert, valuation
)

Scalar = Union[int, RingElem]


@dataclass(frozen=True)
class Mat:
    """
    Square matrix over O/p^m.

    Entries are stored row-major as RingElem; ``at`` uses the 1-indexed
    convention of the matrix identities it is used to check.

    Attributes:
        ring (RingSpec): coefficient ring
        n_dim (int): dimension N
        entries (Tuple[Tuple[RingElem, ...], ...]): N rows of N entries
        group (Optional[str]): 'GL', 'Sp' or None
    """
    ring: RingSpec
    n_dim: int
    entries: Tuple[Tuple[RingElem, ...], ...]
    group: Optional[str] = None

    def __post_init__(self):
        if self.n_dim < 1:
            raise ValueError(f"Matrix dimension must be >= 1, got {self.n_dim}")
        if len(self.entries) != self.n_dim or any(len(row) != self.n_dim for row in self.entries):
            raise ValueError(f"Entries do not form a {self.n_dim}x{self.n_dim} array")

    def at(self, i: int, j: int) -> RingElem:
        return self.entries[i - 1][j - 1]

    def tagged(self, group: Optional[str]) -> 'Mat':
        return replace(self, group=group)

    def with_entry(self, i: int, j: int, value: Scalar) -> 'Mat':
        rows = [list(row) for row in self.entries]
        rows[i - 1][j - 1] = _coerce(value, self.ring)
        return Mat(self.ring, self.n_dim, tuple(tuple(r) for r in rows), self.group)

    def _check(self, other: 'Mat') -> None:
        if other.n_dim != self.n_dim:
            raise ValueError(f"Dimension mismatch: {self.n_dim} vs {other.n_dim}")
        if other.ring != self.ring:
            raise ValueError("Matrices live over different rings")

    def __add__(self, other: 'Mat') -> 'Mat':
        self._check(other)
        return Mat(self.ring, self.n_dim,
                   tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: 'Mat') -> 'Mat':
        self._check(other)
        return Mat(self.ring, self.n_dim,
                   tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> 'Mat':
        return Mat(self.ring, self.n_dim, tuple(tuple(-a for a in r) for r in self.entries), self.group)

    def __matmul__(self, other: 'Mat') -> 'Mat':
        self._check(other)
        ring = self.ring
        N = self.n_dim
        zero = (0,) * ring.f
        cols = [[other.entries[k][j].coeffs for k in range(N)] for j in range(N)]
        rows = []
        for i in range(N):
            row_i = [e.coeffs for e in self.entries[i]]
            out = []
            for j in range(N):
                acc = zero
                for a, b in zip(row_i, cols[j]):
                    if any(a) and any(b):
                        acc = ring.add_raw(acc, ring.mul_raw(a, b))
                out.append(RingElem(ring, acc))
            rows.append(tuple(out))
        group = self.group if self.group == other.group else None
        return Mat(ring, N, tuple(rows), group)

    def scale(self, c: Scalar) -> 'Mat':
        c = _coerce(c, self.ring)
        return Mat(self.ring, self.n_dim, tuple(tuple(c * a for a in r) for r in self.entries))

    def __pow__(self, k: int) -> 'Mat':
        if k < 0:
            return inverse(self) ** (-k)
        result, base = identity(self.n_dim, self.ring), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.n_dim == other.n_dim and self.ring == other.ring and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.n_dim, self.entries))

    def upper_left(self, k: int) -> 'Mat':
        return Mat(self.ring, k, tuple(tuple(row[:k]) for row in self.entries[:k]))

    def valuations(self) -> List[List[int]]:
        return [[valuation(e) for e in row] for row in self.entries]

    def to_json(self) -> Dict[str, Any]:
        """Entries as polynomial-basis coefficient lists."""
        return {'n_dim': self.n_dim, 'encoding': 'coefficients',
                'entries': [[list(e.coeffs) for e in row] for row in self.entries]}

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"


def _coerce(value: Scalar, ring: RingSpec) -> RingElem:
    if isinstance(value, RingElem):
        return value
    return ring.from_int(int(value))


def identity(N: int, ring: RingSpec) -> Mat:
    one, zero = ring.one(), ring.zero()
    return Mat(ring, N, tuple(tuple(one if i == j else zero for j in range(N)) for i in range(N)))


def zeros(N: int, ring: RingSpec) -> Mat:
    zero = ring.zero()
    return Mat(ring, N, tuple(tuple(zero for _ in range(N)) for _ in range(N)))


def from_rows(rows: Sequence[Sequence[Scalar]], ring: RingSpec, group: Optional[str] = None) -> Mat:
    N = len(rows)
    return Mat(ring, N, tuple(tuple(_coerce(v, ring) for v in row) for row in rows), group)


def from_entries(N: int, ring: RingSpec, values: Dict[Tuple[int, int], Scalar]) -> Mat:
    """Identity-free builder: zero matrix with the 1-indexed entries given in ``values``."""
    zero = ring.zero()
    rows = [[zero] * N for _ in range(N)]
    for (i, j), v in values.items():
        rows[i - 1][j - 1] = _coerce(v, ring)
    return Mat(ring, N, tuple(tuple(r) for r in rows))


def diagonal(values: Sequence[Scalar], ring: RingSpec) -> Mat:
    N = len(values)
    return from_entries(N, ring, {(i + 1, i + 1): v for i, v in enumerate(values)})


def transpose(A: Mat) -> Mat:
    return Mat(A.ring, A.n_dim, tuple(zip(*A.entries)), A.group)


def charpoly(A: Mat) -> List[RingElem]:
    """
    Characteristic polynomial det(T I - A), highest degree first, by Berkowitz's
    division-free recursion over leading principal submatrices.

    Returns:
        List[RingElem]: [1, c_{N-1}, ..., c_0]
    """
    ring = A.ring
    N = A.n_dim
    E = A.entries
    p = [ring.one(), -E[0][0]]
    for k in range(1, N):
        a = E[k][k]
        R = [E[k][j] for j in range(k)]
        C = [E[i][k] for i in range(k)]
        t = [ring.one(), -a]
        # vec runs through A_k^j C
        vec = C
        for _ in range(k):
            s = ring.zero()
            for r, v in zip(R, vec):
                s = s + r * v
            t.append(-s)
            vec = [_dot(E[i][:k], vec, ring) for i in range(k)]
        new_p = []
        for i in range(k + 2):
            s = ring.zero()
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                s = s + t[i - j] * p[j]
            new_p.append(s)
        p = new_p
    return p


def _dot(row: Sequence[RingElem], vec: Sequence[RingElem], ring: RingSpec) -> RingElem:
    s = ring.zero()
    for a, b in zip(row, vec):
        s = s + a * b
    return s


def det(A: Mat) -> RingElem:
    c0 = charpoly(A)[-1]
    return c0 if A.n_dim % 2 == 0 else -c0


def inverse(A: Mat) -> Mat:
    """
    Gauss-Jordan inverse with unit pivots.

    Raises:
        ValueError: if the reduction of A mod p is singular
    """
    ring = A.ring
    N = A.n_dim
    rows = [list(r) + [ring.one() if i == j else ring.zero() for j in range(N)] for i, r in enumerate(A.entries)]
    for col in range(N):
        pivot = next((r for r in range(col, N) if rows[r][col].is_unit()), None)
        if pivot is None:
            raise ValueError(f"Matrix is not invertible over O/p^{ring.m}: no unit pivot in column {col + 1}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv_p = invert(rows[col][col])
        rows[col] = [inv_p * v for v in rows[col]]
        for r in range(N):
            if r != col and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    return Mat(ring, N, tuple(tuple(r[N:]) for r in rows), A.group)


def mat_from_json(data: Dict[str, Any], ring: RingSpec) -> Mat:
    """
    Read the matrix-input format {"n_dim": N, "entries": [[...]]}.

    Each entry is a list of Teichmuller digits by default, or of polynomial-basis
    coefficients with "encoding": "coefficients". A bare integer is the constant.
    """
    try:
        N = int(data['n_dim'])
        raw = data['entries']
    except (KeyError, TypeError) as exc:
        raise ValueError(f"Matrix input needs 'n_dim' and 'entries': {exc}")
    encoding = data.get('encoding', 'teichmuller')
    if encoding not in ('teichmuller', 'coefficients'):
        raise ValueError(f"Unknown matrix encoding '{encoding}'")
    if len(raw) != N or any(len(row) != N for row in raw):
        raise ValueError(f"Matrix input 'entries' is not {N}x{N}")
    rows = []
    for row in raw:
        out = []
        for e in row:
            if isinstance(e, int):
                out.append(ring.from_int(e))
            elif encoding == 'coefficients':
                out.append(ring.elem(list(e) + [0] * (ring.f - len(e))))
            else:
                out.append(from_teichmuller_digits(list(e), ring))
        rows.append(out)
    return from_rows(rows, ring, data.get('group'))
