from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Sequence, Tuple
import logging

from utils.arithmetic_utils.gf2_utils import FieldElem, FieldSpec # type: ignore

logger = logging.getLogger(__name__)

MAX_ENUMERATED_RING = 1 << 16


@dataclass(frozen=True)
class RingSpec:
    """
    Truncated ring O/p^m of the unramified dyadic field with residue field k,
    realized as the Galois ring GR(2^m, f) = (Z/2^m)[X]/(modulus).

    The uniformizer is 2. Elements are coefficient tuples in the polynomial basis,
    each coefficient reduced into [0, 2^m).

    Attributes:
        field (FieldSpec): residue field k
        m (int): precision exponent
        modulus (Tuple[int, ...]): monic lift c_0..c_f of the field modulus
    """
    field: FieldSpec
    m: int
    modulus: Tuple[int, ...]

    @property
    def f(self) -> int:
        return self.field.f

    @property
    def mask(self) -> int:
        return 1 << self.m

    @property
    def size(self) -> int:
        return 1 << (self.m * self.f)

    def elem(self, coeffs: Sequence[int]) -> 'RingElem':
        if len(coeffs) != self.f:
            raise ValueError(f"Ring element needs {self.f} coefficients, got {len(coeffs)}")
        return RingElem(self, tuple(int(c) % self.mask for c in coeffs))

    def zero(self) -> 'RingElem':
        return RingElem(self, (0,) * self.f)

    def one(self) -> 'RingElem':
        return self.from_int(1)

    def from_int(self, k: int) -> 'RingElem':
        return RingElem(self, (k % self.mask,) + (0,) * (self.f - 1))

    def uniformizer(self) -> 'RingElem':
        return self.from_int(2)

    def add_raw(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        M = self.mask
        return tuple((x + y) % M for x, y in zip(a, b))

    def sub_raw(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        M = self.mask
        return tuple((x - y) % M for x, y in zip(a, b))

    def mul_raw(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        f = self.f
        if f == 1:
            return ((a[0] * b[0]) % self.mask,)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        # X^f = -(c_0 + ... + c_{f-1} X^{f-1})
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                for i in range(f):
                    if self.modulus[i]:
                        prod[k - f + i] -= c * self.modulus[i]
        M = self.mask
        return tuple(x % M for x in prod[:f])

    def describe(self) -> dict:
        return {'m': self.m}


@dataclass(frozen=True, slots=True)
class RingElem:
    spec: RingSpec
    coeffs: Tuple[int, ...]

    def _check(self, other: 'RingElem') -> None:
        if other.spec is not self.spec and other.spec != self.spec:
            raise ValueError(f"Operands live in different rings: m={self.spec.m} f={self.spec.f} "
                             f"vs m={other.spec.m} f={other.spec.f}")

    def __add__(self, other: 'RingElem') -> 'RingElem':
        self._check(other)
        return RingElem(self.spec, self.spec.add_raw(self.coeffs, other.coeffs))

    def __sub__(self, other: 'RingElem') -> 'RingElem':
        self._check(other)
        return RingElem(self.spec, self.spec.sub_raw(self.coeffs, other.coeffs))

    def __neg__(self) -> 'RingElem':
        M = self.spec.mask
        return RingElem(self.spec, tuple((-c) % M for c in self.coeffs))

    def __mul__(self, other: 'RingElem') -> 'RingElem':
        self._check(other)
        return RingElem(self.spec, self.spec.mul_raw(self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> 'RingElem':
        if e < 0:
            return invert(self) ** (-e)
        result, base = self.spec.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return any(c & 1 for c in self.coeffs)

    def __str__(self) -> str:
        if self.spec.f == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


@lru_cache(maxsize=None)
def make_ring(field: FieldSpec, m: int) -> RingSpec:
    """
    Build O/p^m over the residue field ``field``.

    Raises:
        ValueError: if m < 1
    """
    if m < 1:
        raise ValueError(f"Precision m must be >= 1, got {m}")
    modulus = tuple((field.modulus >> i) & 1 for i in range(field.f + 1))
    logger.debug(f"GR(2^{m}, {field.f}) with modulus coefficients {modulus}")
    return RingSpec(field=field, m=m, modulus=modulus)


def arith(op: str, *operands: RingElem) -> RingElem:
    """Dispatch a ring operation by name: add, sub, mul or neg."""
    if op == 'add':
        a, b = operands
        return a + b
    if op == 'sub':
        a, b = operands
        return a - b
    if op == 'mul':
        a, b = operands
        return a * b
    if op == 'neg':
        (a,) = operands
        return -a
    raise ValueError(f"Unknown ring operation: {op}")


def valuation(x: RingElem) -> int:
    """Largest t <= m with x in p^t; the zero element has valuation m."""
    m = x.spec.m
    v = m
    for c in x.coeffs:
        if c:
            v = min(v, (c & -c).bit_length() - 1)
    return v


def reduce(x: RingElem) -> FieldElem:
    value = 0
    for i, c in enumerate(x.coeffs):
        value |= (c & 1) << i
    return FieldElem(x.spec.field, value)


def lift(a: FieldElem, ring: RingSpec) -> RingElem:
    """Coordinate lift of a residue with coefficients in {0, 1}."""
    return RingElem(ring, a.coeffs)


def invert(x: RingElem) -> RingElem:
    """
    Inverse of a unit, by Newton iteration y <- y(2 - xy) from the residue-field inverse.

    Raises:
        ValueError: if x is not a unit
    """
    residue = reduce(x)
    if residue.value == 0:
        raise ValueError(f"{x} is not a unit: valuation {valuation(x)} >= 1")
    ring = x.spec
    one = ring.one()
    two = ring.from_int(2)
    y = lift(residue.inverse(), ring)
    # precision doubles per step
    for _ in range(ring.m.bit_length() + 1):
        if x * y == one:
            return y
        y = y * (two - x * y)
    if x * y != one:
        raise RuntimeError(f"Newton iteration for the inverse of {x} did not converge")
    return y


@lru_cache(maxsize=None)
def teichmuller(a: FieldElem, ring: RingSpec) -> RingElem:
    """Unique lift t of a with t^q = t, found by iterating t <- t^q from the coordinate lift."""
    if a.spec != ring.field:
        raise ValueError("Residue and ring have different residue fields")
    t = lift(a, ring)
    q = ring.field.q
    for _ in range(ring.m + 1):
        nxt = t ** q
        if nxt == t:
            return t
        t = nxt
    raise RuntimeError(f"Teichmuller iteration for {a} did not reach a fixed point")


def congruent_mod(x: RingElem, y: RingElem, t: int) -> bool:
    """x = y mod p^t."""
    if not 0 <= t <= x.spec.m:
        raise ValueError(f"Congruence modulus p^{t} outside the working precision m={x.spec.m}")
    return valuation(x - y) >= t


def residue_over_uniformizer(x: RingElem) -> FieldElem:
    """reduce(x / 2) for x in p."""
    if x.spec.m < 2:
        raise ValueError("x / 2 has no residue at precision m = 1")
    if x.is_unit():
        raise ValueError(f"{x} is not in p: cannot divide by the uniformizer")
    value = 0
    for i, c in enumerate(x.coeffs):
        value |= ((c >> 1) & 1) << i
    return FieldElem(x.spec.field, value)


def times_uniformizer_power(x: RingElem, k: int) -> RingElem:
    return x * x.spec.from_int(1 << k) if k < x.spec.m else x.spec.zero()


def from_teichmuller_digits(digits: Sequence[int], ring: RingSpec) -> RingElem:
    """x = sum_k 2^k teichmuller(d_k), digits given as field-element integers."""
    if len(digits) > ring.m:
        raise ValueError(f"{len(digits)} Teichmuller digits exceed the precision m={ring.m}")
    x = ring.zero()
    for k, d in enumerate(digits):
        if d:
            x = x + times_uniformizer_power(teichmuller(ring.field.elem(int(d)), ring), k)
    return x


def teichmuller_digits(x: RingElem) -> List[int]:
    ring = x.spec
    digits = []
    for k in range(ring.m):
        d = reduce(x)
        digits.append(d.value)
        x = x - teichmuller(d, ring)
        # x is now in p; shift down one digit
        x = RingElem(ring, tuple(c >> 1 for c in x.coeffs))
    return digits


def elements(ring: RingSpec) -> Iterator[RingElem]:
    """Every element of a small ring, in coefficient order."""
    if ring.size > MAX_ENUMERATED_RING:
        raise ValueError(f"Ring of size {ring.size} is too large to enumerate")
    for coeffs in product(range(ring.mask), repeat=ring.f):
        yield RingElem(ring, tuple(reversed(coeffs)))


def units(ring: RingSpec) -> Iterator[RingElem]:
    return (x for x in elements(ring) if x.is_unit())
