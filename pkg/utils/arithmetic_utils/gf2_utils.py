from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple
import re
import numpy as np # type: ignore


def poly_str(bits: int) -> str:
    """Render a bit-vector polynomial over F_2 (bit i is the coefficient of X^i)."""
    if bits == 0:
        return "0"
    terms = []
    for i in range(bits.bit_length() - 1, -1, -1):
        if (bits >> i) & 1:
            terms.append("1" if i == 0 else ("X" if i == 1 else f"X^{i}"))
    return "+".join(terms)


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Carry-less product of two bit vectors reduced modulo ``modulus``."""
    degree = modulus.bit_length() - 1
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if degree > 0 and (a >> degree) & 1:
            a ^= modulus
    return result


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def find_factor(modulus: int) -> Optional[int]:
    """Return a nontrivial factor of ``modulus`` over F_2, or None if it is irreducible."""
    degree = modulus.bit_length() - 1
    for d in range(1, degree // 2 + 1):
        for candidate in range(1 << d, 1 << (d + 1)):
            if poly_mod(modulus, candidate) == 0:
                return candidate
    return None


def default_modulus(f: int) -> int:
    """Lexicographically least irreducible polynomial of degree f (integer order of bit vectors)."""
    for candidate in range(1 << f, 1 << (f + 1)):
        if find_factor(candidate) is None:
            return candidate
    raise RuntimeError(f"No irreducible polynomial of degree {f} found")


@dataclass(frozen=True)
class FieldSpec:
    """
    Residue field k = GF(2^f) in the polynomial basis.

    Elements are stored as bit vectors (python ints). Multiplication, inversion,
    trace and the additive character go through tables indexed by the element,
    built once in make_field.

    Attributes:
        f (int): extension degree over F_2
        modulus (int): irreducible polynomial of degree f as a bit vector
        q (int): 2^f
    """
    f: int
    modulus: int
    q: int
    generator_value: int = field(compare=False, repr=False)
    exp_table: Tuple[int, ...] = field(compare=False, repr=False)
    log_table: Tuple[int, ...] = field(compare=False, repr=False)
    trace_table: Tuple[int, ...] = field(compare=False, repr=False)

    def elem(self, value: int) -> 'FieldElem':
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element of GF({self.q})")
        return FieldElem(self, value)

    def zero(self) -> 'FieldElem':
        return FieldElem(self, 0)

    def one(self) -> 'FieldElem':
        return FieldElem(self, 1)

    @property
    def order(self) -> int:
        return self.q - 1

    @cached_property
    def exp_array(self) -> np.ndarray:
        return np.array(self.exp_table, dtype=np.int64)

    @cached_property
    def psi_array(self) -> np.ndarray:
        """psi indexed by element value, as int64 (+1 / -1)."""
        return 1 - 2 * np.array(self.trace_table, dtype=np.int64)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ValueError("inverse of 0 in the residue field")
        return self.exp_table[(-self.log_table[a]) % self.order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ValueError("negative power of 0 in the residue field")
            return 1 if e == 0 else 0
        return self.exp_table[(self.log_table[a] * e) % self.order]

    def describe(self) -> dict:
        return {'f': self.f, 'q': self.q, 'modulus_bits': format(self.modulus, 'b')}


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.spec.f))

    def _check(self, other: 'FieldElem') -> None:
        if other.spec is not self.spec and other.spec != self.spec:
            raise ValueError(f"Operands live in different fields: GF({self.spec.q}) "
                             f"mod {poly_str(self.spec.modulus)} vs GF({other.spec.q}) mod {poly_str(other.spec.modulus)}")

    def __add__(self, other: 'FieldElem') -> 'FieldElem':
        self._check(other)
        return FieldElem(self.spec, self.value ^ other.value)

    __sub__ = __add__

    def __neg__(self) -> 'FieldElem':
        return self

    def __mul__(self, other: 'FieldElem') -> 'FieldElem':
        self._check(other)
        return FieldElem(self.spec, self.spec.mul(self.value, other.value))

    def __truediv__(self, other: 'FieldElem') -> 'FieldElem':
        self._check(other)
        return FieldElem(self.spec, self.spec.mul(self.value, self.spec.inv(other.value)))

    def __pow__(self, e: int) -> 'FieldElem':
        return FieldElem(self.spec, self.spec.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> 'FieldElem':
        return FieldElem(self.spec, self.spec.inv(self.value))

    def __str__(self) -> str:
        if self.value in (0, 1):
            return str(self.value)
        return f"g^{self.spec.log_table[self.value]}"


def _build_tables(f: int, modulus: int) -> Tuple[int, Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    q = 1 << f
    order = q - 1
    generator = None
    for candidate in range(1, q):
        power, k = candidate, 1
        while power != 1:
            power = poly_mulmod(power, candidate, modulus)
            k += 1
        if k == order:
            generator = candidate
            break
    if generator is None:
        raise RuntimeError(f"No generator found for GF({q}) mod {poly_str(modulus)}")

    exp_table = [1] * order
    log_table = [-1] * q
    for k in range(1, order):
        exp_table[k] = poly_mulmod(exp_table[k - 1], generator, modulus)
    for k, value in enumerate(exp_table):
        log_table[value] = k

    trace_table = [0] * q
    for x in range(q):
        total, power = 0, x
        for _ in range(f):
            total ^= power
            power = poly_mulmod(power, power, modulus)
        if total not in (0, 1):
            raise RuntimeError(f"Trace of {x} left the prime field")
        trace_table[x] = total
    return generator, tuple(exp_table), tuple(log_table), tuple(trace_table)


@lru_cache(maxsize=None)
def make_field(f: int, modulus: Optional[int] = None) -> FieldSpec:
    """
    Build the residue field GF(2^f).

    Args:
        f (int): extension degree, f >= 1
        modulus (Optional[int]): degree-f polynomial as a bit vector; defaults to
            the lexicographically least irreducible one

    Returns:
        FieldSpec: the field with its lookup tables

    Raises:
        ValueError: if f < 1, or the modulus has the wrong degree or is reducible
    """
    if f < 1:
        raise ValueError(f"Field degree must be >= 1, got {f}")
    if modulus is None:
        modulus = default_modulus(f)
    if modulus <= 0:
        raise ValueError(f"Modulus must be a positive bit vector, got {modulus}")
    if modulus.bit_length() - 1 != f:
        raise ValueError(f"Modulus {poly_str(modulus)} has degree {modulus.bit_length() - 1}, expected {f}")
    factor = find_factor(modulus)
    if factor is not None:
        raise ValueError(f"Modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}")
    generator, exp_table, log_table, trace_table = _build_tables(f, modulus)
    return FieldSpec(f=f, modulus=modulus, q=1 << f, generator_value=generator,
                     exp_table=exp_table, log_table=log_table, trace_table=trace_table)


def arith(op: str, *operands: FieldElem) -> FieldElem:
    """Dispatch a field operation by name: add, mul, inv or pow (second operand an int exponent)."""
    if op == 'add':
        a, b = operands
        return a + b
    if op == 'mul':
        a, b = operands
        return a * b
    if op == 'inv':
        (a,) = operands
        return a.inverse()
    if op == 'pow':
        a, e = operands
        return a ** int(e)
    raise ValueError(f"Unknown field operation: {op}")


def trace(x: FieldElem) -> int:
    return x.spec.trace_table[x.value]


def psi(x: FieldElem) -> int:
    """Additive character psi(x) = (-1)^Tr(x)."""
    return 1 - 2 * x.spec.trace_table[x.value]


def generator(spec: FieldSpec) -> FieldElem:
    return FieldElem(spec, spec.generator_value)


def log(x: FieldElem) -> int:
    if x.value == 0:
        raise ValueError("discrete logarithm of 0")
    return x.spec.log_table[x.value]


def units(spec: FieldSpec) -> List[FieldElem]:
    """The q-1 nonzero elements as g^0, g^1, ..., g^(q-2)."""
    return [FieldElem(spec, v) for v in spec.exp_table]


def elements(spec: FieldSpec) -> List[FieldElem]:
    return [FieldElem(spec, v) for v in range(spec.q)]


_POWER_PATTERN = re.compile(r'^g\^(-?\d+)$')


def parse_elem(text: str, spec: FieldSpec) -> FieldElem:
    """Parse "0", "1", "g^k" or a "0b..." bit string into a field element."""
    text = text.strip()
    if text in ('0', '1'):
        return FieldElem(spec, int(text))
    if text == 'g':
        return generator(spec)
    match = _POWER_PATTERN.match(text)
    if match:
        return FieldElem(spec, spec.exp_table[int(match.group(1)) % spec.order])
    if text.startswith('0b'):
        return spec.elem(int(text, 2))
    raise ValueError(f"Cannot parse field element '{text}': use 0, 1, g^k or 0b<bits>")


_MODULUS_PATTERN = re.compile(r'^(?:0b)?([01]+)$')


def parse_modulus(text: Optional[str]) -> Optional[int]:
    """Bit string, with or without 0b, to a modulus; None or 'default' selects the default."""
    if text is None or str(text).strip() in ('', 'default'):
        return None
    match = _MODULUS_PATTERN.match(str(text).strip())
    if not match:
        raise ValueError(f"Cannot parse modulus '{text}': expected a bit string such as 0b111")
    return int(match.group(1), 2)


def product(values: Sequence[FieldElem], spec: FieldSpec) -> FieldElem:
    result = spec.one()
    for v in values:
        result = result * v
    return result
