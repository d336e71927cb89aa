from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Callable, Dict, Hashable, Iterable, Optional, Sequence, Tuple
import logging
import numpy as np # type: ignore

from utils.arithmetic_utils.gf2_utils import FieldElem, FieldSpec, log, units # type: ignore

logger = logging.getLogger(__name__)

# Character sums here are rational integers: psi takes the values +1 and -1.
KlValue = int


@dataclass(frozen=True)
class InjectivityResult:
    injective: bool
    collision: Optional[Tuple[FieldElem, FieldElem]] = None


def _require_unit(x: FieldElem) -> None:
    if x.value == 0:
        raise ValueError("Kloosterman sum is only defined at nonzero x")


def kloosterman(N: int, x: FieldElem, field: Optional[FieldSpec] = None) -> KlValue:
    """
    Kl^N_x(psi): sum of psi(x_1 + ... + x_N) over unit N-tuples with product x.

    Brute force over the first N-1 coordinates in discrete-log coordinates; the
    last coordinate is determined by the product.
    """
    if N < 1:
        raise ValueError(f"Kloosterman sum needs N >= 1, got {N}")
    _require_unit(x)
    spec = field or x.spec
    order = spec.order
    exp, trace = spec.exp_table, spec.trace_table
    target = log(x)
    total = 0
    for logs in product(range(order), repeat=N - 1):
        s = exp[(target - sum(logs)) % order]
        for k in logs:
            s ^= exp[k]
        total += 1 - 2 * trace[s]
    return total


def _cyclic_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    L = len(a)
    idx = (np.arange(L)[:, None] - np.arange(L)[None, :]) % L
    return (b[idx] * a[None, :]).sum(axis=1)


@lru_cache(maxsize=None)
def _kloosterman_table(N: int, field: FieldSpec) -> Tuple[int, ...]:
    order = field.order
    big = (order ** max(N - 1, 0)) >= 2 ** 62
    dtype = object if big else np.int64
    base = np.array([1 - 2 * field.trace_table[field.exp_table[k]] for k in range(order)], dtype=dtype)
    table = base.copy()
    for _ in range(N - 1):
        table = _cyclic_convolve(table, base)
    logger.debug(f"Kloosterman table N={N} q={field.q} built")
    return tuple(int(v) for v in table)


def kloosterman_table(N: int, field: FieldSpec) -> Tuple[int, ...]:
    """Kl^N_{g^k} for k = 0..q-2, by iterated multiplicative convolution of psi over k^x."""
    if N < 1:
        raise ValueError(f"Kloosterman sum needs N >= 1, got {N}")
    return _kloosterman_table(N, field)


def kloosterman_fast(N: int, x: FieldElem, field: Optional[FieldSpec] = None) -> KlValue:
    _require_unit(x)
    return kloosterman_table(N, field or x.spec)[log(x)]


def kloosterman_twisted(exponents: Sequence[int], x: FieldElem, field: Optional[FieldSpec] = None) -> KlValue:
    """
    Sum of psi(s_1 + ... + s_N) over unit tuples with s_1^e_1 ... s_N^e_N = x.

    Raises:
        ValueError: for x = 0 or an exponent < 1
    """
    if not exponents:
        raise ValueError("At least one exponent is required")
    if any(e < 1 for e in exponents):
        raise ValueError(f"Exponents must be positive, got {list(exponents)}")
    _require_unit(x)
    spec = field or x.spec
    order = spec.order
    exp, trace = spec.exp_table, spec.trace_table
    target = log(x)
    *head, last = exponents
    d = gcd(last, order)
    # last * l = rhs (mod order) has d solutions when d | rhs
    step = order // d
    inv_last = pow(last // d, -1, step) if step > 1 else 0
    total = 0
    for logs in product(range(order), repeat=len(head)):
        rhs = (target - sum(e * k for e, k in zip(head, logs))) % order
        if rhs % d:
            continue
        base = ((rhs // d) * inv_last) % step if step > 1 else 0
        s_head = 0
        for k in logs:
            s_head ^= exp[k]
        for r in range(d):
            s = s_head ^ exp[(base + r * step) % order]
            total += 1 - 2 * trace[s]
    return total


def gauss_sum(chi: int, field: FieldSpec) -> complex:
    """G(chi) = sum over x in k^x of psi(x) chi(x), chi(g^k) = exp(2 pi i chi k / (q-1))."""
    order = field.order
    k = np.arange(order)
    psi_vals = np.array([1 - 2 * field.trace_table[field.exp_table[j]] for j in range(order)], dtype=float)
    return complex(np.sum(psi_vals * np.exp(2j * np.pi * chi * k / order)))


def kl_fourier(N: int, chi: int, field: FieldSpec) -> complex:
    """
    Sum over x in k^x of Kl^N_x(psi) chi(x), in floating point.

    ``chi`` is the exponent j of the multiplicative character g^k -> exp(2 pi i j k / (q-1)).
    """
    order = field.order
    if not 0 <= chi < order:
        raise ValueError(f"Character index must lie in [0, {order}), got {chi}")
    table = np.array(kloosterman_table(N, field), dtype=float)
    k = np.arange(order)
    return complex(np.sum(table * np.exp(2j * np.pi * chi * k / order)))


def kloosterman_total(N: int, field: FieldSpec) -> int:
    """Sum of Kl^N_x over all x in k^x; equals (-1)^N."""
    return sum(kloosterman_table(N, field))


def nonvanishing_witness(n: int, a: FieldElem, field: Optional[FieldSpec] = None) -> FieldElem:
    """
    Some u in k^x with Kl^{n+1}_{au} != 0, by exhaustive search.

    Raises:
        RuntimeError: if no such u exists
    """
    _require_unit(a)
    spec = field or a.spec
    for u in units(spec):
        if kloosterman_fast(n + 1, a * u, spec) != 0:
            return u
    raise RuntimeError(f"No u in k^x with Kl^{n + 1}_(a u) != 0 for a={a}, q={spec.q}")


def find_collision(domain: Iterable[Hashable], mapping: Callable[[Hashable], Hashable]) -> Optional[Tuple[Hashable, Hashable]]:
    """First pair of distinct domain points with equal images, or None."""
    seen: Dict[Hashable, Hashable] = {}
    for a in domain:
        image = mapping(a)
        if image in seen:
            return seen[image], a
        seen[image] = a
    return None


def kl_vector(n: int, a: FieldElem, field: FieldSpec) -> Tuple[int, ...]:
    return tuple(kloosterman_fast(n + 1, a * u, field) for u in units(field))


def kl_injectivity(n: int, field: FieldSpec) -> InjectivityResult:
    """Whether a -> (Kl^{n+1}_{au})_{u in k^x} is injective on k^x."""
    collision = find_collision(units(field), lambda a: kl_vector(n, a, field))
    if collision is not None:
        logger.debug(f"Kloosterman vectors collide at {collision[0]} and {collision[1]}")
        return InjectivityResult(False, collision)
    return InjectivityResult(True)
