import hashlib
from typing import List
import numpy as np # type: ignore

from utils.arithmetic_utils.gf2_utils import FieldElem, FieldSpec # type: ignore
from utils.arithmetic_utils.dring_utils import RingElem, RingSpec # type: ignore
from utils.matrixGroup_utils.matrix_utils import Mat, from_rows, identity, inverse # type: ignore
from utils.matrixGroup_utils.matgrp_utils import ( # type: ignore
    SP, radical_bound, sp_root_element, sp_root_positions, sp_torus
)

MAX_DRAWS = 200


def suite_key(name: str) -> int:
    """Stable 64-bit key of a suite name."""
    return int.from_bytes(hashlib.sha256(name.encode('utf-8')).digest()[:8], 'big')


def suite_rng(seed: int, name: str, part: int = 0) -> np.random.Generator:
    """Independent stream per suite part; adding a suite never perturbs another's samples."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(suite_key(name), part)))


def random_elem(ring: RingSpec, rng: np.random.Generator) -> RingElem:
    return RingElem(ring, tuple(int(c) for c in rng.integers(0, ring.mask, size=ring.f)))


def random_in_p(ring: RingSpec, rng: np.random.Generator, t: int = 1) -> RingElem:
    """Random element of p^t."""
    if t >= ring.m:
        return ring.zero()
    return random_elem(ring, rng) * ring.from_int(1 << t)


def random_field_unit(field: FieldSpec, rng: np.random.Generator) -> FieldElem:
    return FieldElem(field, field.exp_table[int(rng.integers(0, field.order))])


def random_unit(ring: RingSpec, rng: np.random.Generator) -> RingElem:
    residue = random_field_unit(ring.field, rng)
    high = random_elem(ring, rng)
    return RingElem(ring, tuple(((c >> 1) << 1) | b for c, b in zip(high.coeffs, residue.coeffs)))


def random_exact_valuation(ring: RingSpec, rng: np.random.Generator, t: int) -> RingElem:
    """Random element of p^t minus p^{t+1}."""
    return random_unit(ring, rng) * ring.from_int(1 << t)


def _random_pattern(N: int, ring: RingSpec, rng: np.random.Generator, k: int) -> Mat:
    """I + (random element of the k-th radical power); k = 0 gives a random Iwahori element."""
    rows = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            if k == 0 and i == j:
                row.append(random_unit(ring, rng))
                continue
            bound = radical_bound(i, j, max(k, 1) if i > j else k, N)
            entry = random_in_p(ring, rng, bound) if bound else random_elem(ring, rng)
            row.append(ring.one() + entry if i == j else entry)
        rows.append(row)
    return from_rows(rows, ring)


def random_iwahori(N: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    return _random_pattern(N, ring, rng, 0)


def random_iwahori_plus(N: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    return _random_pattern(N, ring, rng, 1)


def random_iwahori_plus_plus(N: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    return _random_pattern(N, ring, rng, 2)


def random_invertible(N: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    for _ in range(MAX_DRAWS):
        g = from_rows([[random_elem(ring, rng) for _ in range(N)] for _ in range(N)], ring)
        try:
            inverse(g)
        except ValueError:
            continue
        return g
    raise RuntimeError(f"No invertible {N}x{N} matrix drawn in {MAX_DRAWS} attempts")


def random_theta_affine_generic(n: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    """Free I+ element with the n mirrored superdiagonal sums forced to units and a valuation-1 corner."""
    N = 2 * n + 1
    x = random_iwahori_plus(N, ring, rng)
    for i in range(1, n + 1):
        x = x.with_entry(i, i + 1, random_unit(ring, rng) - x.at(N - i, N + 1 - i))
    return x.with_entry(N, 1, random_exact_valuation(ring, rng, 1))


def random_theta_non_generic(n: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    """theta-affine generic sample with one condition broken: a sum in p, or the corner in p^2."""
    N = 2 * n + 1
    x = random_theta_affine_generic(n, ring, rng)
    broken = int(rng.integers(0, n + 1))
    if broken == n:
        return x.with_entry(N, 1, random_in_p(ring, rng, 2))
    i = broken + 1
    return x.with_entry(i, i + 1, random_in_p(ring, rng, 1) - x.at(N - i, N + 1 - i))


def random_sp_plus_plus(n: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    """Element of I++ of Sp_2n: a torus element in 1+p times one root element per root, scaled into the radical square."""
    N = 2 * n
    w = sp_torus([ring.one() + random_in_p(ring, rng, 1) for _ in range(n)], ring)
    for i, j in sp_root_positions(n):
        bound = radical_bound(i, j, 2, N)
        if bound >= ring.m:
            continue
        r = random_in_p(ring, rng, bound) if bound else random_elem(ring, rng)
        w = w @ sp_root_element(n, i, j, r)
    return w.tagged(SP)


def _simple_root_coefficients(n: int, ring: RingSpec, rng: np.random.Generator, broken: int = -1) -> List[RingElem]:
    coeffs = []
    for k in range(n + 1):
        if k == n:
            coeffs.append(random_in_p(ring, rng, 2) if k == broken else random_exact_valuation(ring, rng, 1))
        else:
            coeffs.append(random_in_p(ring, rng, 1) if k == broken else random_unit(ring, rng))
    return coeffs


def _sp_from_simple_roots(n: int, coeffs: List[RingElem], ring: RingSpec, rng: np.random.Generator) -> Mat:
    N = 2 * n
    y = identity(N, ring).tagged(SP)
    for i in range(1, n + 1):
        y = y @ sp_root_element(n, i, i + 1, coeffs[i - 1])
    y = y @ sp_root_element(n, N, 1, coeffs[n])
    return (y @ random_sp_plus_plus(n, ring, rng)).tagged(SP)


def random_sp_affine_generic(n: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    """Product of simple affine root elements with unit coordinates, times an I++ element."""
    return _sp_from_simple_roots(n, _simple_root_coefficients(n, ring, rng), ring, rng)


def random_sp_non_generic(n: int, ring: RingSpec, rng: np.random.Generator) -> Mat:
    """As random_sp_affine_generic with one simple affine coordinate forced to zero."""
    broken = int(rng.integers(0, n + 1))
    return _sp_from_simple_roots(n, _simple_root_coefficients(n, ring, rng, broken), ring, rng)
