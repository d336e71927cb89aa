from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple
import logging
import numpy as np # type: ignore
from tqdm import tqdm # type: ignore

from utils.arithmetic_utils.gf2_utils import FieldElem, FieldSpec, log, psi, units # type: ignore
from utils.arithmetic_utils.dring_utils import ( # type: ignore
    RingSpec, make_ring, reduce, residue_over_uniformizer, teichmuller
)
from utils.matrixGroup_utils.matrix_utils import Mat, inverse # type: ignore
from utils.matrixGroup_utils.matgrp_utils import ( # type: ignore
    GL, SP, affine_components, is_theta_affine_generic,
    make_g, make_h, norm_correspondence_check, sp_torus, theta, theta_norm, theta_torus
)
from utils.characterSum_utils.kloosterman_utils import KlValue, kloosterman_fast # type: ignore

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CharParams:
    """
    Parameters of the simple supercuspidal character.

    Attributes:
        n (int): rank, the groups being Sp_2n and GL_{2n+1}
        a (FieldElem): nonzero parameter in k
        field (FieldSpec): residue field
    """
    n: int
    a: FieldElem
    field: FieldSpec

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Rank n must be >= 1, got {self.n}")
        if self.a.value == 0:
            raise ValueError("Character parameter a must be nonzero")
        if self.a.spec != self.field:
            raise ValueError("Character parameter a lives in a different field")


@dataclass(frozen=True)
class TorusTerm:
    """One summand c * t^w of the affine character after conjugation by t = (t_1, ..., t_n)."""
    coefficient: FieldElem
    weights: Tuple[int, ...]


@dataclass(frozen=True)
class EndoscopyResult:
    n: int
    u: FieldElem
    a: FieldElem
    norm_ok: bool
    twisted_value: KlValue
    sp_value: KlValue
    kl_value: KlValue

    @property
    def holds(self) -> bool:
        return self.norm_ok and self.twisted_value == self.sp_value == self.kl_value


def sp_torus_forms(n: int) -> List[Tuple[int, ...]]:
    """Exponent forms of the diagonal of diag(t_1, ..., t_n, t_n^-1, ..., t_1^-1)."""
    unit = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    return unit + [tuple(-c for c in unit[i]) for i in reversed(range(n))]


def theta_torus_forms(n: int) -> List[Tuple[int, ...]]:
    """Exponent forms of the diagonal of the theta-fixed torus element."""
    forms = sp_torus_forms(n)
    return forms[:n] + [(0,) * n] + forms[n:]


def _entry_weight(forms: List[Tuple[int, ...]], i: int, j: int) -> Tuple[int, ...]:
    # conjugation scales entry (i, j) by t_i / t_j
    return tuple(a - b for a, b in zip(forms[i - 1], forms[j - 1]))


def torus_sum(terms: Sequence[TorusTerm], n: int, field: FieldSpec, show_progress: bool = False) -> KlValue:
    """
    Sum over t in (k^x)^n of psi(sum_terms c * t^w), exactly.

    Enumeration is row-major in generator-power coordinates; the outermost
    coordinate is looped, the rest are vectorized.
    """
    order = field.order
    exp, psi_table = field.exp_array, field.psi_array
    active = [(log(t.coefficient), np.array(t.weights, dtype=np.int64)) for t in terms if t.coefficient.value]
    if n > 1:
        grid = np.indices((order,) * (n - 1)).reshape(n - 1, -1)
    else:
        grid = np.zeros((0, 1), dtype=np.int64)
    width = grid.shape[1]
    total = 0
    for e1 in tqdm(range(order), desc=f"torus sum n={n} q={field.q}", disable=not show_progress, leave=False):
        acc = np.zeros(width, dtype=np.int64)
        for base, w in active:
            acc ^= exp[(base + w[0] * e1 + w[1:] @ grid) % order]
        total += int(psi_table[acc].sum())
    return total


def torus_value(terms: Sequence[TorusTerm], logs: Sequence[int], field: FieldSpec) -> int:
    """Single summand of torus_sum at the torus point with generator logs ``logs``."""
    order = field.order
    s = 0
    for t in terms:
        if t.coefficient.value:
            s ^= field.exp_table[(log(t.coefficient) + sum(w * e for w, e in zip(t.weights, logs))) % order]
    return 1 - 2 * field.trace_table[s]


def affine_character(values: Sequence[FieldElem], a: FieldElem) -> int:
    """psi(c_1 + ... + c_r + a * corner) on affine components (c_1, ..., c_r, corner)."""
    *band, corner = values
    s = a * corner
    for c in band:
        s = s + c
    return psi(s)


def _require_sp_generic(y: Mat, params: CharParams) -> None:
    if y.n_dim != 2 * params.n:
        raise ValueError(f"Expected a {2 * params.n}x{2 * params.n} matrix, got {y.n_dim}")
    if not affine_components(y, SP).is_generic():
        raise ValueError("Element of I+ of Sp_2n is not affine generic")


def _require_theta_generic(x: Mat, params: CharParams) -> None:
    if x.n_dim != 2 * params.n + 1:
        raise ValueError(f"Expected a {2 * params.n + 1}x{2 * params.n + 1} matrix, got {x.n_dim}")
    if not is_theta_affine_generic(x):
        raise ValueError("Element of I+ of GL_{2n+1} is not theta-affine generic")


def sp_torus_terms(y: Mat, params: CharParams) -> List[TorusTerm]:
    n = params.n
    forms = sp_torus_forms(n)
    comps = affine_components(y, SP).values
    terms = [TorusTerm(comps[i - 1], _entry_weight(forms, i, i + 1)) for i in range(1, n + 1)]
    terms.append(TorusTerm(params.a * comps[n], _entry_weight(forms, 2 * n, 1)))
    return terms


def twisted_torus_terms(x: Mat, params: CharParams) -> List[TorusTerm]:
    n = params.n
    N = 2 * n + 1
    forms = theta_torus_forms(n)
    comps = affine_components(x, GL).values
    terms = [TorusTerm(comps[i - 1], _entry_weight(forms, i, i + 1)) for i in range(1, N)]
    terms.append(TorusTerm(params.a * comps[N - 1], _entry_weight(forms, N, 1)))
    return terms


def norm_form_torus_terms(x: Mat, params: CharParams) -> List[TorusTerm]:
    """Summands (t_i/t_{i+1}) z_{i,i+1}, t_n z_{n,n+1} and t_1^-2 a x_{2n+1,1}/2, z = x theta(x)."""
    n = params.n
    N = 2 * n + 1
    z = theta_norm(x)
    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    terms = []
    for i in range(1, n):
        terms.append(TorusTerm(reduce(z.at(i, i + 1)), tuple(a - b for a, b in zip(basis[i - 1], basis[i]))))
    terms.append(TorusTerm(reduce(z.at(n, n + 1)), basis[n - 1]))
    terms.append(TorusTerm(params.a * residue_over_uniformizer(x.at(N, 1)), tuple(-2 * c for c in basis[0])))
    return terms


def char_sp(y: Mat, params: CharParams, show_progress: bool = False) -> KlValue:
    """
    Character of the simple supercuspidal representation of Sp_2n with parameter a
    at an affine generic y in I+, as the torus sum of the affine character over
    the conjugates t y t^-1.
    """
    _require_sp_generic(y, params)
    return torus_sum(sp_torus_terms(y, params), params.n, params.field, show_progress)


def twisted_char(x: Mat, params: CharParams, show_progress: bool = False) -> KlValue:
    """
    Theta-twisted character on GL_{2n+1} at a theta-affine generic x, as the torus
    sum over T^theta(q) of the affine character at t x theta(t)^-1.
    """
    _require_theta_generic(x, params)
    return torus_sum(twisted_torus_terms(x, params), params.n, params.field, show_progress)


def twisted_char_norm_form(x: Mat, params: CharParams) -> KlValue:
    _require_theta_generic(x, params)
    return torus_sum(norm_form_torus_terms(x, params), params.n, params.field)


def _teichmuller_torus(logs: Sequence[int], field: FieldSpec, ring: RingSpec):
    return [teichmuller(field.elem(field.exp_table[e % field.order]), ring) for e in logs]


def exact_sp_torus_value(y: Mat, params: CharParams, logs: Sequence[int]) -> int:
    """Affine character at t y t^-1 computed by ring conjugation with Teichmuller lifts."""
    t = sp_torus(_teichmuller_torus(logs, params.field, y.ring), y.ring)
    conj = (t @ y @ inverse(t)).tagged(SP)
    return affine_character(affine_components(conj, SP).values, params.a)


def exact_twisted_torus_value(x: Mat, params: CharParams, logs: Sequence[int]) -> int:
    """Affine character at t x theta(t)^-1 computed by ring conjugation with Teichmuller lifts."""
    t = theta_torus(_teichmuller_torus(logs, params.field, x.ring), x.ring)
    conj = t @ x @ inverse(theta(t))
    return affine_character(affine_components(conj, GL).values, params.a)


def _band_product(m: Mat, upto: int, squared_upto: int):
    ring = m.ring
    prod = ring.one()
    for i in range(1, upto + 1):
        e = m.at(i, i + 1)
        prod = prod * e * e if i <= squared_upto else prod * e
    return prod


def beta_of(y: Mat, params: CharParams) -> FieldElem:
    """Residue of a y_{1,2}^2 ... y_{n-1,n}^2 y_{n,n+1} y_{2n,1} / 2."""
    _require_sp_generic(y, params)
    n = params.n
    a = teichmuller(params.a, y.ring)
    return residue_over_uniformizer(a * _band_product(y, n, n - 1) * y.at(2 * n, 1))


def alpha_of(x: Mat, params: CharParams) -> FieldElem:
    """Residue of a z_{1,2}^2 ... z_{n,n+1}^2 x_{2n+1,1} / 2 with z = x theta(x)."""
    _require_theta_generic(x, params)
    n = params.n
    z = theta_norm(x)
    a = teichmuller(params.a, x.ring)
    return residue_over_uniformizer(a * _band_product(z, n, n) * x.at(2 * n + 1, 1))


def char_at_y_value(y: Mat, params: CharParams) -> Tuple[FieldElem, FieldElem]:
    """
    Kloosterman arguments of the nonzero branch of the character at a norm y,
    with the ring sign kept: -a y_{1,2}^2 ... y_{n,n+1} y_{2n,1} / 2 and the
    unsquared -a y_{1,2} ... y_{2n-1,2n} y_{2n,1} / 2.
    """
    _require_sp_generic(y, params)
    n = params.n
    a = teichmuller(params.a, y.ring)
    corner = y.at(2 * n, 1)
    squared = -(a * _band_product(y, n, n - 1) * corner)
    unsquared = -(a * _band_product(y, 2 * n - 1, 0) * corner)
    return residue_over_uniformizer(squared), residue_over_uniformizer(unsquared)


@lru_cache(maxsize=None)
def _norm_ok(n: int, u: FieldElem, ring: RingSpec) -> bool:
    return norm_correspondence_check(make_g(n, u, ring), make_h(n, u, ring))


def endoscopy_values(n: int, u: FieldElem, a: FieldElem, field: FieldSpec, ring: RingSpec) -> EndoscopyResult:
    """Norm check and the three character values at (g_u, h_u)."""
    params = CharParams(n, a, field)
    g, h = make_g(n, u, ring), make_h(n, u, ring)
    return EndoscopyResult(
        n=n, u=u, a=a,
        norm_ok=_norm_ok(n, u, ring),
        twisted_value=twisted_char(g, params),
        sp_value=char_sp(h, params),
        kl_value=kloosterman_fast(n + 1, a * u, field),
    )


def endoscopy_check(n: int, u: FieldElem, a: FieldElem, field: FieldSpec, ring: RingSpec) -> bool:
    """h_u is a norm of g_u and the twisted character at g_u equals the Sp_2n character at h_u, both Kl^{n+1}_{au}."""
    return endoscopy_values(n, u, a, field, ring).holds


def endoscopy_grid(n_max: int, field: FieldSpec, m: int = 4, show_progress: bool = False) -> List[EndoscopyResult]:
    ring = make_ring(field, m)
    grid = [(n, u, a) for n in range(1, n_max + 1) for u in units(field) for a in units(field)]
    return [endoscopy_values(n, u, a, field, ring)
            for n, u, a in tqdm(grid, desc="endoscopy grid", disable=not show_progress)]


def theta_invariant_character(x: Mat, a: FieldElem) -> bool:
    """The affine character of GL_{2n+1} takes the same value at x and theta(x)."""
    return affine_character(affine_components(theta(x), GL).values, a) == \
        affine_character(affine_components(x, GL).values, a)
