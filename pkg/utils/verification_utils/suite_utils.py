from dataclasses import dataclass
from itertools import product
from time import perf_counter
from typing import Any, Callable, Dict, Iterable, List, Optional
import logging
import numpy as np # type: ignore
from tqdm import tqdm # type: ignore

from utils.configHandling_utils.config_utils import RunConfig # type: ignore
from utils.arithmetic_utils import gf2_utils as gf2 # type: ignore
from utils.arithmetic_utils import dring_utils as dring # type: ignore
from utils.arithmetic_utils.gf2_utils import FieldSpec, make_field, parse_modulus # type: ignore
from utils.arithmetic_utils.dring_utils import RingSpec, congruent_mod, make_ring, valuation # type: ignore
from utils.matrixGroup_utils.matrix_utils import Mat, det, identity, transpose # type: ignore
from utils.matrixGroup_utils import matgrp_utils as mg # type: ignore
from utils.characterSum_utils import kloosterman_utils as kl # type: ignore
from utils.characterSum_utils import character_utils as ch # type: ignore
from utils.conductor_utils import conductor_utils as cond # type: ignore
from utils.verification_utils import sampling_utils as smp # type: ignore
from utils.report_utils.reporting_utils import CheckRecord # type: ignore

logger = logging.getLogger(__name__)

# a check returns None when it holds, otherwise a witness
Witness = Optional[Any]


# grid coordinates appended to a check id, in this order
GRID_KEYS = ('n', 'f')


class SuiteContext:
    """
    Collects CheckRecords for one suite part.

    An exception raised inside a check becomes a fail record carrying the
    exception text; the suite carries on with the next check.
    """

    def __init__(self, suite: str, config: RunConfig, rng: np.random.Generator, part: int = 0):
        self.suite = suite
        self.config = config
        self.rng = rng
        self.part = part
        self.records: List[CheckRecord] = []

    def check_id(self, name: str, params: Dict[str, Any]) -> str:
        """suite.name, followed by the grid point, e.g. matgrp.theta_involution[n=2,f=1]."""
        grid = ','.join(f"{key}={params[key]}" for key in GRID_KEYS if key in params)
        return f"{self.suite}.{name}[{grid}]" if grid else f"{self.suite}.{name}"

    def check(self, name: str, params: Dict[str, Any], func: Callable[[], Witness]) -> None:
        check_id = self.check_id(name, params)
        start = perf_counter()
        try:
            witness = func()
            status = 'pass' if witness is None else 'fail'
        except Exception as exc:
            status, witness = 'fail', f"{type(exc).__name__}: {exc}"
        elapsed_ms = int(round((perf_counter() - start) * 1000))
        if status == 'fail':
            logger.error(f"Check {check_id} {params} failed: {witness}")
        self.records.append(CheckRecord(check_id, dict(params), status, witness, elapsed_ms))

    def skip(self, name: str, params: Dict[str, Any], reason: str) -> None:
        self.records.append(CheckRecord(self.check_id(name, params), {**params, 'reason': reason}, 'skip', None, 0))

    def precision_allows(self, name: str, params: Dict[str, Any], t: int, m: int) -> bool:
        """Congruences mod p^t are only asserted when m >= t + 1."""
        if m < t + 1:
            self.skip(name, params, f"congruence mod p^{t} needs precision m >= {t + 1}, have m={m}")
            return False
        return True

    def progress(self, iterable: Iterable, desc: str) -> Iterable:
        return tqdm(iterable, desc=desc, disable=not self.config.show_progress, leave=False)


def _mat(x: Mat) -> Dict[str, Any]:
    return x.to_json()


def config_field(config: RunConfig) -> FieldSpec:
    return make_field(config.f, parse_modulus(config.modulus))


def config_ring(config: RunConfig) -> RingSpec:
    return make_ring(config_field(config), config.m)


# --------------------------------------------------------------------------- gf2

def gf2_suite(ctx: SuiteContext) -> None:
    cfg = ctx.config
    f_max = cfg.exhaustive_max_f

    def frobenius():
        for f in range(1, f_max + 1):
            F = make_field(f)
            for x in gf2.elements(F):
                if gf2.psi(x * x) != gf2.psi(x):
                    return {'f': f, 'x': x.value}
        return None
    ctx.check('psi_frobenius', {'f_max': f_max}, frobenius)

    def orthogonality():
        for f in range(1, f_max + 1):
            F = make_field(f)
            if any(gf2.trace(x) not in (0, 1) for x in gf2.elements(F)):
                return {'f': f, 'reason': 'trace outside F_2'}
            total = sum(gf2.psi(x) for x in gf2.elements(F))
            unit_total = sum(gf2.psi(x) for x in gf2.units(F))
            if total != 0 or unit_total != -1:
                return {'f': f, 'sum_psi': total, 'sum_psi_units': unit_total}
        return None
    ctx.check('psi_orthogonality', {'f_max': f_max}, orthogonality)

    def squaring():
        for f in range(1, f_max + 1):
            F = make_field(f)
            squares = {(x * x).value for x in gf2.units(F)}
            if len(squares) != F.order:
                return {'f': f, 'distinct_squares': len(squares)}
        return None
    ctx.check('square_bijection', {'f_max': f_max}, squaring)

    def wilson():
        for f in range(1, f_max + 1):
            F = make_field(f)
            us = gf2.units(F)
            if len({u.value for u in us}) != F.order or 0 in {u.value for u in us}:
                return {'f': f, 'reason': 'units not distinct and nonzero'}
            if F.q > 2 and gf2.product(us, F).value != 1:
                return {'f': f, 'product': gf2.product(us, F).value}
        return None
    ctx.check('units_wilson', {'f_max': f_max}, wilson)

    F = config_field(cfg)

    def axioms():
        elems = gf2.elements(F)
        if F.q > 64:
            idx = ctx.rng.integers(0, F.q, size=(cfg.samples, 3))
            triples = [tuple(elems[int(i)] for i in row) for row in idx]
        else:
            triples = list(product(elems, repeat=3))
        for a, b, c in triples:
            if a * (b + c) != a * b + a * c or (a * b) * c != a * (b * c) or a + a != F.zero():
                return {'a': a.value, 'b': b.value, 'c': c.value}
        for a in gf2.units(F):
            if gf2.arith('mul', gf2.arith('inv', a), a) != F.one():
                return {'inverse_of': a.value}
        return None
    ctx.check('field_axioms', {'f': F.f}, axioms)

    def anchors():
        F2, F4 = make_field(1), make_field(2)
        w = gf2.generator(F4)
        checks = {
            'default_modulus_f1': F2.modulus == 0b10,
            'default_modulus_f2': F4.modulus == 0b111,
            'omega_cubed': (w * w * w) == F4.one(),
            'trace_gf2_one': gf2.trace(F2.one()) == 1,
            'trace_gf4_one': gf2.trace(F4.one()) == 0,
            'trace_gf4_omega': gf2.trace(w) == 1,
            'psi_gf2_one': gf2.psi(F2.one()) == -1,
            'inv_one': F4.one().inverse() == F4.one(),
        }
        try:
            make_field(2, 0b100)
            checks['reducible_rejected'] = False
        except ValueError:
            checks['reducible_rejected'] = True
        failed = [k for k, ok in checks.items() if not ok]
        return failed or None
    ctx.check('anchors', {}, anchors)


# --------------------------------------------------------------------------- dring

def _schoolbook_mul(a, b, ring: RingSpec):
    prod = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    prod = [int(c) for c in prod]
    mod = ring.modulus
    f = ring.f
    while len(prod) > f:
        c = prod.pop()
        for i in range(f):
            prod[len(prod) - f + i] -= c * mod[i]
    prod += [0] * (f - len(prod))
    return tuple(c % ring.mask for c in prod)


def dring_suite(ctx: SuiteContext) -> None:
    cfg = ctx.config
    m = cfg.m
    n = cfg.samples

    def teichmuller_laws():
        for f in range(1, min(4, cfg.exhaustive_max_f) + 1):
            R = make_ring(make_field(f), m)
            elems = gf2.elements(R.field)
            for a in elems:
                t = dring.teichmuller(a, R)
                if dring.reduce(t) != a or t ** R.field.q != t:
                    return {'f': f, 'a': a.value, 'lift': list(t.coeffs)}
                for b in elems:
                    if dring.teichmuller(a * b, R) != t * dring.teichmuller(b, R):
                        return {'f': f, 'a': a.value, 'b': b.value}
        return None
    ctx.check('teichmuller_multiplicative', {'q_max': 16, 'm': m}, teichmuller_laws)

    def integer_oracle():
        for mm in range(1, 9):
            R = make_ring(make_field(1), mm)
            M = R.mask
            for x in range(M):
                for y in range(M):
                    ex, ey = R.from_int(x), R.from_int(y)
                    if (ex * ey).coeffs[0] != (x * y) % M or (ex + ey).coeffs[0] != (x + y) % M:
                        return {'m': mm, 'x': x, 'y': y}
        return None
    ctx.check('z_mod_2m_oracle', {'m_max': 8}, integer_oracle)

    R = make_ring(make_field(2), 3)

    def schoolbook():
        for _ in range(n):
            a, b = smp.random_elem(R, ctx.rng), smp.random_elem(R, ctx.rng)
            if (a * b).coeffs != _schoolbook_mul(a.coeffs, b.coeffs, R):
                return {'a': list(a.coeffs), 'b': list(b.coeffs)}
            if dring.reduce(a + b) != dring.reduce(a) + dring.reduce(b) or \
                    dring.reduce(a * b) != dring.reduce(a) * dring.reduce(b):
                return {'reduce_not_homomorphic': [list(a.coeffs), list(b.coeffs)]}
            if not (a + (-a)).is_zero():
                return {'negation': list(a.coeffs)}
        return None
    ctx.check('gr_8_2_oracle', {'samples': n}, schoolbook)

    def inversion():
        for _ in range(n):
            u = smp.random_unit(R, ctx.rng)
            if u * dring.invert(u) != R.one():
                return {'unit': list(u.coeffs)}
        try:
            dring.invert(R.from_int(2))
        except ValueError:
            return None
        return {'reason': 'inverting the uniformizer did not raise'}
    ctx.check('invert', {'samples': n}, inversion)

    def valuations():
        for u in dring.units(R):
            if valuation(u * R.from_int(2)) != 1:
                return {'unit': list(u.coeffs)}
        Rc = make_ring(make_field(2), m)
        for _ in range(n):
            x, y = smp.random_elem(Rc, ctx.rng), smp.random_elem(Rc, ctx.rng)
            vx, vy = valuation(x), valuation(y)
            if valuation(x + y) < min(vx, vy):
                return {'x': list(x.coeffs), 'y': list(y.coeffs), 'law': 'subadditive'}
            if min(vx, vy) < m and valuation(x * y) != min(m, vx + vy):
                return {'x': list(x.coeffs), 'y': list(y.coeffs), 'law': 'multiplicative'}
        if valuation(Rc.zero()) != m:
            return {'zero_valuation': valuation(Rc.zero())}
        return None
    ctx.check('valuation', {'samples': n, 'm': m}, valuations)

    def sizes():
        got = sum(1 for _ in dring.elements(make_ring(make_field(2), 4)))
        return None if got == 256 else {'gr_16_2_size': got}
    ctx.check('enumeration', {}, sizes)


# --------------------------------------------------------------------------- matgrp

@dataclass(frozen=True)
class MatgrpPart:
    """
    One task of the matgrp suite.

    kind is 'shared' (checks independent of the field), 'family' (the fixed
    g_u, h_u and phi_a families over one field) or 'samples' (the sampled
    lemma checks for one (f, n) grid point).
    """
    kind: str
    f: int = 0
    modulus: Optional[int] = None
    n: int = 0


def matgrp_fields(config: RunConfig) -> List[FieldSpec]:
    """GF(2^f) for f <= MATGRP_MAX_F with the configured field in place of its default modulus."""
    configured = config_field(config)
    by_degree = {f: make_field(f) for f in range(1, config.matgrp_max_f + 1)}
    by_degree[configured.f] = configured
    return [by_degree[f] for f in sorted(by_degree)]


def matgrp_parts(config: RunConfig) -> List[MatgrpPart]:
    parts = [MatgrpPart('shared')]
    for F in matgrp_fields(config):
        parts.append(MatgrpPart('family', F.f, F.modulus))
        parts += [MatgrpPart('samples', F.f, F.modulus, n) for n in range(1, config.n_max + 1)]
    return parts


def _matgrp_shared(ctx: SuiteContext) -> None:
    cfg = ctx.config
    R = config_ring(cfg)

    def antidiag():
        for N in range(1, 7):
            J = mg.antidiag_J(N, R)
            if transpose(J) != (J if N % 2 else -J):
                return {'N': N}
        return None
    ctx.check('antidiag_transpose', {'N_max': 6}, antidiag)

    def minus_identity():
        outside = [n for n in range(1, cfg.n_max + 1) if not mg.minus_identity_in_plus_plus(n, R)]
        return {'outside_plus_plus': outside} if outside else None
    ctx.check('minus_identity_sp', {'n_max': cfg.n_max}, minus_identity)


def _matgrp_family(ctx: SuiteContext, R: RingSpec) -> None:
    F = R.field
    m = R.m
    units = gf2.units(F)

    for n in range(1, 6):
        p = {'n': n, 'f': F.f, 'm': m}

        def example_display():
            for u in units:
                g = mg.make_g(n, u, R)
                if mg.theta(g) != mg.expected_theta_g(n, u, R):
                    return {'u': u.value, 'reason': 'theta(g_u) display'}
                z = mg.theta_norm(g)
                if z != mg.expected_norm_g(n, u, R):
                    return {'u': u.value, 'reason': 'g_u theta(g_u) display'}
                if any(not z.at(2 * n + 1, j).is_zero() for j in range(1, 2 * n + 1)):
                    return {'u': u.value, 'reason': 'last row of g_u theta(g_u) - I'}
                if mg.classify_filtration(g) != mg.FiltrationClass.IWAHORI_PLUS or not mg.is_theta_affine_generic(g):
                    return {'u': u.value, 'reason': 'g_u class'}
                res = mg.eisenstein_check(g)
                if not res.passes or dring.residue_over_uniformizer(res.constant_term) != u:
                    return {'u': u.value, 'reason': 'Eisenstein constant term of g_u'}
            return None
        ctx.check('g_u_display', p, example_display)

        def g_h_symplectic_minor():
            for u in units:
                h = mg.make_h(n, u, R)
                g = mg.make_g(n, u, R)
                if not mg.is_symplectic(h):
                    return {'u': u.value, 'reason': 'th J h != J'}
                bad = [k for k, ok in mg.g_h_block_identities(n, u, R).items() if not ok]
                if bad:
                    return {'u': u.value, 'block_identities': bad}
                if h != mg.theta_norm(g).upper_left(2 * n):
                    return {'u': u.value, 'reason': 'h_u is not the minor of g_u theta(g_u)'}
                comps = mg.affine_components(h, mg.SP).values
                if comps != (F.one(),) * n + (u,):
                    return {'u': u.value, 'components': [c.value for c in comps]}
            return None
        ctx.check('g_h_symplectic_minor', p, g_h_symplectic_minor)

    def phi_identities():
        for N in range(1, 8):
            for a in units:
                phi = mg.make_phi(N, a, R)
                scalar = identity(N, R).scale(R.from_int(2) * dring.teichmuller(a, R))
                if phi ** N != scalar:
                    return {'N': N, 'a': a.value, 'reason': 'phi^N'}
                if valuation(det(phi)) != 1:
                    return {'N': N, 'a': a.value, 'reason': 'det'}
                if N % 2 and not mg.eta_phi_identity(N, a, R):
                    return {'N': N, 'a': a.value, 'reason': 'eta(phi_a)'}
        return None
    ctx.check('phi_identities', {'N_max': 7, 'f': F.f, 'm': m}, phi_identities)


def _matgrp_samples(ctx: SuiteContext, R: RingSpec, n: int) -> None:
    F = R.field
    m = R.m
    S = ctx.config.samples
    N = 2 * n + 1
    p = {'n': n, 'f': F.f, 'm': m}
    units = gf2.units(F)

    def draws():
        return ctx.progress(range(S), f"matgrp n={n} q={F.q}")

    def involution():
        for _ in draws():
            g = smp.random_invertible(N, R, ctx.rng)
            if mg.theta(mg.theta(g)) != g:
                return _mat(g)
        return None
    ctx.check('theta_involution', {**p, 'samples': S}, involution)

    def stability():
        for _ in draws():
            x = smp.random_iwahori_plus(N, R, ctx.rng)
            if not mg.classify_filtration(mg.theta(x)).within(mg.FiltrationClass.IWAHORI_PLUS):
                return {'plus': _mat(x)}
            y = smp.random_iwahori_plus_plus(N, R, ctx.rng)
            if mg.classify_filtration(mg.theta(y)) != mg.FiltrationClass.IWAHORI_PLUS_PLUS:
                return {'plus_plus': _mat(y)}
        return None
    ctx.check('filtration_stability', {**p, 'samples': S}, stability)

    def quotient_action():
        for _ in draws():
            x = smp.random_iwahori_plus(N, R, ctx.rng)
            comps = mg.affine_components(x).values
            expected = tuple(reversed(comps[:-1])) + (comps[-1],)
            if mg.affine_components(mg.theta(x)).values != expected:
                return _mat(x)
        return None
    ctx.check('theta_quotient_action', {**p, 'samples': S}, quotient_action)

    if ctx.precision_allows('iwahori_congruences', p, 2, m):
        def congruences():
            for _ in draws():
                x = smp.random_iwahori_plus(N, R, ctx.rng)
                xp = mg.theta(x)
                bad = [k for k, ok in mg.iwahori_theta_congruences(x, xp).items() if not ok]
                bad += [k for k, ok in mg.iwahori_expansion_check(x, xp).items() if not ok]
                if bad:
                    return {'failed': bad, 'x': _mat(x)}
            return None
        ctx.check('iwahori_congruences', {**p, 'samples': S}, congruences)

    a1_congruences = ctx.precision_allows('eisenstein_a1_congruence', p, 2, m)

    def eisenstein_forward():
        for _ in draws():
            x = smp.random_theta_affine_generic(n, R, ctx.rng)
            if not mg.eisenstein_check(x).passes:
                return _mat(x)
            if a1_congruences:
                bad = [k for k, ok in mg.charpoly_a1_congruences(x).items() if not ok]
                if bad:
                    return {'failed': bad, 'x': _mat(x)}
        return None
    ctx.check('eisenstein_forward', {**p, 'samples': S}, eisenstein_forward)

    def eisenstein_converse():
        for _ in draws():
            x = smp.random_theta_non_generic(n, R, ctx.rng)
            if mg.is_theta_affine_generic(x) or mg.eisenstein_check(x).passes:
                return _mat(x)
        return None
    ctx.check('eisenstein_converse', {**p, 'samples': S}, eisenstein_converse)

    def a0_exact():
        for _ in draws():
            x = smp.random_invertible(N, R, ctx.rng)
            if not mg.shifted_charpoly(mg.theta_norm(x)).a(0).is_zero():
                return _mat(x)
        for u in units:
            if not mg.shifted_charpoly(mg.theta_norm(mg.make_g(n, u, R))).a(0).is_zero():
                return {'g_u': u.value}
        return None
    ctx.check('a0_exact', {**p, 'samples': S}, a0_exact)

    def survivors():
        got = mg.theta_norm_coset_survivors(n, -(2 * n + 2))
        return None if got == [(0, 0)] else {'survivors': got}
    ctx.check('theta_norm_survivors', p, survivors)

    def norm_correspondence():
        I_g, I_h = identity(N, R), identity(2 * n, R)
        if not mg.norm_correspondence_check(I_g, I_h):
            return {'reason': 'identity pair'}
        for u in units:
            g, h = mg.make_g(n, u, R), mg.make_h(n, u, R)
            if not mg.norm_correspondence_check(g, h) or mg.norm_correspondence_check(g, I_h):
                return {'u': u.value}
        return None
    ctx.check('norm_correspondence', p, norm_correspondence)

    M = 2 * n
    sp_constant_term = ctx.precision_allows('sp_eisenstein_constant_term', p, 2, m)

    def sp_eisenstein():
        for _ in draws():
            y = smp.random_sp_affine_generic(n, R, ctx.rng)
            res = mg.sp_eisenstein_check(y)
            if not mg.is_affine_generic(y, mg.SP) or not res.passes or not mg.sp_band_symmetric(y):
                return _mat(y)
            if sp_constant_term:
                band = R.one()
                for i in range(1, M):
                    band = band * y.at(i, i + 1)
                if not congruent_mod(res.constant_term, -(band * y.at(M, 1)), 2):
                    return {'constant_term': _mat(y)}
            z = smp.random_sp_non_generic(n, R, ctx.rng)
            if mg.is_affine_generic(z, mg.SP) or mg.sp_eisenstein_check(z).passes:
                return {'non_generic': _mat(z)}
        return None
    ctx.check('sp_eisenstein', {**p, 'samples': S}, sp_eisenstein)

    def corner_bound():
        for _ in draws():
            x = smp.random_iwahori(N, R, ctx.rng)
            phi = mg.make_phi(N, smp.random_field_unit(F, ctx.rng), R)
            power = identity(N, R)
            for k in range(2 * N + 1):
                if valuation((x @ power).at(N, 1)) < min(m, mg.corner_valuation_bound(k, N)):
                    return {'k': k, 'x': _mat(x)}
                power = power @ phi
        return None
    ctx.check('corner_valuation_bound', {**p, 'samples': min(S, 50)}, corner_bound)


def matgrp_suite(ctx: SuiteContext) -> None:
    """Matrix-group checks of one MatgrpPart, picked by the context's part index."""
    part = matgrp_parts(ctx.config)[ctx.part]
    if part.kind == 'shared':
        _matgrp_shared(ctx)
        return
    R = make_ring(make_field(part.f, part.modulus), ctx.config.m)
    if part.kind == 'family':
        _matgrp_family(ctx, R)
    else:
        _matgrp_samples(ctx, R, part.n)


# --------------------------------------------------------------------------- charsums

def charsums_suite(ctx: SuiteContext) -> None:
    cfg = ctx.config
    N_max = cfg.kl_max_n

    def oracle():
        for f in range(1, cfg.kl_oracle_max_f + 1):
            F = make_field(f)
            for N in range(1, N_max + 1):
                for x in gf2.units(F):
                    brute, fast = kl.kloosterman(N, x), kl.kloosterman_fast(N, x)
                    if brute != fast:
                        return {'f': f, 'N': N, 'x': x.value, 'brute': brute, 'fast': fast}
                    if abs(fast) > (F.q - 1) ** (N - 1):
                        return {'f': f, 'N': N, 'x': x.value, 'bound': fast}
                    if N == 1 and fast != gf2.psi(x):
                        return {'f': f, 'x': x.value, 'reason': 'Kl^1 != psi'}
                if kl.kloosterman_total(N, F) != (-1) ** N:
                    return {'f': f, 'N': N, 'total': kl.kloosterman_total(N, F)}
        return None
    ctx.check('kloosterman_oracle', {'f_max': cfg.kl_oracle_max_f, 'N_max': N_max}, oracle)

    def anchors():
        F2, F4 = make_field(1), make_field(2)
        w = gf2.generator(F4)
        got = {
            'q2_N2': kl.kloosterman(2, F2.one()), 'q2_N3': kl.kloosterman(3, F2.one()),
            'q4_N2_one': kl.kloosterman(2, F4.one()), 'q4_N2_omega': kl.kloosterman(2, w),
        }
        expected = {'q2_N2': 1, 'q2_N3': -1, 'q4_N2_one': 3, 'q4_N2_omega': -1}
        return None if got == expected else got
    ctx.check('kloosterman_anchors', {}, anchors)

    def twists():
        for f in range(1, min(4, cfg.charsum_max_f) + 1):
            F = make_field(f)
            for N in range(1, N_max + 1):
                patterns = [(1,) * N, (2,) * max(N - 2, 0) + (1,) * min(N, 2), (2,) * (N - 1) + (1,),
                            tuple(int(2 ** e) for e in ctx.rng.integers(0, 4, size=N))]
                for x in gf2.units(F):
                    for e in patterns:
                        if kl.kloosterman_twisted(e, x) != kl.kloosterman_fast(N, x):
                            return {'f': f, 'exponents': list(e), 'x': x.value}
        return None
    ctx.check('frobenius_twist', {'f_max': min(4, cfg.charsum_max_f), 'N_max': N_max}, twists)

    def gauss():
        for f in range(1, cfg.fourier_max_f + 1):
            F = make_field(f)
            for N in range(1, N_max + 1):
                target = float(F.q ** N)
                for chi in range(1, F.order):
                    v = kl.kl_fourier(N, chi, F)
                    if abs(abs(v) ** 2 - target) > 1e-9 * target:
                        return {'f': f, 'N': N, 'chi': chi, 'abs_sq': abs(v) ** 2}
                    if abs(v - kl.gauss_sum(chi, F) ** N) > 1e-9 * target:
                        return {'f': f, 'N': N, 'chi': chi, 'reason': 'not a Gauss-sum power'}
        return None
    ctx.check('gauss_power', {'f_max': cfg.fourier_max_f, 'N_max': N_max}, gauss)

    def witnesses():
        for f in range(1, min(4, cfg.charsum_max_f) + 1):
            F = make_field(f)
            for n in range(1, N_max + 1):
                for a in gf2.units(F):
                    u = kl.nonvanishing_witness(n, a)
                    if kl.kloosterman(n + 1, a * u) == 0:
                        return {'f': f, 'n': n, 'a': a.value}
        return None
    ctx.check('nonvanishing_witness', {'f_max': min(4, cfg.charsum_max_f), 'n_max': N_max}, witnesses)

    def injectivity():
        for f in range(1, cfg.injectivity_max_f + 1):
            F = make_field(f)
            for n in range(1, N_max + 1):
                res = kl.kl_injectivity(n, F)
                if not res.injective:
                    return {'f': f, 'n': n, 'collision': [c.value for c in res.collision]}
        mock = kl.find_collision([0, 1], lambda _: 0)
        return None if mock == (0, 1) else {'selftest': mock}
    ctx.check('kl_injectivity', {'f_max': cfg.injectivity_max_f, 'n_max': N_max}, injectivity)

    S = cfg.charsum_samples
    for f in range(1, cfg.charsum_max_f + 1):
        F = make_field(f)
        R = make_ring(F, cfg.m)
        for n in range(1, cfg.n_max + 1):
            p = {'n': n, 'f': f, 'm': cfg.m, 'samples': S}
            def draws():
                return ctx.progress(range(S), f"charsums n={n} q={F.q}")


            def sp_formula():
                for _ in draws():
                    a = smp.random_field_unit(F, ctx.rng)
                    params = ch.CharParams(n, a, F)
                    y = smp.random_sp_affine_generic(n, R, ctx.rng)
                    beta = ch.beta_of(y, params)
                    value = ch.char_sp(y, params)
                    if value != kl.kloosterman_fast(n + 1, beta):
                        return {'a': a.value, 'value': value, 'beta': beta.value, 'y': _mat(y)}
                    if any(v != beta for v in ch.char_at_y_value(y, params)):
                        return {'a': a.value, 'reason': 'char-at-y argument', 'y': _mat(y)}
                    logs = [int(e) for e in ctx.rng.integers(0, F.order, size=n)]
                    terms = ch.sp_torus_terms(y, params)
                    if ch.exact_sp_torus_value(y, params, logs) != ch.torus_value(terms, logs, F):
                        return {'a': a.value, 'torus_point': logs, 'y': _mat(y)}
                return None
            ctx.check('char_sp_formula', p, sp_formula)

            def twisted_formula():
                for _ in draws():
                    a = smp.random_field_unit(F, ctx.rng)
                    params = ch.CharParams(n, a, F)
                    x = smp.random_theta_affine_generic(n, R, ctx.rng)
                    alpha = ch.alpha_of(x, params)
                    value = ch.twisted_char(x, params)
                    if value != kl.kloosterman_fast(n + 1, alpha) or value != ch.twisted_char_norm_form(x, params):
                        return {'a': a.value, 'value': value, 'alpha': alpha.value, 'x': _mat(x)}
                    a1 = mg.eisenstein_check(x).constant_term
                    if alpha != a * dring.residue_over_uniformizer(a1):
                        return {'a': a.value, 'reason': 'alpha against Eisenstein constant term', 'x': _mat(x)}
                    logs = [int(e) for e in ctx.rng.integers(0, F.order, size=n)]
                    terms = ch.twisted_torus_terms(x, params)
                    if ch.exact_twisted_torus_value(x, params, logs) != ch.torus_value(terms, logs, F):
                        return {'a': a.value, 'torus_point': logs, 'x': _mat(x)}
                    if not ch.theta_invariant_character(x, a):
                        return {'a': a.value, 'reason': 'theta invariance', 'x': _mat(x)}
                return None
            ctx.check('twisted_char_formula', p, twisted_formula)

            def coset_constancy():
                for _ in draws():
                    a, u = smp.random_field_unit(F, ctx.rng), smp.random_field_unit(F, ctx.rng)
                    y = mg.make_h(n, u, R) @ smp.random_sp_plus_plus(n, R, ctx.rng)
                    value = ch.char_sp(y.tagged(mg.SP), ch.CharParams(n, a, F))
                    if value != kl.kloosterman_fast(n + 1, a * u):
                        return {'a': a.value, 'u': u.value, 'y': _mat(y)}
                return None
            ctx.check('depth_coset_constancy', p, coset_constancy)


# --------------------------------------------------------------------------- conductor

def conductor_suite(ctx: SuiteContext) -> None:
    n_values = range(1, 101)

    def identities():
        for n in n_values:
            dim = 2 * n + 1
            split = cond.swan_split(n)
            if cond.artin_rankin_selberg(n) != dim * dim + 2 * n - 1:
                return {'n': n, 'artin_rs': cond.artin_rankin_selberg(n)}
            if cond.artin_rankin_selberg(n) - (dim * dim - 1) != split.sum or split.sum != 2 * split.swan_wedge:
                return {'n': n, 'swan_sum': split.sum}
            if split.difference != cond.adams_square_swan(cond.param_spec(n, 2)) or split.difference != 0 \
                    or split.swan_wedge != n or split.swan_sym != n:
                return {'n': n, 'split': [split.sum, split.difference, split.swan_wedge, split.swan_sym]}
            if cond.artin_adjoint(n) != 2 * (n * n + n):
                return {'n': n, 'artin_ad': cond.artin_adjoint(n)}
            gamma = cond.gamma_abs(n, 2)
            if gamma.exponent != n * n + n or 2 * gamma.exponent != cond.artin_adjoint(n) or gamma.exponent % 2:
                return {'n': n, 'gamma_exponent': gamma.exponent}
            if not cond.formal_degree_match(n, 2) or cond.formal_degree_match(n, 2, positive_roots=n * n + 1):
                return {'n': n, 'reason': 'formal degree comparison'}
            group, parameter = cond.depth_pair(n)
            inv = cond.param_invariants(n)
            if not group > parameter or inv.depth != parameter or inv.artin != dim + 1:
                return {'n': n, 'depth': [str(group), str(parameter)]}
            book = cond.inertia_bookkeeping(n)
            if not book.consistent or book.artin_sym + book.artin_wedge != cond.artin_rankin_selberg(n) \
                    or book.dim_wedge != n * dim:
                return {'n': n, 'reason': 'inertia invariant bookkeeping'}
        return None
    ctx.check('conductor_identities', {'n_max': 100}, identities)

    def anchors():
        got = cond.conductor_summary(2, 4)
        expected = {'artin_rs': 28, 'swan_ad': 2, 'gamma': '4^6'}
        if got != expected:
            return got
        if [cond.artin_rankin_selberg(n) for n in (1, 2, 3)] != [10, 28, 54]:
            return {'artin_rs': [cond.artin_rankin_selberg(n) for n in (1, 2, 3)]}
        if cond.artin_adjoint(10) != 220 or cond.gamma_abs(1, 2).value != 4:
            return {'reason': 'adjoint anchors'}
        return None
    ctx.check('conductor_anchors', {}, anchors)


# --------------------------------------------------------------------------- endoscopy

def endoscopy_suite(ctx: SuiteContext) -> None:
    cfg = ctx.config
    for f in range(1, cfg.charsum_max_f + 1):
        F = make_field(f)
        R = make_ring(F, cfg.m)
        us = gf2.units(F)
        for n in range(1, cfg.kl_max_n + 1):
            p = {'n': n, 'f': f, 'm': cfg.m}

            def relation():
                for u, a in ctx.progress(list(product(us, us)), f"endoscopy n={n} q={F.q}"):
                    res = ch.endoscopy_values(n, u, a, F, R)
                    if not res.holds:
                        return {'u': u.value, 'a': a.value, 'norm_ok': res.norm_ok,
                                'twisted': res.twisted_value, 'sp': res.sp_value, 'kl': res.kl_value}
                return None
            ctx.check('endoscopic_relation', p, relation)

        def mutated_control():
            for n in range(1, cfg.kl_max_n + 1):
                u = us[0]
                h = mg.make_h(n, u, R)
                broken = h.with_entry(1, 2, h.at(1, 2) + R.one())
                if mg.norm_correspondence_check(mg.make_g(n, u, R), broken):
                    return {'n': n, 'reason': 'mutated h passed the norm check'}
            return None
        ctx.check('mutated_h_detected', {'f': f, 'm': cfg.m}, mutated_control)


def negative_control(ctx: SuiteContext) -> None:
    """Deliberately false assertion used to exercise the failure path end to end."""
    R = config_ring(ctx.config)
    u = gf2.units(R.field)[0]
    h = mg.make_h(1, u, R)
    broken = h.with_entry(1, 2, h.at(1, 2) + R.one())

    def must_fail():
        if mg.norm_correspondence_check(mg.make_g(1, u, R), broken):
            return None
        return {'h': _mat(broken), 'reason': 'mutated h_u is not a norm of g_u'}
    ctx.check('mutated_h_is_norm', {'n': 1, 'f': R.field.f, 'm': R.m}, must_fail)


SUITES: Dict[str, Callable[[SuiteContext], None]] = {
    'gf2': gf2_suite,
    'dring': dring_suite,
    'matgrp': matgrp_suite,
    'charsums': charsums_suite,
    'conductor': conductor_suite,
    'endoscopy': endoscopy_suite,
}


def suite_part_count(name: str, config: RunConfig) -> int:
    """Number of independent tasks a suite splits into; only matgrp has more than one."""
    return len(matgrp_parts(config)) if name == 'matgrp' else 1


def run_suite_part(name: str, config: RunConfig, part: int = 0) -> List[CheckRecord]:
    """Run one part of a named suite with the random stream of (seed, suite, part)."""
    ctx = SuiteContext(name, config, smp.suite_rng(config.seed, name, part), part)
    if name == 'negative_control':
        negative_control(ctx)
    else:
        SUITES[name](ctx)
    return ctx.records


def run_suite(name: str, config: RunConfig) -> List[CheckRecord]:
    """Run every part of a named suite in order."""
    records: List[CheckRecord] = []
    for part in range(suite_part_count(name, config)):
        records.extend(run_suite_part(name, config, part))
    return records
