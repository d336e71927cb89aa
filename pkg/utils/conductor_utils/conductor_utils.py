from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple
import pandas as pd # type: ignore


def _check_rank(n: int) -> None:
    if n < 1:
        raise ValueError(f"Rank n must be >= 1, got {n}")


def _check_q(q: int) -> None:
    if q < 2 or q & (q - 1):
        raise ValueError(f"Residue cardinality q must be a power of 2, got {q}")


@dataclass(frozen=True)
class ParamSpec:
    """
    Numeric shape of the parameter phi_a = Ind_{W_K}^{W_F} xi.

    Attributes:
        n (int): rank; the parameter has dimension 2n+1
        q (int): residue cardinality
        K_degree (int): degree of the totally ramified extension K/F
        xi_order (int): order of the character xi
        xi_swan (int): Swan conductor of xi
    """
    n: int
    q: int
    K_degree: int
    xi_order: int = 2
    xi_swan: int = 1

    def __post_init__(self):
        _check_rank(self.n)
        _check_q(self.q)
        if self.K_degree != 2 * self.n + 1:
            raise ValueError(f"K must have degree 2n+1 = {2 * self.n + 1}, got {self.K_degree}")
        if self.xi_order != 2 or self.xi_swan != 1:
            raise ValueError("xi must be a quadratic character of Swan conductor 1")

    @property
    def dim(self) -> int:
        return self.K_degree


def param_spec(n: int, q: int) -> ParamSpec:
    return ParamSpec(n=n, q=q, K_degree=2 * n + 1)


@dataclass(frozen=True)
class SwanSplit:
    sum: int
    difference: int
    swan_wedge: int
    swan_sym: int


@dataclass(frozen=True)
class GammaAbs:
    """|gamma(0, Ad o phi_a, psi_F)| = base^exponent, kept symbolic."""
    base: int
    exponent: int

    def __str__(self) -> str:
        return f"{self.base}^{self.exponent}"

    @property
    def value(self) -> int:
        return self.base ** self.exponent


@dataclass(frozen=True)
class GammaReport:
    artin_rs: int
    swan_ad: int
    artin_ad: int
    gamma_abs_log_q: Fraction
    formal_degree_log_q: Fraction
    depth_group: Fraction
    depth_parameter: Fraction


@dataclass(frozen=True)
class ParamInvariants:
    dim: int
    artin: int
    swan: int
    depth: Fraction


@dataclass(frozen=True)
class InertiaBookkeeping:
    inertia_invariants: int
    sym_invariants: int
    wedge_invariants: int
    dim_sym: int
    dim_wedge: int
    artin_sym: int
    artin_wedge: int

    @property
    def consistent(self) -> bool:
        return self.inertia_invariants == self.sym_invariants + self.wedge_invariants


def artin_rankin_selberg(n: int) -> int:
    """
    Artin conductor of phi_a tensor its dual from the Bushnell-Henniart-Kutzko
    formula dim^2 (1 + c(beta)/dim^2) - 1 with c(beta) = 2n.
    """
    _check_rank(n)
    dim = 2 * n + 1
    c_beta = 2 * n
    value = Fraction(dim * dim) * (1 + Fraction(c_beta, dim * dim)) - 1
    if value.denominator != 1:
        raise RuntimeError(f"Rankin-Selberg conductor {value} is not an integer")
    return int(value)


def adams_square_swan(spec: ParamSpec) -> int:
    """
    Swan conductor of the Adams square Ind(xi^2), which is Swan(Sym^2) - Swan(wedge^2).

    K/F has odd degree, so it is tame and Ind(xi^2) is wild only through xi^2.
    """
    xi_squared_trivial = 2 % spec.xi_order == 0
    return 0 if xi_squared_trivial else spec.xi_swan


def swan_split(n: int, q: int = 2) -> SwanSplit:
    """Swan conductors of Sym^2 and wedge^2 of phi_a from their sum and difference."""
    spec = param_spec(n, q)
    dim = spec.dim
    # one-dimensional inertia invariants in phi_a tensor its dual
    total = artin_rankin_selberg(n) - (dim * dim - 1)
    difference = adams_square_swan(spec)
    return SwanSplit(sum=total, difference=difference,
                     swan_wedge=(total - difference) // 2, swan_sym=(total + difference) // 2)


def artin_adjoint(n: int) -> int:
    """dim Ad + Swan(Ad); Ad o phi_a has no inertia invariants."""
    _check_rank(n)
    return n * (2 * n + 1) + swan_split(n).swan_wedge


def gamma_abs(n: int, q: int) -> GammaAbs:
    _check_q(q)
    artin = artin_adjoint(n)
    if artin % 2:
        raise RuntimeError(f"Artin conductor {artin} of the adjoint is odd")
    return GammaAbs(base=q, exponent=artin // 2)


def formal_degree_match(n: int, q: int, positive_roots: Optional[int] = None, rank: Optional[int] = None) -> bool:
    """
    Compare q^{n^2+n} |gamma_0|^-1 with q^{N+l} / (|Z(q)| |gamma_0|), N the number of
    positive roots and l the rank of Sp_2n; the principal-parameter factor cancels.
    """
    _check_q(q)
    N = n * n if positive_roots is None else positive_roots
    ell = n if rank is None else rank
    # mu_2(k) is trivial in characteristic 2, so |Z(q)| = 1
    return gamma_abs(n, q).exponent == N + ell


def depth_pair(n: int) -> Tuple[Fraction, Fraction]:
    """Depth 1/2n of the representation of Sp_2n against depth 1/(2n+1) of its parameter."""
    _check_rank(n)
    group, parameter = Fraction(1, 2 * n), Fraction(1, 2 * n + 1)
    if not group > parameter:
        raise RuntimeError(f"Depth {group} does not exceed parameter depth {parameter}")
    return group, parameter


def param_invariants(n: int) -> ParamInvariants:
    """dim, Artin, Swan and depth of phi_a, induced from a Swan-1 character of a tame extension."""
    spec = param_spec(n, 2)
    swan = spec.xi_swan
    return ParamInvariants(dim=spec.dim, artin=spec.dim + swan, swan=swan, depth=Fraction(swan, spec.dim))


def inertia_bookkeeping(n: int) -> InertiaBookkeeping:
    """Inertia invariants and Artin conductors of Sym^2 and wedge^2 of phi_a."""
    dim = 2 * n + 1
    split = swan_split(n)
    dim_sym, dim_wedge = (n + 1) * dim, n * dim
    sym_inv, wedge_inv = 1, 0
    return InertiaBookkeeping(
        inertia_invariants=1, sym_invariants=sym_inv, wedge_invariants=wedge_inv,
        dim_sym=dim_sym, dim_wedge=dim_wedge,
        artin_sym=dim_sym - sym_inv + split.swan_sym,
        artin_wedge=dim_wedge - wedge_inv + split.swan_wedge,
    )


def gamma_report(n: int) -> GammaReport:
    artin_ad = artin_adjoint(n)
    group, parameter = depth_pair(n)
    return GammaReport(
        artin_rs=artin_rankin_selberg(n),
        swan_ad=swan_split(n).swan_wedge,
        artin_ad=artin_ad,
        gamma_abs_log_q=Fraction(artin_ad, 2),
        formal_degree_log_q=Fraction(n * n + n),
        depth_group=group,
        depth_parameter=parameter,
    )


def conductor_summary(n: int, q: int) -> Dict[str, object]:
    """Headline numbers printed by the conductor subcommand."""
    report = gamma_report(n)
    return {'artin_rs': report.artin_rs, 'swan_ad': report.swan_ad, 'gamma': str(gamma_abs(n, q))}


def conductor_table(n_values: Iterable[int], q: int) -> pd.DataFrame:
    rows = []
    for n in n_values:
        report = gamma_report(n)
        row = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in asdict(report).items()}
        row.update({
            'n': n,
            'swan_sum': swan_split(n).sum,
            'gamma': str(gamma_abs(n, q)),
            'formal_degree_match': formal_degree_match(n, q),
        })
        rows.append(row)
    columns = ['n', 'artin_rs', 'swan_sum', 'swan_ad', 'artin_ad', 'gamma', 'gamma_abs_log_q',
               'formal_degree_log_q', 'formal_degree_match', 'depth_group', 'depth_parameter']
    return pd.DataFrame(rows, columns=columns)
