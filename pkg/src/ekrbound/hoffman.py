# -*- coding: utf-8 -*-
"""
加权 Hoffman 比值界

对 A = A_d - f A_{d-2}：
  - 选取 f 使 V_1 与 V_d 上的特征值相等（最小特征值尽可能大）
  - K = 行和 = V_0 上的特征值, lambda = 最小特征值
  - 比值界 -lambda N / (K - lambda)，与闭式上界逐项精确比对

另外提供任意权向量的通用比值界 (extended weight matrix)，以及 f 的网格扫描。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ParameterDomainError, PropertyFailure
from .scheme import (
    SchemeParams,
    closed_form_entry,
    closed_form_terms,
    eigenmatrix,
    generator_count,
    pencil_size,
)

logger = logging.getLogger(__name__)


# =============================================================================
# 数据类型
# =============================================================================

@dataclass(frozen=True)
class WeightVector:
    """coeffs[j-1] 为 A_j 的系数 c_j，j = 1..d；A_d 是对立图 (oppositeness graph) 的边"""
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', tuple(Fraction(c) for c in self.coeffs))
        d = len(self.coeffs)
        if d < 1:
            raise ParameterDomainError("weight vector needs at least one relation")
        for j, c in enumerate(self.coeffs[:-1], start=1):
            if c > 0:
                raise ParameterDomainError(
                    f"weight sign constraint: c_{j} = {c} > 0 on a non-edge relation (must be <= 0)")
        if all(c == 0 for c in self.coeffs):
            raise ParameterDomainError("weight vector must have at least one nonzero entry")

    @property
    def d(self) -> int:
        return len(self.coeffs)

    def c(self, j: int) -> Fraction:
        return self.coeffs[j - 1]

    @classmethod
    def from_mapping(cls, d: int, weights: Dict[int, Fraction]) -> 'WeightVector':
        coeffs = [Fraction(0)] * d
        for j, c in weights.items():
            if not 1 <= j <= d:
                raise ParameterDomainError(f"relation index {j} outside 1..{d}")
            coeffs[j - 1] = Fraction(c)
        return cls(tuple(coeffs))


@dataclass(frozen=True)
class BoundReport:
    """一组 (d, q) 的比值界报告；通用权向量时 f 相关字段为 None"""
    params: SchemeParams
    weights: Tuple[Fraction, ...]
    spectrum: Tuple[Fraction, ...]
    K: Fraction
    lambda_: Fraction
    ratio_bound: Fraction
    N: int
    pencil_size: int
    f: Optional[Fraction] = None
    f_numerator: Optional[int] = None
    f_denominator: Optional[int] = None
    closed_form_bound: Optional[int] = None
    bounds_match: Optional[bool] = None
    lambda_threshold_holds: Optional[bool] = None
    pure_hoffman_bound: Optional[Fraction] = None

    @property
    def in_proven_range(self) -> bool:
        """闭式上界在 d >= 5 时已证明；d = 3 仅用于交叉校验"""
        return self.params.d >= 5

    @property
    def bound_floor(self) -> int:
        return self.ratio_bound.numerator // self.ratio_bound.denominator


@dataclass(frozen=True)
class SignEntry:
    index: int
    value: Fraction
    p_d: int
    p_d2: int
    checks: Dict[str, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class ChainLink:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class ChainReport:
    params: SchemeParams
    links: Tuple[ChainLink, ...]
    short_numerator_variant_holds: bool

    @property
    def ok(self) -> bool:
        return all(link.ok for link in self.links)

    @property
    def first_failure(self) -> Optional[ChainLink]:
        return next((link for link in self.links if not link.ok), None)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SweepReport:
    params: SchemeParams
    optimal_f: Fraction
    optimal_min: Fraction
    samples: Tuple[Tuple[Fraction, Fraction], ...]

    @property
    def best_sample(self) -> Tuple[Fraction, Fraction]:
        return max(self.samples, key=lambda s: s[1])

    @property
    def optimal_wins(self) -> bool:
        return all(self.optimal_min >= value for _, value in self.samples)


# =============================================================================
# f, K, lambda
# =============================================================================

def f_parts(params: SchemeParams) -> Tuple[int, int]:
    """f 定义式的分子 f_1 与分母 f_2（未约分）"""
    params.require_odd(3)
    d, q = params.d, params.q
    f1 = (q ** (d - 1) - 1) * q ** (4 * (d - 2))
    f2 = (params.gauss(d - 1, 1) * q ** (2 * d - 5)
          - params.gauss(d - 1, 2)
          + params.gauss(d, 2) * q ** (d - 3))
    return f1, f2


def f_forms(params: SchemeParams) -> Tuple[Fraction, Fraction, Fraction]:
    """f 的三种写法：定义式、含 [d,2] 的分母式、完全因式分解式"""
    f1, f2 = f_parts(params)
    d, q = params.d, params.q
    tail = (q ** (d - 2) + 1) * (q ** (2 * d - 1) - q ** (d - 2) - q ** (d - 3) + 1)
    definition = Fraction(f1, f2)
    with_gauss = Fraction((q ** (2 * d) - 1) * f1, params.gauss(d, 2) * tail)
    factored = Fraction((q ** 2 - 1) * (q ** 4 - 1) * f1, (q ** (2 * d - 2) - 1) * tail)
    return definition, with_gauss, factored


def optimal_f(params: SchemeParams) -> Fraction:
    """使 V_1 与 V_d 上特征值相等的 f，并检查 0 < f < q^2 - 1"""
    definition, with_gauss, factored = f_forms(params)
    if not definition == with_gauss == factored:
        raise PropertyFailure('f alternative forms agree', f"{definition}, {with_gauss}, {factored}")
    f = definition
    d = params.d
    lhs = closed_form_entry(params, d, d) - f * closed_form_entry(params, d, d - 2)
    rhs = closed_form_entry(params, 1, d) - f * closed_form_entry(params, 1, d - 2)
    if lhs != rhs:
        raise PropertyFailure('f matches eigenvalues on V_1 and V_d', f"{lhs} != {rhs}")
    if not 0 < f < params.q ** 2 - 1:
        raise PropertyFailure('0 < f < q^2-1', f"f = {f}")
    return f


def pseudo_spectrum(params: SchemeParams, f: Fraction) -> List[Fraction]:
    """A_d - f A_{d-2} 在 V_0..V_d 上的特征值"""
    if params.d < 2:
        raise ParameterDomainError(f"pseudo spectrum needs d >= 2 (got d={params.d})")
    em = eigenmatrix(params)
    d = params.d
    f = Fraction(f)
    return [row[d] - f * row[d - 2] for row in em.P]


def row_sum_K(params: SchemeParams, f: Fraction) -> Fraction:
    """K = q^(d^2) - f [d,2] q^((d-2)^2)"""
    if params.d < 2:
        raise ParameterDomainError(f"row sum needs d >= 2 (got d={params.d})")
    d, q = params.d, params.q
    return q ** (d * d) - Fraction(f) * params.gauss(d, 2) * q ** ((d - 2) ** 2)


def lambda_threshold(params: SchemeParams) -> int:
    """-q^(d^2-2d+2)"""
    d = params.d
    return -params.q ** (d * d - 2 * d + 2)


def lambda_forms(params: SchemeParams, f: Optional[Fraction] = None) -> Tuple[Fraction, Fraction]:
    """lambda 的定义式与化简后的闭式"""
    d, q = params.d, params.q
    f = optimal_f(params) if f is None else f
    definition = -q ** (d * (d - 1)) + f * params.gauss(d, 2) * q ** ((d - 2) * (d - 3))
    closed = -Fraction(
        (q + 1) * (q ** (2 * d) - q ** (2 * d - 3) + q - 1) * q ** (d * d - d - 2),
        (q ** (d - 2) + 1) * (q ** (2 * d - 1) - q ** (d - 2) - q ** (d - 3) + 1),
    )
    return definition, closed


def lambda_min(params: SchemeParams, check_spectrum: bool = True) -> Fraction:
    """A 的最小特征值

    check_spectrum=True 时与完整特征矩阵比对：最小值恰在 i = 1 与 i = d 处取到。
    d >= 5 时要求 lambda < -q^(d^2-2d+2)；d = 3 不检查这一条。
    """
    params.require_odd(3)
    f = optimal_f(params)
    definition, closed = lambda_forms(params, f)
    if definition != closed:
        raise PropertyFailure('lambda alternative forms agree', f"{definition} != {closed}")
    lam = definition
    d = params.d
    if check_spectrum:
        spectrum = pseudo_spectrum(params, f)
        low = min(spectrum)
        if low != lam:
            raise PropertyFailure('lambda is the smallest eigenvalue', f"min={low}, lambda={lam}")
        argmins = [i for i, v in enumerate(spectrum) if v == low]
        if argmins != [1, d]:
            raise PropertyFailure('minimum attained exactly at V_1 and V_d', f"indices {argmins}")
    if d >= 5 and not lam < lambda_threshold(params):
        raise PropertyFailure('lambda < -q^(d^2-2d+2)', f"lambda={lam}")
    return lam


def sign_analysis(params: SchemeParams) -> List[SignEntry]:
    """逐个特征空间核对最小特征值论证中的符号与不等式

    偶数 i: P_{i,d} > 0, P_{i,d-2} < 0, 特征值 > 0
    奇数 3 <= i <= d-2: 只有 u=1 项为正，两个中间上界成立，特征值 >= -q^(d^2-2d+2) 且 > lambda
    i = 0: K > 0；i = 1, d: 等于 lambda
    """
    params.require_odd(3)
    d, q = params.d, params.q
    f = optimal_f(params)
    lam = lambda_min(params, check_spectrum=False)
    em = eigenmatrix(params)
    spectrum = pseudo_spectrum(params, f)
    floor_value = lambda_threshold(params)

    entries = []
    for i, value in enumerate(spectrum):
        p_d, p_d2 = em.P[i][d], em.P[i][d - 2]
        checks = {}
        if i == 0:
            checks['K > 0'] = value > 0
        elif i in (1, d):
            checks['equals lambda'] = value == lam
        elif i % 2 == 0:
            checks['P_{i,d} > 0'] = p_d > 0
            checks['P_{i,d-2} < 0'] = p_d2 < 0
            checks['eigenvalue > 0'] = value > 0
        else:
            terms = closed_form_terms(params, i)
            first_bound = params.gauss(d - i, 1) * params.gauss(i, 1) * q ** ((d - 1 - i) ** 2 + (i - 1) * (i - 2))
            exponent = (d - i) ** 2 + i * i - i
            second_bound = Fraction(q ** (exponent + 3), (q * q - 1) ** 2)
            checks['only u=1 summand positive'] = terms[1] > 0 and terms[0] <= 0 and terms[2] <= 0
            checks['P_{i,d-2} <= first bound'] = p_d2 <= first_bound
            checks['first bound <= second bound'] = first_bound <= second_bound
            checks['eigenvalue >= P_{i,d} - f * second bound'] = value >= p_d - f * second_bound
            checks['P_{i,d} - f * second bound >= -q^e - q^(e+3)/(q^2-1)'] = (
                p_d - f * second_bound >= -q ** exponent - Fraction(q ** (exponent + 3), q * q - 1))
            checks['eigenvalue >= -q^(d^2-2d+2)'] = value >= floor_value
            checks['eigenvalue > lambda'] = value > lam
        for name, ok in checks.items():
            if not ok:
                raise PropertyFailure(name, f"value={value}, P_id={p_d}, P_i,d-2={p_d2}", index=i)
        entries.append(SignEntry(index=i, value=value, p_d=p_d, p_d2=p_d2, checks=checks))
    return entries


# =============================================================================
# 比值界与闭式上界
# =============================================================================

def closed_form_bound(params: SchemeParams) -> int:
    """((q^2+q+1) q^(2d-3) + 1) * prod_{1<=i<=d-1, 2i != d+-1} (q^(2i-1) + 1)"""
    params.require_odd(3)
    d, q = params.d, params.q
    value = (q * q + q + 1) * q ** (2 * d - 3) + 1
    for i in range(1, d):
        if 2 * i in (d - 1, d + 1):
            continue
        value *= q ** (2 * i - 1) + 1
    return value


def _ratio(lam: Fraction, K: Fraction, N: int) -> Fraction:
    return -lam * N / (K - lam)


def ratio_bound(params: SchemeParams) -> Fraction:
    """-lambda N / (K - lambda)，并断言等于闭式上界"""
    params.require_odd(3)
    f = optimal_f(params)
    lam = lambda_min(params, check_spectrum=False)
    K = row_sum_K(params, f)
    bound = _ratio(lam, K, generator_count(params))
    closed = closed_form_bound(params)
    if bound != closed:
        raise PropertyFailure('ratio bound equals closed form', f"{bound} != {closed}")
    return bound


def verify_ratio_identity_chain(params: SchemeParams) -> ChainReport:
    """把比值界化简为闭式的每一步等式在 (d, q) 处精确求值"""
    params.require_odd(3)
    d, q = params.d, params.q
    G = params.gauss(d, 2)
    f1, f2 = f_parts(params)
    f = Fraction(f1, f2)
    lam = -q ** (d * (d - 1)) + f * G * q ** ((d - 2) * (d - 3))
    K = row_sum_K(params, f)
    target = -lam / (K - lam)
    c = q ** (d - 1) - 1
    g = (q ** 4 - 1) * q ** (2 * d - 5) - (q ** (2 * d - 4) - 1) + (q ** (2 * d) - 1) * q ** (d - 3)

    links = [
        ChainLink('f_2 (q^2d - 1) = [d,2] g', Fraction(f2 * (q ** (2 * d) - 1)), Fraction(G * g)),
        ChainLink('-lambda/(K-lambda) in terms of f_2', target, Fraction(
            q ** (d * (d - 1)) * f2 - f1 * G * q ** ((d - 2) * (d - 3)),
            (q ** (d * d) + q ** (d * (d - 1))) * f2 - f1 * G * (q ** ((d - 2) ** 2) + q ** ((d - 2) * (d - 3))),
        )),
        ChainLink('cancel q^(d^2-d-2)', target, Fraction(
            q ** 2 * f2 - c * G,
            q ** 2 * (q ** d + 1) * f2 - c * G * (q ** (d - 2) + 1),
        )),
        ChainLink('substitute g', target, Fraction(
            q ** 2 * g - c * (q ** (2 * d) - 1),
            q ** 2 * (q ** d + 1) * g - c * (q ** (2 * d) - 1) * (q ** (d - 2) + 1),
        )),
    ]
    scaled = target * (q ** d + 1)
    denominator = q ** 2 * g - c * (q ** d - 1) * (q ** (d - 2) + 1)
    links += [
        ChainLink('multiply by q^d + 1', scaled, Fraction(q ** 2 * g - c * (q ** (2 * d) - 1), denominator)),
        ChainLink('split off 1', scaled, 1 + Fraction(c * (q ** d - 1) * q ** (d - 2) * (1 - q ** 2), denominator)),
        ChainLink('factor denominator', Fraction(denominator),
                  Fraction((q ** 2 - 1) * (q ** (2 * d - 1) + 1) * (q ** (d - 2) + 1))),
        ChainLink('cancel q^2 - 1', scaled,
                  1 - Fraction(c * (q ** d - 1) * q ** (d - 2), (q ** (2 * d - 1) + 1) * (q ** (d - 2) + 1))),
        ChainLink('single fraction', scaled,
                  Fraction((q * q + q + 1) * q ** (2 * d - 3) + 1, (q ** (2 * d - 1) + 1) * (q ** (d - 2) + 1))),
        ChainLink('times N / (q^d + 1)', target * generator_count(params), Fraction(closed_form_bound(params))),
    ]
    # (q^d - 1) 版本的分子并不成立，只记录结果
    variant = Fraction(q ** 2 * g - c * (q ** d - 1), denominator)
    report = ChainReport(params=params, links=tuple(links), short_numerator_variant_holds=(variant == scaled))
    if not report.ok:
        logger.error("%s: identity chain broken at '%s'", params, report.first_failure.name)
    return report


# =============================================================================
# 通用比值界与 f 扫描
# =============================================================================

def generic_ratio_bound(params: SchemeParams, w: WeightVector) -> BoundReport:
    """对 A = sum_j c_j A_j 应用比值界，对所有 EKR 集（对立图的独立集）成立"""
    if w.d != params.d:
        raise ParameterDomainError(f"weight vector has {w.d} entries, expected d={params.d}")
    em = eigenmatrix(params)
    spectrum = tuple(sum((w.c(j) * row[j] for j in range(1, params.d + 1)), Fraction(0)) for row in em.P)
    K = spectrum[0]
    lam = min(spectrum)
    if lam >= 0:
        raise ParameterDomainError(f"smallest eigenvalue {lam} >= 0: no bound derivable")
    if K <= lam:
        raise ParameterDomainError(f"row sum K={K} not above smallest eigenvalue {lam}")
    return BoundReport(
        params=params,
        weights=w.coeffs,
        spectrum=spectrum,
        K=K,
        lambda_=lam,
        ratio_bound=_ratio(lam, K, em.N),
        N=em.N,
        pencil_size=pencil_size(params),
    )


def pure_hoffman_bound(params: SchemeParams) -> Fraction:
    """只用 A_d 的 Hoffman 界"""
    return generic_ratio_bound(params, WeightVector.from_mapping(params.d, {params.d: 1})).ratio_bound


def bound_report(params: SchemeParams) -> BoundReport:
    """汇总 f, K, lambda, 谱, 比值界与闭式上界"""
    params.require_odd(3)
    d = params.d
    f = optimal_f(params)
    f1, f2 = f_parts(params)
    lam = lambda_min(params, check_spectrum=True)
    K = row_sum_K(params, f)
    spectrum = tuple(pseudo_spectrum(params, f))
    if spectrum[0] != K:
        raise PropertyFailure('K equals eigenvalue on V_0', f"{spectrum[0]} != {K}")
    if K <= 0:
        raise PropertyFailure('K > 0', f"K = {K}")
    N = generator_count(params)
    ratio = _ratio(lam, K, N)
    closed = closed_form_bound(params)
    weights = [Fraction(0)] * d
    weights[d - 1] = Fraction(1)
    weights[d - 3] = -f
    return BoundReport(
        params=params,
        weights=tuple(weights),
        spectrum=spectrum,
        K=K,
        lambda_=lam,
        ratio_bound=ratio,
        N=N,
        pencil_size=pencil_size(params),
        f=f,
        f_numerator=f1,
        f_denominator=f2,
        closed_form_bound=closed,
        bounds_match=(ratio == closed),
        lambda_threshold_holds=lam < lambda_threshold(params),
        pure_hoffman_bound=pure_hoffman_bound(params),
    )


def f_sweep(params: SchemeParams, grid_size: int, include_optimal: bool = False) -> SweepReport:
    """在 [0, q^2-1] 上均匀取 grid_size 个有理点，比较最小特征值"""
    params.require_odd(3)
    if grid_size < 2:
        raise ParameterDomainError(f"grid size must be >= 2 (got {grid_size})")
    em = eigenmatrix(params)
    d = params.d
    top = params.q ** 2 - 1

    def min_eigenvalue(f: Fraction) -> Fraction:
        return min(row[d] - f * row[d - 2] for row in em.P)

    grid: Sequence[Fraction] = [Fraction(top * s, grid_size - 1) for s in range(grid_size)]
    f_opt = optimal_f(params)
    if include_optimal and f_opt not in grid:
        grid = sorted(list(grid) + [f_opt])
    samples = tuple((f, min_eigenvalue(f)) for f in grid)
    report = SweepReport(params=params, optimal_f=f_opt, optimal_min=min_eigenvalue(f_opt), samples=samples)
    if not report.optimal_wins:
        best_f, best_value = report.best_sample
        logger.warning("%s: grid point f=%s beats optimal f (%s > %s)",
                       params, best_f, best_value, report.optimal_min)
    return report
