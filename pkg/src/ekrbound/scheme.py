# -*- coding: utf-8 -*-
"""
H(2d-1, q^2) 生成元上的结合方案 (dual polar graph)

- 交叉数组 (intersection array) b_i, c_i, a_i
- 价 (valency) k_j
- 完整特征矩阵 P：由距离正则图的三项递推独立合成，并与两列闭式公式 (j=d, j=d-2) 互相校验
- 重数 m_i 与对偶特征矩阵 Q

所有高斯二项式的底数都是 q^2。
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import ParameterDomainError, PropertyFailure
from .exactnum import gaussian_binomial, q_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchemeParams:
    """(d, q) 确定极空间 H(2d-1, q^2)"""
    d: int
    q: int

    def __post_init__(self):
        if not isinstance(self.d, int) or not isinstance(self.q, int):
            raise ParameterDomainError(f"d and q must be integers (got d={self.d!r}, q={self.q!r})")
        if self.d < 1:
            raise ParameterDomainError(f"d must be >= 1 (got {self.d})")
        if self.q < 2:
            raise ParameterDomainError(f"q must be >= 2 (got {self.q})")

    @property
    def base(self) -> int:
        """高斯二项式的底数 q^2"""
        return self.q * self.q

    def gauss(self, n: int, k: int) -> int:
        return gaussian_binomial(n, k, self.base)

    def require_odd(self, minimum: int = 3) -> None:
        if self.d % 2 == 0:
            raise ParameterDomainError(f"d must be odd (got d={self.d})")
        if self.d < minimum:
            raise ParameterDomainError(f"d must be >= {minimum} (got d={self.d})")

    def __str__(self):
        return f"H({2 * self.d - 1},{self.q}^2)"


@dataclass(frozen=True)
class IntersectionArray:
    """b = (b_0..b_{d-1}), c = (c_1..c_d), a = (a_0..a_d)"""
    b: Tuple[int, ...]
    c: Tuple[int, ...]
    a: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def valency(self) -> int:
        return self.b[0]

    def b_at(self, i: int) -> int:
        return self.b[i] if 0 <= i < self.d else 0

    def c_at(self, i: int) -> int:
        return self.c[i - 1] if 1 <= i <= self.d else 0


@dataclass(frozen=True)
class Eigenmatrix:
    """P[i][j] = A_j 在 V_i 上的特征值；行按 theta 严格递减排列"""
    params: SchemeParams
    P: Tuple[Tuple[int, ...], ...]
    theta: Tuple[int, ...]
    k: Tuple[int, ...]
    m: Tuple[Fraction, ...]
    N: int
    row_permutation: Tuple[int, ...] = field(default=())

    @property
    def d(self) -> int:
        return self.params.d

    def column(self, j: int) -> List[int]:
        return [row[j] for row in self.P]


def generator_count(params: SchemeParams) -> int:
    """N = prod_{i=1..d} (q^(2i-1) + 1)"""
    n = 1
    for i in range(1, params.d + 1):
        n *= params.q ** (2 * i - 1) + 1
    return n


def pencil_size(params: SchemeParams) -> int:
    """过一个迷向点的生成元个数 prod_{i=1..d-1} (q^(2i-1) + 1)"""
    n = 1
    for i in range(1, params.d):
        n *= params.q ** (2 * i - 1) + 1
    return n


def intersection_array(params: SchemeParams) -> IntersectionArray:
    """Hermitian dual polar graph:
    c_i = (q^(2i) - 1)/(q^2 - 1), b_i = q^(2i+1) (q^(2(d-i)) - 1)/(q^2 - 1)
    """
    d, q = params.d, params.q
    b = tuple(q ** (2 * i + 1) * params.gauss(d - i, 1) for i in range(d))
    c = tuple(params.gauss(i, 1) for i in range(1, d + 1))
    b0 = b[0]
    a = []
    for i in range(d + 1):
        bi = b[i] if i < d else 0
        ci = c[i - 1] if i >= 1 else 0
        a.append(b0 - bi - ci)
    ia = IntersectionArray(b=b, c=c, a=tuple(a))
    if ia.c_at(1) != 1 or any(x < 0 for x in ia.a):
        raise PropertyFailure('intersection array entries', f"{ia}")
    return ia


def valencies(params: SchemeParams) -> List[int]:
    """k_j = [d choose j] q^(j^2)"""
    return [params.gauss(params.d, j) * params.q ** (j * j) for j in range(params.d + 1)]


# =============================================================================
# 整数特征值提取（Sturm 序列二分 + 综合除法）
# =============================================================================

def _count_above_half(ia: IntersectionArray, m: int) -> int:
    """三对角交叉矩阵在 x = m + 1/2 之上的特征值个数

    前主子式 f_k(x) = det(T_k - xI) 组成 Sturm 序列，相邻同号的次数即大于 x 的特征值个数。
    乘以 2^k 后全部为整数；整系数首一多项式的有理根必为整数，所以半整数点上 f_k 不为零。
    """
    t = 2 * m + 1
    g_prev, g = 1, 2 * ia.a[0] - t
    agreements = 1 if g > 0 else 0
    for k in range(2, ia.d + 2):
        g_prev, g = g, (2 * ia.a[k - 1] - t) * g - 4 * ia.b_at(k - 2) * ia.c_at(k - 1) * g_prev
        if (g > 0) == (g_prev > 0):
            agreements += 1
    return agreements


def _char_value(ia: IntersectionArray, x: int) -> int:
    """det(T - xI) 在整数点的精确值"""
    f_prev, f = 1, ia.a[0] - x
    for k in range(2, ia.d + 2):
        f_prev, f = f, (ia.a[k - 1] - x) * f - ia.b_at(k - 2) * ia.c_at(k - 1) * f_prev
    return f


def characteristic_polynomial(ia: IntersectionArray) -> List[int]:
    """det(xI - T) 的系数，低次在前"""
    def sub(p, r):
        n = max(len(p), len(r))
        return [(p[i] if i < len(p) else 0) - (r[i] if i < len(r) else 0) for i in range(n)]

    prev = [1]
    cur = [-ia.a[0], 1]
    for k in range(2, ia.d + 2):
        shifted = [0] + cur
        scaled = [ia.a[k - 1] * x for x in cur]
        w = ia.b_at(k - 2) * ia.c_at(k - 1)
        prev, cur = cur, sub(sub(shifted, scaled), [w * x for x in prev])
    return cur


def synthetic_division(coeffs: Sequence[int], root: int) -> Tuple[List[int], int]:
    """coeffs 低次在前；返回 (商, 余数)"""
    high = list(reversed(coeffs))
    out = [high[0]]
    for c in high[1:]:
        out.append(c + root * out[-1])
    remainder = out.pop()
    return list(reversed(out)), remainder


def integer_eigenvalues(ia: IntersectionArray) -> List[int]:
    """三对角交叉矩阵的 d+1 个整数特征值，严格递减

    非整数或重复特征值会直接抛出 PropertyFailure。
    """
    n = ia.d + 1
    bound = ia.valency
    found = []
    # (lo, hi, #eig > lo - 1/2, #eig > hi + 1/2)
    stack = [(-bound, bound, _count_above_half(ia, -bound - 1), _count_above_half(ia, bound))]
    while stack:
        lo, hi, above_lo, above_hi = stack.pop()
        count = above_lo - above_hi
        if count == 0:
            continue
        if lo == hi:
            if count > 1:
                raise PropertyFailure('simple eigenvalues', f"eigenvalue {lo} repeated {count} times")
            if _char_value(ia, lo) != 0:
                raise PropertyFailure('integral eigenvalues', f"non-integral eigenvalue near {lo}")
            found.append(lo)
            continue
        mid = (lo + hi) // 2
        above_mid = _count_above_half(ia, mid)
        stack.append((lo, mid, above_lo, above_mid))
        stack.append((mid + 1, hi, above_mid, above_hi))
    if len(found) != n:
        raise PropertyFailure('eigenvalue count', f"found {len(found)} eigenvalues, expected {n}")
    found.sort(reverse=True)

    # 逐个综合除法约化特征多项式，最后必须剩常数 1
    poly = characteristic_polynomial(ia)
    for theta in found:
        poly, remainder = synthetic_division(poly, theta)
        if remainder != 0:
            raise PropertyFailure('characteristic root', f"theta={theta} leaves remainder {remainder}")
    if poly != [1]:
        raise PropertyFailure('characteristic deflation', f"quotient {poly} after removing all roots")
    return found


def eigenvalue_closed_form(params: SchemeParams, i: int) -> int:
    """theta_i = q [d-i] - [i]（底数 q^2）"""
    return params.q * params.gauss(params.d - i, 1) - params.gauss(i, 1)


# =============================================================================
# 特征矩阵
# =============================================================================

def _recurrence_values(ia: IntersectionArray, x: int) -> List[int]:
    """v_0(x), ..., v_d(x)，c_{j+1} v_{j+1} = (x - a_j) v_j - b_{j-1} v_{j-1}"""
    values = [Fraction(1), Fraction(x)]
    for j in range(1, ia.d):
        nxt = ((x - ia.a[j]) * values[j] - ia.b_at(j - 1) * values[j - 1]) / ia.c_at(j + 1)
        values.append(nxt)
    values = values[:ia.d + 1]
    for j, v in enumerate(values):
        if v.denominator != 1:
            raise PropertyFailure('integral eigenmatrix', f"v_{j}({x}) = {v}")
    return [int(v) for v in values]


def closed_form_entry(params: SchemeParams, i: int, j: int) -> int:
    """P_{i,d} 与 P_{i,d-2} 的闭式公式"""
    d, q = params.d, params.q
    if j == d:
        return (-1) ** i * q ** ((d - i) ** 2 + i * (i - 1))
    if j == d - 2 and d >= 2:
        return sum(closed_form_terms(params, i))
    raise ParameterDomainError(f"closed form only exists for j = d or j = d-2 (got j={j}, d={d})")


def closed_form_terms(params: SchemeParams, i: int) -> List[int]:
    """P_{i,d-2} 求和式中 u = 0, 1, 2 三项；高斯二项式越界的项为 0"""
    d, q = params.d, params.q
    terms = []
    for u in range(3):
        coeff = params.gauss(d - i, 2 - u) * params.gauss(i, u)
        if coeff == 0:
            terms.append(0)
            continue
        exponent = (d - 2 + u - i) ** 2 + (i - u) * (i - u - 1)
        terms.append((-1) ** (i + u) * coeff * q_power(q, exponent))
    return terms


def closed_form_column(params: SchemeParams, j: int) -> List[int]:
    if j != params.d and not (j == params.d - 2 and params.d >= 2):
        raise ParameterDomainError(f"closed form only exists for j = d or j = d-2 (got j={j}, d={params.d})")
    return [closed_form_entry(params, i, j) for i in range(params.d + 1)]


@lru_cache(maxsize=256)
def eigenmatrix(params: SchemeParams) -> Eigenmatrix:
    """由交叉数组的三项递推合成完整 P，并检查所有不变量"""
    d = params.d
    ia = intersection_array(params)
    theta = integer_eigenvalues(ia)
    rows = [_recurrence_values(ia, t) for t in theta]
    k = valencies(params)
    N = generator_count(params)

    if rows[0] != k:
        raise PropertyFailure('row 0 equals valencies', f"{rows[0]} != {k}")
    if sum(k) != N:
        raise PropertyFailure('valencies sum to N', f"{sum(k)} != {N}")

    # 行顺序约定：theta 递减；若 j=d 列与闭式不符，按闭式重排并记录置换
    expected = closed_form_column(params, d)
    permutation = list(range(d + 1))
    if [r[d] for r in rows] != expected:
        by_value = {}
        for idx, r in enumerate(rows):
            by_value.setdefault(r[d], []).append(idx)
        if sorted(by_value) != sorted(expected) or any(len(v) > 1 for v in by_value.values()):
            raise PropertyFailure('column d matches closed form', f"{[r[d] for r in rows]} vs {expected}")
        permutation = [by_value[v][0] for v in expected]
        rows = [rows[p] for p in permutation]
        theta = [theta[p] for p in permutation]
        logger.warning("%s: rows permuted to match column d closed form: %s", params, permutation)

    # sum_j P_ij P_i'j / k_j，统一乘以 lcm(k) 后全用整数运算
    lcm_k = math.lcm(*k)
    weights = [lcm_k // kj for kj in k]

    def weighted(r, s):
        return sum(r[j] * s[j] * weights[j] for j in range(d + 1))

    m = [Fraction(N * lcm_k, weighted(r, r)) for r in rows]
    for i in range(d + 1):
        for i2 in range(i + 1, d + 1):
            inner = weighted(rows[i], rows[i2])
            if inner != 0:
                raise PropertyFailure('row orthogonality', f"<{i},{i2}> = {Fraction(inner, lcm_k)}",
                                      index=(i, i2))
    if m[0] != 1:
        raise PropertyFailure('m_0 = 1', f"m_0 = {m[0]}")
    for i, mi in enumerate(m):
        if mi <= 0:
            raise PropertyFailure('positive multiplicities', f"m_{i} = {mi}", index=i)
        if mi.denominator != 1:
            raise PropertyFailure('integral multiplicities', f"m_{i} = {mi}", index=i)
    if sum(m) != N:
        raise PropertyFailure('multiplicities sum to N', f"{sum(m)} != {N}")

    if d >= 2:
        col = [r[d - 2] for r in rows]
        if col != closed_form_column(params, d - 2):
            raise PropertyFailure('column d-2 matches closed form', f"{col}")

    logger.debug("%s: theta=%s", params, theta)
    return Eigenmatrix(
        params=params,
        P=tuple(tuple(r) for r in rows),
        theta=tuple(theta),
        k=tuple(k),
        m=tuple(m),
        N=N,
        row_permutation=tuple(permutation),
    )


def dual_eigenmatrix(em: Eigenmatrix) -> Tuple[Tuple[Fraction, ...], ...]:
    """Q[j][i] = m_i P[i][j] / k_j，满足 P Q = N I"""
    n = em.d + 1
    Q = tuple(
        tuple(em.m[i] * em.P[i][j] / em.k[j] for i in range(n))
        for j in range(n)
    )
    for r in range(n):
        for s in range(n):
            entry = sum(em.P[r][t] * Q[t][s] for t in range(n))
            if entry != (em.N if r == s else 0):
                raise PropertyFailure('P Q = N I', f"entry ({r},{s}) = {entry}", index=(r, s))
    return Q


def eigenmatrix_to_text(em: Eigenmatrix) -> str:
    """结构化文本输出，所有数值为精确十进制字符串"""
    lines = [
        f"# eigenmatrix {em.params} d={em.d} q={em.params.q}",
        f"N {em.N}",
        "theta " + " ".join(str(t) for t in em.theta),
        "k " + " ".join(str(x) for x in em.k),
        "m " + " ".join(f"{x.numerator}/{x.denominator}" for x in em.m),
    ]
    for i, row in enumerate(em.P):
        lines.append(f"P[{i}] " + " ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
