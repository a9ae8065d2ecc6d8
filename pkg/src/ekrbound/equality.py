# -*- coding: utf-8 -*-
"""
等号情形排除

假设 |S| 恰好等于闭式上界，则 S 的特征向量 chi = (|S|/N) j + v_1 + v_d。
由 A_d chi 在 S 上为零以及 1 = |S|/N + a_1 + a_d 解出 a_1, a_d，
再得到 S 内元素与给定元素以余维 i 相交的个数 n_i。出现非整数或负数即矛盾。
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .errors import PropertyFailure
from .hoffman import closed_form_bound
from .scheme import SchemeParams, eigenmatrix

logger = logging.getLogger(__name__)

CONTRADICTION = 'contradiction-found'
NO_CONTRADICTION = 'no-contradiction'


@dataclass(frozen=True)
class EqualityReport:
    params: SchemeParams
    size: int
    a1: Fraction
    ad: Fraction
    n: Tuple[Fraction, ...]

    @property
    def integral_flags(self) -> List[bool]:
        return [x.denominator == 1 for x in self.n]

    @property
    def witnesses(self) -> List[int]:
        """n_i 非整数或为负的下标"""
        return [i for i, x in enumerate(self.n) if x.denominator != 1 or x < 0]

    @property
    def verdict(self) -> str:
        return CONTRADICTION if self.witnesses else NO_CONTRADICTION


def solve_coeffs(params: SchemeParams, size: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """解 2x2 线性方程组
        (size/N) k_d + a1 P_{1,d} + ad P_{d,d} = 0
        size/N + a1 + ad = 1
    """
    params.require_odd(3)
    size = closed_form_bound(params) if size is None else size
    em = eigenmatrix(params)
    d = params.d
    s = Fraction(size, em.N)
    p1, pd = em.P[1][d], em.P[d][d]
    det = pd - p1
    if det == 0:
        raise PropertyFailure('equations linearly independent', f"P_1d = P_dd = {p1}")
    # a1 + ad = 1 - s; p1 a1 + pd ad = -s k_d
    rest = 1 - s
    rhs = -s * em.k[d]
    ad = (rhs - p1 * rest) / det
    a1 = rest - ad
    if s * em.k[d] + a1 * p1 + ad * pd != 0 or s + a1 + ad != 1:
        raise PropertyFailure('coefficient solution satisfies both equations')
    return a1, ad


def intersection_distribution(params: SchemeParams, size: Optional[int] = None) -> EqualityReport:
    """n_i = (size/N) k_i + a1 P_{1,i} + ad P_{d,i}，i = 0..d"""
    size = closed_form_bound(params) if size is None else size
    a1, ad = solve_coeffs(params, size)
    em = eigenmatrix(params)
    d = params.d
    s = Fraction(size, em.N)
    n = tuple(s * em.k[i] + a1 * em.P[1][i] + ad * em.P[d][i] for i in range(d + 1))
    if n[0] != 1:
        raise PropertyFailure('n_0 = 1', f"n_0 = {n[0]}", index=0)
    if n[d] != 0:
        raise PropertyFailure('n_d = 0', f"n_d = {n[d]}", index=d)
    if sum(n) != size:
        raise PropertyFailure('sum n_i = |S|', f"{sum(n)} != {size}")
    report = EqualityReport(params=params, size=size, a1=a1, ad=ad, n=n)
    logger.info("%s: size=%s verdict=%s witnesses=%s", params, size, report.verdict, report.witnesses)
    return report


def equality_sweep(grid: Iterable[SchemeParams]) -> List[EqualityReport]:
    return [intersection_distribution(p) for p in grid]
