# -*- coding: utf-8 -*-
"""
精确整数/有理数运算层

整数直接用 Python int（任意精度），有理数用 fractions.Fraction（总是最简、分母为正）。
全部计算不经过浮点数。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Union

from .errors import ParameterDomainError

Number = Union[int, Fraction]


def q_power(q: int, e: int) -> int:
    """q^e，e 必须非负"""
    if e < 0:
        raise ParameterDomainError(f"negative exponent {e} for q={q}")
    return q ** e


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, b: int) -> int:
    """Gaussian binomial [n choose k]_b = prod_{i=1..k} (b^(n-k+i) - 1) / (b^i - 1)

    k > n 时返回 0；k = 0 时为空积 1。
    """
    if n < 0 or k < 0:
        raise ParameterDomainError(f"gaussian_binomial needs n, k >= 0 (got n={n}, k={k})")
    if b < 2:
        raise ParameterDomainError(f"gaussian_binomial base must be >= 2 (got {b})")
    if k > n:
        return 0
    k = min(k, n - k)
    num = 1
    den = 1
    for i in range(1, k + 1):
        num *= b ** (n - k + i) - 1
        den *= b ** i - 1
    # 乘积总能整除
    value, rest = divmod(num, den)
    assert rest == 0
    return value


def as_fraction_str(x: Number) -> str:
    """精确值的文本形式 'num/den'（整数也写成 'n/1'）"""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction_str(s: str) -> Fraction:
    """as_fraction_str 的逆运算，也接受纯整数字符串"""
    s = s.strip()
    if '/' in s:
        num, den = s.split('/', 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def is_integral(x: Number) -> bool:
    return Fraction(x).denominator == 1


@dataclass(frozen=True)
class PointResult:
    point: Fraction
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityCheck:
    """多点精确求值的结果，bool(check) 即恒等式是否在所有点成立"""
    points: List[PointResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.points) and all(p.ok for p in self.points)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failures(self) -> List[PointResult]:
        return [p for p in self.points if not p.ok]


def verify_polynomial_identity(lhs: Callable[[Fraction], Number],
                               rhs: Callable[[Fraction], Number],
                               points: Sequence[Number]) -> IdentityCheck:
    """在给定点上精确比较 lhs 与 rhs

    若两边都是次数 <= len(points)-1 的多项式且点互不相同，全部相等即证明恒等式。
    某点除零时记录在该点结果里，不会被吞掉，也不会中断其余点。
    """
    results = []
    for p in points:
        p = Fraction(p)
        try:
            left = Fraction(lhs(p))
            right = Fraction(rhs(p))
        except ZeroDivisionError as e:
            results.append(PointResult(point=p, error=f"division by zero: {e}"))
            continue
        results.append(PointResult(point=p, lhs=left, rhs=right))
    return IdentityCheck(points=results)
