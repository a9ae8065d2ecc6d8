# -*- coding: utf-8 -*-
"""
ekrbound 异常定义

每个异常类带有 exit_code，CLI 直接据此返回退出码:
  1 = 数学性质不成立 (PropertyFailure)
  2 = 参数/用法错误 (ParameterDomainError)
  3 = 资源保护拒绝 (ResourceGuardError)
"""
from typing import Optional


class EKRBoundError(Exception):
    """ekrbound 所有异常的基类"""
    exit_code = 1


class ParameterDomainError(EKRBoundError, ValueError):
    """参数不在运算定义域内，例如偶数 d"""
    exit_code = 2


class PropertyFailure(EKRBoundError, ArithmeticError):
    """某个恒等式/不等式在精确计算下不成立

    invariant: 被违反的性质名称
    index: 出错的下标（特征空间编号、矩阵条目等），可选
    """
    exit_code = 1

    def __init__(self, invariant: str, detail: str = '', index: Optional[object] = None):
        self.invariant = invariant
        self.detail = detail
        self.index = index
        msg = invariant
        if index is not None:
            msg += f" [index={index}]"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ResourceGuardError(EKRBoundError, RuntimeError):
    """显式构造的规模超过资源保护上限"""
    exit_code = 3
