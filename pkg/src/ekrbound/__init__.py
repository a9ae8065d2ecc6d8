# ekrbound/__init__.py
"""
ekrbound - H(2d-1,q^2) 生成元 EKR 集的精确谱界与 LP 界
"""
try:
    from ekrbound._version import __version__
except ImportError:
    # 未经 setuptools_scm 安装时没有 _version.py
    __version__ = "0.0.0"

from .errors import EKRBoundError, ParameterDomainError, PropertyFailure, ResourceGuardError
from .exactnum import gaussian_binomial, verify_polynomial_identity
from .scheme import SchemeParams, closed_form_column, dual_eigenmatrix, eigenmatrix, intersection_array, valencies
from .hoffman import (
    WeightVector,
    bound_report,
    closed_form_bound,
    f_sweep,
    generic_ratio_bound,
    lambda_min,
    optimal_f,
    pseudo_spectrum,
    ratio_bound,
    row_sum_K,
    sign_analysis,
    verify_ratio_identity_chain,
)
from .lp import build_lp, lp_vs_ratio, solve_exact
from .equality import intersection_distribution, solve_coeffs

__all__ = [
    'EKRBoundError', 'ParameterDomainError', 'PropertyFailure', 'ResourceGuardError',
    'gaussian_binomial', 'verify_polynomial_identity',
    'SchemeParams', 'closed_form_column', 'dual_eigenmatrix', 'eigenmatrix', 'intersection_array', 'valencies',
    'WeightVector', 'bound_report', 'closed_form_bound', 'f_sweep', 'generic_ratio_bound', 'lambda_min',
    'optimal_f', 'pseudo_spectrum', 'ratio_bound', 'row_sum_K', 'sign_analysis', 'verify_ratio_identity_chain',
    'build_lp', 'lp_vs_ratio', 'solve_exact',
    'intersection_distribution', 'solve_coeffs',
]
