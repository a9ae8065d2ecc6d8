# -*- coding: utf-8 -*-
"""
参数网格上的精确恒等式自检（`ekrb verify`）

每组 (d, q) 独立运行全部检查；单点失败只记录在结果里，不影响其余参数。
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from .errors import EKRBoundError
from .hoffman import (
    closed_form_bound,
    f_forms,
    lambda_min,
    lambda_threshold,
    optimal_f,
    pseudo_spectrum,
    pure_hoffman_bound,
    ratio_bound,
    row_sum_K,
    sign_analysis,
    verify_ratio_identity_chain,
)
from .scheme import (
    SchemeParams,
    closed_form_column,
    dual_eigenmatrix,
    eigenmatrix,
    eigenvalue_closed_form,
    pencil_size,
    valencies,
)

logger = logging.getLogger(__name__)

DEFAULT_D = tuple(range(3, 26, 2))
DEFAULT_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)

T = TypeVar('T')
R = TypeVar('R')


def parameter_grid(ds: Iterable[int], qs: Iterable[int]) -> List[SchemeParams]:
    qs = list(qs)
    return [SchemeParams(d, q) for d in ds for q in qs]


def map_grid(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1, desc: str = '') -> List[R]:
    """jobs > 1 时用进程池；结果总是保持输入顺序"""
    items = list(items)
    if jobs > 1 and len(items) > 1:
        return process_map(fn, items, max_workers=jobs, chunksize=1, desc=desc, leave=False)
    return [fn(x) for x in tqdm(items, desc=desc, leave=False, disable=None)]


@dataclass(frozen=True)
class SuiteResult:
    params: SchemeParams
    checks: Dict[str, bool] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(self.checks.values())

    @property
    def first_failure(self) -> Optional[str]:
        if self.error is not None:
            return self.error
        return next((name for name, ok in self.checks.items() if not ok), None)


def _run_checks(params: SchemeParams, checks: Dict[str, bool]) -> None:
    d, q = params.d, params.q
    em = eigenmatrix(params)
    checks['theta closed form'] = list(em.theta) == [eigenvalue_closed_form(params, i) for i in range(d + 1)]
    checks['row 0 = valencies'] = list(em.P[0]) == valencies(params)
    checks['column d closed form'] = em.column(d) == closed_form_column(params, d)
    checks['column d-2 closed form'] = em.column(d - 2) == closed_form_column(params, d - 2)
    dual_eigenmatrix(em)
    checks['P Q = N I'] = True

    forms = f_forms(params)
    f = optimal_f(params)
    checks['f forms agree'] = len(set(forms)) == 1
    checks['0 < f < q^2 - 1'] = 0 < f < q * q - 1

    spectrum = pseudo_spectrum(params, f)
    lam = lambda_min(params)
    K = row_sum_K(params, f)
    checks['K = spectrum[0] > 0'] = spectrum[0] == K and K > 0
    checks['spectrum[1] = spectrum[d] = lambda'] = spectrum[1] == spectrum[d] == lam
    checks['minimum attained only at 1 and d'] = [i for i, v in enumerate(spectrum) if v == lam] == [1, d]
    below = lam < lambda_threshold(params)
    if d >= 5:
        checks['lambda < -q^(d^2-2d+2)'] = below
    else:
        checks['d = 3 threshold exception'] = not below
    sign_analysis(params)
    checks['sign analysis'] = True

    checks['identity chain'] = verify_ratio_identity_chain(params).ok
    closed = closed_form_bound(params)
    checks['ratio bound = closed form'] = ratio_bound(params) == closed
    checks['weighted bound <= pure Hoffman'] = closed <= pure_hoffman_bound(params)
    checks['pencil <= closed form'] = pencil_size(params) <= closed


def check_params(params: SchemeParams) -> SuiteResult:
    checks: Dict[str, bool] = {}
    error = None
    try:
        _run_checks(params, checks)
    except EKRBoundError as e:
        error = str(e)
    result = SuiteResult(params=params, checks=checks, error=error)
    if not result.ok:
        logger.error("%s: %s", params, result.first_failure)
    return result


def run_identity_suite(grid: Sequence[SchemeParams], jobs: int = 1) -> List[SuiteResult]:
    results = map_grid(check_params, grid, jobs=jobs, desc='verify')
    failed = sum(not r.ok for r in results)
    logger.info("identity suite: %d parameter sets, %d failed", len(results), failed)
    return results
