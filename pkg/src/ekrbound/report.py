# -*- coding: utf-8 -*-
"""
报告输出：rich 表格、JSON-lines 记录、pandas CSV

记录 (record) 中的精确值一律写成 "num/den" 字符串；浮点近似值只出现在以 _approx 结尾的字段。
"""
import json
import re
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd
from rich.table import Table

from .equality import EqualityReport
from .exactnum import as_fraction_str, parse_fraction_str
from .hoffman import BoundReport, SweepReport
from .lp import LPComparison
from .oracle import OracleReport
from .scheme import Eigenmatrix
from .verify import SuiteResult

BOUND_CSV_COLUMNS = [
    'd', 'q', 'f_num', 'f_den', 'K_num', 'K_den', 'lambda_num', 'lambda_den',
    'ratio_bound', 'closed_form_bound', 'match',
]

_FRACTION_RE = re.compile(r'^-?\d+/\d+$')


def _x(value) -> str:
    return as_fraction_str(value)


def _approx(value) -> Optional[float]:
    """浮点近似；超出 float 范围时为 None (JSON null)"""
    try:
        return float(Fraction(value))
    except OverflowError:
        return None


def _short(value, limit: int = 24) -> str:
    """终端显示用：过长的精确值截断中间部分"""
    text = str(value)
    if len(text) <= limit:
        return text
    return f"{text[:10]}…{text[-10:]} ({len(text)} chars)"


# =============================================================================
# JSON-lines 记录
# =============================================================================

def bound_record(rep: BoundReport) -> Dict[str, Any]:
    record = {
        'kind': 'bound',
        'd': rep.params.d,
        'q': rep.params.q,
        'N': _x(rep.N),
        'weights': [_x(c) for c in rep.weights],
        'spectrum': [_x(v) for v in rep.spectrum],
        'K': _x(rep.K),
        'lambda': _x(rep.lambda_),
        'ratio_bound': _x(rep.ratio_bound),
        'ratio_bound_floor': _x(rep.bound_floor),
        'pencil_size': _x(rep.pencil_size),
        'in_proven_range': rep.in_proven_range,
        'K_approx': _approx(rep.K),
        'lambda_approx': _approx(rep.lambda_),
        'ratio_bound_approx': _approx(rep.ratio_bound),
    }
    if rep.f is not None:
        record.update({
            'f': _x(rep.f),
            'f_numerator': _x(rep.f_numerator),
            'f_denominator': _x(rep.f_denominator),
            'closed_form_bound': _x(rep.closed_form_bound),
            'bounds_match': rep.bounds_match,
            'lambda_threshold_holds': rep.lambda_threshold_holds,
            'pure_hoffman_bound': _x(rep.pure_hoffman_bound),
            'f_approx': _approx(rep.f),
        })
    return record


def eigenmatrix_record(em: Eigenmatrix) -> Dict[str, Any]:
    return {
        'kind': 'eigenmatrix',
        'd': em.d,
        'q': em.params.q,
        'N': _x(em.N),
        'theta': [_x(t) for t in em.theta],
        'k': [_x(v) for v in em.k],
        'm': [_x(v) for v in em.m],
        'P': [[_x(v) for v in row] for row in em.P],
        'row_permutation': list(em.row_permutation),
    }


def lp_record(cmp: LPComparison) -> Dict[str, Any]:
    cert = cmp.certificate
    record = {
        'kind': 'lp',
        'd': cmp.params.d,
        'q': cmp.params.q,
        'status': cert.status,
        'pivots': cert.pivots,
        'ratio_bound': _x(cmp.ratio_bound),
        'pencil_size': _x(cmp.pencil_size),
        'equal': cmp.equal,
    }
    if cert.optimum is not None:
        record.update({
            'optimum': _x(cert.optimum),
            'primal': [_x(v) for v in cert.primal],
            'dual': [_x(v) for v in cert.dual],
            'distribution': [_x(v) for v in cmp.distribution],
            'optimum_approx': _approx(cert.optimum),
        })
    return record


def equality_record(rep: EqualityReport) -> Dict[str, Any]:
    return {
        'kind': 'equality',
        'd': rep.params.d,
        'q': rep.params.q,
        'size': _x(rep.size),
        'a1': _x(rep.a1),
        'ad': _x(rep.ad),
        'n': [_x(v) for v in rep.n],
        'integral_flags': rep.integral_flags,
        'witnesses': rep.witnesses,
        'verdict': rep.verdict,
    }


def sweep_record(rep: SweepReport) -> Dict[str, Any]:
    best_f, best_value = rep.best_sample
    return {
        'kind': 'sweep',
        'd': rep.params.d,
        'q': rep.params.q,
        'optimal_f': _x(rep.optimal_f),
        'optimal_min': _x(rep.optimal_min),
        'best_grid_f': _x(best_f),
        'best_grid_min': _x(best_value),
        'grid_size': len(rep.samples),
        'optimal_wins': rep.optimal_wins,
        'samples': [[_x(f), _x(v)] for f, v in rep.samples],
        'optimal_min_approx': _approx(rep.optimal_min),
    }


def oracle_record(rep: OracleReport) -> Dict[str, Any]:
    return {
        'kind': 'oracle',
        'd': rep.params.d,
        'q': rep.params.q,
        'N': _x(rep.N),
        'isotropic_points': _x(rep.n_points),
        'valencies': [_x(v) for v in rep.valencies],
        'theta': [_x(t) for t in rep.matrices.theta],
        'row_sum': None if rep.matrices.row_sum is None else _x(rep.matrices.row_sum),
        'pencil_size': _x(rep.pencil.size),
        'pencil_ratio_bound': None if rep.pencil.ratio_bound is None else _x(rep.pencil.ratio_bound),
    }


def suite_record(res: SuiteResult) -> Dict[str, Any]:
    return {
        'kind': 'verify',
        'd': res.params.d,
        'q': res.params.q,
        'ok': res.ok,
        'checks': dict(res.checks),
        'error': res.error,
    }


_RECORD_BUILDERS = {
    BoundReport: bound_record,
    Eigenmatrix: eigenmatrix_record,
    LPComparison: lp_record,
    EqualityReport: equality_record,
    SweepReport: sweep_record,
    OracleReport: oracle_record,
    SuiteResult: suite_record,
}


def to_record(obj) -> Dict[str, Any]:
    try:
        builder = _RECORD_BUILDERS[type(obj)]
    except KeyError:
        raise TypeError(f"no record format for {type(obj).__name__}") from None
    return builder(obj)


def to_record_line(obj) -> str:
    return json.dumps(to_record(obj), ensure_ascii=False)


def _restore(value):
    if isinstance(value, str) and _FRACTION_RE.match(value):
        return parse_fraction_str(value)
    if isinstance(value, list):
        return [_restore(v) for v in value]
    if isinstance(value, dict):
        return {k: v if k == 'kind' else _restore(v) for k, v in value.items()}
    return value


def parse_record(line: str) -> Dict[str, Any]:
    """to_record_line 的逆运算：所有 "num/den" 字符串恢复为 Fraction"""
    return _restore(json.loads(line))


# =============================================================================
# CSV (pandas)
# =============================================================================

def bound_frame(reports: Iterable[BoundReport]) -> pd.DataFrame:
    rows = []
    for rep in reports:
        f = rep.f if rep.f is not None else Fraction(0)
        rows.append({
            'd': rep.params.d,
            'q': rep.params.q,
            'f_num': str(f.numerator),
            'f_den': str(f.denominator),
            'K_num': str(rep.K.numerator),
            'K_den': str(rep.K.denominator),
            'lambda_num': str(rep.lambda_.numerator),
            'lambda_den': str(rep.lambda_.denominator),
            'ratio_bound': _x(rep.ratio_bound),
            'closed_form_bound': '' if rep.closed_form_bound is None else str(rep.closed_form_bound),
            'match': bool(rep.bounds_match),
        })
    return pd.DataFrame(rows, columns=BOUND_CSV_COLUMNS)


def to_frame(objs: Sequence) -> pd.DataFrame:
    """除 bound 外，其他报告直接把记录展平为列；列表字段按下标展开，矩阵 P 展开为 P_i_j"""
    if objs and all(isinstance(o, BoundReport) for o in objs):
        return bound_frame(objs)
    rows = []
    for obj in objs:
        flat = {}
        for key, value in to_record(obj).items():
            if key == 'samples':
                continue
            if isinstance(value, list):
                for i, v in enumerate(value):
                    if isinstance(v, list):
                        for j, w in enumerate(v):
                            flat[f"{key}_{i}_{j}"] = w
                    else:
                        flat[f"{key}_{i}"] = v
            elif isinstance(value, dict):
                for k, v in value.items():
                    flat[f"{key}.{k}"] = v
            else:
                flat[key] = value
        rows.append(flat)
    return pd.DataFrame(rows)


def write_csv(objs: Sequence, path) -> None:
    to_frame(objs).to_csv(path, index=False)


# =============================================================================
# rich 表格
# =============================================================================

def bound_table(reports: Sequence[BoundReport]) -> Table:
    table = Table(title="ratio bound", show_header=True, header_style="bold magenta")
    for name in ("(d, q)", "f", "K", "λ", "ratio bound", "floor", "closed form", "match", "d ≥ 5"):
        table.add_column(name, justify="right")
    for rep in reports:
        table.add_row(
            f"({rep.params.d}, {rep.params.q})",
            _short(rep.f) if rep.f is not None else "-",
            _short(rep.K),
            _short(rep.lambda_),
            _short(rep.ratio_bound),
            _short(rep.bound_floor),
            _short(rep.closed_form_bound) if rep.closed_form_bound is not None else "-",
            "[green]yes[/green]" if rep.bounds_match else "[red]no[/red]",
            "yes" if rep.in_proven_range else "[yellow]no[/yellow]",
        )
    return table


def eigenmatrix_table(em: Eigenmatrix) -> Table:
    table = Table(title=f"eigenmatrix {em.params}  N={_short(em.N)}", header_style="bold magenta")
    table.add_column("i", justify="right", style="dim")
    table.add_column("m_i", justify="right")
    for j in range(em.d + 1):
        table.add_column(f"P_i,{j}", justify="right")
    for i, row in enumerate(em.P):
        table.add_row(str(i), _short(em.m[i]), *(_short(v) for v in row))
    return table


def lp_table(comparisons: Sequence[LPComparison]) -> Table:
    table = Table(title="Delsarte LP", header_style="bold magenta")
    for name in ("(d, q)", "status", "LP optimum", "ratio bound", "equal", "pencil", "pivots"):
        table.add_column(name, justify="right")
    for cmp in comparisons:
        cert = cmp.certificate
        table.add_row(
            f"({cmp.params.d}, {cmp.params.q})",
            cert.status,
            _short(cert.optimum) if cert.optimum is not None else "-",
            _short(cmp.ratio_bound),
            "[green]yes[/green]" if cmp.equal else "[yellow]no[/yellow]",
            _short(cmp.pencil_size),
            str(cert.pivots),
        )
    return table


def equality_table(reports: Sequence[EqualityReport]) -> Table:
    table = Table(title="equality case", header_style="bold magenta")
    for name in ("(d, q)", "|S|", "a_1", "a_d", "witnesses", "verdict"):
        table.add_column(name, justify="right")
    for rep in reports:
        table.add_row(
            f"({rep.params.d}, {rep.params.q})",
            _short(rep.size),
            _short(rep.a1),
            _short(rep.ad),
            ",".join(str(i) for i in rep.witnesses) or "-",
            rep.verdict,
        )
    return table


def sweep_table(reports: Sequence[SweepReport]) -> Table:
    table = Table(title="f sweep", header_style="bold magenta")
    for name in ("(d, q)", "grid", "optimal f", "min eig at f", "best grid f", "best grid min", "optimal wins"):
        table.add_column(name, justify="right")
    for rep in reports:
        best_f, best_value = rep.best_sample
        table.add_row(
            f"({rep.params.d}, {rep.params.q})",
            str(len(rep.samples)),
            _short(rep.optimal_f),
            _short(rep.optimal_min),
            _short(best_f),
            _short(best_value),
            "[green]yes[/green]" if rep.optimal_wins else "[red]no[/red]",
        )
    return table


def oracle_table(reports: Sequence[OracleReport]) -> Table:
    table = Table(title="explicit polar space", header_style="bold magenta")
    for name in ("(d, q)", "N", "points", "valencies", "theta", "row sum K", "pencil", "ratio bound"):
        table.add_column(name, justify="right")
    for rep in reports:
        table.add_row(
            f"({rep.params.d}, {rep.params.q})",
            str(rep.N),
            str(rep.n_points),
            " ".join(str(v) for v in rep.valencies),
            " ".join(str(t) for t in rep.matrices.theta),
            str(rep.matrices.row_sum) if rep.matrices.row_sum is not None else "-",
            str(rep.pencil.size),
            str(rep.pencil.ratio_bound) if rep.pencil.ratio_bound is not None else "-",
        )
    return table


def suite_table(results: Sequence[SuiteResult]) -> Table:
    table = Table(title="identity suite", header_style="bold magenta")
    table.add_column("(d, q)", justify="right")
    table.add_column("checks", justify="right")
    table.add_column("status")
    for res in results:
        passed = sum(res.checks.values())
        status = "[green]ok[/green]" if res.ok else f"[red]FAILED[/red] {res.first_failure or ''}"
        table.add_row(f"({res.params.d}, {res.params.q})", f"{passed}/{len(res.checks)}", status)
    return table


_TABLE_BUILDERS = {
    BoundReport: bound_table,
    LPComparison: lp_table,
    EqualityReport: equality_table,
    SweepReport: sweep_table,
    OracleReport: oracle_table,
    SuiteResult: suite_table,
}


def to_tables(objs: Sequence) -> List[Table]:
    """同类报告合成一张表；特征矩阵每组参数一张"""
    if not objs:
        return []
    kind = type(objs[0])
    if kind is Eigenmatrix:
        return [eigenmatrix_table(em) for em in objs]
    return [_TABLE_BUILDERS[kind](objs)]
