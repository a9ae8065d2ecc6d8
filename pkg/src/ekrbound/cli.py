#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ekrb 命令行入口

退出码: 0 全部检查通过; 1 数学性质不成立; 2 用法/参数错误; 3 资源保护拒绝
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.panel import Panel

from . import __version__
from .equality import intersection_distribution
from .errors import EKRBoundError, ParameterDomainError
from .exactnum import parse_fraction_str
from .hoffman import WeightVector, bound_report, f_sweep, generic_ratio_bound
from .lp import OPTIMAL, build_lp, certificate_to_text, lp_to_text, lp_vs_ratio
from .oracle import DEFAULT_MAX_VERTICES, check_resource_guard, run_oracle
from .report import to_record_line, to_tables, write_csv
from .scheme import SchemeParams, eigenmatrix, eigenmatrix_to_text
from .utils.log_utils import init_logger
from .utils.rich_help import CustomHelpFormatter, add_rich_epilog
from .verify import DEFAULT_D, DEFAULT_Q, map_grid, parameter_grid, run_identity_suite

logger = logging.getLogger('ekrbound.cli')

FORMATS = ('text', 'records', 'csv')
# 这些子命令的构造依赖 d 的奇偶性
ODD_D_COMMANDS = {'bound', 'lp', 'equality', 'sweep', 'verify'}
# LP 最优值与比值界相等只在这些 d 上作为断言
LP_ASSERTED_D = (5, 7)


def _env_jobs() -> int:
    value = os.environ.get('EKRBOUND_JOBS', '1')
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning("忽略无效的 EKRBOUND_JOBS=%r", value)
        return 1


def parse_weights(text: str) -> Dict[int, object]:
    """'5=1,3=-8/5' -> {5: 1, 3: Fraction(-8, 5)}"""
    weights = {}
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        try:
            j, c = item.split('=', 1)
            weights[int(j)] = parse_fraction_str(c)
        except (ValueError, ZeroDivisionError):
            raise ParameterDomainError(f"bad weight entry {item!r} (expected j=c, e.g. 3=-8/5)") from None
    if not weights:
        raise ParameterDomainError("empty weight vector")
    return weights


@dataclass
class RunConfig:
    command: str
    d: List[int]
    q: List[int]
    grid_size: int = 200
    fmt: str = 'text'
    output: Optional[Path] = None
    max_vertices: int = DEFAULT_MAX_VERTICES
    jobs: int = 1
    verbose: bool = False
    quiet: bool = False
    log_file: Optional[Path] = None
    size: Optional[int] = None
    weights: Optional[Dict[int, object]] = None
    audit: bool = False
    dump_dir: Optional[Path] = None

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> 'RunConfig':
        weights = getattr(args, 'weights', None)
        return cls(
            command=args.command,
            d=list(args.d),
            q=list(args.q),
            grid_size=getattr(args, 'grid_size', 200),
            fmt=args.format,
            output=Path(args.output) if args.output else None,
            max_vertices=getattr(args, 'max_vertices', DEFAULT_MAX_VERTICES),
            jobs=args.jobs,
            verbose=args.verbose,
            quiet=args.quiet,
            log_file=Path(args.log_file) if args.log_file else None,
            size=getattr(args, 'size', None),
            weights=parse_weights(weights) if weights else None,
            audit=getattr(args, 'audit', False),
            dump_dir=Path(args.dump_dir) if getattr(args, 'dump_dir', None) else None,
        )

    def validate(self) -> None:
        if self.fmt not in FORMATS:
            raise ParameterDomainError(f"unknown format {self.fmt!r}")
        for q in self.q:
            if q < 2:
                raise ParameterDomainError(f"q must be >= 2 (got q={q})")
        for d in self.d:
            if d < 1:
                raise ParameterDomainError(f"d must be >= 1 (got d={d})")
            if self.command in ODD_D_COMMANDS and self.weights is None:
                if d % 2 == 0:
                    raise ParameterDomainError(f"d must be odd (got d={d})")
                if d < 3:
                    raise ParameterDomainError(f"d must be >= 3 (got d={d})")
        if self.grid_size < 2:
            raise ParameterDomainError(f"grid size must be >= 2 (got {self.grid_size})")
        if self.jobs < 1:
            raise ParameterDomainError(f"jobs must be >= 1 (got {self.jobs})")
        if self.max_vertices < 1:
            raise ParameterDomainError(f"max-vertices must be >= 1 (got {self.max_vertices})")

    @property
    def grid(self) -> List[SchemeParams]:
        return parameter_grid(self.d, self.q)


# =============================================================================
# 子命令处理函数：返回 (结果列表, 是否全部通过)
# =============================================================================

def _generic_bound(params: SchemeParams, weights: Dict[int, object]):
    return generic_ratio_bound(params, WeightVector.from_mapping(params.d, weights))


def handle_bound(config: RunConfig, console: Console) -> Tuple[list, bool]:
    if config.weights is not None:
        reports = map_grid(partial(_generic_bound, weights=config.weights), config.grid, config.jobs, 'bound')
        return reports, True
    reports = map_grid(bound_report, config.grid, config.jobs, 'bound')
    for rep in reports:
        if not rep.in_proven_range:
            logger.info("%s: d=3 lies outside the d >= 5 range of the closed-form bound; shown as a cross-check",
                        rep.params)
    return reports, all(rep.bounds_match for rep in reports)


def handle_spectrum(config: RunConfig, console: Console) -> Tuple[list, bool]:
    return map_grid(eigenmatrix, config.grid, config.jobs, 'spectrum'), True


def handle_lp(config: RunConfig, console: Console) -> Tuple[list, bool]:
    comparisons = map_grid(lp_vs_ratio, config.grid, config.jobs, 'lp')
    ok = True
    for cmp in comparisons:
        if cmp.certificate.status != OPTIMAL:
            ok = False
        elif not cmp.equal:
            if cmp.params.d in LP_ASSERTED_D:
                logger.error("%s: LP optimum %s differs from ratio bound %s",
                             cmp.params, cmp.certificate.optimum, cmp.ratio_bound)
                ok = False
            else:
                logger.warning("%s: LP optimum differs from ratio bound (reported only)", cmp.params)
        if config.audit and config.fmt == 'text':
            lp = build_lp(cmp.params)
            console.print(Panel(lp_to_text(lp) + "\n" + certificate_to_text(cmp.certificate, lp.names),
                                title=f"LP {cmp.params}", border_style="blue"))
    return comparisons, ok


def handle_oracle(config: RunConfig, console: Console) -> Tuple[list, bool]:
    for params in config.grid:
        check_resource_guard(params, config.max_vertices)
    run = partial(run_oracle, max_vertices=config.max_vertices, dump_dir=config.dump_dir)
    return [run(params) for params in config.grid], True


def handle_equality(config: RunConfig, console: Console) -> Tuple[list, bool]:
    return map_grid(partial(intersection_distribution, size=config.size), config.grid, config.jobs, 'equality'), True


def handle_sweep(config: RunConfig, console: Console) -> Tuple[list, bool]:
    reports = map_grid(partial(f_sweep, grid_size=config.grid_size), config.grid, config.jobs, 'sweep')
    return reports, all(rep.optimal_wins for rep in reports)


def handle_verify(config: RunConfig, console: Console) -> Tuple[list, bool]:
    results = run_identity_suite(config.grid, jobs=config.jobs)
    return results, all(r.ok for r in results)


# =============================================================================
# 输出
# =============================================================================

def emit(results: Sequence, config: RunConfig, console: Console) -> None:
    if config.fmt == 'records':
        text = "".join(to_record_line(obj) + "\n" for obj in results)
        if config.output:
            config.output.write_text(text, encoding='utf-8')
        else:
            sys.stdout.write(text)
    elif config.fmt == 'csv':
        write_csv(results, config.output if config.output else sys.stdout)
    elif config.output:
        with config.output.open('w', encoding='utf-8') as fh:
            if config.command == 'spectrum':
                for em in results:
                    fh.write(eigenmatrix_to_text(em))
            else:
                file_console = Console(file=fh, width=200, no_color=True)
                for table in to_tables(results):
                    file_console.print(table)
    else:
        for table in to_tables(results):
            console.print(table)
    if config.output:
        logger.info("结果已写入 %s", config.output)


# =============================================================================
# 参数解析
# =============================================================================

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='输出 DEBUG 级别日志')
    common.add_argument('--quiet', action='store_true', help='只输出 WARNING 及以上日志')
    common.add_argument('--log-file', default=None, help='同时把日志写入文件')
    common.add_argument('--format', choices=FORMATS, default='text',
                        help='输出格式: text (rich 表格) / records (JSON-lines) / csv')
    common.add_argument('-o', '--output', default=None, help='输出文件（默认标准输出）')
    common.add_argument('--jobs', type=int, default=_env_jobs(),
                        help='网格并行进程数（默认取环境变量 EKRBOUND_JOBS，否则 1）')
    return common


def _add_grid_options(p: argparse.ArgumentParser, default_d=None, default_q=None) -> None:
    p.add_argument('--d', nargs='+', type=int, required=default_d is None,
                   default=list(default_d) if default_d else None, metavar='D', help='秩 d（可给多个）')
    p.add_argument('--q', nargs='+', type=int, required=default_q is None,
                   default=list(default_q) if default_q else None, metavar='Q', help='q（可给多个）')


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ekrb',
        description='H(2d-1,q^2) 生成元 EKR 集的谱界与 LP 界（全部精确有理数计算）',
        epilog='使用 "ekrb <command> -h" 查看具体命令的帮助信息',
        formatter_class=CustomHelpFormatter,
    )
    parser.add_argument('--version', action='version', version=f'ekrbound {__version__}')
    subparsers = parser.add_subparsers(title='可用命令', dest='command', metavar='<command>')
    common = _common_parser()

    p = subparsers.add_parser('bound', parents=[common], formatter_class=CustomHelpFormatter,
                              help='比值界报告', description='f, K, lambda, 比值界与闭式上界')
    _add_grid_options(p)
    p.add_argument('--weights', default=None,
                   help='通用权向量 j=c_j，逗号分隔（如 "5=1,3=-8/5"）；给出时只计算通用比值界')
    p.set_defaults(func=handle_bound)
    add_rich_epilog(p, [
        ('ekrb bound --d 5 --q 2', '比值界 347139 及 f, K, lambda'),
        ('ekrb bound --d 3 5 7 --q 2 3 --format csv -o bounds.csv', ''),
        ('ekrb bound --d 3 --q 2 --weights 3=1', '只用 A_d 的 Hoffman 界'),
    ])

    p = subparsers.add_parser('spectrum', parents=[common], formatter_class=CustomHelpFormatter,
                              help='特征矩阵', description='完整特征矩阵 P、重数 m 与特征值 theta')
    _add_grid_options(p)
    p.set_defaults(func=handle_spectrum)
    add_rich_epilog(p, [
        ('ekrb spectrum --d 3 --q 2', 'H(5,4) 的 4x4 特征矩阵'),
        ('ekrb spectrum --d 5 --q 3 -o P.txt', '精确十进制文本'),
    ])

    p = subparsers.add_parser('lp', parents=[common], formatter_class=CustomHelpFormatter,
                              help='Delsarte 线性规划', description='精确单纯形求 Delsarte LP，并与比值界比较')
    _add_grid_options(p)
    p.add_argument('--audit', action='store_true', help='打印 LP 实例与原始/对偶证书')
    p.set_defaults(func=handle_lp)
    add_rich_epilog(p, [
        ('ekrb lp --d 5 7 --q 2', 'LP 最优值等于比值界'),
        ('ekrb lp --d 5 --q 3 --audit', '打印原始/对偶证书'),
    ])

    p = subparsers.add_parser('oracle', parents=[common], formatter_class=CustomHelpFormatter,
                              help='显式构造验证', description='显式枚举小极空间并逐项验证方案矩阵')
    _add_grid_options(p)
    p.add_argument('--max-vertices', type=int, default=DEFAULT_MAX_VERTICES,
                   help=f'生成元个数上限（默认 {DEFAULT_MAX_VERTICES}）')
    p.add_argument('--dump-dir', default=None, help='导出生成元列表与余维表的目录')
    p.set_defaults(func=handle_oracle)
    add_rich_epilog(p, [
        ('ekrb oracle --d 1 2 3 --q 2', 'H(1,4), H(3,4), H(5,4)'),
        ('ekrb oracle --d 2 --q 3 --dump-dir out', '同时导出生成元与余维表'),
    ])

    p = subparsers.add_parser('equality', parents=[common], formatter_class=CustomHelpFormatter,
                              help='等号情形', description='假设达到闭式上界，计算交分布并检查整数性')
    _add_grid_options(p)
    p.add_argument('--size', type=int, default=None, help='假设的 |S|（默认取闭式上界）')
    p.set_defaults(func=handle_equality)
    add_rich_epilog(p, [('ekrb equality --d 5 7 --q 2 3', '')])

    p = subparsers.add_parser('sweep', parents=[common], formatter_class=CustomHelpFormatter,
                              help='f 网格扫描', description='在 [0, q^2-1] 上扫描 f，比较最小特征值')
    _add_grid_options(p)
    p.add_argument('--grid-size', type=int, default=200, help='网格点数（默认 200）')
    p.set_defaults(func=handle_sweep)
    add_rich_epilog(p, [('ekrb sweep --d 3 5 --q 2 --grid-size 200', '')])

    p = subparsers.add_parser('verify', parents=[common], formatter_class=CustomHelpFormatter,
                              help='恒等式自检', description='在参数网格上运行全部精确恒等式检查')
    _add_grid_options(p, default_d=DEFAULT_D, default_q=DEFAULT_Q)
    p.set_defaults(func=handle_verify)
    add_rich_epilog(p, [
        ('ekrb verify', '全网格'),
        ('ekrb verify --d 5 7 --q 2 --jobs 4', ''),
    ], notes='默认网格 d = 3, 5, ..., 25, q = 2, 3, 4, 5, 7, 8, 9, 11, 13, 16。')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """ekrb 主入口，返回退出码"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = create_parser()
    if not argv:
        parser.print_help()
        return 0
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if not hasattr(args, 'func'):
        parser.print_help()
        return 2

    init_logger(verbose=args.verbose, quiet=args.quiet, log_file=args.log_file)
    console = Console()
    err_console = Console(stderr=True)
    try:
        config = RunConfig.from_namespace(args)
        config.validate()
        results, ok = args.func(config, console)
        emit(results, config, console)
    except EKRBoundError as e:
        err_console.print(f"[bold red]{type(e).__name__}[/bold red] (exit {e.exit_code}): {e}")
        return e.exit_code
    except KeyboardInterrupt:
        err_console.print("[yellow]已中断[/yellow]")
        return 130
    except Exception as e:
        logger.exception("未预期的错误")
        err_console.print(f"[bold red]InternalError[/bold red] (exit 1): {type(e).__name__}: {e}")
        return 1
    if not ok:
        err_console.print("[bold red]部分检查未通过[/bold red]")
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
