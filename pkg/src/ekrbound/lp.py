# -*- coding: utf-8 -*-
"""
Delsarte 线性规划界（精确有理数单纯形）

变量 x_1..x_{d-1} 为内分布 (inner distribution)，x_0 = 1，x_d = 0（EKR 条件）：
    maximize   1 + sum_j x_j
    subject to x_j >= 0,  sum_{j=0..d-1} x_j Q_{j,i} >= 0  (i = 1..d)
化为标准形 A x <= b 后用 Bland 规则的单纯形法求解，原始/对偶解都做代入校验。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import PropertyFailure
from .scheme import SchemeParams, dual_eigenmatrix, eigenmatrix, pencil_size

logger = logging.getLogger(__name__)

OPTIMAL = 'optimal'
UNBOUNDED = 'unbounded'
INFEASIBLE = 'infeasible'


@dataclass(frozen=True)
class LPInstance:
    """maximize objective_constant + objective . x  s.t.  rows x <= rhs, x >= 0"""
    names: Tuple[str, ...]
    objective: Tuple[Fraction, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    objective_constant: Fraction = Fraction(0)
    row_labels: Tuple[str, ...] = ()

    @property
    def n_vars(self) -> int:
        return len(self.names)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def create(cls, objective, rows, rhs, names=None, objective_constant=0, row_labels=None) -> 'LPInstance':
        objective = tuple(Fraction(c) for c in objective)
        names = tuple(names) if names else tuple(f"x{j + 1}" for j in range(len(objective)))
        rows = tuple(tuple(Fraction(a) for a in r) for r in rows)
        labels = tuple(row_labels) if row_labels else tuple(f"r{i + 1}" for i in range(len(rows)))
        return cls(names=names, objective=objective, rows=rows, rhs=tuple(Fraction(b) for b in rhs),
                   objective_constant=Fraction(objective_constant), row_labels=labels)


@dataclass(frozen=True)
class LPCertificate:
    status: str
    optimum: Optional[Fraction] = None
    primal: Tuple[Fraction, ...] = ()
    dual: Tuple[Fraction, ...] = ()
    pivots: int = 0


@dataclass(frozen=True)
class LPComparison:
    params: SchemeParams
    certificate: LPCertificate
    ratio_bound: Fraction
    pencil_size: int
    distribution: Tuple[Fraction, ...] = field(default=())

    @property
    def equal(self) -> bool:
        return self.certificate.status == OPTIMAL and self.certificate.optimum == self.ratio_bound


class SimplexTableau:
    """稠密 Fraction 单纯形表，Bland 规则保证终止"""

    def __init__(self, lp: LPInstance):
        self.n = lp.n_vars
        self.m = lp.n_rows
        self.c = list(lp.objective)
        # 列: 结构变量 0..n-1, 松弛变量 n..n+m-1
        self.T: List[List[Fraction]] = []
        for i, row in enumerate(lp.rows):
            slack = [Fraction(0)] * self.m
            slack[i] = Fraction(1)
            self.T.append(list(row) + slack)
        self.b = list(lp.rhs)
        self.basis = [self.n + i for i in range(self.m)]
        self.cost = list(self.c) + [Fraction(0)] * self.m
        self.value = Fraction(0)
        self.pivots = 0

    @property
    def ncols(self) -> int:
        return len(self.cost)

    def pivot(self, r: int, col: int) -> None:
        piv = self.T[r][col]
        self.T[r] = [x / piv for x in self.T[r]]
        self.b[r] /= piv
        for i in range(len(self.T)):
            if i != r and self.T[i][col] != 0:
                factor = self.T[i][col]
                self.T[i] = [x - factor * y for x, y in zip(self.T[i], self.T[r])]
                self.b[i] -= factor * self.b[r]
        factor = self.cost[col]
        if factor != 0:
            self.cost = [x - factor * y for x, y in zip(self.cost, self.T[r])]
            self.value += factor * self.b[r]
        self.basis[r] = col
        self.pivots += 1

    def bland_step(self) -> str:
        entering = next((j for j in range(self.ncols) if self.cost[j] > 0), None)
        if entering is None:
            return OPTIMAL
        candidates = [(self.b[i] / self.T[i][entering], self.basis[i], i)
                      for i in range(len(self.T)) if self.T[i][entering] > 0]
        if not candidates:
            return UNBOUNDED
        _, _, r = min(candidates)
        self.pivot(r, entering)
        return 'go_on'

    def run(self) -> str:
        while True:
            status = self.bland_step()
            if status != 'go_on':
                return status

    def _phase_one(self) -> bool:
        """辅助变量法找初始可行基；返回是否可行"""
        aux = self.ncols
        for row in self.T:
            row.append(Fraction(-1))
        self.cost = [Fraction(0)] * aux + [Fraction(-1)]
        self.value = Fraction(0)
        r = min(range(len(self.T)), key=lambda i: (self.b[i], i))
        self.pivot(r, aux)
        self.run()
        if self.value < 0:
            return False
        if aux in self.basis:
            r = self.basis.index(aux)
            col = next((j for j in range(aux) if self.T[r][j] != 0), None)
            if col is None:
                # 冗余约束
                del self.T[r], self.b[r], self.basis[r]
            else:
                self.pivot(r, col)
        for row in self.T:
            row.pop()
        # 用当前基重建原目标行
        full_c = list(self.c) + [Fraction(0)] * self.m
        self.cost = list(full_c)
        self.value = Fraction(0)
        for i, j in enumerate(self.basis):
            if full_c[j] != 0:
                self.cost = [x - full_c[j] * y for x, y in zip(self.cost, self.T[i])]
                self.value += full_c[j] * self.b[i]
        return True

    def solve(self) -> str:
        if any(x < 0 for x in self.b):
            if not self._phase_one():
                return INFEASIBLE
        return self.run()

    def primal(self) -> Tuple[Fraction, ...]:
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.b[i]
        return tuple(x)

    def dual(self) -> Tuple[Fraction, ...]:
        return tuple(-self.cost[self.n + i] for i in range(self.m))


def verify_certificate(lp: LPInstance, cert: LPCertificate) -> List[str]:
    """代入检验；返回不成立的条件列表（空列表表示证书有效）"""
    if cert.status != OPTIMAL:
        return [f"status {cert.status}"]
    x, y = cert.primal, cert.dual
    problems = []
    activity = [sum((a * xj for a, xj in zip(row, x)), Fraction(0)) for row in lp.rows]
    reduced = [sum((lp.rows[i][j] * y[i] for i in range(lp.n_rows)), Fraction(0)) - lp.objective[j]
               for j in range(lp.n_vars)]
    if any(xj < 0 for xj in x):
        problems.append('primal nonnegativity')
    if any(act > b for act, b in zip(activity, lp.rhs)):
        problems.append('primal feasibility')
    if any(yi < 0 for yi in y):
        problems.append('dual nonnegativity')
    if any(r < 0 for r in reduced):
        problems.append('dual feasibility')
    primal_value = sum((c * xj for c, xj in zip(lp.objective, x)), Fraction(0))
    dual_value = sum((b * yi for b, yi in zip(lp.rhs, y)), Fraction(0))
    if primal_value != dual_value:
        problems.append('strong duality')
    if lp.objective_constant + primal_value != cert.optimum:
        problems.append('reported optimum')
    if any(yi * (b - act) != 0 for yi, b, act in zip(y, lp.rhs, activity)):
        problems.append('complementary slackness (rows)')
    if any(xj * r != 0 for xj, r in zip(x, reduced)):
        problems.append('complementary slackness (columns)')
    return problems


def solve_exact(lp: LPInstance) -> LPCertificate:
    """精确求解；最优时原始与对偶证书都经代入验证"""
    tableau = SimplexTableau(lp)
    status = tableau.solve()
    if status != OPTIMAL:
        logger.warning("LP finished with status %s after %d pivots", status, tableau.pivots)
        return LPCertificate(status=status, pivots=tableau.pivots)
    cert = LPCertificate(
        status=OPTIMAL,
        optimum=lp.objective_constant + tableau.value,
        primal=tableau.primal(),
        dual=tableau.dual(),
        pivots=tableau.pivots,
    )
    problems = verify_certificate(lp, cert)
    if problems:
        raise PropertyFailure('LP certificate', ", ".join(problems))
    logger.debug("LP optimal %s after %d pivots", cert.optimum, cert.pivots)
    return cert


def build_lp(params: SchemeParams) -> LPInstance:
    """Delsarte 内分布线性规划：sum_j x_j Q_{j,i} >= 0 写成 -sum_{j>=1} Q_{j,i} x_j <= Q_{0,i} = m_i"""
    em = eigenmatrix(params)
    Q = dual_eigenmatrix(em)
    d = params.d
    variables = range(1, d)
    rows = [[-Q[j][i] for j in variables] for i in range(1, d + 1)]
    rhs = [Q[0][i] for i in range(1, d + 1)]
    return LPInstance.create(
        objective=[1] * (d - 1),
        rows=rows,
        rhs=rhs,
        names=[f"x{j}" for j in variables],
        objective_constant=1,
        row_labels=[f"Q_col{i}" for i in range(1, d + 1)],
    )


def lp_vs_ratio(params: SchemeParams) -> LPComparison:
    """LP 最优值与比值界的比较；不相等只报告，不抛异常"""
    from .hoffman import ratio_bound

    params.require_odd(3)
    cert = solve_exact(build_lp(params))
    bound = ratio_bound(params)
    pencil = pencil_size(params)
    distribution: Tuple[Fraction, ...] = ()
    if cert.status == OPTIMAL:
        distribution = (Fraction(1),) + cert.primal + (Fraction(0),)
        if cert.optimum < pencil:
            raise PropertyFailure('LP optimum >= point-pencil size', f"{cert.optimum} < {pencil}")
    comparison = LPComparison(params=params, certificate=cert, ratio_bound=bound,
                              pencil_size=pencil, distribution=distribution)
    logger.info("%s: LP optimum %s, ratio bound %s, equal=%s", params, cert.optimum, bound, comparison.equal)
    return comparison


def lp_to_text(lp: LPInstance) -> str:
    def term(a: Fraction, name: str) -> str:
        return f"{a.numerator}/{a.denominator}*{name}"

    lines = ["maximize " + " + ".join([f"{lp.objective_constant}"] + [term(c, n) for c, n in zip(lp.objective, lp.names)])]
    for label, row, b in zip(lp.row_labels, lp.rows, lp.rhs):
        lines.append(f"{label}: " + " + ".join(term(a, n) for a, n in zip(row, lp.names)) + f" <= {b.numerator}/{b.denominator}")
    lines.append("bounds: " + ", ".join(f"{n} >= 0" for n in lp.names))
    return "\n".join(lines) + "\n"


def certificate_to_text(cert: LPCertificate, names: Sequence[str] = ()) -> str:
    lines = [f"status {cert.status}", f"pivots {cert.pivots}"]
    if cert.optimum is not None:
        lines.append(f"optimum {cert.optimum.numerator}/{cert.optimum.denominator}")
    names = list(names) or [f"x{j + 1}" for j in range(len(cert.primal))]
    for name, value in zip(names, cert.primal):
        lines.append(f"primal {name} {value.numerator}/{value.denominator}")
    for i, value in enumerate(cert.dual, start=1):
        lines.append(f"dual y{i} {value.numerator}/{value.denominator}")
    return "\n".join(lines) + "\n"
