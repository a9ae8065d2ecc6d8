# -*- coding: utf-8 -*-
"""
桌面规模的暴力验证 (oracle)

显式构造 H(2d-1, q^2)：
  1. GF(q^2) 的加法/乘法/共轭查表
  2. 枚举所有迷向点，再逐维扩张得到全部生成元（RREF 规范形去重）
  3. 用点-生成元关联矩阵算出两两余维，得到关系矩阵 A_0..A_d
  4. 与 scheme 模块的交叉数组、特征值、价逐项比对

所有矩阵运算都是 numpy int64 精确整数运算。
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from .errors import ParameterDomainError, PropertyFailure, ResourceGuardError
from .scheme import (
    Eigenmatrix,
    SchemeParams,
    generator_count,
    intersection_array,
    pencil_size,
    valencies,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 1000
SUPPORTED_Q = (2, 3)

# t^2 = alpha + beta t 的不可约多项式：GF(4) 用 t^2 = t + 1，GF(9) 用 t^2 = -1
_MODULUS = {2: (1, 1), 3: (2, 0)}

Vector = Tuple[int, ...]
Basis = Tuple[Vector, ...]


# =============================================================================
# 有限域 GF(q^2)
# =============================================================================

@dataclass(frozen=True)
class GaloisTables:
    """元素编码 e = a + q*b 表示 a + b t"""
    q: int
    add: Tuple[Tuple[int, ...], ...]
    mul: Tuple[Tuple[int, ...], ...]
    neg: Tuple[int, ...]
    inv: Tuple[int, ...]
    conj: Tuple[int, ...]

    @property
    def size(self) -> int:
        return self.q * self.q

    @property
    def subfield(self) -> Tuple[int, ...]:
        return tuple(x for x in range(self.size) if self.conj[x] == x)

    def power(self, x: int, e: int) -> int:
        result = 1
        for _ in range(e):
            result = self.mul[result][x]
        return result

    def order(self, x: int) -> int:
        if x == 0:
            raise ParameterDomainError("0 has no multiplicative order")
        y, n = x, 1
        while y != 1:
            y = self.mul[y][x]
            n += 1
        return n

    @property
    def is_cyclic(self) -> bool:
        return any(self.order(x) == self.size - 1 for x in range(1, self.size))

    def element_str(self, x: int) -> str:
        return format(x, 'x')


def build_field(q: int) -> GaloisTables:
    """GF(q^2) 查表；共轭为 Frobenius x -> x^q"""
    if q not in _MODULUS:
        raise ParameterDomainError(f"GF(q^2) tables only for q in {SUPPORTED_Q} (got q={q})")
    alpha, beta = _MODULUS[q]
    size = q * q

    def split(e):
        return e % q, e // q

    def join(a, b):
        return a % q + q * (b % q)

    add = tuple(tuple(join(split(x)[0] + split(y)[0], split(x)[1] + split(y)[1]) for y in range(size))
                for x in range(size))
    mul_rows = []
    for x in range(size):
        a, b = split(x)
        row = []
        for y in range(size):
            c, d = split(y)
            row.append(join(a * c + b * d * alpha, a * d + b * c + b * d * beta))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    neg = tuple(join(-split(x)[0], -split(x)[1]) for x in range(size))

    inv = [0] * size
    for x in range(1, size):
        hits = [y for y in range(1, size) if mul[x][y] == 1]
        if len(hits) != 1:
            raise PropertyFailure('field inverses', f"element {x} has inverses {hits}", index=x)
        inv[x] = hits[0]

    def frobenius(x):
        result = 1
        for _ in range(q):
            result = mul[result][x]
        return result

    conj = tuple(frobenius(x) for x in range(size))
    F = GaloisTables(q=q, add=add, mul=mul, neg=neg, inv=tuple(inv), conj=conj)

    for x in range(size):
        if conj[conj[x]] != x:
            raise PropertyFailure('conjugation is an involution', index=x)
        for y in range(size):
            if conj[add[x][y]] != add[conj[x]][conj[y]] or conj[mul[x][y]] != mul[conj[x]][conj[y]]:
                raise PropertyFailure('conjugation is an automorphism', index=(x, y))
    if F.subfield != tuple(range(q)):
        raise PropertyFailure('conjugation fixes exactly GF(q)', f"fixed set {F.subfield}")
    return F


# =============================================================================
# 向量与子空间
# =============================================================================

def hermitian_form(F: GaloisTables, u: Sequence[int], v: Sequence[int]) -> int:
    """h(u, v) = sum_i u_i conj(v_i)"""
    total = 0
    for x, y in zip(u, v):
        total = F.add[total][F.mul[x][F.conj[y]]]
    return total


def normalize(F: GaloisTables, v: Sequence[int]) -> Vector:
    """缩放使第一个非零坐标为 1"""
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise ParameterDomainError("zero vector is not a projective point")
    s = F.inv[lead]
    return tuple(F.mul[s][x] for x in v)


def rref(F: GaloisTables, rows: Sequence[Sequence[int]]) -> Basis:
    """行最简形（只保留非零行），作为子空间的规范形"""
    m = [list(r) for r in rows]
    if not m:
        return ()
    r = 0
    for col in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = F.inv[m[r][col]]
        m[r] = [F.mul[s][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = F.neg[m[i][col]]
                m[i] = [F.add[x][F.mul[factor][y]] for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def rank(F: GaloisTables, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows))


def span_points(F: GaloisTables, basis: Basis) -> List[Vector]:
    """RREF 基张成的全部射影点（首个非零系数取 1，结果已规范化）"""
    k = len(basis)
    n = len(basis[0])
    points = []
    for lead in range(k):
        for tail in itertools.product(range(F.size), repeat=k - lead - 1):
            coeffs = (1,) + tail
            v = [0] * n
            for c, row in zip(coeffs, basis[lead:]):
                if c:
                    v = [F.add[x][F.mul[c][y]] for x, y in zip(v, row)]
            points.append(tuple(v))
    return points


def gram_codim(F: GaloisTables, g: Basis, h: Basis) -> int:
    """两生成元的余维 = Gram 矩阵 h(g_i, h_j) 的秩（生成元满足 G = G^perp）"""
    return rank(F, [[hermitian_form(F, x, y) for y in h] for x in g])


def _isotropic_points(F: GaloisTables, n: int) -> List[Vector]:
    points = []
    for lead in range(n):
        for tail in itertools.product(range(F.size), repeat=n - lead - 1):
            v = (0,) * lead + (1,) + tail
            if hermitian_form(F, v, v) == 0:
                points.append(v)
    return points


# =============================================================================
# 极空间
# =============================================================================

@dataclass(frozen=True, eq=False)
class PolarSpace:
    """生成元按 RREF 规范形排序；codim[r, s] = d - dim(G_r ∩ G_s)"""
    params: SchemeParams
    field: GaloisTables
    points: Tuple[Vector, ...]
    generators: Tuple[Basis, ...]
    incidence: np.ndarray
    codim: np.ndarray

    @property
    def N(self) -> int:
        return len(self.generators)

    def relation(self, j: int) -> np.ndarray:
        """关系矩阵 A_j（int64 0/1）"""
        return (self.codim == j).astype(np.int64)

    def point_index(self, point: Sequence[int]) -> int:
        key = normalize(self.field, point)
        try:
            return self.points.index(key)
        except ValueError:
            raise ParameterDomainError(f"{key} is not an isotropic point of {self.params}") from None


def check_resource_guard(params: SchemeParams, max_vertices: int = DEFAULT_MAX_VERTICES) -> int:
    n = generator_count(params)
    if params.q not in SUPPORTED_Q:
        raise ResourceGuardError(f"explicit construction supports q in {SUPPORTED_Q} only (got q={params.q})")
    if n > max_vertices:
        raise ResourceGuardError(f"{params} has N={n} generators, above max_vertices={max_vertices}")
    return n


def enumerate_generators(params: SchemeParams, max_vertices: int = DEFAULT_MAX_VERTICES,
                         seed: Optional[int] = None) -> PolarSpace:
    """逐维扩张全迷向子空间，直到维数 d

    seed 不为 None 时打乱搜索顺序；结果只依赖于子空间集合，与顺序无关。
    """
    expected = check_resource_guard(params, max_vertices)
    d = params.d
    n = 2 * d
    F = build_field(params.q)
    rng = random.Random(seed) if seed is not None else None

    for i in range(n):
        for j in range(n):
            e_i = tuple(int(k == i) for k in range(n))
            e_j = tuple(int(k == j) for k in range(n))
            if hermitian_form(F, e_i, e_j) != int(i == j):
                raise PropertyFailure('nondegenerate Hermitian form', index=(i, j))

    points = _isotropic_points(F, n)
    index = {p: i for i, p in enumerate(points)}
    logger.debug("%s: %d isotropic points", params, len(points))

    # perp[i] 的第 s 位为 1 当且仅当 h(p_i, p_s) = 0
    perp = [0] * len(points)
    for i, p in enumerate(points):
        for s in range(i, len(points)):
            if hermitian_form(F, p, points[s]) == 0:
                perp[i] |= 1 << s
                perp[s] |= 1 << i

    def mask_of(vectors):
        m = 0
        for v in vectors:
            m |= 1 << index[v]
        return m

    level: Dict[Basis, int] = {(p,): 1 << i for i, p in enumerate(points)}
    for k in range(2, d + 1):
        nxt: Dict[Basis, int] = {}
        items = list(level.items())
        if rng is not None:
            rng.shuffle(items)
        for basis, covered in tqdm(items, desc=f"{params} dim {k}", unit='subspace', leave=False, disable=None):
            cand = ~covered
            for row in basis:
                cand &= perp[index[row]]
            bits = []
            while cand:
                low = cand & -cand
                bits.append(low.bit_length() - 1)
                cand ^= low
            if rng is not None:
                rng.shuffle(bits)
            for p in bits:
                if covered >> p & 1:
                    continue
                ext = rref(F, basis + (points[p],))
                ext_mask = nxt.get(ext)
                if ext_mask is None:
                    ext_mask = mask_of(span_points(F, ext))
                    nxt[ext] = ext_mask
                covered |= ext_mask
        level = nxt
        logger.debug("%s: %d totally isotropic subspaces of dimension %d", params, len(level), k)

    generators = tuple(sorted(level))
    if len(generators) != expected:
        raise PropertyFailure('generator count equals N', f"enumerated {len(generators)}, expected {expected}")
    for g in generators:
        if len(g) != d:
            raise PropertyFailure('generator rank d', f"{g}")

    incidence = np.zeros((len(generators), len(points)), dtype=np.int64)
    for r, g in enumerate(generators):
        m = level[g]
        for s in range(len(points)):
            if m >> s & 1:
                incidence[r, s] = 1
    codim = _codim_table(params, incidence)
    logger.info("%s: enumerated %d generators over %d isotropic points", params, len(generators), len(points))
    return PolarSpace(params=params, field=F, points=tuple(points), generators=generators,
                      incidence=incidence, codim=codim)


def _codim_table(params: SchemeParams, incidence: np.ndarray) -> np.ndarray:
    """公共点数 (Q^t - 1)/(Q - 1) 对应交的维数 t"""
    Q = params.base
    d = params.d
    shared = incidence @ incidence.T
    codim = np.full(shared.shape, -1, dtype=np.int64)
    for t in range(d + 1):
        codim[shared == (Q ** t - 1) // (Q - 1)] = d - t
    if (codim < 0).any():
        r, s = np.argwhere(codim < 0)[0]
        raise PropertyFailure('intersection is a subspace', f"{shared[r, s]} common points", index=(int(r), int(s)))
    if not (np.diag(codim) == 0).all():
        raise PropertyFailure('codim(r, r) = 0')
    return codim


def isotropic_points(ps: PolarSpace) -> Tuple[Vector, ...]:
    return ps.points


# =============================================================================
# 与 scheme 模块比对
# =============================================================================

@dataclass(frozen=True)
class DistanceDistribution:
    params: SchemeParams
    per_vertex: np.ndarray = field(repr=False)
    valencies: Tuple[int, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.valencies)


def distance_distribution(ps: PolarSpace) -> DistanceDistribution:
    d = ps.params.d
    per_vertex = np.stack([(ps.codim == j).sum(axis=1) for j in range(d + 1)], axis=1)
    first = per_vertex[0]
    bad = np.argwhere((per_vertex != first).any(axis=1))
    if len(bad):
        r = int(bad[0][0])
        raise PropertyFailure('constant distance distribution', f"vertex {r}: {per_vertex[r].tolist()}", index=r)
    counts = tuple(int(x) for x in first)
    expected = tuple(valencies(ps.params))
    if counts != expected:
        raise PropertyFailure('distance distribution equals valencies', f"{counts} != {expected}")
    if sum(counts) != ps.N:
        raise PropertyFailure('distance counts sum to N')
    return DistanceDistribution(params=ps.params, per_vertex=per_vertex, valencies=counts)


@dataclass(frozen=True)
class MatrixCheckReport:
    params: SchemeParams
    theta: Tuple[int, ...]
    annihilated: bool
    recurrence_relations: int
    row_sum: Optional[Fraction] = None


def _first_mismatch(left: np.ndarray, right: np.ndarray) -> Optional[Tuple[int, int]]:
    diff = np.argwhere(left != right)
    if len(diff) == 0:
        return None
    r, s = diff[0]
    return int(r), int(s)


def verify_scheme_matrices(ps: PolarSpace, em: Eigenmatrix) -> MatrixCheckReport:
    """(a) prod_i (A_1 - theta_i I) = 0  (b) A_j = v_j(A_1)  (c) A_d - f A_{d-2} 的行和都等于 K"""
    params = ps.params
    d = params.d
    if em.params != params:
        raise ParameterDomainError(f"eigenmatrix is for {em.params}, polar space is {params}")
    ia = intersection_array(params)
    A = [ps.relation(j) for j in range(d + 1)]
    eye = np.eye(ps.N, dtype=np.int64)

    worst = (ia.valency + max(abs(t) for t in em.theta)) ** (d + 1)
    if worst >= 2 ** 62:
        raise ResourceGuardError(f"int64 products may overflow for {params}")

    product = eye
    for t in em.theta:
        product = product @ (A[1] - t * eye)
    where = _first_mismatch(product, np.zeros_like(product))
    if where is not None:
        raise PropertyFailure('prod (A_1 - theta_i I) = 0', f"entry {product[where]}", index=where)

    # c_{j+1} A_{j+1} = A_1 A_j - a_j A_j - b_{j-1} A_{j-1}
    for j in range(1, d):
        rhs = A[1] @ A[j] - ia.a[j] * A[j] - ia.b_at(j - 1) * A[j - 1]
        lhs = ia.c_at(j + 1) * A[j + 1]
        where = _first_mismatch(lhs, rhs)
        if where is not None:
            raise PropertyFailure('A_j = v_j(A_1)', f"j={j + 1}: {lhs[where]} != {rhs[where]}", index=where)

    row_sum = None
    if d >= 3 and d % 2 == 1:
        from .hoffman import optimal_f, row_sum_K

        f = optimal_f(params)
        K = row_sum_K(params, f)
        sums_d = A[d].sum(axis=1)
        sums_d2 = A[d - 2].sum(axis=1)
        for r in range(ps.N):
            value = int(sums_d[r]) - f * int(sums_d2[r])
            if value != K:
                raise PropertyFailure('row sums of A_d - f A_{d-2} equal K', f"{value} != {K}", index=r)
        row_sum = K
    logger.info("%s: matrix identities hold (theta=%s)", params, list(em.theta))
    return MatrixCheckReport(params=params, theta=em.theta, annihilated=True,
                             recurrence_relations=max(d - 1, 0), row_sum=row_sum)


# =============================================================================
# 点束 (point-pencil)
# =============================================================================

@dataclass(frozen=True)
class PencilReport:
    params: SchemeParams
    point: Vector
    members: Tuple[int, ...]
    pairwise_intersecting: bool
    ratio_bound: Optional[Fraction] = None

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def within_ratio_bound(self) -> Optional[bool]:
        if self.ratio_bound is None:
            return None
        return self.size <= self.ratio_bound


def point_pencil(ps: PolarSpace, point: Sequence[int]) -> PencilReport:
    """经过给定迷向点的全部生成元；点在 G 上当且仅当它与 G 的每个基向量正交"""
    F = ps.field
    if len(point) != 2 * ps.params.d:
        raise ParameterDomainError(f"point must have {2 * ps.params.d} coordinates (got {len(point)})")
    p = normalize(F, point)
    if hermitian_form(F, p, p) != 0:
        raise ParameterDomainError(f"point {p} is not isotropic")
    members = tuple(r for r, g in enumerate(ps.generators)
                    if all(hermitian_form(F, p, row) == 0 for row in g))
    expected = pencil_size(ps.params)
    if len(members) != expected:
        raise PropertyFailure('pencil size', f"{len(members)} != {expected}")
    sub = ps.codim[np.ix_(members, members)]
    intersecting = bool((sub < ps.params.d).all())
    if not intersecting:
        raise PropertyFailure('pencil pairwise intersecting')

    bound = None
    d = ps.params.d
    if d >= 3 and d % 2 == 1:
        from .hoffman import lambda_min, optimal_f, ratio_bound, row_sum_K

        lam = lambda_min(ps.params, check_spectrum=False)
        K = row_sum_K(ps.params, optimal_f(ps.params))
        if len(members) * (K - lam) > -lam * ps.N:
            raise PropertyFailure('|S| (K + |lambda|) <= |lambda| N', f"|S|={len(members)}")
        bound = ratio_bound(ps.params)
    return PencilReport(params=ps.params, point=p, members=members,
                        pairwise_intersecting=intersecting, ratio_bound=bound)


def pencil_counts(ps: PolarSpace) -> np.ndarray:
    """每个迷向点上的生成元个数"""
    return ps.incidence.sum(axis=0)


# =============================================================================
# 汇总与导出
# =============================================================================

@dataclass(frozen=True)
class OracleReport:
    params: SchemeParams
    N: int
    n_points: int
    valencies: Tuple[int, ...]
    matrices: MatrixCheckReport
    pencil: PencilReport


def run_oracle(params: SchemeParams, max_vertices: int = DEFAULT_MAX_VERTICES,
               dump_dir: Optional[Union[str, Path]] = None) -> OracleReport:
    """构造 + 全部比对，对应 `ekrb oracle`；给出 dump_dir 时同时导出生成元与余维表"""
    from .scheme import eigenmatrix

    ps = enumerate_generators(params, max_vertices=max_vertices)
    if dump_dir is not None:
        dump_dir = Path(dump_dir)
        dump_dir.mkdir(parents=True, exist_ok=True)
        dump_polar_space(ps, dump_dir / f"H{2 * params.d - 1}_q{params.q}.txt")
    dist = distance_distribution(ps)
    matrices = verify_scheme_matrices(ps, eigenmatrix(params))
    counts = pencil_counts(ps)
    expected = pencil_size(params)
    if not (counts == expected).all():
        s = int(np.argwhere(counts != expected)[0][0])
        raise PropertyFailure('every isotropic point lies on the same number of generators',
                              f"point {ps.points[s]} lies on {int(counts[s])}", index=s)
    pencil = point_pencil(ps, ps.points[0])
    return OracleReport(params=params, N=ps.N, n_points=len(ps.points), valencies=dist.valencies,
                        matrices=matrices, pencil=pencil)


def dump_polar_space(ps: PolarSpace, path: Union[str, Path]) -> Path:
    """每行一个生成元（行之间用 | 分隔，十六进制域元素），随后是余维表"""
    path = Path(path)
    F = ps.field
    with path.open('w', encoding='utf-8') as fh:
        fh.write(f"# {ps.params} d={ps.params.d} q={ps.params.q} N={ps.N}\n")
        for r, g in enumerate(ps.generators):
            rows = "|".join("".join(F.element_str(x) for x in row) for row in g)
            fh.write(f"G{r} {rows}\n")
        fh.write("# codim\n")
        for row in ps.codim:
            fh.write("".join(str(int(x)) for x in row) + "\n")
    logger.info("wrote %d generators to %s", ps.N, path)
    return path


def load_polar_space_dump(path: Union[str, Path]) -> Tuple[List[Basis], np.ndarray]:
    """读回 dump_polar_space 的输出"""
    generators: List[Basis] = []
    codim_rows = []
    in_codim = False
    with Path(path).open(encoding='utf-8') as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line == '# codim':
                in_codim = True
                continue
            if line.startswith('#'):
                continue
            if in_codim:
                codim_rows.append([int(c) for c in line])
            else:
                _, body = line.split(' ', 1)
                generators.append(tuple(tuple(int(c, 16) for c in row) for row in body.split('|')))
    return generators, np.array(codim_rows, dtype=np.int64)
