"""由语义对象构造特征公式，以及团队类的可定义性构造

所有大运算符的下标顺序都取枚举模块的顺序，同一输入总是得到逐字节相同的公式。
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from config import AppConfig
from common.enum import Dialect, Mode
from common.models import (
    Assignment,
    CausalTeam,
    FunctionComponent,
    GeneralizedCausalTeam,
    Member,
    Signature,
    UniverseBudget,
)
from common.models.team_ops import ct_union_all, similarity_key, slices
from common.syntax.builders import big_and, big_idisj, big_or, cf, equations, node_count
from common.syntax.desugar import dep_translation
from common.syntax.formula import BOT, And, Dep, Eq, Formula, Or, SelImp
from common.utils.exceptions import ClassDefinabilityError, ValidationError
from common.utils.logger import log_manager
from services import enumeration_service as enum

logger = log_manager.get_logger(__name__)

_CHI_DIALECTS = (Dialect.COD, Dialect.COI)


def _check_dialect(dialect: Dialect) -> None:
    if dialect not in _CHI_DIALECTS:
        raise ValidationError(
            f"该构造只有 COD 与 COi 两种写法，不支持 {dialect.value}",
            {"dialect": dialect.value},
        )


def _ordered(sig: Signature, bindings: Dict[str, str]) -> Tuple[Tuple[str, str], ...]:
    return tuple((v, bindings[v]) for v in sig.sort_vars(bindings))


def warn_if_large(phi: Formula, what: str) -> int:
    """结点数超过 NODE_COUNT_WARNING 时记录警告，返回结点数"""
    count = node_count(phi)
    if count > AppConfig.NODE_COUNT_WARNING:
        logger.warning(f"{what} 共 {count} 个结点，超过警告阈值 {AppConfig.NODE_COUNT_WARNING}")
    return count


# ---- Φ^F ----


def eta(var: str, f: FunctionComponent, sig: Signature) -> Formula:
    """η(V)：固定其余变量时 V 按 F_V 取值

    Args:
        var: En(F) 中的变量
        f: 函数组件
        sig: 签名

    Returns:
        ⋀_{w,p} (W=w ∧ PA_V=p □→ V=F_V(p))，W = Dom \\ (PA_V ∪ {V})
    """
    m = f.mechanism(var)
    if m is None:
        raise ValidationError(f"变量 {var} 不是内生变量", {"variable": var})
    rest = tuple(v for v in sig.dom if v != var and v not in m.parents)
    conjuncts = []
    for w in sig.value_tuples(rest):
        for p in sig.value_tuples(m.parents):
            bindings = {**dict(zip(rest, w)), **dict(zip(m.parents, p))}
            conjuncts.append(cf(_ordered(sig, bindings), Eq(var, m(p))))
    return big_and(conjuncts)


def xi(var: str, sig: Signature) -> Formula:
    """ξ(V)：干预其余全部变量不改变 V 的取值"""
    rest = tuple(v for v in sig.dom if v != var)
    conjuncts = []
    for v in sig.ran(var):
        for w in sig.value_tuples(rest):
            conjuncts.append(SelImp(Eq(var, v), cf(zip(rest, w), Eq(var, v))))
    return big_and(conjuncts)


@lru_cache(maxsize=1 << 12)
def phi_F(f: FunctionComponent) -> Formula:
    """Φ^F：团队的函数组件 ~ F

    En(F) 中的变量用 η，外生变量与常值变量用 ξ，各自按 dom 顺序。
    """
    sig = f.sig
    etas = [eta(m.var, f, sig) for m in f.mechanisms]
    fixed = [xi(v, sig) for v in sig.dom if v not in f.endogenous or v in f.cn_set]
    return big_and(etas + fixed)


# ---- Θ^T 与 χ_k ----


def theta_T(rows: Iterable[Assignment], sig: Signature) -> Formula:
    """Θ^T = ⋁_{s∈T⁻} ⋀_V V=s(V)；没有行时为 ⊥"""
    ordered = sorted(set(rows), key=Assignment.key)
    return big_or(equations(zip(sig.dom, s.values)) for s in ordered)


def _constancy(var: str, sig: Signature, dialect: Dialect) -> Formula:
    dep = Dep((), var)
    return dep if dialect is Dialect.COD else dep_translation(dep, sig)


def chi_1(sig: Signature, dialect: Dialect = Dialect.COD) -> Formula:
    """χ₁ = ⋀_V =(V)：团队至多一行"""
    _check_dialect(dialect)
    return big_and(_constancy(v, sig, dialect) for v in sig.dom)


def chi_star_1(sig: Signature, dialect: Dialect = Dialect.COD) -> Formula:
    """广义团队上的 χ₁：⋀_V (=(V) ∧ ⋀_w (W_V=w □→ =(V)))

    至多一个 ≈ 意义下的点时成立，即取值相同且函数组件两两 ~。
    """
    _check_dialect(dialect)
    conjuncts = []
    for var in sig.dom:
        rest = tuple(v for v in sig.dom if v != var)
        const = _constancy(var, sig, dialect)
        under = [cf(zip(rest, w), const) for w in sig.value_tuples(rest)] if rest else []
        conjuncts.append(big_and([const] + under))
    return big_and(conjuncts)


def _fold(chi: Formula, k: int) -> Formula:
    if k < 0:
        raise ValidationError(f"k 不能为负: {k}", {"k": k})
    if k == 0:
        return BOT
    return big_or([chi] * k)


def chi_k(k: int, sig: Signature, dialect: Dialect = Dialect.COD) -> Formula:
    """χ_k：团队至多 k 行；χ₀ = ⊥，χ_k 为 k 个 χ₁ 的张量析取"""
    return _fold(chi_1(sig, dialect), k)


def chi_star_k(k: int, sig: Signature, dialect: Dialect = Dialect.COD) -> Formula:
    return _fold(chi_star_1(sig, dialect), k)


# ---- Ξ^T ----


def _others(f: FunctionComponent) -> Formula:
    g0 = enum.representative_of(f)
    return big_or(phi_F(g) for g in enum.representatives(f.sig) if g != g0)


def _complement(rows: FrozenSet[Assignment], sig: Signature) -> List[Assignment]:
    return [s for s in enum.enum_assignments(sig) if s not in rows]


def xi_T(t: CausalTeam, sig: Signature, dialect: Dialect = Dialect.COD) -> Formula:
    """Ξ^T：团队不含与 T 等价的因果子团队

    Ξ^T = (χ_k ∨ Θ^{T̄}) ∨ ⋁_{F∈𝔽⁰σ\\{G₀}} Φ^F，|T⁻| = k+1，T̄⁻ = 𝔸σ \\ T⁻，
    G₀ 为 T 的函数组件所在 ~ 类的代表。

    Raises:
        ValidationError: T 的团队成分为空
    """
    _check_dialect(dialect)
    if t.is_empty():
        raise ValidationError("Ξ^T 要求团队成分非空")
    sig.check_same(t.sig)
    k = len(t.rows) - 1
    head = Or(chi_k(k, sig, dialect), theta_T(_complement(t.row_set, sig), sig))
    return Or(head, _others(t.fc))


def xi_star(t, sig: Signature, dialect: Dialect = Dialect.COD) -> Formula:
    """Ξ_*^T：与 Ξ^T 相同，但把 χ₁ 换成广义团队上的 χ₁

    因果团队沿用 Ξ^T 的形状；广义团队按 ~ 类切片：
    Ξ_*^T = χ*_k ∨ ⋁_{F∈𝔽⁰σ} (Θ^{𝔸σ\\(T^F)⁻} ∧ Φ^F)，k+1 为 T 的 ≈ 点数。
    """
    _check_dialect(dialect)
    sig.check_same(t.sig)
    if t.is_empty():
        raise ValidationError("Ξ_*^T 要求团队非空")
    if isinstance(t, CausalTeam):
        k = len(t.rows) - 1
        head = Or(chi_star_k(k, sig, dialect), theta_T(_complement(t.row_set, sig), sig))
        return Or(head, _others(t.fc))
    parts = slices(t)
    k = sum(len(rows) for rows in parts.values()) - 1
    disjuncts = []
    for g in enum.representatives(sig):
        rows = parts.get(similarity_key(g), frozenset())
        disjuncts.append(And(theta_T(_complement(rows, sig), sig), phi_F(g)))
    return Or(chi_star_k(k, sig, dialect), big_or(disjuncts))


# ---- 一致性公理 ----


@lru_cache(maxsize=16)
def unf(sig: Signature) -> Formula:
    """Unf = ⩒_{F∈𝔽σ} Φ^F"""
    fcs = enum.all_function_components(sig)
    logger.info(f"构造 Unf: {len(fcs)} 个析取支")
    phi = big_idisj(phi_F(f) for f in fcs)
    warn_if_large(phi, "Unf")
    return phi


def _distinct_pairs(values: Sequence[str]) -> Iterator[Tuple[str, str]]:
    for a in values:
        for b in values:
            if a != b:
                yield a, b


def beta_dc(x: str, var: str, sig: Signature) -> Formula:
    """β_DC(X,V)：X 是 V 的直接原因

    固定其余变量 Z 后，改变 X 的取值会改变 V 的取值。
    """
    if x == var:
        raise ValidationError("β_DC 的两个变量必须不同", {"variable": x})
    sig.index(x)
    rest = tuple(v for v in sig.dom if v not in (x, var))
    disjuncts = []
    for z in sig.value_tuples(rest):
        base = dict(zip(rest, z))
        for a, b in _distinct_pairs(sig.ran(x)):
            for v1, v2 in _distinct_pairs(sig.ran(var)):
                left = cf(_ordered(sig, {**base, x: a}), Eq(var, v1))
                right = cf(_ordered(sig, {**base, x: b}), Eq(var, v2))
                disjuncts.append(And(left, right))
    return big_or(disjuncts)


def beta_en(var: str, sig: Signature) -> Formula:
    """β_En(V) = ⋁_{X≠V} β_DC(X,V)：V 有直接原因"""
    return big_or(beta_dc(x, var, sig) for x in sig.dom if x != var)


@lru_cache(maxsize=16)
def one_fun(sig: Signature) -> Formula:
    """OneFun：每个有直接原因的变量受唯一函数支配"""
    conjuncts = []
    for var in sig.dom:
        rest = tuple(v for v in sig.dom if v != var)
        const = Dep((), var)
        body = big_and(cf(zip(rest, w), const) for w in sig.value_tuples(rest))
        conjuncts.append(SelImp(beta_en(var, sig), body))
    return big_and(conjuncts)


@lru_cache(maxsize=16)
def no_mix(sig: Signature) -> Formula:
    """NoMix：不能同时含有 V 有直接原因与没有直接原因的成员

    对每个 V 与每对 a, b ∈ Sem_σ（{a} ⊨ β_En(V)，{b} ⊭ β_En(V)）合取 Ξ_*^{{a,b}}。
    """
    from services.semantics_service import SatisfactionChecker

    checker = SatisfactionChecker(sig, Mode.GCT)
    sem = enum.enum_sem(sig)
    conjuncts: Dict[Formula, None] = {}
    for var in sig.dom:
        beta = beta_en(var, sig)
        caused = []
        uncaused = []
        for member in sem:
            holds = checker.sat_mask(beta, checker.points_mask([member]))
            (caused if holds else uncaused).append(member)
        for a in caused:
            for b in uncaused:
                pair = GeneralizedCausalTeam(sig, (a, b))
                conjuncts.setdefault(xi_star(pair, sig, Dialect.COD))
    logger.info(f"构造 NoMix: {len(conjuncts)} 个合取支")
    phi = big_and(conjuncts)
    warn_if_large(phi, "NoMix")
    return phi


@lru_cache(maxsize=1 << 10)
def leadsto(x: str, y: str, sig: Signature) -> Formula:
    """X ⤳ Y：存在对其余变量的某个干预，使改变 X 会改变 Y

    ⋁ {Z=z □→ ((X=x □→ Y=y) ∧ (X=x' □→ Y=y')) | Z ⊆ Dom\\{X,Y}, x≠x', y≠y'}，
    Z 为空时省去外层反事实。
    """
    if x == y:
        raise ValidationError("X ⤳ Y 要求 X 与 Y 不同", {"variable": x})
    sig.index(x)
    sig.index(y)
    rest = [v for v in sig.dom if v not in (x, y)]
    disjuncts = []
    for size in range(len(rest) + 1):
        for zs in combinations(rest, size):
            for z in sig.value_tuples(zs):
                for a, b in _distinct_pairs(sig.ran(x)):
                    for v1, v2 in _distinct_pairs(sig.ran(y)):
                        body = And(cf([(x, a)], Eq(y, v1)), cf([(x, b)], Eq(y, v2)))
                        disjuncts.append(cf(zip(zs, z), body))
    return big_or(disjuncts)


# ---- 团队类 ----


def _team_order(t: CausalTeam) -> tuple:
    return (t.fc.key(), tuple(s.key() for s in t.rows))


@dataclass(frozen=True)
class TeamClass:
    """σ 上因果团队的有限类"""

    sig: Signature
    members: FrozenSet[CausalTeam]
    mode: Mode = field(default=Mode.CT)

    def __post_init__(self):
        if self.mode is not Mode.CT:
            raise ValidationError("团队类只支持因果团队")
        members = frozenset(self.members)
        for t in members:
            if not isinstance(t, CausalTeam):
                raise ValidationError(f"团队类的成员必须是因果团队: {type(t).__name__}")
            t.sig.check_same(self.sig)
        object.__setattr__(self, "members", members)

    def __contains__(self, t: CausalTeam) -> bool:
        return t in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[CausalTeam]:
        return iter(sorted(self.members, key=_team_order))


def all_causal_teams(sig: Signature) -> Tuple[CausalTeam, ...]:
    """精确物化 ℂσ（团队类的构造与校验都需要完整的全集）"""
    widest = max(len(enum.compatible_assignments(f)) for f in enum.all_function_components(sig))
    stream = enum.enum_causal_teams(sig, UniverseBudget(max_sem_size=max(widest, 1)))
    return tuple(stream)


def _class_index(sig: Signature) -> Dict[FunctionComponent, List[FunctionComponent]]:
    index: Dict[FunctionComponent, List[FunctionComponent]] = {}
    for f in enum.all_function_components(sig):
        index.setdefault(similarity_key(f), []).append(f)
    return index


def _fail(message: str, *witness) -> None:
    logger.warning(f"团队类不满足前提: {message}")
    raise ClassDefinabilityError(message, list(witness))


def _check_nonempty(k: TeamClass) -> None:
    if not len(k):
        _fail("团队类为空")


def _check_equivalence_closed(k: TeamClass) -> None:
    index = _class_index(k.sig)
    for t in k:
        for g in index[similarity_key(t.fc)]:
            if g == t.fc or not t.row_set <= set(enum.compatible_assignments(g)):
                continue
            twin = CausalTeam(g, t.rows)
            if twin not in k:
                _fail("团队类在 ≈ 下不封闭", t, twin)


def _check_empty_teams(k: TeamClass) -> None:
    for f in enum.all_function_components(k.sig):
        empty = CausalTeam(f, ())
        if empty not in k:
            _fail("团队类缺少空团队（空团队满足任何公式）", empty)


def validate_flat_class(k: TeamClass) -> None:
    """检查 K 非空、平坦且在 ≈ 下封闭

    平坦：(T⁻, F) ∈ K 当且仅当每个 ({s}, F) ∈ K。

    Raises:
        ClassDefinabilityError: 违反的性质，witness 给出反例团队
    """
    _check_nonempty(k)
    by_fc: Dict[FunctionComponent, List[CausalTeam]] = {}
    for t in k:
        by_fc.setdefault(t.fc, []).append(t)
    for f in enum.all_function_components(k.sig):
        points = [s for s in enum.compatible_assignments(f) if CausalTeam(f, (s,)) in k]
        allowed = set(points)
        teams = by_fc.get(f, [])
        for t in teams:
            for s in t.rows:
                if s not in allowed:
                    _fail("团队类不平坦：成员的单行子团队不在类中", t, CausalTeam(f, (s,)))
        if len(teams) != 1 << len(points):
            for rows in enum.subsets_by_mask(tuple(points)):
                missing = CausalTeam(f, rows)
                if missing not in k:
                    _fail("团队类不平坦：单行子团队都在类中的团队缺失", missing)
    _check_equivalence_closed(k)


def validate_downward_class(k: TeamClass) -> None:
    """检查 K 非空、含全部空团队、因果向下封闭且在 ≈ 下封闭

    Raises:
        ClassDefinabilityError: 违反的性质，witness 给出反例团队
    """
    _check_nonempty(k)
    _check_empty_teams(k)
    for t in k:
        for s in t.rows:
            smaller = t.subteam(r for r in t.rows if r != s)
            if smaller not in k:
                _fail("团队类不是因果向下封闭的", t, smaller)
    _check_equivalence_closed(k)


def flat_class_from_points(sig: Signature, points: Iterable[Member]) -> TeamClass:
    """由一组点 (s, F) 生成的平坦且 ≈ 封闭的类

    K = {T | 对每个 s ∈ T⁻，(s, T 的函数组件) 与某个给定点 ≈}，含全部空团队。
    """
    allowed = {(s, similarity_key(f)) for s, f in points}
    members = [
        t for t in all_causal_teams(sig)
        if all((s, similarity_key(t.fc)) in allowed for s in t.rows)
    ]
    return TeamClass(sig, frozenset(members))


def downward_class_from_generators(sig: Signature, generators: Iterable[CausalTeam]) -> TeamClass:
    """生成元的 ≈ 向下闭包：K = {S | S⁻ = ∅ 或 S ≈ R ⊆ T，T 为某个生成元}"""
    gens = [(t.row_set, similarity_key(t.fc)) for t in generators]
    members = []
    for s in all_causal_teams(sig):
        key = similarity_key(s.fc)
        if s.is_empty() or any(s.row_set <= rows and key == g for rows, g in gens):
            members.append(s)
    return TeamClass(sig, frozenset(members))


def defined_class(phi: Formula, sig: Signature) -> TeamClass:
    """K_φ = {T ∈ ℂσ | T ⊨^c φ}"""
    from services.semantics_service import SatisfactionChecker

    checker = SatisfactionChecker(sig, Mode.CT)
    return TeamClass(sig, frozenset(t for t in all_causal_teams(sig) if checker.satisfies(t, phi)))


def define_flat_class(k: TeamClass) -> Formula:
    """定义平坦且 ≈ 封闭的类的 CO 公式

    φ = ⋁_{F∈𝔽⁰σ} (Θ^{T_F} ∧ Φ^F)，T_F 为 K 中与 F 相似的团队之并；
    没有这样的团队时 Θ 取 ⊥。
    """
    validate_flat_class(k)
    sig = k.sig
    grouped: Dict[FunctionComponent, List[CausalTeam]] = {}
    for t in k:
        grouped.setdefault(similarity_key(t.fc), []).append(t)
    disjuncts = []
    for g in enum.representatives(sig):
        teams = grouped.get(similarity_key(g))
        rows = ct_union_all(teams).rows if teams else ()
        disjuncts.append(And(theta_T(rows, sig), phi_F(g)))
    phi = big_or(disjuncts)
    warn_if_large(phi, "平坦类的定义公式")
    return phi


def define_downward_class(k: TeamClass, dialect: Dialect = Dialect.COD) -> Formula:
    """定义因果向下封闭且 ≈ 封闭的类：φ = ⋀_{T∈ℂσ\\K} Ξ^T

    ≈ 等价的团队给出相同的 Ξ^T，只保留一份。
    """
    validate_downward_class(k)
    sig = k.sig
    conjuncts: Dict[Formula, None] = {}
    for t in all_causal_teams(sig):
        if t not in k:
            conjuncts.setdefault(xi_T(t, sig, dialect))
    logger.info(f"向下封闭类的定义公式: {len(conjuncts)} 个 Ξ 合取支")
    phi = big_and(conjuncts)
    warn_if_large(phi, "向下封闭类的定义公式")
    return phi
