"""团队运算：干预、~ 关系、≈ 关系、并与两种团队之间的转换"""

from functools import lru_cache, reduce
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from common.models.causal_team import (
    CausalTeam,
    GeneralizedCausalTeam,
    compatible,
)
from common.models.equation import EquationSeq
from common.models.function_component import FunctionComponent, Mechanism
from common.models.signature import Assignment
from common.utils.exceptions import (
    InconsistentEquationError,
    NotSimilarError,
    NotUniformError,
    SignatureMismatchError,
    ValidationError,
)
from common.utils.logger import log_manager

logger = log_manager.get_logger(__name__)


def cn_set(f: FunctionComponent) -> FrozenSet[str]:
    """Cn(F)"""
    return f.cn_set


def _screen(eq: EquationSeq, sig) -> None:
    eq.validate(sig)
    bad = eq.conflict()
    if bad is not None:
        raise InconsistentEquationError(bad)


def _check_order(g: FunctionComponent, order: Sequence[str]) -> Tuple[str, ...]:
    order = tuple(order)
    if sorted(order) != sorted(g.sig.dom):
        raise ValidationError("拓扑序必须恰好列出全部变量一次")
    position = {v: i for i, v in enumerate(order)}
    for m in g.mechanisms:
        if any(position[p] > position[m.var] for p in m.parents):
            raise ValidationError(f"给定顺序不是拓扑序: {m.var} 排在其父变量之前")
    return order


def intervene_pair(
    s: Assignment,
    f: FunctionComponent,
    eq: EquationSeq,
    order: Optional[Sequence[str]] = None,
) -> Tuple[Assignment, FunctionComponent]:
    """do(X=x) 作用于单个 (s, F)

    Args:
        s: 与 f 相容的赋值
        f: 递归的函数组件
        eq: 一致的干预等式序列
        order: 可选的 G_{F_{X=x}} 拓扑序，默认使用确定性拓扑序

    Returns:
        (s_{X=x}, F_{X=x})

    Raises:
        InconsistentEquationError: 等式序列给同一变量赋了不同值
    """
    if s.sig != f.sig:
        raise SignatureMismatchError("赋值与函数组件不属于同一签名")
    _screen(eq, f.sig)
    if order is None:
        return _intervene_cached(s, f, eq)
    return _solve(s, f, eq, order)


@lru_cache(maxsize=1 << 16)
def _intervene_cached(
    s: Assignment, f: FunctionComponent, eq: EquationSeq
) -> Tuple[Assignment, FunctionComponent]:
    return _solve(s, f, eq, None)


def _solve(s, f, eq, order):
    sig = f.sig
    forced = eq.as_dict()
    g = f.restrict(forced)
    values = list(s.values)
    for var, value in forced.items():
        values[sig.index(var)] = value
    sequence = g.topological_order if order is None else _check_order(g, order)
    for var in sequence:
        m = g.mechanism(var)
        if m is None:
            continue
        values[sig.index(var)] = m(tuple(values[sig.index(p)] for p in m.parents))
    result = Assignment(sig, values, validate=False)
    assert compatible(result, g), "干预结果与干预后的函数组件不相容"
    return result, g


def intervene_ct(t: CausalTeam, eq: EquationSeq) -> CausalTeam:
    """T_{X=x}：逐行干预并按集合去重"""
    _screen(eq, t.sig)
    g = t.fc.restrict(eq.as_dict())
    rows = tuple(_intervene_cached(s, t.fc, eq)[0] for s in t.rows)
    return CausalTeam(g, rows)


def intervene_gct(t: GeneralizedCausalTeam, eq: EquationSeq) -> GeneralizedCausalTeam:
    """{(s_{X=x}, F_{X=x}) | (s,F) ∈ T}"""
    _screen(eq, t.sig)
    members = tuple(_intervene_cached(s, f, eq) for s, f in t.members)
    return GeneralizedCausalTeam(t.sig, members)


def fc_similar(f: FunctionComponent, g: FunctionComponent) -> bool:
    """F ~ G：去掉哑元参数与常值函数后相同

    逐变量比较 F_V(xy) = G_V(xz)，x 取遍公共父变量，y、z 取遍各自独有的父变量。
    """
    if f.sig != g.sig:
        raise SignatureMismatchError("函数组件不属于同一签名")
    if f is g:
        return True
    if f.core_variables != g.core_variables:
        return False
    sig = f.sig
    for var in f.core_variables:
        mf, mg = f.mechanism(var), g.mechanism(var)
        union = sig.sort_vars(mf.parents + mg.parents)
        pos = {v: i for i, v in enumerate(union)}
        for values in sig.value_tuples(union):
            left = mf(tuple(values[pos[p]] for p in mf.parents))
            right = mg(tuple(values[pos[p]] for p in mg.parents))
            if left != right:
                return False
    return True


def similarity_key(f: FunctionComponent) -> FunctionComponent:
    """~ 类的规范代表（去哑元形式）"""
    return f.reduced


def ct_equivalent(s: CausalTeam, t: CausalTeam) -> bool:
    """S ≈ T：S ~ T 且 S⁻ = T⁻"""
    return s.row_set == t.row_set and fc_similar(s.fc, t.fc)


def slices(t: GeneralizedCausalTeam) -> Dict[FunctionComponent, FrozenSet[Assignment]]:
    """按 ~ 类划分成员：{类代表: (T^F)⁻}"""
    grouped: Dict[FunctionComponent, set] = {}
    for s, f in t.members:
        grouped.setdefault(similarity_key(f), set()).add(s)
    return {k: frozenset(v) for k, v in grouped.items()}


def slice_of(t: GeneralizedCausalTeam, f: FunctionComponent) -> FrozenSet[Assignment]:
    """(T^F)⁻：函数组件 ~ F 的成员的赋值集合"""
    return slices(t).get(similarity_key(f), frozenset())


def gct_equivalent(s: GeneralizedCausalTeam, t: GeneralizedCausalTeam) -> bool:
    """S ≈ T：对每个 F 都有 (S^F)⁻ = (T^F)⁻"""
    if s.sig != t.sig:
        raise SignatureMismatchError("团队不属于同一签名")
    return slices(s) == slices(t)


def ct_union(s: CausalTeam, t: CausalTeam) -> CausalTeam:
    """S ∪ T（要求 S ~ T）

    En(H) = (En(F)\\Cn(F)) ∩ (En(G)\\Cn(G))，PA^H_V = PA^F_V ∩ PA^G_V，
    H_V(p) = F_V(p x)，其中 x 为 F 独有父变量的任意补齐取值。
    """
    if not fc_similar(s.fc, t.fc):
        raise NotSimilarError()
    sig = s.sig
    f, g = s.fc, t.fc
    mechs = []
    for var in sorted(f.core_variables & g.core_variables, key=sig.index):
        mf, mg = f.mechanism(var), g.mechanism(var)
        shared = tuple(p for p in mf.parents if p in mg.parents)
        padding = {p: sig.ran(p)[0] for p in mf.parents if p not in shared}
        table = []
        for key in sig.value_tuples(shared):
            bound = {**dict(zip(shared, key)), **padding}
            table.append(mf(tuple(bound[p] for p in mf.parents)))
        mechs.append(Mechanism(var, shared, tuple(table)))
    h = FunctionComponent(sig, tuple(mechs))
    logger.debug(f"团队求并: {len(s)} 行 ∪ {len(t)} 行")
    return CausalTeam(h, s.rows + t.rows)


def ct_union_all(teams: Iterable[CausalTeam]) -> CausalTeam:
    """两两 ~ 的团队依次求并"""
    teams = list(teams)
    if not teams:
        raise ValidationError("至少需要一个团队")
    return reduce(ct_union, teams)


def to_gct(t: CausalTeam) -> GeneralizedCausalTeam:
    """T^g = {(s, F) | s ∈ T⁻}"""
    return GeneralizedCausalTeam(t.sig, tuple((s, t.fc) for s in t.rows))


def to_ct(t: GeneralizedCausalTeam) -> CausalTeam:
    """T^c = (T⁻, F)，要求 T 非空且全部成员使用同一个函数组件"""
    fcs = t.function_components
    if len(fcs) != 1:
        raise NotUniformError()
    return CausalTeam(fcs[0], tuple(s for s, _ in t.members))


def uniform(t: GeneralizedCausalTeam) -> bool:
    """所有成员的函数组件两两 ~"""
    fcs = t.function_components
    return all(fc_similar(fcs[0], g) for g in fcs[1:])


def is_causal_subteam(s: CausalTeam, t: CausalTeam) -> bool:
    """S ⊆ T：同一函数组件且 S⁻ ⊆ T⁻"""
    return s.fc == t.fc and s.row_set <= t.row_set


def embeds(s: CausalTeam, t: CausalTeam) -> Optional[CausalTeam]:
    """寻找 R 使 S ≈ R ⊆ T，找不到时返回 None"""
    if s.row_set <= t.row_set and fc_similar(s.fc, t.fc):
        return CausalTeam(t.fc, s.rows)
    return None
