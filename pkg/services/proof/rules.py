"""规则表：前提个数、所属演算、撤销的假设

演算之间的包含关系：
    CO ⊂ COi-gct ⊂ COi-ct（加 Unf）
    CO ⊂ COD-gct ⊂ COD-ct（加 OneFun、NoMix）
∨Com、∨Ass、∨Sub 同时属于 COi 与 COD 两族。
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from common.enum import Calculus, Dialect, RuleId
from common.models.signature import Signature
from common.syntax.builders import substitute_at
from common.syntax.formula import Cf, Dep, Eq, Formula, IntDisj, Neg, Or, subformula_at
from common.utils.exceptions import StepError

ALL = frozenset(Calculus)
EXTENDED = frozenset(c for c in Calculus if c.extended)
COI = frozenset({Calculus.COI_GCT, Calculus.COI_CT})
COD = frozenset({Calculus.COD_GCT, Calculus.COD_CT})

Discharge = Tuple[FrozenSet[Formula], ...]


@dataclass(frozen=True)
class RuleSpec:
    """单条规则的元数据

    Args:
        rule: 规则名
        arity: 前提个数；None 表示由结论或附加数据决定
        calculi: 允许使用该规则的演算
        co_restricted: 在扩展演算中，模式里的 α 只能是 CO 公式
        closed: 除被撤销的假设外不允许带其他假设的前提下标
    """

    rule: RuleId
    arity: Optional[int]
    calculi: FrozenSet[Calculus]
    co_restricted: bool = False
    closed: FrozenSet[int] = frozenset()


def _spec(rule, arity, calculi, co_restricted=False, closed=()):
    return RuleSpec(rule, arity, calculi, co_restricted, frozenset(closed))


RULES: Dict[RuleId, RuleSpec] = {
    s.rule: s
    for s in (
        _spec(RuleId.HYP, 0, ALL),
        _spec(RuleId.VAL_DEF, 0, ALL),
        _spec(RuleId.VAL_UNQ, 1, ALL),
        _spec(RuleId.AND_I, 2, ALL),
        _spec(RuleId.AND_E_L, 1, ALL),
        _spec(RuleId.AND_E_R, 1, ALL),
        _spec(RuleId.OR_I_L, 1, ALL),
        _spec(RuleId.OR_I_R, 1, ALL),
        _spec(RuleId.OR_E, 3, ALL, co_restricted=True),
        _spec(RuleId.NEG_I, 1, ALL, co_restricted=True),
        _spec(RuleId.NEG_E, 2, ALL, co_restricted=True),
        _spec(RuleId.RAA, 1, ALL, co_restricted=True),
        _spec(RuleId.CF_EFF, 0, ALL),
        _spec(RuleId.CF_CMP, 2, ALL),
        _spec(RuleId.CF_BOT_E, 1, ALL),
        _spec(RuleId.BOT_CF_E, 0, ALL),
        _spec(RuleId.CF_CTR, 1, ALL),
        _spec(RuleId.CF_WK, 1, ALL),
        _spec(RuleId.CF_SUB, 2, ALL, closed=(1,)),
        _spec(RuleId.CF_AND_I, 2, ALL),
        _spec(RuleId.CF_OR_DST_FWD, 1, ALL),
        _spec(RuleId.CF_OR_DST_BWD, 1, ALL),
        _spec(RuleId.CF_EXTR, 1, ALL),
        _spec(RuleId.CF_EXP, 1, ALL),
        _spec(RuleId.NEG_CF_E, 1, ALL, co_restricted=True),
        _spec(RuleId.RECUR, None, ALL),
        _spec(RuleId.OR_COM, 1, EXTENDED),
        _spec(RuleId.OR_ASS, 1, EXTENDED),
        _spec(RuleId.OR_SUB, 2, EXTENDED),
        _spec(RuleId.IDISJ_I_L, 1, COI),
        _spec(RuleId.IDISJ_I_R, 1, COI),
        _spec(RuleId.IDISJ_E, 3, COI),
        _spec(RuleId.OR_IDISJ_DST, 1, COI),
        _spec(RuleId.CF_IDISJ_DST, 1, COI),
        _spec(RuleId.UNF, 0, frozenset({Calculus.COI_CT})),
        _spec(RuleId.DEP_I0, 1, COD),
        _spec(RuleId.DEP_I, 1, COD),
        _spec(RuleId.DEP0_E, None, COD),
        _spec(RuleId.DEP_E, None, COD),
        _spec(RuleId.ONE_FUN, 0, frozenset({Calculus.COD_CT})),
        _spec(RuleId.NO_MIX, 0, frozenset({Calculus.COD_CT})),
    )
}

_DIALECTS = {
    Calculus.CO: Dialect.CO,
    Calculus.COI_GCT: Dialect.COI,
    Calculus.COI_CT: Dialect.COI,
    Calculus.COD_GCT: Dialect.COD,
    Calculus.COD_CT: Dialect.COD,
}


def dialect_of(calculus: Calculus) -> Dialect:
    """演算的公式语言"""
    return _DIALECTS[calculus]


def admitted(rule: RuleId, calculus: Calculus) -> bool:
    return calculus in RULES[rule].calculi


def rules_of(calculus: Calculus) -> Tuple[RuleId, ...]:
    """演算中的全部规则，按 RuleId 的声明顺序"""
    return tuple(r for r in RuleId if admitted(r, calculus))


def _expect(phi: Formula, kind, rule: RuleId, what: str):
    if not isinstance(phi, kind):
        raise StepError(f"{rule.value}: {what}的形状不对，得到 {phi}", rule=rule.value)
    return phi


def dep0_replacements(premise: Formula, occurrence: Sequence[int], sig: Signature) -> Tuple[Formula, ...]:
    """φ[X=x/=(X)]，x 按 Ran(X) 的顺序"""
    try:
        target = subformula_at(premise, tuple(occurrence))
    except IndexError:
        raise StepError(f"Dep0E: 出现位置 {list(occurrence)} 不存在", rule=RuleId.DEP0_E.value)
    if not isinstance(target, Dep) or target.xs:
        raise StepError(
            f"Dep0E: 出现位置 {list(occurrence)} 处不是常值原子 =(X)", rule=RuleId.DEP0_E.value
        )
    return tuple(
        substitute_at(premise, tuple(occurrence), Eq(target.y, x)) for x in sig.ran(target.y)
    )


def _none(arity: int) -> Discharge:
    return tuple(frozenset() for _ in range(arity))


def discharged(
    rule: RuleId,
    conclusion: Formula,
    premises: Sequence[Formula],
    sig: Signature,
    occurrence: Optional[Sequence[int]] = None,
) -> Discharge:
    """每个前提撤销的假设集合

    Args:
        rule: 规则
        conclusion: 结论
        premises: 各前提的结论
        sig: 签名
        occurrence: Dep0E 被替换的出现位置

    Raises:
        StepError: 前提或结论的形状与规则不符，无法确定撤销的假设
    """
    n = len(premises)
    if rule in (RuleId.OR_E, RuleId.IDISJ_E):
        kind = Or if rule is RuleId.OR_E else IntDisj
        major = _expect(premises[0], kind, rule, "第一个前提")
        return (frozenset(), frozenset({major.left}), frozenset({major.right}))
    if rule is RuleId.NEG_I:
        neg = _expect(conclusion, Neg, rule, "结论")
        return (frozenset({neg.child}),)
    if rule is RuleId.RAA:
        return (frozenset({Neg(conclusion)}),)
    if rule is RuleId.CF_SUB:
        major = _expect(premises[0], Cf, rule, "第一个前提")
        return (frozenset(), frozenset({major.consequent}))
    if rule is RuleId.OR_SUB:
        major = _expect(premises[0], Or, rule, "第一个前提")
        return (frozenset(), frozenset({major.left}))
    if rule is RuleId.DEP_I:
        dep = _expect(conclusion, Dep, rule, "结论")
        return (frozenset(Dep((), x) for x in dep.xs),)
    if rule is RuleId.DEP0_E:
        if occurrence is None:
            raise StepError("Dep0E 需要给出被替换的出现位置", rule=rule.value)
        cases = dep0_replacements(premises[0], occurrence, sig)
        return (frozenset(),) + tuple(frozenset({c}) for c in cases)
    return _none(n)


