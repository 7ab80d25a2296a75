"""可推导规则库

在给定签名上实例化若干派生规则的具体推导，供 proofcheck 自检和测试使用。
"""

from typing import List, Sequence, Tuple

from common.enum import Calculus, RuleId
from common.models.equation import EquationSeq
from common.models.signature import Signature
from common.syntax.builders import big_or
from common.syntax.formula import BOT, And, Cf, Eq, Formula, IntDisj, Neg, Or
from common.utils.exceptions import ValidationError
from services.charform_service import leadsto
from services.proof.builder import DerivationBuilder
from services.proof.derivation import Derivation

Entry = Tuple[str, Calculus, Derivation]


def _pick(sig: Signature) -> Tuple[str, str]:
    """选出两个取值至少有两个的变量；只有一个时两者相同"""
    wide = [v for v in sig.dom if len(sig.ran(v)) >= 2]
    if not wide:
        raise ValidationError("派生规则库需要至少一个取值不少于两个的变量")
    return wide[0], wide[1] if len(wide) > 1 else wide[0]


def weak_modus_ponens(sig: Signature, alpha: Formula, phi: Formula) -> Derivation:
    b = DerivationBuilder(sig, Calculus.CO, [alpha, Or(Neg(alpha), phi)])
    a = b.hyp(alpha)
    major = b.hyp(Or(Neg(alpha), phi))
    neg = b.hyp(Neg(alpha))
    left = b.apply(RuleId.NEG_E, phi, a, neg)
    right = b.hyp(phi)
    b.apply(RuleId.OR_E, phi, major, left, right)
    return b.build("weak-modus-ponens")


def uniqueness(sig: Signature, a: EquationSeq, var: str, value: str, other: str) -> Derivation:
    premise = Cf(a, Eq(var, value))
    b = DerivationBuilder(sig, Calculus.CO, [premise])
    major = b.hyp(premise)
    eq = b.hyp(Eq(var, value))
    neq = b.apply(RuleId.VAL_UNQ, Neg(Eq(var, other)), eq)
    b.apply(RuleId.CF_SUB, Cf(a, Neg(Eq(var, other))), major, neq)
    return b.build("uniqueness")


def extraction(sig: Signature, a: EquationSeq, phi: Formula, psi: Formula) -> Derivation:
    premise = Cf(a, And(phi, psi))
    b = DerivationBuilder(sig, Calculus.CO, [premise])
    major = b.hyp(premise)
    conj = b.hyp(And(phi, psi))
    left = b.apply(RuleId.AND_E_L, phi, conj)
    b.apply(RuleId.CF_SUB, Cf(a, phi), major, left)
    return b.build("extraction")


def negation_in(sig: Signature, a: EquationSeq, alpha: Formula) -> Derivation:
    """¬(X=x □→ α) ⊢ X=x □→ ¬α"""
    premise = Neg(Cf(a, alpha))
    b = DerivationBuilder(sig, Calculus.CO, [premise])
    h = b.hyp(premise)
    b.apply(RuleId.NEG_CF_E, Cf(a, Neg(alpha)), h)
    return b.build("negation-in")


def negation_out(sig: Signature, a: EquationSeq, alpha: Formula) -> Derivation:
    """X=x □→ ¬α ⊢ ¬(X=x □→ α)"""
    premise = Cf(a, Neg(alpha))
    b = DerivationBuilder(sig, Calculus.CO, [premise])
    neg = b.hyp(premise)
    pos = b.hyp(Cf(a, alpha))
    both = b.apply(RuleId.CF_AND_I, Cf(a, And(Neg(alpha), alpha)), neg, pos)
    conj = b.hyp(And(Neg(alpha), alpha))
    right = b.apply(RuleId.AND_E_R, alpha, conj)
    left = b.apply(RuleId.AND_E_L, Neg(alpha), conj)
    bot = b.apply(RuleId.NEG_E, BOT, right, left)
    cf_bot = b.apply(RuleId.CF_SUB, Cf(a, BOT), both, bot)
    absurd = b.apply(RuleId.CF_BOT_E, BOT, cf_bot)
    b.apply(RuleId.NEG_I, Neg(Cf(a, alpha)), absurd)
    return b.build("negation-out")


def _distribute(b: DerivationBuilder, node: int, a: EquationSeq, items: Sequence[Formula]) -> int:
    """从 X=x □→ ⋁items 推出 ⋁(X=x □→ item)"""
    if len(items) == 1:
        return node
    split = b.apply(RuleId.CF_OR_DST_FWD, Or(Cf(a, items[0]), Cf(a, big_or(items[1:]))), node)
    if len(items) == 2:
        return split
    head = Cf(a, items[0])
    target = Or(head, big_or(Cf(a, x) for x in items[1:]))
    left = b.apply(RuleId.OR_I_L, target, b.hyp(head))
    tail = b.hyp(Cf(a, big_or(items[1:])))
    right = b.apply(RuleId.OR_I_R, target, _distribute(b, tail, a, items[1:]))
    return b.apply(RuleId.OR_E, target, split, left, right)


def definiteness(sig: Signature, a: EquationSeq, var: str) -> Derivation:
    """⊢ ⋁_{y∈Ran(Y)} (X=x □→ Y=y)"""
    if not a.pairs:
        raise ValidationError("Definiteness 需要非空的前件")
    b = DerivationBuilder(sig, Calculus.CO)
    first_var, first_value = a.pairs[0]
    eff = b.apply(RuleId.CF_EFF, Cf(a, Eq(first_var, first_value)))
    values = [Eq(var, y) for y in sig.ran(var)]
    val_def = b.apply(RuleId.VAL_DEF, big_or(values), var=var)
    inside = b.apply(RuleId.CF_SUB, Cf(a, big_or(values)), eff, val_def)
    _distribute(b, inside, a, values)
    return b.build("definiteness")


def recur_pair(sig: Signature, x: str, y: str) -> Derivation:
    premise = leadsto(x, y, sig)
    b = DerivationBuilder(sig, Calculus.CO, [premise])
    h = b.hyp(premise)
    b.apply(RuleId.RECUR, Neg(leadsto(y, x, sig)), h, chain=(x, y))
    return b.build("recur")


# ---- ⩒ 的分配律及其逆 ----


def and_idisj(sig: Signature, phi: Formula, psi: Formula, chi: Formula) -> Derivation:
    """φ ∧ (ψ ⩒ χ) ⊢ (φ∧ψ) ⩒ (φ∧χ)"""
    premise = And(phi, IntDisj(psi, chi))
    target = IntDisj(And(phi, psi), And(phi, chi))
    b = DerivationBuilder(sig, Calculus.COI_GCT, [premise])
    h = b.hyp(premise)
    left = b.apply(RuleId.AND_E_L, phi, h)
    major = b.apply(RuleId.AND_E_R, IntDisj(psi, chi), h)
    one = b.apply(RuleId.IDISJ_I_L, target, b.apply(RuleId.AND_I, And(phi, psi), left, b.hyp(psi)))
    two = b.apply(RuleId.IDISJ_I_R, target, b.apply(RuleId.AND_I, And(phi, chi), left, b.hyp(chi)))
    b.apply(RuleId.IDISJ_E, target, major, one, two)
    return b.build("and-idisj")


def and_idisj_back(sig: Signature, phi: Formula, psi: Formula, chi: Formula) -> Derivation:
    """(φ∧ψ) ⩒ (φ∧χ) ⊢ φ ∧ (ψ ⩒ χ)"""
    premise = IntDisj(And(phi, psi), And(phi, chi))
    target = And(phi, IntDisj(psi, chi))
    b = DerivationBuilder(sig, Calculus.COI_GCT, [premise])
    major = b.hyp(premise)
    branches = []
    for part, rule in ((psi, RuleId.IDISJ_I_L), (chi, RuleId.IDISJ_I_R)):
        conj = b.hyp(And(phi, part))
        left = b.apply(RuleId.AND_E_L, phi, conj)
        right = b.apply(rule, IntDisj(psi, chi), b.apply(RuleId.AND_E_R, part, conj))
        branches.append(b.apply(RuleId.AND_I, target, left, right))
    b.apply(RuleId.IDISJ_E, target, major, *branches)
    return b.build("and-idisj-back")


def or_idisj(sig: Signature, phi: Formula, psi: Formula, chi: Formula) -> Derivation:
    """φ ∨ (ψ ⩒ χ) ⊢ (φ∨ψ) ⩒ (φ∨χ)"""
    premise = Or(phi, IntDisj(psi, chi))
    b = DerivationBuilder(sig, Calculus.COI_GCT, [premise])
    h = b.hyp(premise)
    b.apply(RuleId.OR_IDISJ_DST, IntDisj(Or(phi, psi), Or(phi, chi)), h)
    return b.build("or-idisj")


def or_idisj_back(sig: Signature, phi: Formula, psi: Formula, chi: Formula) -> Derivation:
    """(φ∨ψ) ⩒ (φ∨χ) ⊢ φ ∨ (ψ ⩒ χ)"""
    premise = IntDisj(Or(phi, psi), Or(phi, chi))
    inner = IntDisj(psi, chi)
    target = Or(phi, inner)
    b = DerivationBuilder(sig, Calculus.COI_GCT, [premise])
    major = b.hyp(premise)
    branches = []
    for part, rule in ((psi, RuleId.IDISJ_I_L), (chi, RuleId.IDISJ_I_R)):
        disj = b.hyp(Or(phi, part))
        lifted = b.apply(rule, inner, b.hyp(part))
        swapped = b.apply(RuleId.OR_COM, Or(part, phi), disj)
        replaced = b.apply(RuleId.OR_SUB, Or(inner, phi), swapped, lifted)
        branches.append(b.apply(RuleId.OR_COM, target, replaced))
    b.apply(RuleId.IDISJ_E, target, major, *branches)
    return b.build("or-idisj-back")


def cf_idisj(sig: Signature, a: EquationSeq, psi: Formula, chi: Formula) -> Derivation:
    """X=x □→ (ψ ⩒ χ) ⊢ (X=x □→ ψ) ⩒ (X=x □→ χ)"""
    premise = Cf(a, IntDisj(psi, chi))
    b = DerivationBuilder(sig, Calculus.COI_GCT, [premise])
    h = b.hyp(premise)
    b.apply(RuleId.CF_IDISJ_DST, IntDisj(Cf(a, psi), Cf(a, chi)), h)
    return b.build("cf-idisj")


def cf_idisj_back(sig: Signature, a: EquationSeq, psi: Formula, chi: Formula) -> Derivation:
    """(X=x □→ ψ) ⩒ (X=x □→ χ) ⊢ X=x □→ (ψ ⩒ χ)"""
    premise = IntDisj(Cf(a, psi), Cf(a, chi))
    inner = IntDisj(psi, chi)
    b = DerivationBuilder(sig, Calculus.COI_GCT, [premise])
    major = b.hyp(premise)
    branches = []
    for part, rule in ((psi, RuleId.IDISJ_I_L), (chi, RuleId.IDISJ_I_R)):
        outer = b.hyp(Cf(a, part))
        lifted = b.apply(rule, inner, b.hyp(part))
        branches.append(b.apply(RuleId.CF_SUB, Cf(a, inner), outer, lifted))
    b.apply(RuleId.IDISJ_E, Cf(a, inner), major, *branches)
    return b.build("cf-idisj-back")


def derived_library(sig: Signature) -> List[Entry]:
    """在 sig 上实例化全部派生规则

    Returns:
        (名称, 演算, 推导) 列表
    """
    x, y = _pick(sig)
    x0 = sig.ran(x)[0]
    y0, y1 = sig.ran(y)[0], sig.ran(y)[1]
    a = EquationSeq.of((x, x0))
    alpha = Eq(y, y0)
    beta = Eq(y, y1)
    gamma = Eq(x, x0)

    entries: List[Derivation] = [
        weak_modus_ponens(sig, alpha, gamma),
        uniqueness(sig, a, y, y0, y1),
        extraction(sig, a, alpha, gamma),
        negation_in(sig, a, alpha),
        negation_out(sig, a, alpha),
        definiteness(sig, a, y),
    ]
    result: List[Entry] = [(d.name, Calculus.CO, d) for d in entries]
    if x != y:
        d = recur_pair(sig, x, y)
        result.append((d.name, Calculus.CO, d))
    for d in (
        and_idisj(sig, gamma, alpha, beta),
        and_idisj_back(sig, gamma, alpha, beta),
        or_idisj(sig, gamma, alpha, beta),
        or_idisj_back(sig, gamma, alpha, beta),
        cf_idisj(sig, a, alpha, beta),
        cf_idisj_back(sig, a, alpha, beta),
    ):
        result.append((d.name, Calculus.COI_GCT, d))
    return result
