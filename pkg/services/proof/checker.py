"""推导检查

每个结点带有显式的假设集，撤销只在本地检查：对第 i 个前提，
其假设集减去规则在该位置撤销的公式后必须包含在本结点的假设集中。
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from common.enum import Calculus, RuleId
from common.models.signature import Signature
from common.syntax.builders import big_or, cf
from common.syntax.formula import (
    And,
    Bot,
    Cf,
    Dep,
    Eq,
    Formula,
    IntDisj,
    Neg,
    Or,
)
from common.syntax.wellformed import cf_free, classify, is_co
from common.utils.exceptions import BaseError, StepError
from common.utils.logger import log_manager
from services.charform_service import leadsto, no_mix, one_fun, unf
from services.proof.derivation import Derivation, Node
from services.proof.rules import RULES, admitted, dep0_replacements, dialect_of, discharged
from services.semantics_service import check_formula

logger = log_manager.get_logger(__name__)


@dataclass
class CheckResult:
    """检查结果；不通过时给出第一个出错的结点与原因"""

    ok: bool
    node: Optional[int] = None
    rule: Optional[str] = None
    reason: str = ""
    checked: int = 0

    def as_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"ok": self.ok, "checked": self.checked}
        if not self.ok:
            data.update({"node": self.node, "rule": self.rule, "reason": self.reason})
        return data


def is_bot(phi: Formula) -> bool:
    """⊥ 或其展开 X=x ∧ X≠x"""
    if isinstance(phi, Bot):
        return True
    return (
        isinstance(phi, And)
        and isinstance(phi.left, Eq)
        and isinstance(phi.right, Neg)
        and phi.right.child == phi.left
    )


class _Step:
    def __init__(self, node: Node, premises: Sequence[Node], calculus: Calculus, sig: Signature):
        self.node = node
        self.c = node.conclusion
        self.p = [n.conclusion for n in premises]
        self.calculus = calculus
        self.sig = sig

    def fail(self, message: str):
        raise StepError(f"{self.node.rule.value}: {message}", self.node.index, self.node.rule.value)

    def require(self, condition: bool, message: str) -> None:
        if not condition:
            self.fail(message)

    def shape(self, phi: Formula, kind, what: str):
        if not isinstance(phi, kind):
            self.fail(f"{what}应为 {kind.__name__}，得到 {phi}")
        return phi

    def co(self, alpha: Formula) -> None:
        if self.calculus.extended and not is_co(alpha):
            self.fail(f"扩展演算中此处的 α 必须是 CO 公式: {alpha}")

    def count(self, n: int) -> None:
        self.require(len(self.p) == n, f"需要 {n} 个前提，给出了 {len(self.p)} 个")


def _hyp(st: _Step) -> None:
    st.require(st.c in st.node.hyps, "结论必须是本结点的假设之一")


def _val_def(st: _Step) -> None:
    candidates = [st.node.var] if st.node.var else list(st.sig.dom)
    for var in candidates:
        if var in st.sig and st.c == big_or(Eq(var, x) for x in st.sig.ran(var)):
            return
    st.fail("结论不是 ⋁_{x∈Ran(X)} X=x")


def _val_unq(st: _Step) -> None:
    eq = st.shape(st.p[0], Eq, "前提")
    neg = st.shape(st.c, Neg, "结论")
    other = st.shape(neg.child, Eq, "结论中被否定的公式")
    st.require(other.var == eq.var, "前提与结论的变量不同")
    st.require(other.value != eq.value, "要求 x' ≠ x")


def _and_i(st: _Step) -> None:
    st.require(st.c == And(st.p[0], st.p[1]), "结论应为两个前提的合取")


def _and_e(side: str) -> Callable[[_Step], None]:
    def check(st: _Step) -> None:
        conj = st.shape(st.p[0], And, "前提")
        st.require(st.c == getattr(conj, side), f"结论应为前提合取的{'左' if side == 'left' else '右'}支")

    return check


def _or_i(side: str) -> Callable[[_Step], None]:
    def check(st: _Step) -> None:
        disj = st.shape(st.c, Or, "结论")
        st.require(getattr(disj, side) == st.p[0], "前提不是结论中对应的析取支")

    return check


def _or_e(st: _Step) -> None:
    st.shape(st.p[0], Or, "第一个前提")
    st.require(st.p[1] == st.c and st.p[2] == st.c, "两个分支的结论都必须等于本结点的结论")
    st.co(st.c)


def _neg_i(st: _Step) -> None:
    neg = st.shape(st.c, Neg, "结论")
    st.require(is_bot(st.p[0]), "前提必须是 ⊥")
    st.co(neg.child)


def _neg_e(st: _Step) -> None:
    st.require(st.p[1] == Neg(st.p[0]), "第二个前提必须是第一个前提的否定")
    st.co(st.p[0])


def _raa(st: _Step) -> None:
    st.require(is_bot(st.p[0]), "前提必须是 ⊥")
    st.co(st.c)


def _cf_eff(st: _Step) -> None:
    f = st.shape(st.c, Cf, "结论")
    eq = st.shape(f.consequent, Eq, "结论的后件")
    st.require((eq.var, eq.value) in f.antecedent.pairs, "后件必须是前件中的一个等式")


def _cf_cmp(st: _Step) -> None:
    first = st.shape(st.p[0], Cf, "第一个前提")
    w = st.shape(first.consequent, Eq, "第一个前提的后件")
    second = st.shape(st.p[1], Cf, "第二个前提")
    st.require(second.antecedent == first.antecedent, "两个前提的前件必须相同")
    st.require(cf_free(second.consequent), "γ 必须不含 □→")
    f = st.shape(st.c, Cf, "结论")
    st.require(
        f.antecedent.pairs == first.antecedent.pairs + ((w.var, w.value),),
        "结论的前件应为 X=x ∧ W=w",
    )
    st.require(f.consequent == second.consequent, "结论的后件应为 γ")


def _cf_bot_e(st: _Step) -> None:
    f = st.shape(st.p[0], Cf, "前提")
    st.require(is_bot(f.consequent), "前提的后件必须是 ⊥")
    st.require(f.antecedent.consistent(), "前提的前件必须一致")


def _bot_cf_e(st: _Step) -> None:
    f = st.shape(st.c, Cf, "结论")
    st.require(not f.antecedent.consistent(), "前件必须含有 X=x ∧ X=x'（x ≠ x'）")


def _drops_duplicate(longer, shorter) -> bool:
    if len(longer) != len(shorter) + 1:
        return False
    for i, pair in enumerate(longer):
        if longer[:i] + longer[i + 1 :] == shorter and pair in shorter:
            return True
    return False


def _cf_ctr(st: _Step) -> None:
    before = st.shape(st.p[0], Cf, "前提")
    after = st.shape(st.c, Cf, "结论")
    st.require(after.consequent == before.consequent, "后件必须相同")
    st.require(
        _drops_duplicate(before.antecedent.pairs, after.antecedent.pairs),
        "结论的前件应为前提的前件去掉一个重复的等式",
    )


def _cf_wk(st: _Step) -> None:
    before = st.shape(st.p[0], Cf, "前提")
    after = st.shape(st.c, Cf, "结论")
    st.require(after.consequent == before.consequent, "后件必须相同")
    st.require(
        _drops_duplicate(after.antecedent.pairs, before.antecedent.pairs),
        "结论的前件应为前提的前件重复其中一个等式",
    )


def _cf_sub(st: _Step) -> None:
    major = st.shape(st.p[0], Cf, "第一个前提")
    f = st.shape(st.c, Cf, "结论")
    st.require(f.antecedent == major.antecedent, "前件必须相同")
    st.require(f.consequent == st.p[1], "结论的后件应为第二个前提的结论")


def _cf_and_i(st: _Step) -> None:
    left = st.shape(st.p[0], Cf, "第一个前提")
    right = st.shape(st.p[1], Cf, "第二个前提")
    st.require(left.antecedent == right.antecedent, "两个前提的前件必须相同")
    st.require(st.c == Cf(left.antecedent, And(left.consequent, right.consequent)), "结论应为 X=x □→ φ∧ψ")


def _cf_or_dst_fwd(st: _Step) -> None:
    f = st.shape(st.p[0], Cf, "前提")
    disj = st.shape(f.consequent, Or, "前提的后件")
    a = f.antecedent
    st.require(st.c == Or(Cf(a, disj.left), Cf(a, disj.right)), "结论应为 (X=x □→ φ) ∨ (X=x □→ ψ)")


def _cf_or_dst_bwd(st: _Step) -> None:
    disj = st.shape(st.p[0], Or, "前提")
    left = st.shape(disj.left, Cf, "前提的左支")
    right = st.shape(disj.right, Cf, "前提的右支")
    st.require(left.antecedent == right.antecedent, "两个析取支的前件必须相同")
    st.require(st.c == Cf(left.antecedent, Or(left.consequent, right.consequent)), "结论应为 X=x □→ φ∨ψ")


def _cf_extr(st: _Step) -> None:
    outer = st.shape(st.p[0], Cf, "前提")
    inner = st.shape(outer.consequent, Cf, "前提的后件")
    st.require(outer.antecedent.consistent(), "外层前件必须一致")
    rest = outer.antecedent.without(inner.antecedent.variables())
    expected = cf(rest + inner.antecedent.pairs, inner.consequent)
    st.require(st.c == expected, f"结论应为 {expected}")


def _cf_exp(st: _Step) -> None:
    outer = st.shape(st.c, Cf, "结论")
    inner = st.shape(outer.consequent, Cf, "结论的后件")
    shared = set(outer.antecedent.variables()) & set(inner.antecedent.variables())
    st.require(not shared, f"X 与 Y 必须不相交，共有变量 {sorted(shared)}")
    st.require(
        st.p[0] == Cf(outer.antecedent + inner.antecedent, inner.consequent),
        "前提应为 (X=x ∧ Y=y) □→ φ",
    )


def _neg_cf_e(st: _Step) -> None:
    neg = st.shape(st.p[0], Neg, "前提")
    f = st.shape(neg.child, Cf, "前提中被否定的公式")
    st.require(st.c == Cf(f.antecedent, Neg(f.consequent)), "结论应为 X=x □→ ¬α")
    st.co(f.consequent)


def _recur(st: _Step) -> None:
    chain = st.node.chain
    st.require(len(chain) >= 2, "⤳ 链至少需要两个变量")
    st.require(len(set(chain)) == len(chain), "⤳ 链中的变量必须两两不同")
    for var in chain:
        st.require(var in st.sig, f"未声明的变量: {var}")
    st.count(len(chain) - 1)
    for i, premise in enumerate(st.p):
        st.require(premise == leadsto(chain[i], chain[i + 1], st.sig), f"第 {i + 1} 个前提应为 {chain[i]} ⤳ {chain[i + 1]}")
    st.require(st.c == Neg(leadsto(chain[-1], chain[0], st.sig)), f"结论应为 ¬({chain[-1]} ⤳ {chain[0]})")


def _or_com(st: _Step) -> None:
    disj = st.shape(st.p[0], Or, "前提")
    st.require(st.c == Or(disj.right, disj.left), "结论应交换两个析取支")


def _or_ass(st: _Step) -> None:
    disj = st.shape(st.p[0], Or, "前提")
    inner = st.shape(disj.left, Or, "前提的左支")
    st.require(st.c == Or(inner.left, Or(inner.right, disj.right)), "结论应为 φ ∨ (ψ ∨ χ)")


def _or_sub(st: _Step) -> None:
    disj = st.shape(st.p[0], Or, "第一个前提")
    st.require(st.c == Or(st.p[1], disj.right), "结论应为 χ ∨ ψ")


def _idisj_i(side: str) -> Callable[[_Step], None]:
    def check(st: _Step) -> None:
        disj = st.shape(st.c, IntDisj, "结论")
        st.require(getattr(disj, side) == st.p[0], "前提不是结论中对应的析取支")

    return check


def _idisj_e(st: _Step) -> None:
    st.shape(st.p[0], IntDisj, "第一个前提")
    st.require(st.p[1] == st.c and st.p[2] == st.c, "两个分支的结论都必须等于本结点的结论")


def _or_idisj_dst(st: _Step) -> None:
    disj = st.shape(st.p[0], Or, "前提")
    inner = st.shape(disj.right, IntDisj, "前提的右支")
    expected = IntDisj(Or(disj.left, inner.left), Or(disj.left, inner.right))
    st.require(st.c == expected, "结论应为 (φ∨ψ) ⩒ (φ∨χ)")


def _cf_idisj_dst(st: _Step) -> None:
    f = st.shape(st.p[0], Cf, "前提")
    inner = st.shape(f.consequent, IntDisj, "前提的后件")
    a = f.antecedent
    st.require(st.c == IntDisj(Cf(a, inner.left), Cf(a, inner.right)), "结论应为 (X=x □→ ψ) ⩒ (X=x □→ χ)")


def _axiom(build: Callable[[Signature], Formula], name: str) -> Callable[[_Step], None]:
    def check(st: _Step) -> None:
        st.require(st.c == build(st.sig), f"结论不是当前签名上的 {name} 公理")

    return check


def _dep_i0(st: _Step) -> None:
    eq = st.shape(st.p[0], Eq, "前提")
    st.require(st.c == Dep((), eq.var), "结论应为 =(X)")


def _dep_i(st: _Step) -> None:
    dep = st.shape(st.c, Dep, "结论")
    st.require(bool(dep.xs), "结论必须是 =(X₁,…,Xₙ;Y)，n ≥ 1")
    st.require(st.p[0] == Dep((), dep.y), "前提应为 =(Y)")


def _dep0_e(st: _Step) -> None:
    st.require(st.node.occurrence is not None, "需要给出被替换的出现位置")
    st.require(len(st.p) >= 1, "缺少主前提")
    cases = dep0_replacements(st.p[0], st.node.occurrence, st.sig)
    st.count(1 + len(cases))
    for premise in st.p[1:]:
        st.require(premise == st.c, "每个分支的结论都必须等于本结点的结论")


def _dep_e(st: _Step) -> None:
    st.require(len(st.p) >= 1, "缺少主前提")
    dep = st.shape(st.p[0], Dep, "第一个前提")
    st.count(1 + len(dep.xs))
    for x, premise in zip(dep.xs, st.p[1:]):
        st.require(premise == Dep((), x), f"前提应为 =({x})")
    st.require(st.c == Dep((), dep.y), "结论应为 =(Y)")


_SCHEMAS: Dict[RuleId, Callable[[_Step], None]] = {
    RuleId.HYP: _hyp,
    RuleId.VAL_DEF: _val_def,
    RuleId.VAL_UNQ: _val_unq,
    RuleId.AND_I: _and_i,
    RuleId.AND_E_L: _and_e("left"),
    RuleId.AND_E_R: _and_e("right"),
    RuleId.OR_I_L: _or_i("left"),
    RuleId.OR_I_R: _or_i("right"),
    RuleId.OR_E: _or_e,
    RuleId.NEG_I: _neg_i,
    RuleId.NEG_E: _neg_e,
    RuleId.RAA: _raa,
    RuleId.CF_EFF: _cf_eff,
    RuleId.CF_CMP: _cf_cmp,
    RuleId.CF_BOT_E: _cf_bot_e,
    RuleId.BOT_CF_E: _bot_cf_e,
    RuleId.CF_CTR: _cf_ctr,
    RuleId.CF_WK: _cf_wk,
    RuleId.CF_SUB: _cf_sub,
    RuleId.CF_AND_I: _cf_and_i,
    RuleId.CF_OR_DST_FWD: _cf_or_dst_fwd,
    RuleId.CF_OR_DST_BWD: _cf_or_dst_bwd,
    RuleId.CF_EXTR: _cf_extr,
    RuleId.CF_EXP: _cf_exp,
    RuleId.NEG_CF_E: _neg_cf_e,
    RuleId.RECUR: _recur,
    RuleId.OR_COM: _or_com,
    RuleId.OR_ASS: _or_ass,
    RuleId.OR_SUB: _or_sub,
    RuleId.IDISJ_I_L: _idisj_i("left"),
    RuleId.IDISJ_I_R: _idisj_i("right"),
    RuleId.IDISJ_E: _idisj_e,
    RuleId.OR_IDISJ_DST: _or_idisj_dst,
    RuleId.CF_IDISJ_DST: _cf_idisj_dst,
    RuleId.UNF: _axiom(unf, "Unf"),
    RuleId.DEP_I0: _dep_i0,
    RuleId.DEP_I: _dep_i,
    RuleId.DEP0_E: _dep0_e,
    RuleId.DEP_E: _dep_e,
    RuleId.ONE_FUN: _axiom(one_fun, "OneFun"),
    RuleId.NO_MIX: _axiom(no_mix, "NoMix"),
}


def _check_language(st: _Step, phi: Formula, what: str) -> None:
    try:
        check_formula(phi, st.sig)
    except BaseError as exc:
        st.fail(f"{what}不合法: {exc.message}")
    found = classify(phi)
    dialect = dialect_of(st.calculus)
    st.require(dialect.admits(found), f"{what}属于 {found.value}，不在演算 {st.calculus.value} 的语言 {dialect.value} 中")


def check_step(node: Node, premises: Sequence[Node], calculus: Calculus, sig: Signature) -> None:
    """检查单个结点

    Args:
        node: 待检查的结点
        premises: 按 node.premises 顺序给出的前提结点
        calculus: 演算
        sig: 签名

    Raises:
        StepError: 结点不符合规则模式、附加条件或假设撤销要求
    """
    st = _Step(node, premises, calculus, sig)
    spec = RULES[node.rule]
    if not admitted(node.rule, calculus):
        st.fail(f"规则不属于演算 {calculus.value}")
    _check_language(st, node.conclusion, "结论")
    for h in node.hyps:
        _check_language(st, h, "假设")
    if spec.arity is not None:
        st.count(spec.arity)
    _SCHEMAS[node.rule](st)

    try:
        sets = discharged(node.rule, node.conclusion, st.p, sig, node.occurrence)
    except StepError as exc:
        st.fail(exc.message)
    for i, premise in enumerate(premises):
        rest = premise.hyps - sets[i]
        if i in spec.closed and rest:
            st.fail(f"前提 {premise.index} 除被撤销的假设外不能带其他假设")
        missing = rest - node.hyps
        if missing:
            shown = ", ".join(sorted(str(h) for h in missing))
            st.fail(f"前提 {premise.index} 的假设 {shown} 没有出现在本结点的假设中")


def check(d: Derivation, calculus: Calculus, sig: Signature) -> CheckResult:
    """检查整个推导

    每个结点只能引用排在它前面的结点；最后一个结点的假设必须包含在声明的前提中。
    """
    checked = 0
    for pos, node in enumerate(d.nodes):
        try:
            premises: List[Node] = []
            for ref in node.premises:
                where = d.position(ref)
                if where is None or where >= pos:
                    raise StepError(
                        f"{node.rule.value}: 前提 {ref} 必须是排在前面的结点", node.index, node.rule.value
                    )
                premises.append(d.nodes[where])
            check_step(node, premises, calculus, sig)
        except StepError as exc:
            logger.info(f"推导 {d.name or '<未命名>'} 在结点 {node.index} 处不通过: {exc.message}")
            return CheckResult(False, node.index, node.rule.value, exc.message, checked)
        checked += 1
    extra = d.root.hyps - d.assumptions
    if extra:
        shown = ", ".join(sorted(str(h) for h in extra))
        reason = f"结论依赖未声明的假设: {shown}"
        return CheckResult(False, d.root.index, d.root.rule.value, reason, checked)
    logger.debug(f"推导 {d.name or '<未命名>'} 检查通过，共 {checked} 个结点")
    return CheckResult(True, checked=checked)
