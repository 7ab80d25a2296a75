"""规则的可靠性模糊测试

对演算中的每条规则随机生成 n 个具体实例：每个前提对应一个矢列 Γ ∪ 撤销集 ⊢ 前提，
结论对应 Γ ⊢ 结论。所有前提矢列在语义上成立时，结论矢列也必须成立，否则记为违例。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from config import AppConfig
from common.enum import Calculus, Dialect, Mode, RuleId
from common.models.budget import UniverseBudget
from common.models.equation import EquationSeq
from common.models.signature import Signature
from common.syntax.builders import big_or, cf, occurrence_paths
from common.syntax.formula import (
    BOT,
    And,
    Cf,
    Dep,
    Eq,
    Formula,
    IntDisj,
    Neg,
    Or,
    SelImp,
)
from common.syntax.generator import FormulaGenerator
from common.syntax.wellformed import cf_free
from common.utils.exceptions import StepError
from common.utils.logger import log_manager
from common.utils.rng import choice, keyed_generator
from services.charform_service import leadsto, no_mix, one_fun, unf
from services.proof.checker import check_step
from services.proof.derivation import Node
from services.proof.rules import RULES, dialect_of, discharged, rules_of
from services.semantics_service import entails

logger = log_manager.get_logger(__name__)

Instance = Tuple[Formula, List[Formula], Dict[str, Any]]


@dataclass
class RuleStats:
    instances: int = 0
    non_vacuous: int = 0
    malformed: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "instances": self.instances,
            "non_vacuous": self.non_vacuous,
            "malformed": self.malformed,
            "violations": self.violations,
        }


@dataclass
class FuzzReport:
    """每条规则的实例数、非空实例数（前提全部成立）与违例"""

    calculus: Calculus
    mode: Mode
    seed: int
    exact: bool = True
    rules: Dict[str, RuleStats] = field(default_factory=dict)

    @property
    def violations(self) -> List[Dict[str, Any]]:
        return [v for stats in self.rules.values() for v in stats.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> Dict[str, Any]:
        return {
            "calculus": self.calculus.value,
            "mode": self.mode.value,
            "seed": self.seed,
            "exact": self.exact,
            "ok": self.ok,
            "rules": {name: stats.as_dict() for name, stats in self.rules.items()},
        }


class InstanceGenerator:
    """为单条规则生成满足其模式与附加条件的随机实例"""

    def __init__(self, sig: Signature, calculus: Calculus, rng: np.random.Generator, max_depth: int = 2):
        self.sig = sig
        self.calculus = calculus
        self.rng = rng
        self.gen = FormulaGenerator(sig, rng, dialect_of(calculus), max_depth=max_depth)
        self.co_gen = FormulaGenerator(sig, rng, Dialect.CO, max_depth=max_depth)

    def _flip(self, p: float = 0.5) -> bool:
        return bool(self.rng.random() < p)

    def phi(self) -> Formula:
        return self.gen.formula()

    def alpha(self) -> Formula:
        return self.co_gen.co()

    def antecedent(self) -> EquationSeq:
        return self.gen.equations()

    def consistent_antecedent(self) -> EquationSeq:
        for _ in range(8):
            a = self.gen.equations()
            if a.consistent():
                return a
        eq = self.gen.equation()
        return EquationSeq.of((eq.var, eq.value))

    def cf_free_formula(self) -> Formula:
        for _ in range(8):
            phi = self.phi()
            if cf_free(phi):
                return phi
        return self.gen.literal()

    def follows_from(self, phi: Formula) -> Formula:
        """ψ：一半概率取 φ 的弱化，使撤销前提更常成立"""
        if self._flip():
            return self.phi()
        if isinstance(phi, And) and self._flip():
            return phi.left
        return Or(phi, self.phi())

    def wide_var(self) -> Optional[str]:
        wide = [v for v in self.sig.dom if len(self.sig.ran(v)) >= 2]
        return choice(self.rng, wide) if wide else None

    def _dep0_context(self, dep: Dep) -> Tuple[Formula, Tuple[int, ...]]:
        other = self.phi()
        shape = int(self.rng.integers(5))
        if shape == 0:
            phi = And(other, dep)
        elif shape == 1:
            phi = Or(dep, other)
        elif shape == 2:
            phi = Cf(self.antecedent(), dep)
        elif shape == 3:
            phi = SelImp(self.alpha(), dep)
        else:
            phi = dep
        return phi, choice(self.rng, occurrence_paths(phi, dep))

    def instance(self, rule: RuleId) -> Optional[Instance]:
        """(结论, 前提结论列表, 附加数据)；规则在该签名上无法实例化时返回 None"""
        R = RuleId
        phi, psi = self.phi(), self.phi()
        a = self.antecedent()
        sig = self.sig
        if rule is R.HYP:
            return phi, [], {}
        if rule is R.VAL_DEF:
            var = choice(self.rng, sig.dom)
            return big_or(Eq(var, x) for x in sig.ran(var)), [], {"var": var}
        if rule is R.VAL_UNQ:
            var = self.wide_var()
            if var is None:
                return None
            x, other = self.rng.choice(sig.ran(var), size=2, replace=False)
            return Neg(Eq(var, str(other))), [Eq(var, str(x))], {}
        if rule is R.AND_I:
            return And(phi, psi), [phi, psi], {}
        if rule is R.AND_E_L:
            return phi, [And(phi, psi)], {}
        if rule is R.AND_E_R:
            return psi, [And(phi, psi)], {}
        if rule is R.OR_I_L:
            return Or(phi, psi), [phi], {}
        if rule is R.OR_I_R:
            return Or(psi, phi), [phi], {}
        if rule is R.OR_E:
            alpha = self.alpha()
            return alpha, [Or(phi, psi), alpha, alpha], {}
        if rule is R.NEG_I:
            return Neg(self.alpha()), [BOT], {}
        if rule is R.NEG_E:
            alpha = self.alpha()
            return phi, [alpha, Neg(alpha)], {}
        if rule is R.RAA:
            return self.alpha(), [BOT], {}
        if rule is R.CF_EFF:
            var, value = choice(self.rng, a.pairs)
            return Cf(a, Eq(var, value)), [], {}
        if rule is R.CF_CMP:
            w = self.gen.equation()
            gamma = self.cf_free_formula()
            return Cf(a + EquationSeq.of((w.var, w.value)), gamma), [Cf(a, w), Cf(a, gamma)], {}
        if rule is R.CF_BOT_E:
            return phi, [Cf(self.consistent_antecedent(), BOT)], {}
        if rule is R.BOT_CF_E:
            var = self.wide_var()
            if var is None:
                return None
            x, other = self.rng.choice(sig.ran(var), size=2, replace=False)
            clash = EquationSeq.of((var, str(x)), (var, str(other)))
            return Cf(a + clash, phi), [], {}
        if rule in (R.CF_CTR, R.CF_WK):
            pairs = list(a.pairs)
            dup = choice(self.rng, pairs)
            pos = int(self.rng.integers(len(pairs) + 1))
            longer = EquationSeq(tuple(pairs[:pos] + [dup] + pairs[pos:]))
            if rule is R.CF_CTR:
                return Cf(a, phi), [Cf(longer, phi)], {}
            return Cf(longer, phi), [Cf(a, phi)], {}
        if rule is R.CF_SUB:
            target = self.follows_from(phi)
            return Cf(a, target), [Cf(a, phi), target], {}
        if rule is R.CF_AND_I:
            return Cf(a, And(phi, psi)), [Cf(a, phi), Cf(a, psi)], {}
        if rule is R.CF_OR_DST_FWD:
            return Or(Cf(a, phi), Cf(a, psi)), [Cf(a, Or(phi, psi))], {}
        if rule is R.CF_OR_DST_BWD:
            return Cf(a, Or(phi, psi)), [Or(Cf(a, phi), Cf(a, psi))], {}
        if rule is R.CF_EXTR:
            outer = self.consistent_antecedent()
            inner = self.antecedent()
            rest = outer.without(inner.variables())
            return cf(rest + inner.pairs, phi), [Cf(outer, Cf(inner, phi))], {}
        if rule is R.CF_EXP:
            if len(sig.dom) < 2:
                return None
            order = [sig.dom[int(i)] for i in self.rng.permutation(len(sig.dom))]
            k = int(self.rng.integers(1, len(order)))
            outer = EquationSeq(tuple((v, choice(self.rng, sig.ran(v))) for v in order[:k]))
            inner = EquationSeq(tuple((v, choice(self.rng, sig.ran(v))) for v in order[k:]))
            return Cf(outer, Cf(inner, phi)), [Cf(outer + inner, phi)], {}
        if rule is R.NEG_CF_E:
            alpha = self.alpha()
            return Cf(a, Neg(alpha)), [Neg(Cf(a, alpha))], {}
        if rule is R.RECUR:
            if len(sig.dom) < 2:
                return None
            size = int(self.rng.integers(2, min(3, len(sig.dom)) + 1))
            chain = tuple(sig.dom[int(i)] for i in self.rng.choice(len(sig.dom), size=size, replace=False))
            premises = [leadsto(chain[i], chain[i + 1], sig) for i in range(size - 1)]
            return Neg(leadsto(chain[-1], chain[0], sig)), premises, {"chain": chain}
        if rule is R.OR_COM:
            return Or(psi, phi), [Or(phi, psi)], {}
        if rule is R.OR_ASS:
            chi = self.phi()
            return Or(phi, Or(psi, chi)), [Or(Or(phi, psi), chi)], {}
        if rule is R.OR_SUB:
            target = self.follows_from(phi)
            return Or(target, psi), [Or(phi, psi), target], {}
        if rule is R.IDISJ_I_L:
            return IntDisj(phi, psi), [phi], {}
        if rule is R.IDISJ_I_R:
            return IntDisj(psi, phi), [phi], {}
        if rule is R.IDISJ_E:
            chi = self.phi()
            return chi, [IntDisj(phi, psi), chi, chi], {}
        if rule is R.OR_IDISJ_DST:
            chi = self.phi()
            return IntDisj(Or(phi, psi), Or(phi, chi)), [Or(phi, IntDisj(psi, chi))], {}
        if rule is R.CF_IDISJ_DST:
            return IntDisj(Cf(a, phi), Cf(a, psi)), [Cf(a, IntDisj(phi, psi))], {}
        if rule is R.UNF:
            return unf(sig), [], {}
        if rule is R.ONE_FUN:
            return one_fun(sig), [], {}
        if rule is R.NO_MIX:
            return no_mix(sig), [], {}
        if rule is R.DEP_I0:
            eq = self.gen.equation()
            return Dep((), eq.var), [eq], {}
        if rule is R.DEP_I:
            for _ in range(8):
                dep = self.gen.dependence()
                if dep.xs:
                    return dep, [Dep((), dep.y)], {}
            return None
        if rule is R.DEP0_E:
            dep = Dep((), choice(self.rng, sig.dom))
            context, path = self._dep0_context(dep)
            chi = self.phi()
            branches = [chi] * len(sig.ran(dep.y))
            return chi, [context] + branches, {"occurrence": path}
        if rule is R.DEP_E:
            for _ in range(8):
                dep = self.gen.dependence()
                if dep.xs:
                    return Dep((), dep.y), [dep] + [Dep((), x) for x in dep.xs], {}
            return None
        raise ValueError(f"没有为规则 {rule.value} 准备实例生成器")

    def hypotheses(self) -> List[Formula]:
        return [self.phi() for _ in range(int(self.rng.integers(0, 3)))]


def _sequent(hyps, phi) -> Dict[str, Any]:
    return {"hyps": sorted(str(h) for h in hyps), "concl": str(phi)}


def soundness_fuzz(
    calculus: Calculus,
    sig: Signature,
    n: int = 50,
    seed: int = 0,
    mode: Optional[Mode] = None,
    rules: Optional[Sequence[RuleId]] = None,
    budget: Optional[UniverseBudget] = None,
) -> FuzzReport:
    """对演算的每条规则做 n 次随机实例化，并用语义蕴涵检验

    Args:
        calculus: 演算
        sig: 签名（应小到可以精确判定蕴涵）
        n: 每条规则的实例数
        seed: 随机种子；每条规则使用独立的计数器随机流
        mode: 语义；默认 ct 演算用 ct 语义，其余用 gct 语义
        rules: 只测试这些规则，默认全部
        budget: 枚举预算

    Returns:
        FuzzReport
    """
    mode = mode or (Mode.CT if calculus in (Calculus.COI_CT, Calculus.COD_CT) else Mode.GCT)
    budget = budget or AppConfig.default_budget()
    selected = tuple(rules) if rules is not None else rules_of(calculus)
    report = FuzzReport(calculus, mode, seed)
    logger.info(f"可靠性模糊测试: 演算 {calculus.value}, 语义 {mode.value}, {len(selected)} 条规则, 每条 {n} 个实例")

    for rule in tqdm(selected, desc=calculus.value, disable=not AppConfig.SHOW_PROGRESS, leave=False):
        stats = report.rules.setdefault(rule.value, RuleStats())
        spec = RULES[rule]
        for i in range(n):
            gen = InstanceGenerator(sig, calculus, keyed_generator(seed, list(RuleId).index(rule), i))
            made = gen.instance(rule)
            if made is None:
                continue
            conclusion, premise_formulas, side = made
            context = frozenset(gen.hypotheses())
            try:
                sets = discharged(rule, conclusion, premise_formulas, sig, side.get("occurrence"))
            except StepError as exc:
                stats.malformed += 1
                logger.warning(f"{rule.value} 实例无法计算撤销集: {exc.message}")
                continue
            premise_hyps = [
                sets[j] if j in spec.closed else context | sets[j] for j in range(len(premise_formulas))
            ]
            if rule is RuleId.HYP:
                context = context | {conclusion}
            premises = [
                Node(j + 1, p, RuleId.HYP, hyps=h) for j, (p, h) in enumerate(zip(premise_formulas, premise_hyps))
            ]
            node = Node(len(premises) + 1, conclusion, rule, tuple(p.index for p in premises), context, **side)
            try:
                check_step(node, premises, calculus, sig)
            except StepError as exc:
                stats.malformed += 1
                logger.warning(f"{rule.value} 生成的实例不符合规则模式: {exc.message}")
                continue
            stats.instances += 1

            holds = True
            for p in premises:
                verdict = entails(sorted(p.hyps, key=str), p.conclusion, sig, mode, budget)
                report.exact = report.exact and verdict.exact
                if not verdict.holds:
                    holds = False
                    break
            if not holds:
                continue
            stats.non_vacuous += 1
            verdict = entails(sorted(context, key=str), conclusion, sig, mode, budget)
            report.exact = report.exact and verdict.exact
            if not verdict.holds:
                violation = {
                    "rule": rule.value,
                    "instance": i,
                    "premises": [_sequent(p.hyps, p.conclusion) for p in premises],
                    "conclusion": _sequent(context, conclusion),
                    "counterexample": verdict.counterexample.as_dict() if verdict.counterexample else None,
                }
                stats.violations.append(violation)
                logger.warning(f"规则 {rule.value} 的第 {i} 个实例不可靠")

    if not report.exact:
        logger.warning("部分蕴涵判定使用了采样，报告中的“无违例”不是精确结论")
    logger.info(f"模糊测试完成: 违例 {len(report.violations)} 个")
    return report
