from typing import FrozenSet, Iterable, List, Optional, Sequence

from common.enum import Calculus, RuleId
from common.models.signature import Signature
from common.syntax.formula import Formula
from services.proof.derivation import Derivation, Node
from services.proof.rules import RULES, discharged


class DerivationBuilder:
    """按顺序追加结点，自动计算每个结点的假设集

    假设集取各前提假设集减去撤销部分后的并集；封闭前提不向结论传递假设。
    """

    def __init__(self, sig: Signature, calculus: Calculus, assumptions: Iterable[Formula] = ()):
        self.sig = sig
        self.calculus = calculus
        self.assumptions = frozenset(assumptions)
        self._nodes: List[Node] = []

    def _get(self, index: int) -> Node:
        return self._nodes[index - 1]

    def _add(self, conclusion: Formula, rule: RuleId, premises: Sequence[int], hyps, **side) -> int:
        index = len(self._nodes) + 1
        self._nodes.append(Node(index, conclusion, rule, tuple(premises), frozenset(hyps), **side))
        return index

    def hyp(self, phi: Formula) -> int:
        return self._add(phi, RuleId.HYP, (), {phi})

    def apply(
        self,
        rule: RuleId,
        conclusion: Formula,
        *premises: int,
        chain: Sequence[str] = (),
        occurrence: Optional[Sequence[int]] = None,
        var: Optional[str] = None,
    ) -> int:
        """追加一个由 rule 得到的结点，返回其编号"""
        nodes = [self._get(i) for i in premises]
        sets = discharged(rule, conclusion, [n.conclusion for n in nodes], self.sig, occurrence)
        closed = RULES[rule].closed
        hyps: FrozenSet[Formula] = frozenset()
        for i, node in enumerate(nodes):
            if i not in closed:
                hyps |= node.hyps - sets[i]
        side = {"chain": tuple(chain), "var": var}
        if occurrence is not None:
            side["occurrence"] = tuple(occurrence)
        return self._add(conclusion, rule, premises, hyps, **side)

    def conclusion(self, index: int) -> Formula:
        return self._get(index).conclusion

    def build(self, name: str = "") -> Derivation:
        return Derivation(tuple(self._nodes), self.assumptions, name)
