from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

from common.enum import RuleId
from common.syntax.formula import Formula
from common.utils.exceptions import ValidationError


@dataclass(frozen=True)
class Node:
    """推导中的一个结点：假设集 ⊢ 结论，由 rule 从 premises 得到

    chain、occurrence、var 是个别规则的附加数据（Recur 的 ⤳ 链、
    Dep0E 被替换的出现位置、ValDef 的变量）。
    """

    index: int
    conclusion: Formula
    rule: RuleId
    premises: Tuple[int, ...] = ()
    hyps: FrozenSet[Formula] = frozenset()
    chain: Tuple[str, ...] = ()
    occurrence: Optional[Tuple[int, ...]] = None
    var: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "hyps", frozenset(self.hyps))
        object.__setattr__(self, "chain", tuple(self.chain))
        if self.occurrence is not None:
            object.__setattr__(self, "occurrence", tuple(self.occurrence))


@dataclass(frozen=True)
class Derivation:
    """按顺序排列的结点；最后一个结点是整个推导的结论"""

    nodes: Tuple[Node, ...]
    assumptions: FrozenSet[Formula] = frozenset()
    name: str = ""
    _by_index: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if not nodes:
            raise ValidationError("推导至少需要一个结点")
        by_index: Dict[int, int] = {}
        for pos, node in enumerate(nodes):
            if node.index in by_index:
                raise ValidationError(f"结点编号 {node.index} 重复", {"node": node.index})
            by_index[node.index] = pos
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "assumptions", frozenset(self.assumptions))
        object.__setattr__(self, "_by_index", by_index)

    def __iter__(self) -> Iterator[Node]:
        return iter(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def position(self, index: int) -> Optional[int]:
        """编号为 index 的结点在列表中的位置"""
        return self._by_index.get(index)

    def node(self, index: int) -> Node:
        pos = self._by_index.get(index)
        if pos is None:
            raise ValidationError(f"不存在编号为 {index} 的结点", {"node": index})
        return self.nodes[pos]

    @property
    def root(self) -> Node:
        return self.nodes[-1]

    @property
    def conclusion(self) -> Formula:
        return self.root.conclusion
