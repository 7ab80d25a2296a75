"""大运算符与公式改写的辅助函数"""

from dataclasses import replace
from typing import Dict, Iterable, Sequence, Tuple

from common.models.equation import EquationSeq
from common.models.signature import Signature
from common.syntax.formula import BOT, TOP, And, Cf, Eq, Formula, IntDisj, Neg, Or

_CHILD_FIELDS = {Neg: ("child",), Cf: ("consequent",)}


def _right_nested(items: Sequence[Formula], ctor) -> Formula:
    result = items[-1]
    for item in reversed(items[:-1]):
        result = ctor(item, result)
    return result


def big_and(items: Iterable[Formula]) -> Formula:
    """右嵌套合取，空合取为 Top"""
    items = list(items)
    return _right_nested(items, And) if items else TOP


def big_or(items: Iterable[Formula]) -> Formula:
    """右嵌套张量析取，空析取为 ⊥"""
    items = list(items)
    return _right_nested(items, Or) if items else BOT


def big_idisj(items: Iterable[Formula]) -> Formula:
    """右嵌套直觉主义析取，空析取为 ⊥"""
    items = list(items)
    return _right_nested(items, IntDisj) if items else BOT


def equations(pairs: Iterable[Tuple[str, str]]) -> Formula:
    """X=x 的合取形式"""
    return big_and(Eq(v, x) for v, x in pairs)


def cf(pairs: Iterable[Tuple[str, str]], body: Formula) -> Formula:
    """X=x □→ body；前件为空时就是 body"""
    pairs = tuple(pairs)
    return Cf(EquationSeq(pairs), body) if pairs else body


def bot_expansion(sig: Signature) -> Formula:
    """⊥ 的展开 X=x ∧ X≠x（取 dom 的第一个变量与它的第一个取值）"""
    var = sig.dom[0]
    value = sig.ran(var)[0]
    return And(Eq(var, value), Neg(Eq(var, value)))


def node_count(phi: Formula) -> int:
    """公式作为树的结点数（共享子树按出现次数计）"""
    memo: Dict[int, int] = {}
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in memo:
            continue
        if expanded or not node.children:
            memo[id(node)] = 1 + sum(memo[id(c)] for c in node.children)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children if id(c) not in memo)
    return memo[id(phi)]


def replace_child(phi: Formula, index: int, child: Formula) -> Formula:
    """替换第 index 个直接子公式"""
    if type(phi) in _CHILD_FIELDS:
        name = _CHILD_FIELDS[type(phi)][index]
    else:
        name = ("left", "right")[index]
    return replace(phi, **{name: child})


def substitute_at(phi: Formula, path: Sequence[int], replacement: Formula) -> Formula:
    """把路径 path 处的子公式换成 replacement"""
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    return replace_child(phi, head, substitute_at(phi.children[head], rest, replacement))


def occurrence_paths(phi: Formula, target: Formula) -> Tuple[Tuple[int, ...], ...]:
    """target 在 phi 中每次出现的路径（前序）"""
    found = []
    stack = [(phi, ())]
    while stack:
        node, path = stack.pop()
        if node == target:
            found.append(path)
        for i in reversed(range(len(node.children))):
            stack.append((node.children[i], path + (i,)))
    return tuple(found)
