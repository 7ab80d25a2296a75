"""公式分类与合法性检查"""

from functools import lru_cache
from typing import Optional, Tuple

from common.enum import Dialect
from common.models.equation import EquationSeq
from common.models.signature import Signature
from common.syntax.formula import Cf, Dep, Eq, Formula, IntDisj, Neg, SelImp
from common.utils.exceptions import FormulaClassError

Path = Tuple[int, ...]


@lru_cache(maxsize=1 << 16)
def _features(phi: Formula) -> Tuple[bool, bool, Optional[Path]]:
    """(含依赖原子, 含 ⩒, 第一个违规子公式的路径)"""
    if isinstance(phi, Dep):
        return True, False, None
    has_dep = False
    has_idisj = isinstance(phi, IntDisj)
    bad: Optional[Path] = None
    for i, child in enumerate(phi.children):
        dep, idisj, child_bad = _features(child)
        has_dep = has_dep or dep
        has_idisj = has_idisj or idisj
        if bad is None and child_bad is not None:
            bad = (i,) + child_bad
    if bad is None:
        if isinstance(phi, Neg) and not is_co(phi.child):
            bad = ()
        elif isinstance(phi, SelImp) and not is_co(phi.left):
            bad = ()
    return has_dep, has_idisj, bad


def is_co(phi: Formula) -> bool:
    """不含依赖原子与 ⩒（不检查 ¬ 的位置）"""
    dep, idisj, _ = _features(phi)
    return not dep and not idisj


def ill_formed_path(phi: Formula) -> Optional[Path]:
    """第一个违反语法限制（¬α、α ⊃ φ 中 α 须为 CO）的子公式路径"""
    return _features(phi)[2]


def classify(phi: Formula) -> Dialect:
    """CO、COD、COi 或 ill-formed

    同时含依赖原子与 ⩒ 的公式不属于任何一种语言，也归为 ill-formed。
    """
    dep, idisj, bad = _features(phi)
    if bad is not None or (dep and idisj):
        return Dialect.ILL_FORMED
    if dep:
        return Dialect.COD
    if idisj:
        return Dialect.COI
    return Dialect.CO


def check_dialect(phi: Formula, dialect: Dialect) -> None:
    """要求 phi 属于 dialect，否则抛出带路径的 FormulaClassError"""
    bad = ill_formed_path(phi)
    if bad is not None:
        raise FormulaClassError(f"子公式位置 {list(bad)} 不合法: ¬ 与 ⊃ 的左侧只接受 CO 公式", bad)
    found = classify(phi)
    if not dialect.admits(found):
        raise FormulaClassError(f"公式属于 {found.value}，不在 {dialect.value} 中")


def eq_consistent(a: EquationSeq) -> bool:
    """同一变量没有被赋两个不同的值"""
    return a.consistent()


@lru_cache(maxsize=1 << 14)
def cf_free(phi: Formula) -> bool:
    """不含 □→"""
    return not isinstance(phi, Cf) and all(cf_free(c) for c in phi.children)


def validate(phi: Formula, sig: Signature) -> None:
    """检查公式中出现的变量与取值都在签名中"""
    for node in phi.walk():
        if isinstance(node, Eq):
            sig.check_value(node.var, node.value)
        elif isinstance(node, Dep):
            for var in node.xs + (node.y,):
                sig.index(var)
        elif isinstance(node, Cf):
            node.antecedent.validate(sig)


def variables(phi: Formula) -> Tuple[str, ...]:
    """公式中出现的变量，按首次出现顺序"""
    seen = []
    for node in phi.walk():
        if isinstance(node, Eq):
            names = (node.var,)
        elif isinstance(node, Dep):
            names = node.xs + (node.y,)
        elif isinstance(node, Cf):
            names = node.antecedent.variables()
        else:
            continue
        seen.extend(n for n in names if n not in seen)
    return tuple(seen)
