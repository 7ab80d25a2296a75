from functools import lru_cache
from typing import Optional

from common.models.signature import Signature
from common.syntax.builders import big_idisj, big_or, equations, replace_child
from common.syntax.formula import And, Dep, Eq, Formula, Neg, Or, SelImp
from common.utils.exceptions import ValidationError


def dep_translation(dep: Dep, sig: Signature) -> Formula:
    """依赖原子的 CO∨ 译文

    =(Y) ↦ ⩒_{y∈Ran(Y)} Y=y；=(X;Y) ↦ ⋁_{x∈Ran(X)} (X=x ∧ =(Y) 的译文)
    """
    constancy = big_idisj(Eq(dep.y, y) for y in sig.ran(dep.y))
    if not dep.xs:
        return constancy
    return big_or(
        And(equations(zip(dep.xs, xs)), constancy) for xs in sig.value_tuples(dep.xs)
    )


def desugar(phi: Formula, sig: Optional[Signature] = None, eliminate_dep: bool = False) -> Formula:
    """展开可定义的连接词

    α ⊃ ψ 总是展开为 ¬α ∨ ψ；eliminate_dep 为真时再把依赖原子换成 CO∨ 译文。

    Raises:
        ValidationError: 要求消去依赖原子却没有给出签名
    """
    if eliminate_dep and sig is None:
        raise ValidationError("消去依赖原子需要签名")
    return _desugar(phi, sig if eliminate_dep else None)


@lru_cache(maxsize=1 << 14)
def _desugar(phi: Formula, sig: Optional[Signature]) -> Formula:
    if isinstance(phi, Dep):
        return dep_translation(phi, sig) if sig is not None else phi
    if isinstance(phi, SelImp):
        return Or(Neg(_desugar(phi.left, sig)), _desugar(phi.right, sig))
    result = phi
    for i, child in enumerate(phi.children):
        new = _desugar(child, sig)
        if new is not child:
            result = replace_child(result, i, new)
    return result
