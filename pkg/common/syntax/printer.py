from typing import Dict, List

from common.syntax.formula import And, Bot, Cf, Dep, Eq, Formula, IntDisj, Neg, Or, SelImp, Top

# 绑定强度，数值越大越紧
_LEVEL = {Cf: 0, SelImp: 1, IntDisj: 2, Or: 3, And: 4, Neg: 5}
_ATOM_LEVEL = 6
_SYMBOL = {SelImp: "=>", IntDisj: "\\\\/", Or: "\\/", And: "/\\"}


def _level(phi: Formula) -> int:
    return _LEVEL.get(type(phi), _ATOM_LEVEL)


def render(phi: Formula) -> str:
    """规范 ASCII 形式，只在必要处加括号

    二元运算右结合，因此同一运算出现在左侧时才需要括号。
    """
    out: List[str] = []
    _emit(phi, out, {})
    return "".join(out)


def _wrap(phi: Formula, need: bool, out: List[str], memo: Dict[int, str]) -> None:
    if need:
        out.append("(")
        _emit(phi, out, memo)
        out.append(")")
    else:
        _emit(phi, out, memo)


def _emit(phi: Formula, out: List[str], memo: Dict[int, str]) -> None:
    cached = memo.get(id(phi))
    if cached is not None:
        out.append(cached)
        return
    start = len(out)
    if isinstance(phi, Eq):
        out.append(f"{phi.var}={phi.value}")
    elif isinstance(phi, Bot):
        out.append("_|_")
    elif isinstance(phi, Top):
        out.append("^|^")
    elif isinstance(phi, Dep):
        if phi.xs:
            out.append(f"=({','.join(phi.xs)};{phi.y})")
        else:
            out.append(f"=({phi.y})")
    elif isinstance(phi, Neg):
        if isinstance(phi.child, Eq):
            out.append(f"{phi.child.var}!={phi.child.value}")
        else:
            out.append("~")
            _wrap(phi.child, _level(phi.child) < _LEVEL[Neg], out, memo)
    elif isinstance(phi, Cf):
        out.append(" /\\ ".join(f"{v}={x}" for v, x in phi.antecedent))
        out.append(" -> ")
        _emit(phi.consequent, out, memo)
    else:
        level = _LEVEL[type(phi)]
        _wrap(phi.left, _level(phi.left) <= level, out, memo)
        out.append(f" {_SYMBOL[type(phi)]} ")
        _wrap(phi.right, _level(phi.right) < level, out, memo)
    # 共享子树只渲染一次
    if phi.children:
        memo[id(phi)] = "".join(out[start:])
