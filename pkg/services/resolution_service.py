"""CO∨ 公式的 resolution 范式

R(φ) 是一组 CO 公式，φ 与它们的 ⩒ 析取等价。
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Tuple

from common.models.signature import Signature
from common.syntax.builders import big_idisj
from common.syntax.desugar import desugar
from common.syntax.formula import And, Cf, Dep, Formula, IntDisj, Or, SelImp
from common.syntax.wellformed import is_co
from common.utils.exceptions import FormulaClassError, UniverseTooLargeError
from common.utils.logger import log_manager

logger = log_manager.get_logger(__name__)


@dataclass(frozen=True)
class ResolutionSet:
    """去重后的 CO 公式集合，保持构造顺序"""

    members: Tuple[Formula, ...]

    def __post_init__(self):
        unique = tuple(dict.fromkeys(self.members))
        for gamma in unique:
            if not is_co(gamma):
                raise FormulaClassError("resolution 的成员必须是 CO 公式")
        object.__setattr__(self, "members", unique)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, gamma: Formula) -> bool:
        return gamma in self.members


@lru_cache(maxsize=1 << 12)
def count_resolutions(phi: Formula) -> int:
    """|R(φ)| 的上界（去重之前的个数），不实际构造"""
    if is_co(phi):
        return 1
    if isinstance(phi, Dep):
        raise FormulaClassError("依赖原子需要先译为 CO∨ 公式")
    if isinstance(phi, IntDisj):
        return count_resolutions(phi.left) + count_resolutions(phi.right)
    if isinstance(phi, (And, Or)):
        return count_resolutions(phi.left) * count_resolutions(phi.right)
    if isinstance(phi, SelImp):
        return count_resolutions(phi.right)
    if isinstance(phi, Cf):
        return count_resolutions(phi.consequent)
    raise FormulaClassError(f"无法计算 resolution: {type(phi).__name__}")


@lru_cache(maxsize=1 << 12)
def _resolve(phi: Formula) -> Tuple[Formula, ...]:
    if is_co(phi):
        return (phi,)
    if isinstance(phi, IntDisj):
        return tuple(dict.fromkeys(_resolve(phi.left) + _resolve(phi.right)))
    if isinstance(phi, (And, Or)):
        ctor = type(phi)
        return tuple(
            dict.fromkeys(ctor(a, b) for a in _resolve(phi.left) for b in _resolve(phi.right))
        )
    if isinstance(phi, SelImp):
        return tuple(SelImp(phi.left, b) for b in _resolve(phi.right))
    if isinstance(phi, Cf):
        return tuple(Cf(phi.antecedent, b) for b in _resolve(phi.consequent))
    raise FormulaClassError(f"无法计算 resolution: {type(phi).__name__}")


def resolutions(phi: Formula, cap: Optional[int] = None) -> ResolutionSet:
    """R(φ)

    Args:
        phi: CO 或 CO∨ 公式（不能含依赖原子）
        cap: 可选的个数上限

    Raises:
        FormulaClassError: 公式含有依赖原子
        UniverseTooLargeError: 个数超过 cap
    """
    count = count_resolutions(phi)
    if cap is not None and count > cap:
        raise UniverseTooLargeError(f"resolution 个数 {count} 超过上限 {cap}", count)
    return ResolutionSet(_resolve(phi))


def resolve(phi: Formula, sig: Signature, cap: Optional[int] = None) -> ResolutionSet:
    """先把依赖原子译为 CO∨，再计算 R(φ)"""
    return resolutions(desugar(phi, sig, eliminate_dep=True), cap)


def resolution_disjunction(phi: Formula, sig: Optional[Signature] = None) -> Formula:
    """⩒R(φ)，右嵌套；只有一个成员时就是该成员"""
    rs = resolve(phi, sig) if sig is not None else resolutions(phi)
    logger.debug(f"resolution 个数: {len(rs)}")
    return big_idisj(rs.members)
