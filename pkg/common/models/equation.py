from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Sequence, Tuple

from common.models.signature import Signature
from common.utils.exceptions import ValidationError


@dataclass(frozen=True)
class EquationSeq:
    """等式序列 X₁=x₁ ∧ … ∧ Xₙ=xₙ，允许重复（□→Ctr/□→Wk 需要）"""

    pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple((str(v), str(x)) for v, x in self.pairs)
        if not pairs:
            raise ValidationError("等式序列不能为空")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, *pairs: Tuple[str, object]) -> "EquationSeq":
        return cls(tuple((v, str(x)) for v, x in pairs))

    @classmethod
    def from_dict(cls, bindings: Dict[str, object]) -> "EquationSeq":
        return cls(tuple((v, str(x)) for v, x in bindings.items()))

    def __iter__(self) -> Iterator[Tuple[str, str]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __add__(self, other: "EquationSeq") -> "EquationSeq":
        return EquationSeq(self.pairs + other.pairs)

    def variables(self) -> Tuple[str, ...]:
        """出现过的变量，按首次出现顺序"""
        seen = []
        for var, _ in self.pairs:
            if var not in seen:
                seen.append(var)
        return tuple(seen)

    def conflict(self) -> Optional[str]:
        """返回第一个被赋予两个不同值的变量"""
        bound: Dict[str, str] = {}
        for var, value in self.pairs:
            if bound.setdefault(var, value) != value:
                return var
        return None

    def consistent(self) -> bool:
        return self.conflict() is None

    def as_dict(self) -> Dict[str, str]:
        """一致序列对应的赋值（调用方需先确认一致）"""
        return dict(self.pairs)

    def without(self, variables: Sequence[str]) -> Tuple[Tuple[str, str], ...]:
        """去掉指定变量的等式（可能为空，因此返回元组）"""
        drop = set(variables)
        return tuple(p for p in self.pairs if p[0] not in drop)

    def validate(self, sig: Signature) -> None:
        for var, value in self.pairs:
            sig.check_value(var, value)

    def __str__(self) -> str:
        return " /\\ ".join(f"{v}={x}" for v, x in self.pairs)
