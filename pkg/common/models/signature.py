from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from common.utils.exceptions import (
    SignatureMismatchError,
    UnknownSymbolError,
    ValidationError,
)


@dataclass(frozen=True, eq=False)
class Signature:
    """签名 σ = (Dom, Ran)

    dom 为有序变量表，ranges 与 dom 按位置对齐，给出每个变量的有序取值表。
    变量与取值都按字符串精确比较。
    """

    dom: Tuple[str, ...]
    ranges: Tuple[Tuple[str, ...], ...]
    _index: Dict[str, int] = field(init=False, repr=False)
    _value_index: Tuple[Dict[str, int], ...] = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        dom = tuple(str(v) for v in self.dom)
        ranges = tuple(tuple(str(x) for x in r) for r in self.ranges)
        if not dom:
            raise ValidationError("签名的变量域不能为空")
        if len(set(dom)) != len(dom):
            raise ValidationError("签名的变量域含有重复变量", {"dom": list(dom)})
        if len(ranges) != len(dom):
            raise ValidationError("每个变量都必须给出取值范围")
        for var, ran in zip(dom, ranges):
            if not ran:
                raise ValidationError(f"变量 {var} 的取值范围为空", {"variable": var})
            if len(set(ran)) != len(ran):
                raise ValidationError(
                    f"变量 {var} 的取值范围含有重复值", {"variable": var}
                )
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "ranges", ranges)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(dom)})
        object.__setattr__(
            self,
            "_value_index",
            tuple({x: i for i, x in enumerate(r)} for r in ranges),
        )
        object.__setattr__(self, "_hash", hash((dom, ranges)))

    @classmethod
    def of(
        cls, ran: Union[Mapping[str, Sequence], Sequence[Tuple[str, Sequence]]]
    ) -> "Signature":
        """由 {变量: 取值表} 构造签名，变量顺序即插入顺序"""
        pairs = list(ran.items()) if isinstance(ran, Mapping) else list(ran)
        return cls(
            dom=tuple(str(v) for v, _ in pairs),
            ranges=tuple(tuple(str(x) for x in r) for _, r in pairs),
        )

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Signature):
            return NotImplemented
        return self._hash == other._hash and self.dom == other.dom and self.ranges == other.ranges

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Signature, (self.dom, self.ranges))

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{{{','.join(r)}}}" for v, r in zip(self.dom, self.ranges))
        return f"Signature({body})"

    def __contains__(self, var: str) -> bool:
        return var in self._index

    def index(self, var: str) -> int:
        """变量在 dom 中的位置"""
        try:
            return self._index[var]
        except KeyError:
            raise UnknownSymbolError(f"未声明的变量: {var}", var)

    def ran(self, var: str) -> Tuple[str, ...]:
        """变量的取值范围 Ran(X)"""
        return self.ranges[self.index(var)]

    def value_index(self, var: str, value: str) -> int:
        """取值在 Ran(var) 中的位置"""
        try:
            return self._value_index[self.index(var)][value]
        except KeyError:
            raise UnknownSymbolError(f"变量 {var} 没有取值 {value}", str(value))

    def check_value(self, var: str, value: str) -> None:
        """校验 value ∈ Ran(var)"""
        self.value_index(var, value)

    def sort_vars(self, variables: Iterable[str]) -> Tuple[str, ...]:
        """按 dom 顺序排列变量（同时去重）"""
        return tuple(sorted(set(variables), key=self.index))

    def ranges_of(self, variables: Sequence[str]) -> List[Tuple[str, ...]]:
        return [self.ran(v) for v in variables]

    def value_tuples(self, variables: Sequence[str]) -> Iterator[Tuple[str, ...]]:
        """Ran(X) 中全部取值元组，按字典序"""
        return product(*self.ranges_of(variables))

    def assignment_count(self) -> int:
        """|𝔸σ|"""
        count = 1
        for r in self.ranges:
            count *= len(r)
        return count

    def check_same(self, other: "Signature") -> None:
        if self != other:
            raise SignatureMismatchError()


class Assignment:
    """σ 上的赋值 s，values 与 sig.dom 按位置对齐"""

    __slots__ = ("sig", "values", "_hash")

    def __init__(self, sig: Signature, values: Sequence, validate: bool = True):
        values = tuple(str(v) for v in values)
        if validate:
            if len(values) != len(sig.dom):
                raise SignatureMismatchError(
                    f"赋值长度 {len(values)} 与签名变量数 {len(sig.dom)} 不一致"
                )
            for var, value in zip(sig.dom, values):
                sig.check_value(var, value)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_hash", hash(values))

    @classmethod
    def from_mapping(cls, sig: Signature, bindings: Mapping[str, object]) -> "Assignment":
        missing = [v for v in sig.dom if v not in bindings]
        if missing or len(bindings) != len(sig.dom):
            raise SignatureMismatchError(f"赋值必须恰好覆盖全部变量，缺少: {missing}")
        return cls(sig, [bindings[v] for v in sig.dom])

    def __setattr__(self, name, value):
        raise AttributeError("Assignment 是不可变对象")

    def __reduce__(self):
        return (Assignment, (self.sig, self.values, False))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.values == other.values and self.sig == other.sig

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Assignment") -> bool:
        return self.key() < other.key()

    def __getitem__(self, var: str) -> str:
        return self.values[self.sig.index(var)]

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}={x}" for v, x in zip(self.sig.dom, self.values))
        return f"({inner})"

    def key(self) -> Tuple[int, ...]:
        """规范排序键：各变量取值在 Ran 中的位置"""
        return tuple(
            self.sig.value_index(v, x) for v, x in zip(self.sig.dom, self.values)
        )

    def project(self, variables: Sequence[str]) -> Tuple[str, ...]:
        """s(X)"""
        return tuple(self.values[self.sig.index(v)] for v in variables)

    def update(self, bindings: Mapping[str, str]) -> "Assignment":
        """改写部分变量后的新赋值"""
        values = list(self.values)
        for var, value in bindings.items():
            self.sig.check_value(var, value)
            values[self.sig.index(var)] = str(value)
        return Assignment(self.sig, values, validate=False)

    def as_dict(self) -> Dict[str, str]:
        return dict(zip(self.sig.dom, self.values))
