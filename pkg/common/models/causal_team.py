from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Tuple

from common.models.function_component import FunctionComponent
from common.models.signature import Assignment, Signature
from common.utils.exceptions import IncompatibleAssignmentError, SignatureMismatchError

Member = Tuple[Assignment, FunctionComponent]


def compatible(s: Assignment, f: FunctionComponent) -> bool:
    """s 与 F 相容：对所有 V ∈ En(F) 有 s(V) = F_V(s(PA_V))"""
    if s.sig != f.sig:
        raise SignatureMismatchError("赋值与函数组件不属于同一签名")
    for m in f.mechanisms:
        if s[m.var] != m(s.project(m.parents)):
            return False
    return True


def first_incompatible(s: Assignment, f: FunctionComponent):
    """第一个不满足结构方程的变量，全部满足时返回 None"""
    for m in f.mechanisms:
        if s[m.var] != m(s.project(m.parents)):
            return m.var
    return None


def member_key(member: Member) -> tuple:
    s, f = member
    return (f.key(), s.key())


@dataclass(frozen=True, eq=False)
class CausalTeam:
    """因果团队 T = (T⁻, F)，行按规范顺序去重保存"""

    fc: FunctionComponent
    rows: Tuple[Assignment, ...] = ()
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        rows = sorted(set(self.rows), key=Assignment.key)
        for s in rows:
            if s.sig != self.fc.sig:
                raise SignatureMismatchError("团队的行与函数组件不属于同一签名")
            bad = first_incompatible(s, self.fc)
            if bad is not None:
                raise IncompatibleAssignmentError(
                    f"行 {s} 与函数组件不相容（变量 {bad}）", bad
                )
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_hash", hash((self.fc, self.rows)))

    @classmethod
    def of(cls, fc: FunctionComponent, rows: Iterable) -> "CausalTeam":
        """rows 可以是 Assignment 或按 dom 顺序的取值序列"""
        built = [r if isinstance(r, Assignment) else Assignment(fc.sig, r) for r in rows]
        return cls(fc, tuple(built))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, CausalTeam):
            return NotImplemented
        return self._hash == other._hash and self.fc == other.fc and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (CausalTeam, (self.fc, self.rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Assignment]:
        return iter(self.rows)

    def __repr__(self) -> str:
        return f"CausalTeam({list(self.rows)}, {self.fc!r})"

    @property
    def sig(self) -> Signature:
        return self.fc.sig

    @cached_property
    def row_set(self) -> FrozenSet[Assignment]:
        return frozenset(self.rows)

    def is_empty(self) -> bool:
        return not self.rows

    def subteam(self, rows: Iterable[Assignment]) -> "CausalTeam":
        """因果子团队（同一函数组件，行的子集）"""
        rows = tuple(rows)
        if not set(rows) <= self.row_set:
            raise IncompatibleAssignmentError("子团队的行必须取自原团队")
        return CausalTeam(self.fc, rows)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "kind": "ct",
            "fc": self.fc.as_dict(),
            "rows": [s.as_dict() for s in self.rows],
        }


@dataclass(frozen=True, eq=False)
class GeneralizedCausalTeam:
    """广义因果团队：(s, F) 对的集合，每一对各自相容"""

    sig: Signature
    members: Tuple[Member, ...] = ()
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        members = sorted(set(self.members), key=member_key)
        for s, f in members:
            if s.sig != self.sig or f.sig != self.sig:
                raise SignatureMismatchError("成员不属于团队的签名")
            bad = first_incompatible(s, f)
            if bad is not None:
                raise IncompatibleAssignmentError(
                    f"成员 {s} 与其函数组件不相容（变量 {bad}）", bad
                )
        object.__setattr__(self, "members", tuple(members))
        object.__setattr__(self, "_hash", hash(self.members))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GeneralizedCausalTeam):
            return NotImplemented
        return self._hash == other._hash and self.sig == other.sig and self.members == other.members

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (GeneralizedCausalTeam, (self.sig, self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Member]:
        return iter(self.members)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}:{f!r}" for s, f in self.members)
        return f"GeneralizedCausalTeam({{{body}}})"

    @cached_property
    def member_set(self) -> FrozenSet[Member]:
        return frozenset(self.members)

    @property
    def assignments(self) -> FrozenSet[Assignment]:
        """T⁻"""
        return frozenset(s for s, _ in self.members)

    @property
    def function_components(self) -> Tuple[FunctionComponent, ...]:
        seen = []
        for _, f in self.members:
            if f not in seen:
                seen.append(f)
        return tuple(seen)

    def is_empty(self) -> bool:
        return not self.members

    def subteam(self, members: Iterable[Member]) -> "GeneralizedCausalTeam":
        """子团队（成员的子集）"""
        members = tuple(members)
        if not set(members) <= self.member_set:
            raise IncompatibleAssignmentError("子团队的成员必须取自原团队")
        return GeneralizedCausalTeam(self.sig, members)

    def as_dict(self) -> Dict[str, Any]:
        fcs = self.function_components
        return {
            "kind": "gct",
            "fcs": [f.as_dict() for f in fcs],
            "members": [
                {"assignment": s.as_dict(), "fc": fcs.index(f)} for s, f in self.members
            ],
        }
