"""公式抽象语法树

节点都是不可变对象，哈希在构造时算好并缓存，可以放心用作缓存键。
"""

from dataclasses import dataclass, field, fields
from typing import Iterator, Tuple

from common.models.equation import EquationSeq


@dataclass(frozen=True, eq=False)
class Formula:
    """所有公式节点的基类"""

    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self._payload()))

    def _payload(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self) if f.name != "_hash")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return self._hash == other._hash and self._payload() == other._payload()

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        # 字符串哈希随进程变化，反序列化时重新计算
        return (type(self), self._payload())

    @property
    def children(self) -> Tuple["Formula", ...]:
        return ()

    def walk(self) -> Iterator["Formula"]:
        """前序遍历全部子公式"""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __str__(self) -> str:
        from common.syntax.printer import render

        return render(self)


@dataclass(frozen=True, eq=False)
class Eq(Formula):
    """原子等式 X=x"""

    var: str
    value: str


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    """⊥"""


@dataclass(frozen=True, eq=False)
class Top(Formula):
    """空合取，所有团队都满足"""


@dataclass(frozen=True, eq=False)
class Neg(Formula):
    child: Formula

    @property
    def children(self) -> Tuple[Formula, ...]:
        return (self.child,)


@dataclass(frozen=True, eq=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    @property
    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class And(_Binary):
    pass


@dataclass(frozen=True, eq=False)
class Or(_Binary):
    """张量析取 ∨（分裂团队）"""


@dataclass(frozen=True, eq=False)
class IntDisj(_Binary):
    """直觉主义析取 ⩒"""


@dataclass(frozen=True, eq=False)
class SelImp(_Binary):
    """选择蕴涵 α ⊃ φ，可定义为 ¬α ∨ φ"""


@dataclass(frozen=True, eq=False)
class Dep(Formula):
    """依赖原子 =(X;Y)；xs 为空时即常值原子 =(Y)"""

    xs: Tuple[str, ...]
    y: str

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        super().__post_init__()


@dataclass(frozen=True, eq=False)
class Cf(Formula):
    """干预反事实 X=x □→ φ"""

    antecedent: EquationSeq
    consequent: Formula

    @property
    def children(self) -> Tuple[Formula, ...]:
        return (self.consequent,)


BOT = Bot()
TOP = Top()


def neq(var: str, value: str) -> Neg:
    """X≠x 即 ¬(X=x)"""
    return Neg(Eq(var, value))


def subformula_at(phi: Formula, path: Tuple[int, ...]) -> Formula:
    """按子节点下标路径取子公式"""
    node = phi
    for i in path:
        node = node.children[i]
    return node
