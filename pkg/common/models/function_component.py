from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple

import networkx as nx

from common.models.signature import Assignment, Signature
from common.utils.exceptions import NotRecursiveError, ValidationError


@dataclass(frozen=True, eq=False)
class Mechanism:
    """单个内生变量的结构函数 F_V

    table 按父变量取值的字典序（父变量按 dom 顺序）列出输出值。
    """

    var: str
    parents: Tuple[str, ...]
    table: Tuple[str, ...]
    _lookup: Dict[Tuple[str, ...], str] = field(init=False, repr=False)

    def bind(self, sig: Signature) -> "Mechanism":
        """在签名上校验并建立查找表"""
        if self.var not in sig:
            raise ValidationError(f"未声明的变量: {self.var}", {"variable": self.var})
        if self.var in self.parents:
            raise ValidationError(
                f"变量 {self.var} 不能是自己的父变量", {"variable": self.var}
            )
        if len(set(self.parents)) != len(self.parents):
            raise ValidationError(f"变量 {self.var} 的父变量重复", {"variable": self.var})
        if tuple(self.parents) != sig.sort_vars(self.parents):
            raise ValidationError(
                f"变量 {self.var} 的父变量必须按签名顺序排列", {"variable": self.var}
            )
        keys = list(sig.value_tuples(self.parents))
        if len(keys) != len(self.table):
            raise ValidationError(
                f"变量 {self.var} 的函数表应有 {len(keys)} 行，实际 {len(self.table)} 行",
                {"variable": self.var},
            )
        for out in self.table:
            sig.check_value(self.var, out)
        object.__setattr__(self, "_lookup", dict(zip(keys, self.table)))
        return self

    def __reduce__(self):
        return (Mechanism, (self.var, self.parents, self.table))

    def __call__(self, parent_values: Tuple[str, ...]) -> str:
        return self._lookup[parent_values]

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    def key(self) -> Tuple[str, Tuple[str, ...], Tuple[str, ...]]:
        return (self.var, self.parents, self.table)


@dataclass(frozen=True, eq=False)
class FunctionComponent:
    """函数组件 F：内生变量集合、父变量表与函数表

    构造时校验函数表完整且因果图 G_F 无环。
    """

    sig: Signature
    mechanisms: Tuple[Mechanism, ...]
    _by_var: Dict[str, Mechanism] = field(init=False, repr=False)
    _key: tuple = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        mechs = [m.bind(self.sig) for m in self.mechanisms]
        by_var: Dict[str, Mechanism] = {}
        for m in mechs:
            if m.var in by_var:
                raise ValidationError(f"变量 {m.var} 有多个结构函数", {"variable": m.var})
            by_var[m.var] = m
        mechs.sort(key=lambda m: self.sig.index(m.var))
        object.__setattr__(self, "mechanisms", tuple(mechs))
        object.__setattr__(self, "_by_var", by_var)

        graph = self._build_graph()
        if not nx.is_directed_acyclic_graph(graph):
            cycle = [edge[0] for edge in nx.find_cycle(graph)]
            raise NotRecursiveError(cycle + cycle[:1])

        structs = []
        tables = []
        for var in self.sig.dom:
            m = by_var.get(var)
            if m is None:
                structs.append((0,))
                tables.append(())
            else:
                structs.append((1,) + tuple(self.sig.index(p) for p in m.parents))
                tables.append(tuple(self.sig.value_index(var, x) for x in m.table))
        key = (tuple(structs), tuple(tables))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    @classmethod
    def from_tables(
        cls,
        sig: Signature,
        tables: Mapping[str, Tuple[Sequence[str], Mapping[Tuple, object]]],
    ) -> "FunctionComponent":
        """由 {V: (父变量, {父取值元组: 输出})} 构造"""
        mechs = []
        for var, (parents, rows) in tables.items():
            parents = tuple(parents)
            normalized = {tuple(str(x) for x in k): str(v) for k, v in rows.items()}
            table = []
            for key in sig.value_tuples(parents):
                if key not in normalized:
                    raise ValidationError(
                        f"变量 {var} 的函数表缺少父取值 {key}", {"variable": var}
                    )
                table.append(normalized[key])
            mechs.append(Mechanism(var, parents, tuple(table)))
        return cls(sig, tuple(mechs))

    @classmethod
    def from_functions(
        cls,
        sig: Signature,
        functions: Mapping[str, Tuple[Sequence[str], Callable[..., object]]],
    ) -> "FunctionComponent":
        """把算术形式的机制（如 Y = X + 1）在有限取值上制表"""
        mechs = []
        for var, (parents, func) in functions.items():
            parents = sig.sort_vars(parents)
            table = tuple(str(func(*key)) for key in sig.value_tuples(parents))
            mechs.append(Mechanism(var, parents, table))
        return cls(sig, tuple(mechs))

    @classmethod
    def empty(cls, sig: Signature) -> "FunctionComponent":
        """En(F)=∅ 的函数组件"""
        return cls(sig, ())

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FunctionComponent):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key and self.sig == other.sig

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (FunctionComponent, (self.sig, self.mechanisms))

    def __lt__(self, other: "FunctionComponent") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        parts = []
        for m in self.mechanisms:
            parts.append(f"{m.var}<-({','.join(m.parents)})")
        return f"FunctionComponent[{'; '.join(parts) or '∅'}]"

    def key(self) -> tuple:
        """规范编码，枚举顺序即该编码的字典序"""
        return self._key

    def _build_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.sig.dom)
        for m in self.mechanisms:
            graph.add_edges_from((p, m.var) for p in m.parents)
        return graph

    @cached_property
    def graph(self) -> nx.DiGraph:
        """因果图 G_F"""
        return self._build_graph()

    @cached_property
    def topological_order(self) -> Tuple[str, ...]:
        """G_F 的确定性拓扑序（同层按 dom 顺序）"""
        return tuple(nx.lexicographical_topological_sort(self.graph, key=self.sig.index))

    @property
    def endogenous(self) -> FrozenSet[str]:
        """En(F)"""
        return frozenset(self._by_var)

    @property
    def exogenous(self) -> Tuple[str, ...]:
        """Ex(F) = Dom \\ En(F)"""
        return tuple(v for v in self.sig.dom if v not in self._by_var)

    def mechanism(self, var: str) -> Optional[Mechanism]:
        return self._by_var.get(var)

    def parents(self, var: str) -> Tuple[str, ...]:
        """PA_V（外生变量返回空元组）"""
        m = self._by_var.get(var)
        return m.parents if m is not None else ()

    def evaluate(self, var: str, s: Assignment) -> str:
        """F_V(s(PA_V))"""
        m = self._by_var[var]
        return m(s.project(m.parents))

    @cached_property
    def cn_set(self) -> FrozenSet[str]:
        """Cn(F)：函数表为常值的内生变量"""
        return frozenset(m.var for m in self.mechanisms if m.is_constant())

    @cached_property
    def core_variables(self) -> FrozenSet[str]:
        """En(F) \\ Cn(F)"""
        return self.endogenous - self.cn_set

    def restrict(self, removed: Iterable[str]) -> "FunctionComponent":
        """F_{X=x}：把 X 中的变量从内生集合中移除"""
        return _restrict(self, frozenset(removed))

    def essential_parents(self, var: str) -> Tuple[str, ...]:
        """非哑元父变量：改变它的取值可以改变输出"""
        m = self._by_var[var]
        essential = []
        for i, p in enumerate(m.parents):
            for key in self.sig.value_tuples(m.parents):
                base = m(key)
                if any(
                    m(key[:i] + (alt,) + key[i + 1 :]) != base
                    for alt in self.sig.ran(p)
                ):
                    essential.append(p)
                    break
        return tuple(essential)

    @cached_property
    def reduced(self) -> "FunctionComponent":
        """去除哑元父变量与常值函数后的规范形式，F ~ G 当且仅当二者的 reduced 相同"""
        mechs = []
        for var in sorted(self.core_variables, key=self.sig.index):
            m = self._by_var[var]
            keep = self.essential_parents(var)
            padding = {p: self.sig.ran(p)[0] for p in m.parents if p not in keep}
            table = []
            for key in self.sig.value_tuples(keep):
                bound = {**dict(zip(keep, key)), **padding}
                table.append(m(tuple(bound[p] for p in m.parents)))
            mechs.append(Mechanism(var, keep, tuple(table)))
        return FunctionComponent(self.sig, tuple(mechs))

    def as_dict(self) -> Dict[str, Dict[str, object]]:
        """用于报告的可序列化表示"""
        out: Dict[str, Dict[str, object]] = {}
        for m in self.mechanisms:
            rows = [
                {"parents": list(k), "value": v}
                for k, v in zip(self.sig.value_tuples(m.parents), m.table)
            ]
            out[m.var] = {"parents": list(m.parents), "table": rows}
        return out


@lru_cache(maxsize=8192)
def _restrict(f: FunctionComponent, removed: FrozenSet[str]) -> FunctionComponent:
    if not removed & f.endogenous:
        return f
    kept = tuple(m for m in f.mechanisms if m.var not in removed)
    return FunctionComponent(f.sig, kept)

