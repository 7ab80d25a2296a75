"""有限语义全集的枚举：𝔸σ、𝔽σ、Sem_σ、𝔽⁰σ 与 ℂσ

所有枚举顺序都是规范编码的字典序，结果在不同运行与平台上保持稳定。
"""

from functools import lru_cache
from itertools import chain, combinations, product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
from tqdm import tqdm

from config import AppConfig
from common.models import (
    Assignment,
    CausalTeam,
    FunctionComponent,
    GeneralizedCausalTeam,
    Mechanism,
    Member,
    Signature,
    UniverseBudget,
    compatible,
)
from common.models.team_ops import similarity_key
from common.utils.exceptions import UniverseTooLargeError
from common.utils.logger import log_manager
from common.utils.rng import choice, keyed_generator, subset

logger = log_manager.get_logger(__name__)

Structure = Tuple[Optional[Tuple[str, ...]], ...]


class TeamStream:
    """可重复迭代的团队流，附带是否精确与总数的元数据"""

    def __init__(
        self,
        factory: Callable[[], Iterator],
        exact: bool,
        total: Optional[int],
        description: str = "",
    ):
        self._factory = factory
        self.exact = exact
        self.total = total
        self.description = description

    def __iter__(self) -> Iterator:
        return iter(
            tqdm(
                self._factory(),
                total=self.total,
                desc=self.description,
                disable=not AppConfig.SHOW_PROGRESS,
                leave=False,
            )
        )


@lru_cache(maxsize=64)
def enum_assignments(sig: Signature) -> Tuple[Assignment, ...]:
    """𝔸σ：全部赋值，按取值字典序"""
    return tuple(Assignment(sig, values, validate=False) for values in product(*sig.ranges))


def _parent_options(sig: Signature, var: str) -> List[Optional[Tuple[str, ...]]]:
    """单个变量的结构选项：None 表示外生，元组为父变量集合（按编码排序）"""
    others = [v for v in sig.dom if v != var]
    subsets = chain.from_iterable(combinations(others, k) for k in range(len(others) + 1))
    options: List[Optional[Tuple[str, ...]]] = [None]
    options.extend(sorted(subsets, key=lambda ps: tuple(sig.index(p) for p in ps)))
    return options


def _is_acyclic(sig: Signature, structure: Structure) -> bool:
    graph = nx.DiGraph()
    graph.add_nodes_from(sig.dom)
    for var, parents in zip(sig.dom, structure):
        if parents:
            graph.add_edges_from((p, var) for p in parents)
    return nx.is_directed_acyclic_graph(graph)


@lru_cache(maxsize=64)
def enum_structures(sig: Signature) -> Tuple[Structure, ...]:
    """全部无环的 (内生集合, 父变量映射) 结构"""
    per_var = [_parent_options(sig, v) for v in sig.dom]
    structures = tuple(s for s in product(*per_var) if _is_acyclic(sig, s))
    logger.debug(f"签名 {sig} 上共有 {len(structures)} 个无环结构")
    return structures


def _table_count(sig: Signature, var: str, parents: Tuple[str, ...]) -> int:
    rows = 1
    for p in parents:
        rows *= len(sig.ran(p))
    return len(sig.ran(var)) ** rows


def count_function_components(sig: Signature) -> int:
    """|𝔽σ| 的闭式计数，不实际制表"""
    total = 0
    for structure in enum_structures(sig):
        count = 1
        for var, parents in zip(sig.dom, structure):
            if parents is not None:
                count *= _table_count(sig, var, parents)
        total += count
    return total


def enum_function_components(sig: Signature) -> Iterator[FunctionComponent]:
    """𝔽σ：全部递归函数组件，惰性生成，顺序为规范编码的字典序"""
    for structure in enum_structures(sig):
        endogenous = [(v, ps) for v, ps in zip(sig.dom, structure) if ps is not None]
        table_spaces = []
        for var, parents in endogenous:
            rows = len(list(sig.value_tuples(parents)))
            table_spaces.append(product(sig.ran(var), repeat=rows))
        for tables in product(*table_spaces):
            mechs = tuple(
                Mechanism(var, parents, table)
                for (var, parents), table in zip(endogenous, tables)
            )
            yield FunctionComponent(sig, mechs)


def _guard(sig: Signature) -> int:
    count = count_function_components(sig)
    if count > AppConfig.MAX_FC_COUNT:
        raise UniverseTooLargeError(
            f"|𝔽σ| = {count} 超过上限 {AppConfig.MAX_FC_COUNT}，无法物化", count
        )
    return count


@lru_cache(maxsize=16)
def all_function_components(sig: Signature) -> Tuple[FunctionComponent, ...]:
    """物化 𝔽σ（受 MAX_FC_COUNT 限制）"""
    count = _guard(sig)
    logger.info(f"物化函数组件全集: {count} 个")
    return tuple(
        tqdm(
            enum_function_components(sig),
            total=count,
            desc="𝔽σ",
            disable=not AppConfig.SHOW_PROGRESS,
            leave=False,
        )
    )


@lru_cache(maxsize=1 << 14)
def compatible_assignments(f: FunctionComponent) -> Tuple[Assignment, ...]:
    """与 F 相容的全部赋值"""
    return tuple(s for s in enum_assignments(f.sig) if compatible(s, f))


@lru_cache(maxsize=16)
def enum_sem(sig: Signature) -> Tuple[Member, ...]:
    """Sem_σ：全部相容的 (s, F) 对，按 (F, s) 顺序"""
    return tuple((s, f) for f in all_function_components(sig) for s in compatible_assignments(f))


@lru_cache(maxsize=16)
def _representative_index(sig: Signature) -> Dict[FunctionComponent, FunctionComponent]:
    index: Dict[FunctionComponent, FunctionComponent] = {}
    for f in all_function_components(sig):
        index.setdefault(similarity_key(f), f)
    return index


def representatives(sig: Signature) -> Tuple[FunctionComponent, ...]:
    """𝔽⁰σ：每个 ~ 类中枚举顺序最小的函数组件"""
    return tuple(_representative_index(sig).values())


def representative_of(f: FunctionComponent) -> FunctionComponent:
    """F 所在 ~ 类的代表 G₀"""
    return _representative_index(f.sig)[similarity_key(f)]


def count_causal_teams(sig: Signature) -> int:
    """|ℂσ| = Σ_F 2^{|compatible(F)|}"""
    return sum(2 ** len(compatible_assignments(f)) for f in all_function_components(sig))


def subsets_by_mask(items: Tuple) -> Iterator[Tuple]:
    n = len(items)
    for mask in range(1 << n):
        yield tuple(items[i] for i in range(n) if mask >> i & 1)


def enum_causal_teams(sig: Signature, budget: Optional[UniverseBudget] = None) -> TeamStream:
    """ℂσ：对每个 F，枚举 compatible(F) 的全部子集

    单个 F 的相容行数超过预算时改为按种子采样。
    """
    budget = budget or AppConfig.default_budget()
    fcs = all_function_components(sig)
    widest = max(len(compatible_assignments(f)) for f in fcs)
    if budget.allows_exact(widest):
        total = count_causal_teams(sig)

        def exact() -> Iterator[CausalTeam]:
            for f in fcs:
                for rows in subsets_by_mask(compatible_assignments(f)):
                    yield CausalTeam(f, rows)

        return TeamStream(exact, exact=True, total=total, description="ℂσ")

    logger.warning(f"相容行数 {widest} 超过预算 {budget.max_sem_size}，因果团队改为采样")

    def sampled() -> Iterator[CausalTeam]:
        for i in range(budget.sample_count):
            rng = keyed_generator(budget.rng_seed, i)
            f = choice(rng, fcs)
            yield CausalTeam(f, tuple(subset(rng, compatible_assignments(f))))

    return TeamStream(sampled, exact=False, total=budget.sample_count, description="ℂσ(采样)")


def enum_gcts(sig: Signature, budget: Optional[UniverseBudget] = None) -> TeamStream:
    """Sem_σ 的全部子集；|Sem_σ| 超过预算时按种子均匀采样子集"""
    budget = budget or AppConfig.default_budget()
    sem = enum_sem(sig)
    if budget.allows_exact(len(sem)):

        def exact() -> Iterator[GeneralizedCausalTeam]:
            for members in subsets_by_mask(sem):
                yield GeneralizedCausalTeam(sig, members)

        return TeamStream(exact, exact=True, total=1 << len(sem), description="gct")

    logger.warning(f"|Sem_σ| = {len(sem)} 超过预算 {budget.max_sem_size}，广义因果团队改为采样")

    def sampled() -> Iterator[GeneralizedCausalTeam]:
        for i in range(budget.sample_count):
            rng = keyed_generator(budget.rng_seed, i)
            yield GeneralizedCausalTeam(sig, tuple(subset(rng, sem)))

    return TeamStream(sampled, exact=False, total=budget.sample_count, description="gct(采样)")


def enum_small_gcts(sig: Signature, max_members: int) -> Iterator[GeneralizedCausalTeam]:
    """成员数不超过 max_members 的全部广义因果团队"""
    sem = enum_sem(sig)
    for k in range(max_members + 1):
        for members in combinations(sem, k):
            yield GeneralizedCausalTeam(sig, members)


def sample_function_component(
    sig: Signature, rng: np.random.Generator, p_endogenous: float = 0.6
) -> FunctionComponent:
    """随机递归函数组件：按随机排列只从前面的变量中选父变量"""
    order = [sig.dom[i] for i in rng.permutation(len(sig.dom))]
    mechs = []
    for pos, var in enumerate(order):
        if rng.random() >= p_endogenous:
            continue
        parents = sig.sort_vars(subset(rng, order[:pos]))
        rows = len(list(sig.value_tuples(parents)))
        ran = sig.ran(var)
        table = tuple(ran[int(i)] for i in rng.integers(len(ran), size=rows))
        mechs.append(Mechanism(var, parents, table))
    return FunctionComponent(sig, tuple(mechs))


def sample_causal_team(
    sig: Signature,
    rng: np.random.Generator,
    max_rows: int = 6,
    fc: Optional[FunctionComponent] = None,
) -> CausalTeam:
    """随机因果团队，行数不超过 max_rows"""
    f = fc or sample_function_component(sig, rng)
    pool = compatible_assignments(f)
    size = int(rng.integers(0, min(max_rows, len(pool)) + 1))
    picked = rng.choice(len(pool), size=size, replace=False) if size else []
    return CausalTeam(f, tuple(pool[int(i)] for i in picked))


def sample_gct(
    sig: Signature,
    rng: np.random.Generator,
    max_members: int = 6,
    fc_pool: Optional[Iterable[FunctionComponent]] = None,
) -> GeneralizedCausalTeam:
    """随机广义因果团队，成员的函数组件可以各不相同"""
    pool = list(fc_pool) if fc_pool is not None else None
    members = []
    for _ in range(int(rng.integers(0, max_members + 1))):
        f = choice(rng, pool) if pool else sample_function_component(sig, rng)
        members.append((choice(rng, compatible_assignments(f)), f))
    return GeneralizedCausalTeam(sig, tuple(members))
