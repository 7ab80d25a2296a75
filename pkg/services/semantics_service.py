"""因果团队与广义因果团队上的满足关系，以及基于枚举的蕴涵判定

团队在内部表示为点 (s, F) 的位掩码。因果团队的每一行与公共函数组件组成一个点，
两种语义的各条子句在点集上完全一致，区别只在蕴涵判定所枚举的团队全集。
"""

from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from config import AppConfig
from common.enum import Dialect, Mode
from common.models import (
    CausalTeam,
    EquationSeq,
    GeneralizedCausalTeam,
    Member,
    Signature,
    UniverseBudget,
)
from common.models.team_ops import intervene_pair, to_gct
from common.syntax.builders import big_and
from common.syntax.formula import (
    And,
    Bot,
    Cf,
    Dep,
    Eq,
    Formula,
    IntDisj,
    Neg,
    Or,
    SelImp,
    Top,
)
from common.syntax.wellformed import classify, ill_formed_path, is_co, validate
from common.utils.exceptions import FormulaClassError, ValidationError
from common.utils.logger import log_manager
from common.utils.rng import keyed_generator
from services import enumeration_service as enum

logger = log_manager.get_logger(__name__)

Team = Union[CausalTeam, GeneralizedCausalTeam]

STRATEGIES = ("auto", "split")


class _TooWide(Exception):
    """极大子团队反链超过上限，改用划分搜索"""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _maximal(masks: Iterable[int]) -> Tuple[int, ...]:
    """按包含关系取极大元，结果按 (基数降序, 掩码升序) 排列"""
    kept: List[int] = []
    for m in sorted(set(masks), key=lambda m: (-m.bit_count(), m)):
        if not any(m | k == k for k in kept):
            kept.append(m)
    return tuple(kept)


def check_formula(phi: Formula, sig: Signature) -> Dialect:
    """校验公式属于某种语言且只使用签名中的符号"""
    bad = ill_formed_path(phi)
    if bad is not None:
        raise FormulaClassError(f"子公式位置 {list(bad)} 不合法", bad)
    dialect = classify(phi)
    if dialect is Dialect.ILL_FORMED:
        raise FormulaClassError("公式同时含有依赖原子与 ⩒")
    validate(phi, sig)
    return dialect


class SatisfactionChecker:
    """满足关系的判定器

    Args:
        sig: 签名
        mode: ct 或 gct
        strategy: auto 先用极大子团队算法，反链过宽时退回划分搜索；
            split 对 ∨ 逐个枚举二划分（按成员位掩码升序）
        cap: 极大子团队反链的大小上限
    """

    def __init__(
        self,
        sig: Signature,
        mode: Mode = Mode.GCT,
        strategy: str = "auto",
        cap: Optional[int] = None,
    ):
        if strategy not in STRATEGIES:
            raise ValidationError(f"未知的求值策略: {strategy}", {"strategy": strategy})
        self.sig = sig
        self.mode = mode
        self.strategy = strategy
        self.cap = cap or AppConfig.RESOLUTION_CAP
        self._points: List[Member] = []
        self._index: Dict[Member, int] = {}
        self._point_memo: Dict[Tuple[Formula, int], bool] = {}
        self._image_memo: Dict[Tuple[EquationSeq, int], int] = {}
        self._sat_memo: Dict[Tuple[Formula, int], bool] = {}
        self._max_memo: Dict[Tuple[Formula, int], Tuple[int, ...]] = {}
        self._checked: set = set()

    # ---- 点与团队 ----

    def _point(self, member: Member) -> int:
        idx = self._index.get(member)
        if idx is None:
            idx = len(self._points)
            self._points.append(member)
            self._index[member] = idx
        return idx

    def mask_of(self, team: Team) -> int:
        """团队对应的点集位掩码"""
        if isinstance(team, CausalTeam):
            if self.mode is not Mode.CT:
                team = to_gct(team)
            else:
                team.sig.check_same(self.sig)
                mask = 0
                for s in team.rows:
                    mask |= 1 << self._point((s, team.fc))
                return mask
        if not isinstance(team, GeneralizedCausalTeam):
            raise ValidationError(f"不支持的团队类型: {type(team).__name__}")
        if self.mode is Mode.CT:
            raise ValidationError("ct 语义只接受因果团队")
        team.sig.check_same(self.sig)
        mask = 0
        for member in team.members:
            mask |= 1 << self._point(member)
        return mask

    def members_of(self, mask: int) -> List[Member]:
        return [self._points[i] for i in _bits(mask)]

    def team_of(self, mask: int, fc=None) -> Team:
        """把位掩码还原为团队；ct 模式下空团队需要给出函数组件"""
        members = self.members_of(mask)
        if self.mode is Mode.CT:
            f = members[0][1] if members else fc
            return CausalTeam(f, tuple(s for s, _ in members))
        return GeneralizedCausalTeam(self.sig, tuple(members))

    def points_mask(self, members: Iterable[Member]) -> int:
        mask = 0
        for member in members:
            mask |= 1 << self._point(member)
        return mask

    def _image(self, eq: EquationSeq, i: int) -> int:
        key = (eq, i)
        j = self._image_memo.get(key)
        if j is None:
            s, f = self._points[i]
            j = self._point(intervene_pair(s, f, eq))
            self._image_memo[key] = j
        return j

    def _image_mask(self, eq: EquationSeq, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << self._image(eq, i)
        return out

    # ---- 单点求值（平坦性） ----

    def point_sat(self, phi: Formula, i: int) -> bool:
        """{(s,F)} ⊨ phi"""
        key = (phi, i)
        cached = self._point_memo.get(key)
        if cached is not None:
            return cached
        if isinstance(phi, Eq):
            result = self._points[i][0][phi.var] == phi.value
        elif isinstance(phi, Bot):
            result = False
        elif isinstance(phi, (Top, Dep)):
            result = True
        elif isinstance(phi, Neg):
            result = not self.point_sat(phi.child, i)
        elif isinstance(phi, And):
            result = self.point_sat(phi.left, i) and self.point_sat(phi.right, i)
        elif isinstance(phi, (Or, IntDisj)):
            result = self.point_sat(phi.left, i) or self.point_sat(phi.right, i)
        elif isinstance(phi, SelImp):
            result = not self.point_sat(phi.left, i) or self.point_sat(phi.right, i)
        elif isinstance(phi, Cf):
            if not phi.antecedent.consistent():
                result = True
            else:
                result = self.point_sat(phi.consequent, self._image(phi.antecedent, i))
        else:
            raise ValidationError(f"未知的公式节点: {type(phi).__name__}")
        self._point_memo[key] = result
        return result

    def flat_mask(self, phi: Formula, mask: int) -> int:
        """T 中单点满足 phi 的点"""
        out = 0
        for i in _bits(mask):
            if self.point_sat(phi, i):
                out |= 1 << i
        return out

    def _dep_holds(self, dep: Dep, mask: int) -> bool:
        seen: Dict[Tuple[str, ...], str] = {}
        for i in _bits(mask):
            s = self._points[i][0]
            y = s[dep.y]
            if seen.setdefault(s.project(dep.xs), y) != y:
                return False
        return True

    # ---- 极大子团队 ----

    def maximal_subteams(self, phi: Formula, mask: int) -> Tuple[int, ...]:
        """T 中满足 phi 的极大子团队

        三种逻辑都向下封闭，S ⊆ T 满足 phi 当且仅当 S 含于某个极大子团队。

        Raises:
            _TooWide: 中间反链超过上限
        """
        if mask == 0:
            return (0,)
        key = (phi, mask)
        cached = self._max_memo.get(key)
        if cached is not None:
            return cached
        if is_co(phi):
            result = (self.flat_mask(phi, mask),)
        elif isinstance(phi, Dep):
            result = self._dep_maximal(phi, mask)
        elif isinstance(phi, IntDisj):
            result = _maximal(
                self.maximal_subteams(phi.left, mask) + self.maximal_subteams(phi.right, mask)
            )
        elif isinstance(phi, (And, Or)):
            left = self.maximal_subteams(phi.left, mask)
            right = self.maximal_subteams(phi.right, mask)
            if len(left) * len(right) > self.cap:
                raise _TooWide()
            if isinstance(phi, And):
                result = _maximal(a & b for a in left for b in right)
            else:
                result = _maximal(a | b for a in left for b in right)
        elif isinstance(phi, SelImp):
            selected = self.flat_mask(phi.left, mask)
            rest = mask & ~selected
            result = _maximal(a | rest for a in self.maximal_subteams(phi.right, selected))
        elif isinstance(phi, Cf):
            if not phi.antecedent.consistent():
                result = (mask,)
            else:
                image = {i: self._image(phi.antecedent, i) for i in _bits(mask)}
                image_mask = 0
                for j in image.values():
                    image_mask |= 1 << j
                subs = self.maximal_subteams(phi.consequent, image_mask)
                result = _maximal(
                    sum(1 << i for i, j in image.items() if sub >> j & 1) for sub in subs
                )
        else:
            result = (self.flat_mask(phi, mask),)
        if len(result) > self.cap:
            raise _TooWide()
        self._max_memo[key] = result
        return result

    def _dep_maximal(self, dep: Dep, mask: int) -> Tuple[int, ...]:
        groups: Dict[Tuple[str, ...], Dict[str, int]] = {}
        for i in _bits(mask):
            s = self._points[i][0]
            by_y = groups.setdefault(s.project(dep.xs), {})
            by_y[s[dep.y]] = by_y.get(s[dep.y], 0) | (1 << i)
        width = 1
        for by_y in groups.values():
            width *= len(by_y)
        if width > self.cap:
            raise _TooWide()
        result = [0]
        for by_y in groups.values():
            result = [acc | part for acc in result for part in by_y.values()]
        return _maximal(result)

    # ---- 划分搜索 ----

    def _split_sat(self, phi: Formula, mask: int) -> bool:
        if mask == 0:
            return True
        key = (phi, mask)
        cached = self._sat_memo.get(key)
        if cached is not None:
            return cached
        if is_co(phi):
            result = self.flat_mask(phi, mask) == mask
        elif isinstance(phi, Dep):
            result = self._dep_holds(phi, mask)
        elif isinstance(phi, And):
            result = self._split_sat(phi.left, mask) and self._split_sat(phi.right, mask)
        elif isinstance(phi, IntDisj):
            result = self._split_sat(phi.left, mask) or self._split_sat(phi.right, mask)
        elif isinstance(phi, Or):
            result = self._first_split(phi, mask) is not None
        elif isinstance(phi, SelImp):
            result = self._split_sat(phi.right, self.flat_mask(phi.left, mask))
        elif isinstance(phi, Cf):
            if not phi.antecedent.consistent():
                result = True
            else:
                result = self._split_sat(phi.consequent, self._image_mask(phi.antecedent, mask))
        else:
            raise ValidationError(f"未知的公式节点: {type(phi).__name__}")
        self._sat_memo[key] = result
        return result

    def _first_split(self, phi: Or, mask: int) -> Optional[Tuple[int, int]]:
        positions = list(_bits(mask))
        for sub in range(1 << len(positions)):
            left = 0
            for k, i in enumerate(positions):
                if sub >> k & 1:
                    left |= 1 << i
            right = mask & ~left
            if self._split_sat(phi.left, left) and self._split_sat(phi.right, right):
                return left, right
        return None

    # ---- 对外接口 ----

    def _prepare(self, phi: Formula) -> None:
        if phi not in self._checked:
            check_formula(phi, self.sig)
            self._checked.add(phi)

    def sat_mask(self, phi: Formula, mask: int) -> bool:
        """T ⊨ phi（T 以位掩码给出）"""
        self._prepare(phi)
        # 团队级缓存只在单次查询内有效
        try:
            if self.strategy == "auto":
                try:
                    return self.maximal_subteams(phi, mask)[0] == mask
                except _TooWide:
                    logger.debug("极大子团队反链过宽，改用划分搜索")
            return self._split_sat(phi, mask)
        finally:
            self._max_memo.clear()
            self._sat_memo.clear()

    def satisfies(self, team: Team, phi: Formula) -> bool:
        """team ⊨ phi"""
        return self.sat_mask(phi, self.mask_of(team))

    def witness(self, team: Team, phi: Formula) -> Optional[Dict[str, Any]]:
        """∨ 的划分见证或 ⩒ 成立的析取支；不成立时返回 None"""
        self._prepare(phi)
        mask = self.mask_of(team)
        fc = team.fc if isinstance(team, CausalTeam) else None
        if isinstance(phi, IntDisj):
            for side, sub in (("left", phi.left), ("right", phi.right)):
                if self.sat_mask(sub, mask):
                    return {"disjunct": side}
            return None
        if not isinstance(phi, Or):
            raise ValidationError("只有 ∨ 与 ⩒ 有见证")
        split = None
        if self.strategy == "auto":
            try:
                split = self._maximal_split(phi, mask)
            except _TooWide:
                split = None
        if split is None:
            split = self._first_split(phi, mask)
            self._sat_memo.clear()
        if split is None:
            return None
        left, right = split
        return {"left": self.team_of(left, fc), "right": self.team_of(right, fc)}

    def _maximal_split(self, phi: Or, mask: int) -> Optional[Tuple[int, int]]:
        for a in self.maximal_subteams(phi.left, mask):
            for b in self.maximal_subteams(phi.right, mask):
                if a | b == mask:
                    return a, mask & ~a
        return None


def witness_split(team: Team, phi: Formula, sig: Optional[Signature] = None) -> Optional[Dict[str, Any]]:
    mode = Mode.CT if isinstance(team, CausalTeam) else Mode.GCT
    return SatisfactionChecker(sig or team.sig, mode).witness(team, phi)


def satisfies_ct(t: CausalTeam, phi: Formula, strategy: str = "auto") -> bool:
    """T ⊨^c phi"""
    return SatisfactionChecker(t.sig, Mode.CT, strategy).satisfies(t, phi)


def satisfies_gct(t: GeneralizedCausalTeam, phi: Formula, strategy: str = "auto") -> bool:
    """T ⊨^g phi"""
    return SatisfactionChecker(t.sig, Mode.GCT, strategy).satisfies(t, phi)


def satisfies(t: Team, phi: Formula, strategy: str = "auto") -> bool:
    if isinstance(t, CausalTeam):
        return satisfies_ct(t, phi, strategy)
    return satisfies_gct(t, phi, strategy)


@dataclass
class Verdict:
    """蕴涵判定结果

    exact 为假表示预算迫使采样；counterexample 只在不成立时给出。
    """

    holds: bool
    mode: Mode
    exact: bool = True
    counterexample: Optional[Team] = None
    method: str = "maximal-team"
    checked: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        data = {
            "holds": self.holds,
            "mode": self.mode.value,
            "exact": self.exact,
            "method": self.method,
            "checked": self.checked,
        }
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample.as_dict()
        data.update(self.details)
        return data


def _shrink(checker: SatisfactionChecker, conclusion: Formula, mask: int) -> int:
    """贪心删去点，得到仍然不满足结论的极小子团队（前提由向下封闭性保持）"""
    for i in list(_bits(mask)):
        smaller = mask & ~(1 << i)
        if not checker.sat_mask(conclusion, smaller):
            mask = smaller
    return mask


def _maximal_team_path(
    premises: Sequence[Formula],
    conclusion: Formula,
    sig: Signature,
    mode: Mode,
) -> Verdict:
    """在语义全集上求满足全部前提的极大团队，逐个检查结论"""
    checker = SatisfactionChecker(sig, mode)
    body = big_and(premises)
    checked = 0
    if mode is Mode.GCT:
        universes = [(checker.points_mask(enum.enum_sem(sig)), None)]
    else:
        universes = []
        for f in enum.all_function_components(sig):
            mask = checker.points_mask((s, f) for s in enum.compatible_assignments(f))
            universes.append((mask, f))
    for universe, fc in universes:
        for team in checker.maximal_subteams(body, universe):
            checked += 1
            if not checker.sat_mask(conclusion, team):
                witness = _shrink(checker, conclusion, team)
                return Verdict(
                    False, mode, True, checker.team_of(witness, fc), "maximal-team", checked
                )
    return Verdict(True, mode, True, None, "maximal-team", checked)


def _team_stream(sig: Signature, mode: Mode, budget: UniverseBudget) -> enum.TeamStream:
    if enum.count_function_components(sig) <= AppConfig.MAX_FC_COUNT:
        if mode is Mode.CT:
            return enum.enum_causal_teams(sig, budget)
        return enum.enum_gcts(sig, budget)
    logger.warning("函数组件全集过大，直接在随机函数组件上采样团队")

    def sampled() -> Iterator[Team]:
        for i in range(budget.sample_count):
            rng = keyed_generator(budget.rng_seed, i)
            if mode is Mode.CT:
                yield enum.sample_causal_team(sig, rng)
            else:
                yield enum.sample_gct(sig, rng)

    return enum.TeamStream(sampled, exact=False, total=budget.sample_count, description="采样")


_worker: Dict[str, Any] = {}


def _init_worker(premises, conclusion, sig, mode) -> None:
    _worker["checker"] = SatisfactionChecker(sig, mode)
    _worker["premises"] = premises
    _worker["conclusion"] = conclusion


def _counterexample_in(chunk: List[Team]) -> Optional[int]:
    checker = _worker["checker"]
    for k, team in enumerate(chunk):
        if _is_counterexample(checker, _worker["premises"], _worker["conclusion"], team):
            return k
    return None


def _is_counterexample(checker, premises, conclusion, team) -> bool:
    mask = checker.mask_of(team)
    if not all(checker.sat_mask(p, mask) for p in premises):
        return False
    return not checker.sat_mask(conclusion, mask)


def _chunks(stream: Iterable[Team], size: int) -> Iterator[List[Team]]:
    chunk: List[Team] = []
    for team in stream:
        chunk.append(team)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _enumeration_path(
    premises: Sequence[Formula],
    conclusion: Formula,
    sig: Signature,
    mode: Mode,
    budget: UniverseBudget,
    jobs: int,
) -> Verdict:
    stream = _team_stream(sig, mode, budget)
    method = "enumeration" if stream.exact else "sampled"
    logger.info(f"蕴涵判定: {method}, 团队数 {stream.total}, 进程数 {jobs}")
    checked = 0
    if jobs <= 1:
        checker = SatisfactionChecker(sig, mode)
        for team in stream:
            checked += 1
            if _is_counterexample(checker, premises, conclusion, team):
                return Verdict(False, mode, stream.exact, team, method, checked)
        return Verdict(True, mode, stream.exact, None, method, checked)

    with Pool(jobs, initializer=_init_worker, initargs=(premises, conclusion, sig, mode)) as pool:
        # imap 保持输入顺序，第一个反例即流中最早的反例
        chunks = _chunks(stream, 256)
        pending: List[List[Team]] = []

        def feed() -> Iterator[List[Team]]:
            for chunk in chunks:
                pending.append(chunk)
                yield chunk

        for found in pool.imap(_counterexample_in, feed()):
            chunk = pending.pop(0)
            if found is not None:
                checked += found + 1
                return Verdict(False, mode, stream.exact, chunk[found], method, checked)
            checked += len(chunk)
    return Verdict(True, mode, stream.exact, None, method, checked)


def entails(
    premises: Sequence[Formula],
    conclusion: Formula,
    sig: Signature,
    mode: Mode = Mode.GCT,
    budget: Optional[UniverseBudget] = None,
    jobs: int = 1,
    method: str = "auto",
) -> Verdict:
    """Δ ⊨ ψ

    Args:
        premises: 前提 Δ
        conclusion: 结论 ψ
        sig: 签名
        mode: ct 或 gct 语义
        budget: 枚举预算，默认取配置
        jobs: 枚举路径的进程数
        method: auto 优先使用极大团队路径；enumerate 强制逐个枚举团队

    Returns:
        Verdict
    """
    budget = budget or AppConfig.default_budget()
    premises = list(premises)
    for phi in premises + [conclusion]:
        check_formula(phi, sig)
    if method not in ("auto", "enumerate"):
        raise ValidationError(f"未知的判定方法: {method}", {"method": method})
    if method == "auto" and enum.count_function_components(sig) <= AppConfig.MAX_FC_COUNT:
        try:
            verdict = _maximal_team_path(premises, conclusion, sig, mode)
            logger.info(f"蕴涵判定: 极大团队路径, 检查 {verdict.checked} 个极大团队")
            return verdict
        except _TooWide:
            logger.info("前提的极大团队过多，改用枚举")
    return _enumeration_path(premises, conclusion, sig, mode, budget, jobs)


def entails_ct(premises, conclusion, sig, budget=None, jobs: int = 1, method: str = "auto") -> Verdict:
    """Δ ⊨^c ψ"""
    return entails(premises, conclusion, sig, Mode.CT, budget, jobs, method)


def entails_gct(premises, conclusion, sig, budget=None, jobs: int = 1, method: str = "auto") -> Verdict:
    """Δ ⊨^g ψ"""
    return entails(premises, conclusion, sig, Mode.GCT, budget, jobs, method)


def equivalent(
    phi: Formula,
    psi: Formula,
    sig: Signature,
    mode: Mode = Mode.GCT,
    budget: Optional[UniverseBudget] = None,
    jobs: int = 1,
) -> Verdict:
    """phi 与 psi 互相蕴涵；不成立时给出失败方向的反例"""
    forward = entails([phi], psi, sig, mode, budget, jobs)
    if not forward.holds:
        forward.details["direction"] = "forward"
        return forward
    backward = entails([psi], phi, sig, mode, budget, jobs)
    backward.details["direction"] = "backward" if not backward.holds else "both"
    backward.exact = forward.exact and backward.exact
    backward.checked += forward.checked
    return backward


def reduce_ct_entailment(
    premises: Sequence[Formula],
    conclusion: Formula,
    sig: Signature,
    budget: Optional[UniverseBudget] = None,
) -> Verdict:
    """通过 Unf 归约判定 ct 蕴涵：Δ ⊨^c ψ 当且仅当 Δ ∪ {Unf} ⊨^g ψ"""
    from services.charform_service import unf

    return entails(list(premises) + [unf(sig)], conclusion, sig, Mode.GCT, budget)
