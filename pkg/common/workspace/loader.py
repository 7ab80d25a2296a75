"""工作区文件加载

按行解析，块由关键字行开启：signature、fc、ct、gct。所有错误都以 WorkspaceError
报告并带有出错的行号。
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import LarkError

from common.models import Assignment, CausalTeam, FunctionComponent, GeneralizedCausalTeam, Signature
from common.models.causal_team import first_incompatible
from common.utils.exceptions import BaseError, NotFoundError, WorkspaceError
from common.utils.logger import log_manager
from common.workspace.grammar import WORKSPACE_LINE_GRAMMAR

logger = log_manager.get_logger(__name__)

Team = Union[CausalTeam, GeneralizedCausalTeam]


@dataclass
class Workspace:
    """签名、命名的函数组件与命名的团队"""

    sig: Signature
    fcs: Dict[str, FunctionComponent] = field(default_factory=dict)
    teams: Dict[str, Team] = field(default_factory=dict)

    def fc(self, name: str) -> FunctionComponent:
        if name not in self.fcs:
            raise NotFoundError(f"工作区中没有名为 {name} 的函数组件")
        return self.fcs[name]

    def team(self, name: str) -> Team:
        if name not in self.teams:
            raise NotFoundError(f"工作区中没有名为 {name} 的团队")
        return self.teams[name]

    def fc_name(self, fc: FunctionComponent) -> Optional[str]:
        for name, f in self.fcs.items():
            if f == fc:
                return name
        return None

    def _fresh(self, base: str) -> str:
        for i in count(1):
            name = f"{base}_F{i}"
            if name not in self.fcs:
                return name

    def add_team(self, name: str, team: Team) -> None:
        """登记团队，未命名的函数组件自动取名 <团队名>_F<i>"""
        fcs = [team.fc] if isinstance(team, CausalTeam) else list(team.function_components)
        for f in fcs:
            if self.fc_name(f) is None:
                self.fcs[self._fresh(name)] = f
        self.teams[name] = team


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark(WORKSPACE_LINE_GRAMMAR, parser="lalr", lexer="contextual")


class _LineBuilder(Transformer):
    def signature(self, children):
        return "signature", None

    def var_decl(self, children):
        return "var", (str(children[0]), tuple(str(c) for c in children[1:]))

    def fc(self, children):
        return "fc", str(children[0])

    def fn(self, children):
        return "fn", (str(children[0]), tuple(str(c) for c in children[1:]))

    def table_row(self, children):
        return "table_row", (tuple(str(c) for c in children[:-1]), str(children[-1]))

    def ct(self, children):
        return "ct", (str(children[0]), str(children[1]))

    def gct(self, children):
        return "gct", str(children[0])

    def row(self, children):
        return "row", tuple(str(c) for c in children)

    def member(self, children):
        return "member", (str(children[0]), tuple(str(c) for c in children[1:]))


class _Loader:
    def __init__(self):
        self.ranges: Dict[str, Tuple[str, ...]] = {}
        self.sig: Optional[Signature] = None
        self.ws: Optional[Workspace] = None
        self.block: Optional[str] = None
        self.block_line = 0
        # fc 块
        self.fc_name = ""
        self.tables: Dict[str, Tuple[Tuple[str, ...], Dict[Tuple[str, ...], str]]] = {}
        self.fn_var: Optional[str] = None
        self.fn_line = 0
        # 团队块
        self.team_name = ""
        self.team_fc: Optional[FunctionComponent] = None
        self.rows: List[Assignment] = []
        self.members: List[Tuple[Assignment, FunctionComponent]] = []

    # ---- 块的开启与结束 ----

    def _need_signature(self, line: int) -> Signature:
        if self.sig is None:
            if not self.ranges:
                raise WorkspaceError("必须先给出 signature 块并至少声明一个变量", line)
            try:
                self.sig = Signature.of(self.ranges)
            except BaseError as exc:
                raise WorkspaceError(exc.message, self.block_line)
            self.ws = Workspace(self.sig)
        return self.sig

    def _close_fn(self) -> None:
        if self.fn_var is None:
            return
        parents, rows = self.tables[self.fn_var]
        expected = 1
        for p in parents:
            expected *= len(self.sig.ran(p))
        if len(rows) != expected:
            missing = [k for k in self.sig.value_tuples(parents) if k not in rows]
            raise WorkspaceError(
                f"变量 {self.fn_var} 的函数表缺少父取值 {' '.join(missing[0]) or '(空)'}", self.fn_line
            )
        self.fn_var = None

    def _close_block(self) -> None:
        if self.block == "fc":
            self._close_fn()
            try:
                fc = FunctionComponent.from_tables(self.sig, self.tables)
            except BaseError as exc:
                raise WorkspaceError(f"函数组件 {self.fc_name}: {exc.message}", self.block_line)
            self.ws.fcs[self.fc_name] = fc
        elif self.block == "ct":
            self.ws.teams[self.team_name] = CausalTeam(self.team_fc, tuple(self.rows))
        elif self.block == "gct":
            self.ws.teams[self.team_name] = GeneralizedCausalTeam(self.sig, tuple(self.members))
        self.block = None

    def _open(self, block: str, line: int) -> None:
        self._close_block()
        if block != "signature":
            self._need_signature(line)
        self.block = block
        self.block_line = line

    def _check_new_name(self, name: str, line: int, kind: str) -> None:
        taken = self.ws.fcs if kind == "fc" else self.ws.teams
        if name in taken:
            raise WorkspaceError(f"重复的{'函数组件' if kind == 'fc' else '团队'}名: {name}", line)

    def _assignment(self, values: Tuple[str, ...], line: int) -> Assignment:
        try:
            return Assignment(self.sig, values)
        except BaseError as exc:
            raise WorkspaceError(exc.message, line)

    # ---- 各种行 ----

    def signature(self, _, line: int) -> None:
        if self.sig is not None or self.ranges:
            raise WorkspaceError("signature 块只能出现一次", line)
        self._open("signature", line)

    def var(self, payload, line: int) -> None:
        if self.block != "signature":
            raise WorkspaceError("var 行只能出现在 signature 块中", line)
        name, values = payload
        if name in self.ranges:
            raise WorkspaceError(f"变量 {name} 重复声明", line)
        self.ranges[name] = values

    def fc(self, name: str, line: int) -> None:
        self._open("fc", line)
        self._check_new_name(name, line, "fc")
        self.fc_name = name
        self.tables = {}

    def fn(self, payload, line: int) -> None:
        if self.block != "fc":
            raise WorkspaceError("fn 行只能出现在 fc 块中", line)
        self._close_fn()
        var, parents = payload
        for v in (var,) + parents:
            if v not in self.sig:
                raise WorkspaceError(f"未声明的变量: {v}", line)
        if var in self.tables:
            raise WorkspaceError(f"变量 {var} 的函数重复定义", line)
        if var in parents:
            raise WorkspaceError(f"变量 {var} 不能是自己的父变量", line)
        if len(set(parents)) != len(parents) or parents != self.sig.sort_vars(parents):
            raise WorkspaceError(f"变量 {var} 的父变量必须不重复并按签名顺序排列", line)
        self.tables[var] = (parents, {})
        self.fn_var = var
        self.fn_line = line

    def table_row(self, payload, line: int) -> None:
        if self.fn_var is None:
            raise WorkspaceError("函数表行必须出现在 fn 行之后", line)
        key, out = payload
        parents, rows = self.tables[self.fn_var]
        if len(key) != len(parents):
            raise WorkspaceError(f"函数表行需要 {len(parents)} 个父取值，给出了 {len(key)} 个", line)
        for p, x in zip(parents, key):
            if x not in self.sig.ran(p):
                raise WorkspaceError(f"取值 {x} 不在 Ran({p}) 中", line)
        if out not in self.sig.ran(self.fn_var):
            raise WorkspaceError(f"取值 {out} 不在 Ran({self.fn_var}) 中", line)
        if key in rows:
            raise WorkspaceError(f"父取值 {' '.join(key) or '(空)'} 重复出现", line)
        rows[key] = out

    def ct(self, payload, line: int) -> None:
        name, fc_name = payload
        self._open("ct", line)
        self._check_new_name(name, line, "team")
        if fc_name not in self.ws.fcs:
            raise WorkspaceError(f"团队 {name} 引用了未声明的函数组件 {fc_name}", line)
        self.team_name = name
        self.team_fc = self.ws.fcs[fc_name]
        self.rows = []

    def gct(self, name: str, line: int) -> None:
        self._open("gct", line)
        self._check_new_name(name, line, "team")
        self.team_name = name
        self.members = []

    def row(self, values, line: int) -> None:
        if self.block != "ct":
            raise WorkspaceError("row 行只能出现在 ct 块中", line)
        s = self._assignment(values, line)
        bad = first_incompatible(s, self.team_fc)
        if bad is not None:
            raise WorkspaceError(f"行 {s} 与函数组件不相容（变量 {bad}）", line)
        self.rows.append(s)

    def member(self, payload, line: int) -> None:
        if self.block != "gct":
            raise WorkspaceError("member 行只能出现在 gct 块中", line)
        fc_name, values = payload
        if fc_name not in self.ws.fcs:
            raise WorkspaceError(f"成员引用了未声明的函数组件 {fc_name}", line)
        f = self.ws.fcs[fc_name]
        s = self._assignment(values, line)
        bad = first_incompatible(s, f)
        if bad is not None:
            raise WorkspaceError(f"成员 {s} 与函数组件 {fc_name} 不相容（变量 {bad}）", line)
        self.members.append((s, f))

    def finish(self) -> Workspace:
        self._close_block()
        self._need_signature(self.block_line or 1)
        return self.ws


def loads(text: str) -> Workspace:
    """解析工作区文本

    Raises:
        WorkspaceError: 语法或语义错误，带行号
    """
    parser = _lark()
    builder = _LineBuilder()
    loader = _Loader()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            kind, payload = builder.transform(parser.parse(line))
        except LarkError as exc:
            raise WorkspaceError(f"无法识别的行: {line} ({exc.__class__.__name__})", lineno)
        getattr(loader, kind)(payload, lineno)
    ws = loader.finish()
    logger.debug(f"读取工作区: {len(ws.sig.dom)} 个变量, {len(ws.fcs)} 个函数组件, {len(ws.teams)} 个团队")
    return ws


def load(path: Union[str, Path]) -> Workspace:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise WorkspaceError(f"无法读取工作区文件 {path}: {exc}")
    return loads(text)
