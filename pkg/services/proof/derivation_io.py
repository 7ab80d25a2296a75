"""推导文件的读写

文件格式（按行，`#` 之后为注释）::

    assume: <公式>
    node 1: 规则名 from 2 3
      hyp: <公式>
      concl: <公式>
      chain: X Y Z
      occurrence: 0 1
      var: X
"""

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import LarkError

from common.enum import RuleId
from common.models.signature import Signature
from common.syntax.parser import parse
from common.syntax.printer import render
from common.utils.exceptions import BaseError, DerivationFormatError
from common.utils.logger import log_manager
from services.proof.derivation import Derivation, Node

logger = log_manager.get_logger(__name__)

DERIVATION_LINE_GRAMMAR = r"""
    ?start: assume | node | hyp | concl | chain | occurrence | var

    assume: "assume" ":" TEXT
    node: "node" INT ":" NAME premises?
    premises: "from" INT+
    hyp: "hyp" ":" TEXT
    concl: "concl" ":" TEXT
    chain: "chain" ":" NAME+
    occurrence: "occurrence" ":" INT*
    var: "var" ":" NAME

    TEXT: /.+/
    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.INT
    %import common.WS_INLINE
    %ignore WS_INLINE
"""


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark(DERIVATION_LINE_GRAMMAR, parser="lalr", lexer="contextual")


class _LineBuilder(Transformer):
    def assume(self, children):
        return "assume", str(children[0]).strip()

    def node(self, children):
        index, rule = int(children[0]), str(children[1])
        premises = children[2] if len(children) > 2 else ()
        return "node", (index, rule, premises)

    def premises(self, children):
        return tuple(int(c) for c in children)

    def hyp(self, children):
        return "hyp", str(children[0]).strip()

    def concl(self, children):
        return "concl", str(children[0]).strip()

    def chain(self, children):
        return "chain", tuple(str(c) for c in children)

    def occurrence(self, children):
        return "occurrence", tuple(int(c) for c in children)

    def var(self, children):
        return "var", str(children[0])


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _formula(text: str, sig: Signature, line: int):
    try:
        return parse(text, sig)
    except BaseError as exc:
        raise DerivationFormatError(f"公式错误: {exc.message}", line)


def _finish(current: Dict[str, Any]) -> Node:
    if current["concl"] is None:
        raise DerivationFormatError(f"结点 {current['index']} 缺少 concl 行", current["line"])
    return Node(
        current["index"],
        current["concl"],
        current["rule"],
        current["premises"],
        frozenset(current["hyps"]),
        chain=current["chain"],
        occurrence=current["occurrence"],
        var=current["var"],
    )


def load(text: str, sig: Signature, name: str = "") -> Derivation:
    """解析推导文本

    Raises:
        DerivationFormatError: 格式错误，带行号；未知规则名的报错会指出结点编号
    """
    parser = _lark()
    builder = _LineBuilder()
    assumptions = []
    nodes: List[Node] = []
    current: Optional[Dict[str, Any]] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        try:
            kind, payload = builder.transform(parser.parse(line))
        except LarkError as exc:
            raise DerivationFormatError(f"无法识别的行: {line} ({exc.__class__.__name__})", lineno)

        if kind == "assume":
            assumptions.append(_formula(payload, sig, lineno))
            continue
        if kind == "node":
            if current is not None:
                nodes.append(_finish(current))
            index, rule_name, premises = payload
            try:
                rule = RuleId.from_text(rule_name)
            except ValueError:
                raise DerivationFormatError(f"结点 {index}: 未知的规则名 {rule_name}", lineno)
            current = {
                "index": index,
                "rule": rule,
                "premises": premises,
                "hyps": [],
                "concl": None,
                "chain": (),
                "occurrence": None,
                "var": None,
                "line": lineno,
            }
            continue
        if current is None:
            raise DerivationFormatError(f"{kind} 行必须出现在某个 node 行之后", lineno)
        if kind == "hyp":
            current["hyps"].append(_formula(payload, sig, lineno))
        elif kind == "concl":
            if current["concl"] is not None:
                raise DerivationFormatError(f"结点 {current['index']} 有多个 concl 行", lineno)
            current["concl"] = _formula(payload, sig, lineno)
        else:
            current[kind] = payload

    if current is None:
        raise DerivationFormatError("推导中没有任何结点")
    nodes.append(_finish(current))
    try:
        d = Derivation(tuple(nodes), frozenset(assumptions), name)
    except BaseError as exc:
        raise DerivationFormatError(exc.message)
    logger.debug(f"读取推导 {name or '<未命名>'}: {len(d)} 个结点")
    return d


def load_file(path: Union[str, Path], sig: Signature) -> Derivation:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DerivationFormatError(f"无法读取推导文件 {path}: {exc}")
    return load(text, sig, path.stem)


def dump(d: Derivation) -> str:
    """把推导写成文本；假设按渲染后的字符串排序"""
    lines: List[str] = []
    if d.name:
        lines.append(f"# {d.name}")
    for phi in sorted(d.assumptions, key=render):
        lines.append(f"assume: {render(phi)}")
    for node in d.nodes:
        header = f"node {node.index}: {node.rule.value}"
        if node.premises:
            header += " from " + " ".join(str(p) for p in node.premises)
        lines.append(header)
        for h in sorted(node.hyps, key=render):
            lines.append(f"  hyp: {render(h)}")
        lines.append(f"  concl: {render(node.conclusion)}")
        if node.chain:
            lines.append("  chain: " + " ".join(node.chain))
        if node.occurrence is not None:
            lines.append(("  occurrence: " + " ".join(str(i) for i in node.occurrence)).rstrip())
        if node.var:
            lines.append(f"  var: {node.var}")
    return "\n".join(lines) + "\n"


def dump_file(d: Derivation, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump(d), encoding="utf-8")
    return path


def library_files(entries: List[Tuple[str, Any, Derivation]], directory: Union[str, Path]) -> List[Path]:
    """把派生规则库逐个写成 <名称>.drv"""
    directory = Path(directory)
    return [dump_file(d, directory / f"{name}.drv") for name, _, d in entries]
