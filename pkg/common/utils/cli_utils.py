import argparse
from functools import lru_cache
from typing import Optional, Tuple

from config import AppConfig, EnvConfig
from common.models import EquationSeq, Signature, UniverseBudget
from common.syntax.formula import And, Eq, Formula, Top
from common.syntax.parser import parse
from common.utils.exceptions import ValidationError
from common.utils.logger import log_manager
from common.workspace import Workspace, load

logger = log_manager.get_logger(__name__)


@lru_cache(maxsize=1)
def global_options() -> argparse.ArgumentParser:
    """所有子命令共享的选项（预算、种子、并行、输出格式）"""
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("通用选项")
    group.add_argument("--budget", type=int, default=None, help="精确枚举的 |Sem| 上限")
    group.add_argument("--samples", type=int, default=None, help="超出预算时的采样数")
    group.add_argument("--seed", type=int, default=None, help="随机种子")
    group.add_argument("--jobs", type=int, default=None, help="枚举进程数（默认读取 CAUSAL_TEAMS_JOBS）")
    group.add_argument("--progress", action="store_true", help="显示进度条")
    group.add_argument("--raw", action="store_true", help="直接输出文本而不是 JSON")
    group.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    return parent


def add_source_args(parser: argparse.ArgumentParser, required: bool = False) -> None:
    """--workspace 文件或 --signature 文本，二选一"""
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("-w", "--workspace", help="工作区文件")
    source.add_argument("-s", "--signature", help='签名，如 "U:0,1; X:0,1"')


def parse_signature_text(text: str) -> Signature:
    """解析 "U:0,1; X:0,1" 形式的签名"""
    ranges = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ValidationError(f"签名条目应为 变量:取值,取值 ，得到 {part}")
        var, values = part.split(":", 1)
        var = var.strip()
        if var in ranges:
            raise ValidationError(f"变量 {var} 重复声明")
        ranges[var] = tuple(v.strip() for v in values.split(",") if v.strip())
    if not ranges:
        raise ValidationError("签名为空")
    return Signature.of(ranges)


def source_from_args(args) -> Tuple[Signature, Optional[Workspace]]:
    if getattr(args, "workspace", None):
        ws = load(args.workspace)
        return ws.sig, ws
    if getattr(args, "signature", None):
        return parse_signature_text(args.signature), None
    raise ValidationError("需要 --workspace 或 --signature")


def workspace_from_args(args) -> Workspace:
    sig, ws = source_from_args(args)
    if ws is None:
        raise ValidationError("该命令需要 --workspace")
    return ws


def budget_from_args(args) -> UniverseBudget:
    default = AppConfig.default_budget()
    max_sem = args.budget if args.budget is not None else default.max_sem_size
    samples = args.samples if args.samples is not None else default.sample_count
    if not AppConfig.validate_budget(max_sem, samples):
        raise ValidationError("预算参数必须为正整数", {"budget": max_sem, "samples": samples})
    seed = args.seed if args.seed is not None else default.rng_seed
    return UniverseBudget(max_sem_size=max_sem, sample_count=samples, rng_seed=seed)


def jobs_from_args(args) -> int:
    if args.jobs is not None:
        if args.jobs < 1:
            raise ValidationError("--jobs 必须 ≥ 1")
        return args.jobs
    return EnvConfig.get_worker_count()


def equations_from_text(text: str, sig: Signature) -> EquationSeq:
    """把 "X=1 /\\ Y=2" 解析为等式序列（按书写顺序）"""
    phi = parse(text, sig)
    pairs = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, And):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Eq):
            pairs.append((node.var, node.value))
        elif isinstance(node, Top):
            continue
        else:
            raise ValidationError(f"干预只能由等式的合取给出，得到 {node}")
    return EquationSeq(tuple(pairs))


def formulas_from_text(texts, sig: Signature) -> Tuple[Formula, ...]:
    return tuple(parse(t, sig) for t in texts or ())
