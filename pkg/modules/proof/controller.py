from pathlib import Path

from common.enum import Calculus, Mode, RuleId
from common.utils.cli_utils import budget_from_args, source_from_args
from common.utils.exceptions import ValidationError
from common.utils.logger import log_manager
from common.utils.response import CliResponse, ExitCode
from config import AppConfig
from services.proof import check, derived_library, load_file, soundness_fuzz
from services.proof.derivation_io import library_files

# 获取日志记录器
logger = log_manager.get_logger(__name__)


def _calculus(text: str) -> Calculus:
    try:
        return Calculus.from_text(text)
    except ValueError as exc:
        raise ValidationError(str(exc))


def proofcheck_controller(args) -> int:
    """
    检查推导文件

    Args:
        args: 推导文件、--calculus、签名来源

    Returns:
        int: 0 通过，1 不通过
    """
    sig, _ = source_from_args(args)
    calculus = _calculus(args.calculus)
    d = load_file(args.file, sig)
    result = check(d, calculus, sig)
    data = {"file": str(args.file), "calculus": calculus.value, **result.as_dict()}
    if result.ok:
        logger.info(f"推导 {d.name} 在 {calculus.value} 中检查通过")
        return CliResponse.holds(data, "valid")
    logger.info(f"推导 {d.name} 在结点 {result.node} 出错: {result.reason}")
    return CliResponse.fails(data, "invalid")


def library_controller(args) -> int:
    """实例化派生规则库；给出 --out 时写成推导文件，否则逐个检查"""
    sig, _ = source_from_args(args)
    entries = derived_library(sig)
    if args.out:
        paths = library_files(entries, Path(args.out))
        return CliResponse.ok({"files": [str(p) for p in paths]})

    results = {}
    for name, calculus, d in entries:
        results[name] = {"calculus": calculus.value, **check(d, calculus, sig).as_dict()}
    failed = [name for name, r in results.items() if not r["ok"]]
    if failed:
        logger.error(f"派生规则检查失败: {', '.join(failed)}")
        return CliResponse.fails(results, "invalid")
    return CliResponse.holds(results, "valid")


def fuzz_controller(args) -> int:
    """对演算的规则做可靠性模糊测试；有违例时退出码为 1"""
    sig, _ = source_from_args(args)
    calculus = _calculus(args.calculus)
    rules = None
    if args.rule:
        try:
            rules = [RuleId.from_text(r) for r in args.rule]
        except ValueError as exc:
            raise ValidationError(str(exc))
    if args.n < 1:
        raise ValidationError("--n 必须 ≥ 1")
    seed = args.seed if args.seed is not None else AppConfig.RNG_SEED
    report = soundness_fuzz(
        calculus,
        sig,
        n=args.n,
        seed=seed,
        mode=Mode.from_text(args.mode) if args.mode else None,
        rules=rules,
        budget=budget_from_args(args),
    )
    if args.raw:
        CliResponse.raw("sound" if report.ok else f"{len(report.violations)} violations")
        return ExitCode.OK if report.ok else ExitCode.FAILS
    return CliResponse.verdict(report.ok, report.as_dict())
