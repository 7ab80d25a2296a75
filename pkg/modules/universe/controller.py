from common.utils.cli_utils import source_from_args
from common.utils.exceptions import UniverseTooLargeError
from common.utils.logger import log_manager
from common.utils.response import CliResponse
from services import enumeration_service as enum

logger = log_manager.get_logger(__name__)


def enumerate_controller(args) -> int:
    """统计 σ 上的对象个数；超出 MAX_FC_COUNT 时只给出闭式计数"""
    sig, _ = source_from_args(args)
    data = {
        "variables": list(sig.dom),
        "assignments": len(enum.enum_assignments(sig)),
        "function_components": enum.count_function_components(sig),
    }
    try:
        data["representatives"] = len(enum.representatives(sig))
        data["sem"] = len(enum.enum_sem(sig))
        data["causal_teams"] = enum.count_causal_teams(sig)
        data["exact"] = True
    except UniverseTooLargeError as exc:
        logger.warning(f"只给出闭式计数: {exc.message}")
        data["exact"] = False
    if args.raw:
        lines = [f"{k}: {v}" for k, v in data.items() if k != "variables"]
        return CliResponse.raw("\n".join(lines))
    return CliResponse.ok(data)
