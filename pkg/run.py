import sys
from typing import Optional, Sequence

from app import create_parser
from common.utils.error_handler import error_handler
from common.utils.logger import log_manager
from config import AppConfig

logger = log_manager.get_logger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数，返回进程退出码"""
    parser = create_parser()
    # argparse 的用法错误以退出码 2 结束
    args = parser.parse_args(argv)

    AppConfig.SHOW_PROGRESS = bool(getattr(args, "progress", False))
    if getattr(args, "verbose", False):
        log_manager.set_level("DEBUG")
    AppConfig.create_directories()
    logger.debug(f"执行命令: {args.command}")
    return error_handler.wrap(args.handler)(args)


if __name__ == "__main__":
    sys.exit(main())
