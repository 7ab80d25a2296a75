from .controller import enumerate_controller
from common.utils.cli_utils import add_source_args, global_options


def register(subparsers) -> None:
    en = subparsers.add_parser("enumerate", parents=[global_options()], help="统计赋值、函数组件与团队个数")
    add_source_args(en, required=True)
    en.set_defaults(handler=enumerate_controller)
