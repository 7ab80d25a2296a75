from .controller import fuzz_controller, library_controller, proofcheck_controller
from common.enum import Calculus
from common.utils.cli_utils import add_source_args, global_options

CALCULI = [c.value for c in Calculus]


def register(subparsers) -> None:
    # 推导检查
    pc = subparsers.add_parser("proofcheck", parents=[global_options()], help="检查推导文件")
    add_source_args(pc, required=True)
    pc.add_argument("file", help="推导文件 (.drv)")
    pc.add_argument("--calculus", choices=CALCULI, default=Calculus.CO.value, help="演算")
    pc.set_defaults(handler=proofcheck_controller)

    # 派生规则库
    lib = subparsers.add_parser("library", parents=[global_options()], help="检查或导出派生规则库")
    add_source_args(lib, required=True)
    lib.add_argument("-o", "--out", help="导出目录；缺省时只做检查")
    lib.set_defaults(handler=library_controller)

    # 可靠性模糊测试
    fz = subparsers.add_parser("fuzz", parents=[global_options()], help="规则可靠性的随机检验")
    add_source_args(fz, required=True)
    fz.add_argument("--calculus", choices=CALCULI, required=True, help="演算")
    fz.add_argument("-n", "--n", type=int, default=50, help="每条规则的实例数")
    fz.add_argument("--rule", action="append", default=[], help="只测试该规则，可重复")
    fz.add_argument("--mode", choices=["ct", "gct"], help="覆盖默认语义")
    fz.set_defaults(handler=fuzz_controller)
