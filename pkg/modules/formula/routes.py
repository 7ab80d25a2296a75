from .controller import charform_controller, entail_controller, resolve_controller
from common.utils.cli_utils import add_source_args, global_options

CHARFORMS = (
    "phi",
    "theta",
    "chi",
    "xi",
    "xistar",
    "unf",
    "betadc",
    "betaen",
    "onefun",
    "nomix",
    "leadsto",
    "defineflat",
    "definedown",
)


def register(subparsers) -> None:
    # 蕴涵判定
    entail = subparsers.add_parser("entail", parents=[global_options()], help="判定 Δ ⊨ ψ")
    add_source_args(entail, required=True)
    entail.add_argument("conclusion", help="结论 ψ")
    entail.add_argument("-p", "--premise", action="append", default=[], help="前提，可重复")
    entail.add_argument("--mode", choices=["ct", "gct"], default="gct", help="语义")
    entail.add_argument("--method", choices=["auto", "enumerate"], default="auto", help="判定方法")
    entail.add_argument(
        "--save", nargs="?", const="", default=None, help="把反例写成工作区文件（缺省写到输出目录）"
    )
    entail.set_defaults(handler=entail_controller)

    # 特征公式
    cf = subparsers.add_parser("charform", parents=[global_options()], help="构造特征公式")
    add_source_args(cf, required=True)
    cf.add_argument("which", choices=CHARFORMS, help="公式种类")
    cf.add_argument("args", nargs="*", help="位置参数，如 chi 的 k、leadsto 的 X Y")
    cf.add_argument("--fc", help="函数组件名（phi）")
    cf.add_argument("--team", action="append", default=[], help="团队名（theta/xi/xistar/defineflat/definedown）")
    cf.add_argument("--formula", help="以 K_φ 作为团队类（defineflat/definedown）")
    cf.add_argument("--dialect", choices=["cod", "coi"], default="cod", help="χ 与 Ξ 使用的语言")
    cf.set_defaults(handler=charform_controller)

    # resolution
    res = subparsers.add_parser("resolve", parents=[global_options()], help="计算 CO∨ 公式的 resolution")
    add_source_args(res)
    res.add_argument("formula", help="公式文本")
    res.set_defaults(handler=resolve_controller)
