from .controller import check_controller, intervene_controller, table_controller
from common.utils.cli_utils import add_source_args, global_options


def register(subparsers) -> None:
    # 满足判定
    check = subparsers.add_parser("check", parents=[global_options()], help="判定团队是否满足公式")
    add_source_args(check, required=True)
    check.add_argument("team", help="团队名")
    check.add_argument("formula", help="公式文本")
    check.add_argument("--witness", action="store_true", help="给出 ∨ 的划分或 ⩒ 成立的析取支")
    check.add_argument("--strategy", choices=["auto", "split"], default="auto", help="∨ 的求值策略")
    check.set_defaults(handler=check_controller)

    # 干预
    intervene = subparsers.add_parser("intervene", parents=[global_options()], help="对团队做干预 do(X=x)")
    add_source_args(intervene, required=True)
    intervene.add_argument("team", help="团队名")
    intervene.add_argument("equations", help='干预等式，如 "X=1 /\\ Y=2"')
    intervene.add_argument("--name", help="结果团队的名字，默认 <团队名>_do")
    intervene.add_argument("-o", "--out", help="写出新的工作区文件")
    intervene.set_defaults(handler=intervene_controller)

    # 表格视图
    table = subparsers.add_parser("table", parents=[global_options()], help="以表格形式显示团队")
    add_source_args(table, required=True)
    table.add_argument("team", help="团队名")
    table.set_defaults(handler=table_controller)
