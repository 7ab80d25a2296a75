from pathlib import Path

from common.models import CausalTeam
from common.models.team_ops import intervene_ct, intervene_gct
from common.syntax.formula import IntDisj, Or
from common.syntax.parser import parse
from common.syntax.printer import render
from common.utils.cli_utils import equations_from_text, workspace_from_args
from common.utils.logger import log_manager
from common.utils.response import CliResponse
from common.workspace import dump, dumps, render_team, team_frame
from services.charform_service import warn_if_large
from services.semantics_service import check_formula, satisfies, witness_split

# 获取日志记录器
logger = log_manager.get_logger(__name__)


def _team_data(team):
    return team_frame(team).to_dict(orient="records")


def check_controller(args) -> int:
    """
    判定团队是否满足公式

    Args:
        args: workspace、team、formula，以及 --witness、--strategy

    Returns:
        int: 0 成立，1 不成立
    """
    ws = workspace_from_args(args)
    team = ws.team(args.team)
    phi = parse(args.formula, ws.sig)
    dialect = check_formula(phi, ws.sig)
    warn_if_large(phi, "公式")
    holds = satisfies(team, phi, args.strategy)
    logger.info(f"团队 {args.team} {'满足' if holds else '不满足'} {render(phi)}")

    data = {"team": args.team, "formula": render(phi), "dialect": dialect.value, "holds": holds}
    if args.witness and holds and isinstance(phi, (Or, IntDisj)):
        found = witness_split(team, phi, ws.sig)
        if found is not None:
            data["witness"] = {
                k: (_team_data(v) if hasattr(v, "sig") else v) for k, v in found.items()
            }
    if args.raw:
        CliResponse.raw("holds" if holds else "fails")
        return 0 if holds else 1
    return CliResponse.verdict(holds, data)


def intervene_controller(args) -> int:
    """对团队做干预 do(X=x)，把结果作为新团队写回工作区"""
    ws = workspace_from_args(args)
    team = ws.team(args.team)
    eq = equations_from_text(args.equations, ws.sig)
    result = intervene_ct(team, eq) if isinstance(team, CausalTeam) else intervene_gct(team, eq)
    name = args.name or f"{args.team}_do"
    ws.add_team(name, result)
    logger.info(f"干预 {eq} 作用于团队 {args.team}，结果 {len(result)} 行，命名为 {name}")

    if args.out:
        path = dump(ws, Path(args.out))
        data = {"team": name, "rows": _team_data(result), "path": str(path)}
        return CliResponse.ok(data, "干预完成")
    if args.raw:
        return CliResponse.raw(dumps(ws).rstrip())
    return CliResponse.ok({"team": name, "rows": _team_data(result), "workspace": dumps(ws)}, "干预完成")


def table_controller(args) -> int:
    """以表格形式显示团队"""
    ws = workspace_from_args(args)
    team = ws.team(args.team)
    if args.raw:
        return CliResponse.raw(render_team(team, ws))
    return CliResponse.ok({"team": args.team, "rows": team_frame(team, ws).to_dict(orient="records")})
