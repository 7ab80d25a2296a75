from common.enum import Dialect, Mode
from common.models import CausalTeam, GeneralizedCausalTeam
from common.models.team_ops import to_ct
from common.syntax.parser import parse
from common.syntax.printer import render
from common.syntax.wellformed import classify
from common.utils.cli_utils import (
    budget_from_args,
    formulas_from_text,
    jobs_from_args,
    source_from_args,
)
from common.utils.exceptions import ValidationError
from common.utils.logger import log_manager
from common.utils.response import CliResponse
from common.workspace import Workspace, dump
from config import AppConfig
from services import charform_service as charform
from services.resolution_service import resolutions, resolve
from services.semantics_service import entails

# 获取日志记录器
logger = log_manager.get_logger(__name__)


def entail_controller(args) -> int:
    """
    判定 Δ ⊨ ψ

    Args:
        args: 前提 (--premise，可重复)、结论、--mode、预算选项、--save

    Returns:
        int: 0 成立，1 不成立（给出反例）
    """
    sig, _ = source_from_args(args)
    premises = formulas_from_text(args.premise, sig)
    conclusion = parse(args.conclusion, sig)
    mode = Mode.from_text(args.mode)
    verdict = entails(
        premises,
        conclusion,
        sig,
        mode,
        budget_from_args(args),
        jobs_from_args(args),
        args.method,
    )
    data = verdict.as_dict()
    data["premises"] = [render(p) for p in premises]
    data["conclusion"] = render(conclusion)
    if not verdict.exact:
        logger.warning("预算不足以精确枚举，结论来自采样")
    if verdict.counterexample is not None and args.save is not None:
        out = Workspace(sig)
        out.add_team("counterexample", verdict.counterexample)
        path = dump(out, args.save or AppConfig.get_output_path("counterexample.ws"))
        data["counterexample_file"] = str(path)
    if args.raw:
        CliResponse.raw("holds" if verdict.holds else "fails")
        return 0 if verdict.holds else 1
    return CliResponse.verdict(verdict.holds, data)


def _as_ct(team) -> CausalTeam:
    if isinstance(team, CausalTeam):
        return team
    return to_ct(team)


def _teams(args, ws):
    if ws is None:
        raise ValidationError("该构造需要 --workspace 中的团队")
    if not args.team:
        raise ValidationError("该构造需要 --team")
    return [ws.team(name) for name in args.team]


def _expect_args(args, n: int, usage: str):
    if len(args.args) != n:
        raise ValidationError(f"用法: charform {args.which} {usage}")
    return args.args


def _build(args, sig, ws):
    which = args.which
    dialect = Dialect.from_text(args.dialect)
    if which == "phi":
        if ws is None or not args.fc:
            raise ValidationError("phi 需要 --workspace 与 --fc")
        return charform.phi_F(ws.fc(args.fc))
    if which == "theta":
        (team,) = _teams(args, ws)[:1]
        rows = team.rows if isinstance(team, CausalTeam) else team.assignments
        return charform.theta_T(rows, sig)
    if which == "chi":
        (k,) = _expect_args(args, 1, "<k>")
        if not k.isdigit():
            raise ValidationError("k 必须是非负整数")
        return charform.chi_k(int(k), sig, dialect)
    if which == "xi":
        (team,) = _teams(args, ws)[:1]
        return charform.xi_T(_as_ct(team), sig, dialect)
    if which == "xistar":
        (team,) = _teams(args, ws)[:1]
        return charform.xi_star(team, sig, dialect)
    if which == "unf":
        return charform.unf(sig)
    if which == "betadc":
        x, v = _expect_args(args, 2, "<X> <V>")
        return charform.beta_dc(x, v, sig)
    if which == "betaen":
        (v,) = _expect_args(args, 1, "<V>")
        return charform.beta_en(v, sig)
    if which == "onefun":
        return charform.one_fun(sig)
    if which == "nomix":
        return charform.no_mix(sig)
    if which == "leadsto":
        x, y = _expect_args(args, 2, "<X> <Y>")
        return charform.leadsto(x, y, sig)
    if which in ("defineflat", "definedown"):
        if args.formula:
            k = charform.defined_class(parse(args.formula, sig), sig)
        elif which == "defineflat":
            points = []
            for team in _teams(args, ws):
                points.extend(team.members if isinstance(team, GeneralizedCausalTeam) else ((s, team.fc) for s in team.rows))
            k = charform.flat_class_from_points(sig, points)
        else:
            k = charform.downward_class_from_generators(sig, [_as_ct(t) for t in _teams(args, ws)])
        logger.info(f"团队类共 {len(k)} 个团队")
        if which == "defineflat":
            return charform.define_flat_class(k)
        return charform.define_downward_class(k, dialect)
    raise ValidationError(f"未知的构造: {which}")


def charform_controller(args) -> int:
    """输出特征公式"""
    sig, ws = source_from_args(args)
    phi = _build(args, sig, ws)
    nodes = charform.warn_if_large(phi, args.which)
    text = render(phi)
    if args.raw:
        return CliResponse.raw(text)
    return CliResponse.ok({"which": args.which, "formula": text, "dialect": classify(phi).value, "nodes": nodes})


def resolve_controller(args) -> int:
    """输出 R(φ)"""
    if args.workspace or args.signature:
        sig, _ = source_from_args(args)
        phi = parse(args.formula, sig)
        rs = resolve(phi, sig, AppConfig.RESOLUTION_CAP)
    else:
        phi = parse(args.formula)
        rs = resolutions(phi, AppConfig.RESOLUTION_CAP)
    texts = [render(gamma) for gamma in rs]
    if args.raw:
        return CliResponse.raw("\n".join(texts))
    return CliResponse.ok({"formula": render(phi), "count": len(texts), "resolutions": texts})
