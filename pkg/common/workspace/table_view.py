"""团队的表格视图：每行一个赋值，列按签名顺序；gct 额外给出函数组件名"""

from typing import Optional, Union

import pandas as pd

from common.models import CausalTeam, GeneralizedCausalTeam
from common.workspace.loader import Workspace

Team = Union[CausalTeam, GeneralizedCausalTeam]


def team_frame(team: Team, ws: Optional[Workspace] = None) -> pd.DataFrame:
    sig = team.sig
    if isinstance(team, CausalTeam):
        return pd.DataFrame([list(s.values) for s in team.rows], columns=list(sig.dom))
    names = []
    for _, f in team.members:
        name = ws.fc_name(f) if ws is not None else None
        names.append(name or repr(f))
    frame = pd.DataFrame([list(s.values) for s, _ in team.members], columns=list(sig.dom))
    frame.insert(len(sig.dom), "F", names)
    return frame


def mechanism_lines(team: CausalTeam) -> str:
    """函数组件的文字说明，如 Y := F_Y(X)"""
    lines = []
    for m in team.fc.mechanisms:
        lines.append(f"{m.var} := F_{m.var}({', '.join(m.parents)})")
    return "\n".join(lines)


def render_team(team: Team, ws: Optional[Workspace] = None) -> str:
    frame = team_frame(team, ws)
    if frame.empty:
        table = " ".join(team.sig.dom) + "\n(空团队)"
    else:
        table = frame.to_string(index=False)
    if isinstance(team, CausalTeam) and team.fc.mechanisms:
        return table + "\n\n" + mechanism_lines(team)
    return table
