from pathlib import Path
from typing import List, Union

from common.models import CausalTeam
from common.workspace.loader import Workspace


def dumps(ws: Workspace) -> str:
    """写成可以被 loads 重新读入的文本"""
    sig = ws.sig
    lines: List[str] = ["signature"]
    for var, ran in zip(sig.dom, sig.ranges):
        lines.append(f"  var {var}: {' '.join(ran)}")

    for name, fc in ws.fcs.items():
        lines.append("")
        lines.append(f"fc {name}")
        for m in fc.mechanisms:
            lines.append(f"  fn {m.var} <- {' '.join(m.parents)}".rstrip())
            for key, out in zip(sig.value_tuples(m.parents), m.table):
                lhs = " ".join(key)
                lines.append(f"    {lhs} => {out}" if lhs else f"    => {out}")

    for name, team in ws.teams.items():
        lines.append("")
        if isinstance(team, CausalTeam):
            lines.append(f"ct {name} of {ws.fc_name(team.fc)}")
            for s in team.rows:
                lines.append(f"  row {' '.join(s.values)}".rstrip())
        else:
            lines.append(f"gct {name}")
            for s, f in team.members:
                lines.append(f"  member {ws.fc_name(f)}: {' '.join(s.values)}".rstrip())
    return "\n".join(lines) + "\n"


def dump(ws: Workspace, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(ws), encoding="utf-8")
    return path
