from .loader import Workspace, load, loads
from .writer import dump, dumps
from .table_view import render_team, team_frame

__all__ = ["Workspace", "load", "loads", "dump", "dumps", "render_team", "team_frame"]
