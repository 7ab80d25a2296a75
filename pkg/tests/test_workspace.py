import pytest

from common.constant.example_team import example_team
from common.models import CausalTeam, EquationSeq, GeneralizedCausalTeam
from common.models.team_ops import intervene_ct
from common.utils.exceptions import NotFoundError, WorkspaceError
from common.workspace import dump, dumps, load, loads, render_team, team_frame

BINARY = "signature\n  var X: 0 1\n  var Y: 0 1\n"


class TestLoad:
    def test_example(self, workspace):
        assert workspace.sig.dom == ("U", "X", "Y", "Z")
        assert set(workspace.fcs) == {"F", "G"}
        assert workspace.team("T") == example_team()
        mixed = workspace.team("mixed")
        assert isinstance(mixed, GeneralizedCausalTeam)
        assert len(mixed) == 2
        assert set(mixed.function_components) == {workspace.fc("F"), workspace.fc("G")}

    def test_unknown_names(self, workspace):
        with pytest.raises(NotFoundError):
            workspace.team("S")
        with pytest.raises(NotFoundError):
            workspace.fc("H")

    def test_constant_mechanism_and_comments(self):
        ws = loads(BINARY + "fc C  # Y 恒为 1\n  fn Y <-\n    => 1\nct T of C\n  row 0 1\n  row 1 1\n")
        team = ws.team("T")
        assert isinstance(team, CausalTeam)
        assert team.fc.cn_set == frozenset({"Y"})
        assert len(team.rows) == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(WorkspaceError) as info:
            load(tmp_path / "missing.ws")
        assert info.value.line is None


class TestLoadErrors:
    @pytest.mark.parametrize(
        "text, line",
        [
            ("", 1),
            ("fc F\n", 1),
            ("signature\n  var X 0 1\n", 2),
            ("signature\n  var X: 0 1\n  row 0\n", 3),
            ("signature\n  var X: 0 1\n  var X: 0\n", 3),
            ("signature\n  var X: 0 1\nsignature\n", 3),
            (BINARY + "fc F\n  fn Y <- X\n    0 => 1\n", 5),
            (BINARY + "fc F\n  fn Y <- X X\n", 5),
            (BINARY + "fc F\n  fn Y <- Y\n", 5),
            (BINARY + "fc F\n  fn W <- X\n", 5),
            (BINARY + "fc F\n  fn Y <-\n    => 1\n    => 0\n", 7),
            (BINARY + "fc F\n  fn Y <-\n    => 2\n", 6),
            (BINARY + "fc F\n  fn Y <-\n    => 1\nct T of F\n  row 0 0\n", 8),
            (BINARY + "ct T of H\n", 4),
            (BINARY + "fc F\n  fn Y <-\n    => 1\nfc F\n", 7),
            (BINARY + "fc F\n  fn Y <-\n    => 1\ngct M\n  member H: 0 1\n", 8),
        ],
    )
    def test_line_numbers(self, text, line):
        with pytest.raises(WorkspaceError) as info:
            loads(text)
        assert info.value.line == line


class TestWrite:
    def test_round_trip(self, workspace):
        again = loads(dumps(workspace))
        assert again.sig == workspace.sig
        assert again.fcs == workspace.fcs
        assert again.teams == workspace.teams

    def test_intervened_team_is_named(self, workspace, tmp_path):
        team = intervene_ct(workspace.team("T"), EquationSeq.of(("X", 1)))
        workspace.add_team("T_do", team)
        assert workspace.fc_name(team.fc) == "T_do_F1"
        again = load(dump(workspace, tmp_path / "out" / "ws.ws"))
        assert again.team("T_do") == team
        assert again.fc("T_do_F1") == team.fc

    def test_known_function_component_not_renamed(self, workspace):
        t = workspace.team("T")
        workspace.add_team("copy", t.subteam(t.rows[:1]))
        assert set(workspace.fcs) == {"F", "G"}
        assert "copy" in workspace.teams


class TestTableView:
    def test_causal_team(self, workspace):
        frame = team_frame(workspace.team("T"))
        assert list(frame.columns) == ["U", "X", "Y", "Z"]
        assert frame.values.tolist() == [["0", "0", "1", "2"], ["1", "1", "2", "6"]]
        text = render_team(workspace.team("T"))
        assert "Y := F_Y(X)" in text

    def test_generalized_team_names_components(self, workspace):
        frame = team_frame(workspace.team("mixed"), workspace)
        assert list(frame.columns) == ["U", "X", "Y", "Z", "F"]
        assert set(frame["F"]) == {"F", "G"}

    def test_empty_team(self, workspace):
        t = workspace.team("T")
        assert "(空团队)" in render_team(CausalTeam(t.fc, ()))
