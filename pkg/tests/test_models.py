import pytest

from common.models import Assignment, CausalTeam, EquationSeq, FunctionComponent, GeneralizedCausalTeam, Signature
from common.models.causal_team import compatible
from common.models.team_ops import (
    cn_set,
    ct_equivalent,
    ct_union,
    embeds,
    fc_similar,
    gct_equivalent,
    intervene_ct,
    intervene_gct,
    intervene_pair,
    is_causal_subteam,
    slice_of,
    to_ct,
    to_gct,
    uniform,
)
from common.utils.exceptions import (
    IncompatibleAssignmentError,
    InconsistentEquationError,
    NotRecursiveError,
    NotSimilarError,
    NotUniformError,
    UnknownSymbolError,
    ValidationError,
)


def rows_of(team):
    return {tuple(int(v) for v in s.values) for s in team.rows}


class TestSignature:
    def test_ranges_are_strings(self, example_sig):
        assert example_sig.dom == ("U", "X", "Y", "Z")
        assert example_sig.ran("Z") == ("2", "3", "4", "5", "6")

    @pytest.mark.parametrize(
        "ranges",
        [
            {},
            {"X": ()},
            {"X": (0, 0)},
        ],
    )
    def test_invalid_signature(self, ranges):
        with pytest.raises(ValidationError):
            Signature.of(ranges)

    def test_duplicate_variable(self):
        with pytest.raises(ValidationError):
            Signature.of([("X", (0, 1)), ("X", (0, 1))])

    def test_assignment_out_of_range(self, example_sig):
        with pytest.raises(UnknownSymbolError):
            Assignment(example_sig, (0, 0, 3, 2))


class TestFunctionComponent:
    def test_cycle_rejected(self, sig2):
        with pytest.raises(NotRecursiveError):
            FunctionComponent.from_tables(
                sig2,
                {
                    "X": (("Y",), {("0",): "0", ("1",): "1"}),
                    "Y": (("X",), {("0",): "0", ("1",): "1"}),
                },
            )

    def test_incomplete_table(self, sig2):
        with pytest.raises(ValidationError):
            FunctionComponent.from_tables(sig2, {"Y": (("X",), {("0",): "0"})})

    def test_self_parent(self, sig2):
        with pytest.raises(ValidationError):
            FunctionComponent.from_tables(sig2, {"Y": (("Y",), {("0",): "0", ("1",): "1"})})

    def test_example_structure(self, example_fc):
        assert example_fc.endogenous == frozenset({"X", "Y", "Z"})
        assert example_fc.exogenous == ("U",)
        assert example_fc.parents("Z") == ("U", "X", "Y")
        assert cn_set(example_fc) == frozenset()

    def test_constant_mechanism(self, sig2):
        f = FunctionComponent.from_tables(sig2, {"Y": ((), {(): "1"})})
        assert cn_set(f) == frozenset({"Y"})
        assert cn_set(FunctionComponent.empty(sig2)) == frozenset()


class TestCompatibility:
    def test_example_rows(self, example_sig, example_fc):
        assert compatible(Assignment(example_sig, (0, 0, 1, 2)), example_fc)
        assert not compatible(Assignment(example_sig, (0, 1, 1, 2)), example_fc)

    def test_empty_fc_admits_everything(self, example_sig):
        f = FunctionComponent.empty(example_sig)
        assert compatible(Assignment(example_sig, (0, 1, 1, 2)), f)

    def test_team_rejects_incompatible_row(self, example_fc):
        with pytest.raises(IncompatibleAssignmentError):
            CausalTeam.of(example_fc, [(0, 1, 1, 2)])


class TestIntervention:
    def test_do_x1(self, team_t):
        result = intervene_ct(team_t, EquationSeq.of(("X", 1)))
        assert rows_of(result) == {(0, 1, 2, 5), (1, 1, 2, 6)}
        assert "X" not in result.fc.endogenous

    def test_do_u1_collapses_rows(self, team_t):
        result = intervene_ct(team_t, EquationSeq.of(("U", 1)))
        assert rows_of(result) == {(1, 1, 2, 6)}

    def test_empty_team(self, example_fc):
        result = intervene_ct(CausalTeam(example_fc, ()), EquationSeq.of(("X", 1)))
        assert result.is_empty()
        assert result.fc.endogenous == frozenset({"Y", "Z"})

    def test_fixed_point(self, example_sig, example_fc):
        s = Assignment(example_sig, (1, 1, 2, 6))
        t, g = intervene_pair(s, example_fc, EquationSeq.of(("U", 1)))
        assert t == s
        assert g == example_fc

    def test_inconsistent_equations(self, team_t):
        with pytest.raises(InconsistentEquationError):
            intervene_ct(team_t, EquationSeq.of(("X", 0), ("X", 1)))

    def test_order_independence(self, example_sig, example_fc):
        s = Assignment(example_sig, (0, 0, 1, 2))
        eq = EquationSeq.of(("X", 1))
        first = intervene_pair(s, example_fc, eq, order=("U", "X", "Y", "Z"))
        second = intervene_pair(s, example_fc, eq, order=("X", "Y", "U", "Z"))
        assert first == second
        assert tuple(first[0].values) == ("0", "1", "2", "5")

    def test_bad_order(self, example_sig, example_fc):
        s = Assignment(example_sig, (0, 0, 1, 2))
        with pytest.raises(ValidationError):
            intervene_pair(s, example_fc, EquationSeq.of(("U", 1)), order=("Z", "Y", "X", "U"))

    def test_commutes_with_to_gct(self, team_t):
        eq = EquationSeq.of(("X", 1))
        assert to_gct(intervene_ct(team_t, eq)) == intervene_gct(to_gct(team_t), eq)

    def test_gct_members_rewritten_independently(self, workspace):
        mixed = workspace.team("mixed")
        eq = EquationSeq.of(("X", 1))
        result = intervene_gct(mixed, eq)
        expected = {intervene_pair(s, f, eq) for s, f in mixed.members}
        assert set(result.members) == expected


class TestSimilarity:
    def test_dummy_parent(self, sig2):
        f = FunctionComponent.from_tables(sig2, {"Y": ((), {(): "1"})})
        g = FunctionComponent.from_tables(sig2, {"Y": (("X",), {("0",): "1", ("1",): "1"})})
        assert fc_similar(f, g)
        assert fc_similar(f, FunctionComponent.empty(sig2))

    def test_different_functions(self, copy_fc, flip_fc):
        assert fc_similar(copy_fc, copy_fc)
        assert not fc_similar(copy_fc, flip_fc)

    def test_dummy_argument_among_several(self):
        sig = Signature.of({"A": (0, 1), "B": (0, 1), "C": (0, 1), "V": (0, 1, 2)})
        f = FunctionComponent.from_functions(sig, {"V": (("A", "B"), lambda a, b: int(a) + int(b))})
        g = FunctionComponent.from_functions(sig, {"V": (("A", "B", "C"), lambda a, b, c: int(a) + int(b))})
        assert fc_similar(f, g)
        assert f.reduced == g.reduced

    def test_ct_equivalent(self, sig2, copy_fc):
        padded = FunctionComponent.from_tables(
            sig2,
            {"Y": (("X",), {("0",): "0", ("1",): "1"}), "X": ((), {(): "1"})},
        )
        t = CausalTeam.of(copy_fc, [(1, 1)])
        assert ct_equivalent(t, CausalTeam.of(padded, [(1, 1)]))
        assert not ct_equivalent(t, CausalTeam.of(copy_fc, [(0, 0)]))

    def test_gct_equivalent_swaps_similar_fc(self, sig2, copy_fc):
        dummy = FunctionComponent.from_tables(
            sig2, {"Y": (("X",), {("0",): "0", ("1",): "1"}), "X": ((), {(): "0"})}
        )
        s = Assignment(sig2, (0, 0))
        left = GeneralizedCausalTeam(sig2, ((s, copy_fc),))
        right = GeneralizedCausalTeam(sig2, ((s, dummy),))
        assert left != right
        assert gct_equivalent(left, right)

    def test_slices_group_similar_members(self, sig2, copy_fc, flip_fc):
        padded = FunctionComponent.from_tables(
            sig2, {"Y": (("X",), {("0",): "0", ("1",): "1"}), "X": ((), {(): "1"})}
        )
        a, b = Assignment(sig2, (0, 0)), Assignment(sig2, (1, 1))
        team = GeneralizedCausalTeam(sig2, ((a, copy_fc), (b, padded)))
        assert slice_of(team, copy_fc) == frozenset({a, b})
        assert slice_of(team, padded) == frozenset({a, b})
        assert slice_of(team, flip_fc) == frozenset()


class TestUnion:
    def test_union_of_similar_teams(self, sig2, copy_fc):
        constant_x = FunctionComponent.from_tables(
            sig2, {"Y": (("X",), {("0",): "0", ("1",): "1"}), "X": ((), {(): "1"})}
        )
        s = CausalTeam.of(copy_fc, [(0, 0)])
        t = CausalTeam.of(constant_x, [(1, 1)])
        union = ct_union(s, t)
        assert rows_of(union) == {(0, 0), (1, 1)}
        assert fc_similar(union.fc, copy_fc)
        assert union.fc.endogenous == frozenset({"Y"})

    def test_idempotent(self, team_t):
        union = ct_union(team_t, team_t)
        assert union.row_set == team_t.row_set
        assert fc_similar(union.fc, team_t.fc)

    def test_dissimilar(self, copy_fc, flip_fc):
        with pytest.raises(NotSimilarError):
            ct_union(CausalTeam(copy_fc, ()), CausalTeam(flip_fc, ()))


class TestConversions:
    def test_round_trip(self, team_t):
        assert to_ct(to_gct(team_t)) == team_t
        assert len(to_gct(team_t)) == 2

    def test_to_ct_rejects_mixed(self, workspace):
        with pytest.raises(NotUniformError):
            to_ct(workspace.team("mixed"))

    def test_to_ct_rejects_empty(self, sig2):
        with pytest.raises(NotUniformError):
            to_ct(GeneralizedCausalTeam(sig2, ()))

    def test_uniform(self, team_t, workspace, copy_fc, flip_fc, sig2):
        assert uniform(to_gct(team_t))
        assert not uniform(workspace.team("mixed"))
        mixed = GeneralizedCausalTeam(
            sig2, ((Assignment(sig2, (0, 0)), copy_fc), (Assignment(sig2, (0, 1)), flip_fc))
        )
        assert not uniform(mixed)

    def test_embeds(self, team_t):
        first = team_t.subteam(team_t.rows[:1])
        assert embeds(first, team_t) == first
        assert embeds(team_t, first) is None
        assert is_causal_subteam(first, team_t)
        assert not is_causal_subteam(team_t, first)
