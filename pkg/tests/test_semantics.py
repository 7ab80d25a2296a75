from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from common.constant.example_team import example_signature, example_team
from common.enum import Dialect, Mode
from common.models import CausalTeam, GeneralizedCausalTeam, Signature, UniverseBudget
from common.models.team_ops import intervene_ct, to_gct
from common.syntax import And, Cf, Dep, Eq, IntDisj, parse
from common.syntax.generator import FormulaGenerator
from common.utils.exceptions import FormulaClassError, ValidationError
from common.utils.rng import keyed_generator
from common.workspace import load
from services.charform_service import unf
from services.enumeration_service import sample_causal_team, sample_gct
from services.semantics_service import (
    SatisfactionChecker,
    entails,
    entails_ct,
    entails_gct,
    equivalent,
    reduce_ct_entailment,
    satisfies,
    satisfies_ct,
    satisfies_gct,
    witness_split,
)

SIG = example_signature()
TEAM_T = example_team()
MIXED = load(Path(__file__).resolve().parent.parent / "data" / "example.ws").team("mixed")


def rows_of(team):
    return {tuple(int(v) for v in s.values) for s in team.rows}


class TestExampleTeam:
    def test_counterfactual(self, team_t):
        assert satisfies(team_t, parse("X=1 -> Y=2"))
        assert not satisfies(team_t, parse("X=1 -> Y=1"))

    def test_dependence_lost_after_intervention(self, team_t):
        assert satisfies(team_t, parse("=(Y;Z)"))
        assert not satisfies(team_t, parse("X=1 -> =(Y;Z)"))

    def test_tensor_versus_intuitionistic_disjunction(self, team_t):
        assert satisfies(team_t, parse(r"Y!=2 \/ Y=2"))
        assert not satisfies(team_t, parse(r"Y!=2 \\/ Y=2"))

    def test_constancy(self, team_t):
        assert not satisfies(team_t, parse("=(Y)"))
        assert satisfies(team_t, parse("X=1 -> =(Y)"))

    def test_selective_implication(self, team_t):
        assert satisfies(team_t, parse("U=1 => Z=6"))
        assert satisfies(team_t, parse("U=0 => =(Z)"))
        assert not satisfies(team_t, parse("U=0 => Z=6"))

    def test_inconsistent_antecedent_is_vacuous(self, team_t):
        assert satisfies(team_t, parse("X=0 /\\ X=1 -> _|_"))

    def test_ct_and_gct_agree_on_a_causal_team(self, team_t):
        for text in ("X=1 -> Y=2", "=(Y;Z)", r"Y!=2 \\/ Y=2", "X=0 -> =(Z)"):
            phi = parse(text)
            assert satisfies_ct(team_t, phi) == satisfies_gct(to_gct(team_t), phi)


class TestEmptyAndSingletons:
    @pytest.mark.parametrize("text", ["_|_", "=(Z)", r"X=0 \\/ X=1", "X=1 -> Y=1"])
    def test_empty_team_satisfies_everything(self, example_fc, text):
        assert satisfies(CausalTeam(example_fc, ()), parse(text))
        assert satisfies(GeneralizedCausalTeam(SIG, ()), parse(text))

    def test_bot_fails_on_nonempty_team(self, team_t):
        assert not satisfies(team_t, parse("_|_"))

    def test_dependence_holds_on_singletons(self, team_t):
        for s in team_t.rows:
            assert satisfies(team_t.subteam([s]), parse("=(Z)"))


class TestGeneralizedTeam:
    def test_members_keep_their_own_mechanisms(self):
        assert not satisfies(MIXED, parse("X=1 -> Y=2"))
        assert satisfies(MIXED, parse(r"X=1 -> Y=2 \/ Y=1"))
        assert not satisfies(MIXED, parse(r"X=1 -> Y=2 \\/ Y=1"))

    def test_ct_checker_rejects_gct(self):
        checker = SatisfactionChecker(SIG, Mode.CT)
        with pytest.raises(ValidationError):
            checker.satisfies(MIXED, Eq("X", "0"))


def small_signature(rng) -> Signature:
    """一到三个变量，每个变量两到三个取值"""
    size = int(rng.integers(1, 4))
    return Signature.of({name: tuple(range(int(rng.integers(2, 4)))) for name in ("A", "B", "C")[:size]})


def small_case(seed, mode, dialect):
    """随机小签名上的公式（深度不超过 4）与团队（至多 6 行或 6 个成员）"""
    sig = small_signature(keyed_generator(seed, 0))
    phi = FormulaGenerator(sig, keyed_generator(seed, 1), dialect, max_depth=4).formula()
    rng = keyed_generator(seed, 2)
    team = sample_causal_team(sig, rng, max_rows=6) if mode is Mode.CT else sample_gct(sig, rng, max_members=6)
    return phi, team


def parts(team):
    return team.rows if isinstance(team, CausalTeam) else team.members


SEEDS = st.integers(min_value=0, max_value=2**32 - 1)
MODES = [Mode.CT, Mode.GCT]


class TestClosureProperties:
    @pytest.mark.parametrize("mode", MODES, ids=[m.value for m in MODES])
    @settings(max_examples=1000, deadline=None)
    @given(seed=SEEDS, dialect=st.sampled_from([Dialect.CO, Dialect.COD, Dialect.COI]))
    def test_empty_team_property(self, mode, seed, dialect):
        phi, team = small_case(seed, mode, dialect)
        assert satisfies(team.subteam([]), phi)

    @pytest.mark.parametrize("mode", MODES, ids=[m.value for m in MODES])
    @settings(max_examples=1000, deadline=None)
    @given(seed=SEEDS)
    def test_co_formulas_are_flat(self, mode, seed):
        phi, team = small_case(seed, mode, Dialect.CO)
        pointwise = all(satisfies(team.subteam([p]), phi) for p in parts(team))
        assert satisfies(team, phi) == pointwise

    @pytest.mark.parametrize("mode", MODES, ids=[m.value for m in MODES])
    @settings(max_examples=1000, deadline=None)
    @given(seed=SEEDS, dialect=st.sampled_from([Dialect.CO, Dialect.COD, Dialect.COI]))
    def test_downward_closure(self, mode, seed, dialect):
        phi, team = small_case(seed, mode, dialect)
        if satisfies(team, phi):
            members = parts(team)
            for k in range(len(members)):
                assert satisfies(team.subteam(members[:k] + members[k + 1:]), phi)

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        dialect=st.sampled_from([Dialect.CO, Dialect.COD, Dialect.COI]),
    )
    def test_strategies_agree(self, seed, dialect):
        phi = FormulaGenerator(SIG, keyed_generator(seed, 0), dialect).formula()
        team = sample_gct(SIG, keyed_generator(seed, 1), max_members=4)
        assert satisfies(team, phi, "auto") == satisfies(team, phi, "split")
        assert satisfies_ct(TEAM_T, phi, "auto") == satisfies_ct(TEAM_T, phi, "split")

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_counterfactual_is_intervention(self, seed):
        gen = FormulaGenerator(SIG, keyed_generator(seed, 0), Dialect.COD, inconsistent_rate=0.0)
        eq, phi = gen.equations(), gen.formula()
        assume(eq.consistent())
        assert satisfies(TEAM_T, Cf(eq, phi)) == satisfies(intervene_ct(TEAM_T, eq), phi)


class TestWitness:
    def test_tensor_split(self, team_t):
        split = witness_split(team_t, parse(r"Y!=2 \/ Y=2"))
        assert rows_of(split["left"]) == {(0, 0, 1, 2)}
        assert rows_of(split["right"]) == {(1, 1, 2, 6)}

    def test_intuitionistic_disjunct(self, team_t):
        first = team_t.subteam(team_t.rows[:1])
        assert witness_split(first, parse(r"Y=1 \\/ X=1")) == {"disjunct": "left"}
        assert witness_split(team_t, parse(r"Y=1 \\/ X=1")) is None

    def test_only_disjunctions(self, team_t):
        with pytest.raises(ValidationError):
            witness_split(team_t, parse("Y=1"))


class TestFormulaChecks:
    def test_ill_formed(self, team_t):
        with pytest.raises(FormulaClassError):
            satisfies(team_t, And(Dep((), "Y"), IntDisj(Eq("X", "0"), Eq("X", "1"))))

    def test_unknown_symbol(self, team_t):
        with pytest.raises(ValidationError):
            satisfies(team_t, Eq("W", "1"))

    def test_unknown_strategy(self):
        with pytest.raises(ValidationError):
            SatisfactionChecker(SIG, Mode.GCT, "greedy")


class TestEntailment:
    @pytest.mark.parametrize("mode", [Mode.CT, Mode.GCT])
    @pytest.mark.parametrize(
        "premises, conclusion, holds",
        [
            ([], r"X=0 \/ X=1", True),
            ([], r"X=0 \\/ X=1", False),
            ([], "=(X)", False),
            (["X=0 -> X=1"], "_|_", True),
            (["=(X)"], r"X=0 \\/ X=1", True),
        ],
    )
    def test_methods_agree(self, sig1, mode, premises, conclusion, holds):
        phis = [parse(p) for p in premises]
        psi = parse(conclusion)
        auto = entails(phis, psi, sig1, mode)
        full = entails(phis, psi, sig1, mode, method="enumerate")
        assert auto.holds is holds
        assert full.holds is holds
        assert auto.method == "maximal-team"
        assert full.method == "enumeration"
        assert auto.exact and full.exact

    def test_counterexample_is_minimal(self, sig2):
        verdict = entails_gct([], parse("X=1"), sig2)
        assert not verdict.holds
        team = verdict.counterexample
        assert isinstance(team, GeneralizedCausalTeam)
        assert len(team) == 1
        assert team.members[0][0]["X"] == "0"
        assert verdict.as_dict()["counterexample"]

    def test_ct_counterexample(self, sig2):
        verdict = entails_ct([parse("X=0")], parse("Y=0"), sig2)
        assert not verdict.holds
        team = verdict.counterexample
        assert isinstance(team, CausalTeam)
        assert not satisfies(team, parse("Y=0"))
        assert satisfies(team, parse("X=0"))

    def test_uniformity_separates_the_semantics(self, sig2):
        assert entails([], unf(sig2), sig2, Mode.CT).holds
        assert not entails([], unf(sig2), sig2, Mode.GCT).holds

    def test_reduction_to_gct(self, sig1):
        for text in (r"X=0 \/ X=1", r"X=0 \\/ X=1", "X=0 -> =(X)"):
            phi = parse(text)
            assert reduce_ct_entailment([], phi, sig1).holds == entails_ct([], phi, sig1).holds

    @pytest.mark.parametrize("sig_name", ["sig1", "sig2"])
    def test_reduction_to_gct_on_random_pairs(self, request, sig_name):
        sig = request.getfixturevalue(sig_name)
        outcomes = set()
        for seed in range(50):
            gen = FormulaGenerator(sig, keyed_generator(seed, 11), Dialect.COI, max_depth=2)
            premises = [gen.formula() for _ in range(seed % 3)]
            psi = gen.formula()
            if premises and seed % 4 == 0:
                psi = IntDisj(psi, premises[0])
            reduced = reduce_ct_entailment(premises, psi, sig)
            direct = entails_ct(premises, psi, sig)
            assert reduced.exact and direct.exact
            assert reduced.holds == direct.holds, (seed, premises, psi)
            outcomes.add(direct.holds)
        assert outcomes == {True, False}

    def test_exact_ct_enumeration_counts_teams(self, sig2):
        verdict = entails_ct([parse("X=1")], parse(r"X=1 \/ Y=0"), sig2, method="enumerate")
        assert verdict.holds
        assert verdict.exact
        assert verdict.checked == 104

    def test_sampled_when_over_budget(self, sig2):
        budget = UniverseBudget(max_sem_size=18, sample_count=50, rng_seed=3)
        verdict = entails_gct([parse("X=1")], parse(r"X=1 \/ Y=0"), sig2, budget, method="enumerate")
        assert verdict.holds
        assert not verdict.exact
        assert verdict.method == "sampled"
        assert verdict.checked == 50

    def test_parallel_enumeration(self, sig1):
        psi = parse(r"X=0 \\/ X=1")
        serial = entails([], psi, sig1, Mode.GCT, method="enumerate")
        parallel = entails([], psi, sig1, Mode.GCT, jobs=2, method="enumerate")
        assert serial.holds is parallel.holds is False
        assert serial.counterexample == parallel.counterexample
        assert serial.checked == parallel.checked

    def test_equivalence(self, sig2):
        verdict = equivalent(parse("X=0 => Y=1"), parse(r"X!=0 \/ Y=1"), sig2)
        assert verdict.holds
        assert verdict.details["direction"] == "both"
        failed = equivalent(parse("X=0"), parse(r"X=0 \/ Y=0"), sig2)
        assert not failed.holds
        assert failed.details["direction"] == "backward"

    def test_unknown_method(self, sig1):
        with pytest.raises(ValidationError):
            entails([], parse("X=0"), sig1, method="guess")


class TestDisjunctionProperty:
    def test_golden_cases(self, sig2):
        premises = [parse(r"X=0 /\ Y=1")]
        assert entails_gct(premises, parse(r"X=0 \\/ Y=0"), sig2).holds
        assert entails_gct(premises, parse("X=0"), sig2).holds
        assert not entails_gct([], parse(r"X=0 \\/ X=1"), sig2).holds
        assert entails_gct([parse(r"X=0 \/ X=1")], parse(r"X=0 \/ X=1"), sig2).holds

    @pytest.mark.parametrize("sig_name", ["sig1", "sig2"])
    def test_holds_over_generalized_teams(self, request, sig_name):
        sig = request.getfixturevalue(sig_name)
        entailed = 0
        for seed in range(150):
            gen = FormulaGenerator(sig, keyed_generator(seed, 7), Dialect.CO, max_depth=2)
            premises = [gen.co() for _ in range(seed % 3)]
            phi, psi = gen.co(), gen.co()
            if premises and seed % 4 == 0:
                phi = premises[0]
            verdict = entails_gct(premises, IntDisj(phi, psi), sig)
            assert verdict.exact
            if verdict.holds:
                entailed += 1
                either = entails_gct(premises, phi, sig).holds or entails_gct(premises, psi, sig).holds
                assert either, (seed, premises, phi, psi)
        assert entailed > 0
