import pytest

from common.enum import Dialect, Mode
from common.models import Assignment, CausalTeam, FunctionComponent, GeneralizedCausalTeam
from common.models.team_ops import embeds, fc_similar, to_gct
from common.syntax import BOT, classify, parse
from common.utils.exceptions import ClassDefinabilityError, ValidationError
from common.utils.rng import choice, keyed_generator, subset
from services import enumeration_service as enum
from services.charform_service import (
    TeamClass,
    all_causal_teams,
    beta_dc,
    beta_en,
    chi_1,
    chi_k,
    chi_star_1,
    define_downward_class,
    define_flat_class,
    defined_class,
    downward_class_from_generators,
    flat_class_from_points,
    leadsto,
    no_mix,
    one_fun,
    phi_F,
    theta_T,
    unf,
    validate_downward_class,
    validate_flat_class,
    xi_star,
    xi_T,
)
from services.semantics_service import SatisfactionChecker, entails, satisfies


@pytest.fixture
def constant_x(sig1) -> FunctionComponent:
    return FunctionComponent.from_tables(sig1, {"X": ((), {(): "0"})})


def _pins_constants(f: FunctionComponent, s: Assignment) -> bool:
    return all(s[v] == f.mechanism(v)(()) for v in f.cn_set)


class TestPhiF:
    def test_characterises_similarity(self, sig2):
        # 含常值变量的 F 还要求成员在常值变量上取 F 给出的常值
        checker = SatisfactionChecker(sig2, Mode.GCT)
        fcs = enum.all_function_components(sig2)
        assert any(f.cn_set for f in fcs)
        teams = list(enum.enum_small_gcts(sig2, 3))
        assert len(teams) == 1 + 48 + 1128 + 17296
        masks = [checker.mask_of(team) for team in teams]
        mismatches = []
        for f in fcs:
            phi = phi_F(f)
            good = checker.points_mask(
                (s, g) for s, g in enum.enum_sem(sig2) if fc_similar(f, g) and _pins_constants(f, s)
            )
            for team, mask in zip(teams, masks):
                if checker.sat_mask(phi, mask) != (mask & ~good == 0):
                    mismatches.append((f, team))
        assert mismatches == []

    def test_constant_pins_value(self, sig1, constant_x):
        exogenous = FunctionComponent.empty(sig1)
        assert fc_similar(constant_x, exogenous)
        phi = phi_F(constant_x)
        assert satisfies(CausalTeam.of(exogenous, [(0,)]), phi)
        assert not satisfies(CausalTeam.of(exogenous, [(1,)]), phi)
        assert not satisfies(CausalTeam.of(exogenous, [(0,), (1,)]), phi)
        assert satisfies(CausalTeam.of(constant_x, [(0,)]), phi)

    def test_is_co(self, copy_fc):
        assert classify(phi_F(copy_fc)) is Dialect.CO

    def test_mixed_team_fails(self, sig2, copy_fc, flip_fc):
        good = (Assignment(sig2, (0, 0)), copy_fc)
        team = GeneralizedCausalTeam(sig2, (good, (Assignment(sig2, (1, 0)), flip_fc)))
        assert not satisfies(team, phi_F(copy_fc))
        assert satisfies(team.subteam([good]), phi_F(copy_fc))

    def test_disjunction_property_fails_over_causal_teams(self, sig2):
        assert entails([], unf(sig2), sig2, Mode.CT).holds
        for f in enum.representatives(sig2):
            verdict = entails([], phi_F(f), sig2, Mode.CT)
            assert not verdict.holds
            assert verdict.counterexample is not None


class TestUniformity:
    def test_uniform_team(self, sig2, copy_fc):
        team = to_gct(CausalTeam.of(copy_fc, [(0, 0), (1, 1)]))
        assert satisfies(team, unf(sig2))

    def test_mixed_team(self, sig2, copy_fc, flip_fc):
        team = GeneralizedCausalTeam(
            sig2, ((Assignment(sig2, (0, 0)), copy_fc), (Assignment(sig2, (1, 0)), flip_fc))
        )
        assert not satisfies(team, unf(sig2))

    def test_unf_is_intuitionistic(self, sig2):
        assert classify(unf(sig2)) is Dialect.COI


class TestCardinality:
    def test_theta(self, sig2):
        assert theta_T([], sig2) == BOT
        theta = theta_T([Assignment(sig2, (0, 1))], sig2)
        assert classify(theta) is Dialect.CO

    @pytest.mark.parametrize("dialect", [Dialect.COD, Dialect.COI])
    def test_chi_k_bounds_rows(self, sig2, dialect):
        checker = SatisfactionChecker(sig2, Mode.CT)
        for k in range(4):
            chi = chi_k(k, sig2, dialect)
            assert dialect.admits(classify(chi))
            for t in all_causal_teams(sig2):
                assert checker.satisfies(t, chi) == (len(t.rows) <= k)

    def test_chi_zero_is_bot(self, sig1):
        assert chi_k(0, sig1) == BOT

    def test_bad_arguments(self, sig1):
        with pytest.raises(ValidationError):
            chi_k(-1, sig1)
        with pytest.raises(ValidationError):
            chi_1(sig1, Dialect.CO)

    def test_starred_chi_sees_function_components(self, sig2, copy_fc):
        empty = FunctionComponent.empty(sig2)
        s = Assignment(sig2, (0, 0))
        team = GeneralizedCausalTeam(sig2, ((s, empty), (s, copy_fc)))
        assert satisfies(team, chi_1(sig2))
        assert not satisfies(team, chi_star_1(sig2))
        padded = FunctionComponent.from_tables(
            sig2, {"Y": (("X",), {("0",): "0", ("1",): "1"}), "X": ((), {(): "0"})}
        )
        assert satisfies(GeneralizedCausalTeam(sig2, ((s, copy_fc), (s, padded))), chi_star_1(sig2))


class TestXi:
    @pytest.mark.parametrize("dialect", [Dialect.COD, Dialect.COI])
    def test_excludes_equivalent_subteams(self, sig1, dialect):
        checker = SatisfactionChecker(sig1, Mode.CT)
        teams = all_causal_teams(sig1)
        for t in teams:
            if t.is_empty():
                continue
            xi = xi_T(t, sig1, dialect)
            for s in teams:
                assert checker.satisfies(s, xi) == (embeds(t, s) is None)

    def test_two_variables(self, sig2, copy_fc):
        checker = SatisfactionChecker(sig2, Mode.CT)
        t = CausalTeam.of(copy_fc, [(0, 0), (1, 1)])
        xi = xi_T(t, sig2)
        for s in all_causal_teams(sig2):
            assert checker.satisfies(s, xi) == (embeds(t, s) is None)

    def test_empty_team_rejected(self, sig1, constant_x):
        with pytest.raises(ValidationError):
            xi_T(CausalTeam(constant_x, ()), sig1)

    def test_starred_form_on_generalized_teams(self, sig2, copy_fc, flip_fc):
        a = (Assignment(sig2, (0, 0)), copy_fc)
        b = (Assignment(sig2, (1, 0)), flip_fc)
        c = (Assignment(sig2, (1, 1)), copy_fc)
        t = GeneralizedCausalTeam(sig2, (a, b))
        xi = xi_star(t, sig2)
        assert not satisfies(t, xi)
        assert not satisfies(GeneralizedCausalTeam(sig2, (a, b, c)), xi)
        assert satisfies(GeneralizedCausalTeam(sig2, (a, c)), xi)
        assert satisfies(GeneralizedCausalTeam(sig2, ()), xi)


class TestCausalAxioms:
    def test_direct_cause(self, sig2, copy_fc):
        team = CausalTeam.of(copy_fc, [(0, 0), (1, 1)])
        assert satisfies(team, beta_dc("X", "Y", sig2))
        assert not satisfies(team, beta_dc("Y", "X", sig2))
        assert satisfies(team, beta_en("Y", sig2))
        assert not satisfies(CausalTeam.of(FunctionComponent.empty(sig2), [(0, 0)]), beta_en("Y", sig2))

    def test_leadsto(self, sig2, copy_fc):
        team = CausalTeam.of(copy_fc, [(0, 0)])
        assert satisfies(team, leadsto("X", "Y", sig2))
        assert not satisfies(team, leadsto("Y", "X", sig2))
        assert classify(leadsto("X", "Y", sig2)) is Dialect.CO

    def test_same_variable(self, sig2):
        with pytest.raises(ValidationError):
            beta_dc("X", "X", sig2)
        with pytest.raises(ValidationError):
            leadsto("Y", "Y", sig2)

    def test_one_function(self, sig2, copy_fc, flip_fc):
        uniform = to_gct(CausalTeam.of(copy_fc, [(0, 0), (1, 1)]))
        assert satisfies(uniform, one_fun(sig2))
        clash = GeneralizedCausalTeam(
            sig2, ((Assignment(sig2, (0, 0)), copy_fc), (Assignment(sig2, (0, 1)), flip_fc))
        )
        assert not satisfies(clash, one_fun(sig2))

    def test_no_mix(self, sig2, copy_fc):
        s = Assignment(sig2, (0, 0))
        assert satisfies(to_gct(CausalTeam.of(copy_fc, [(0, 0), (1, 1)])), no_mix(sig2))
        mixed = GeneralizedCausalTeam(sig2, ((s, copy_fc), (s, FunctionComponent.empty(sig2))))
        assert not satisfies(mixed, no_mix(sig2))


class TestFlatClasses:
    @pytest.mark.parametrize("text", ["X=1 -> Y=1", r"X=0 \/ Y!=0", "_|_", "X=0 => (Y=1 -> X=1)"])
    def test_round_trip(self, sig2, text):
        k = defined_class(parse(text, sig2), sig2)
        phi = define_flat_class(k)
        assert classify(phi) is Dialect.CO
        assert defined_class(phi, sig2) == k

    def test_from_points(self, sig1):
        s0 = Assignment(sig1, (0,))
        k = flat_class_from_points(sig1, [(s0, FunctionComponent.empty(sig1))])
        assert len(k) == 5
        validate_flat_class(k)
        assert defined_class(define_flat_class(k), sig1) == k

    def test_not_flat(self, sig1):
        with pytest.raises(ClassDefinabilityError):
            validate_flat_class(defined_class(parse("=(X)"), sig1))

    def test_not_closed_under_equivalence(self, sig1):
        empty = FunctionComponent.empty(sig1)
        members = [CausalTeam(f, ()) for f in enum.all_function_components(sig1)]
        members.append(CausalTeam.of(empty, [(0,)]))
        k = TeamClass(sig1, frozenset(members))
        with pytest.raises(ClassDefinabilityError):
            validate_flat_class(k)
        with pytest.raises(ClassDefinabilityError):
            validate_downward_class(k)

    def test_empty_class(self, sig1):
        with pytest.raises(ClassDefinabilityError):
            validate_flat_class(TeamClass(sig1, frozenset()))

    @pytest.mark.parametrize("seed", range(10))
    def test_random_classes_round_trip(self, sig2, seed):
        sem = enum.enum_sem(sig2)
        points = subset(keyed_generator(seed, 3), sem, p=0.3)
        k = flat_class_from_points(sig2, points)
        validate_flat_class(k)
        assert defined_class(define_flat_class(k), sig2) == k


class TestDownwardClasses:
    @pytest.mark.parametrize("dialect", [Dialect.COD, Dialect.COI])
    @pytest.mark.parametrize("text", ["=(X)", r"X=0 \\/ X=1", "X=0"])
    def test_round_trip(self, sig1, dialect, text):
        k = defined_class(parse(text, sig1), sig1)
        phi = define_downward_class(k, dialect)
        assert dialect.admits(classify(phi))
        assert defined_class(phi, sig1) == k

    def test_from_generators(self, sig1):
        gen = CausalTeam.of(FunctionComponent.empty(sig1), [(0,)])
        k = downward_class_from_generators(sig1, [gen])
        assert len(k) == 5
        assert defined_class(define_downward_class(k), sig1) == k

    def test_missing_empty_team(self, sig1):
        k = TeamClass(sig1, frozenset({CausalTeam.of(FunctionComponent.empty(sig1), [(0,)])}))
        with pytest.raises(ClassDefinabilityError):
            validate_downward_class(k)

    def test_not_downward_closed(self, sig1):
        members = {t for t in all_causal_teams(sig1) if len(t.rows) != 1}
        with pytest.raises(ClassDefinabilityError):
            validate_downward_class(TeamClass(sig1, frozenset(members)))

    def test_whole_universe(self, sig1):
        k = TeamClass(sig1, frozenset(all_causal_teams(sig1)))
        assert len(k) == 8
        assert defined_class(define_downward_class(k), sig1) == k

    @pytest.mark.parametrize("seed", range(6))
    def test_random_classes_round_trip(self, sig2, seed):
        rng = keyed_generator(seed, 5)
        universe = all_causal_teams(sig2)
        generators = [choice(rng, universe) for _ in range(int(rng.integers(1, 4)))]
        k = downward_class_from_generators(sig2, generators)
        validate_downward_class(k)
        dialect = Dialect.COD if seed % 2 == 0 else Dialect.COI
        phi = define_downward_class(k, dialect)
        assert dialect.admits(classify(phi))
        assert defined_class(phi, sig2) == k
