from itertools import product

import pytest

from common.models import Signature, UniverseBudget
from common.models.causal_team import compatible
from common.models.team_ops import fc_similar
from common.utils.exceptions import UniverseTooLargeError, ValidationError
from config import AppConfig
from services import enumeration_service as enum


def naive_function_components(sig):
    """直接按定义枚举：每个变量要么外生，要么从其余变量中任选父变量与函数表"""
    found = set()
    options = []
    for var in sig.dom:
        others = [v for v in sig.dom if v != var]
        choices = [None]
        for mask in range(1 << len(others)):
            parents = tuple(v for i, v in enumerate(others) if mask >> i & 1)
            rows = len(list(sig.value_tuples(parents)))
            for table in product(sig.ran(var), repeat=rows):
                choices.append((parents, table))
        options.append(choices)
    from common.models import FunctionComponent, Mechanism
    from common.utils.exceptions import NotRecursiveError

    for combo in product(*options):
        mechs = tuple(Mechanism(v, c[0], c[1]) for v, c in zip(sig.dom, combo) if c is not None)
        try:
            found.add(FunctionComponent(sig, mechs))
        except NotRecursiveError:
            continue
    return found


class TestCounts:
    def test_assignments(self, sig2, example_sig):
        assert len(enum.enum_assignments(sig2)) == 4
        assert len(enum.enum_assignments(example_sig)) == 40
        single = Signature.of({"A": ("a",)})
        assert len(enum.enum_assignments(single)) == 1

    def test_assignment_order(self, sig2):
        values = [s.values for s in enum.enum_assignments(sig2)]
        assert values == [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]

    def test_one_binary_variable(self, sig1):
        assert enum.count_function_components(sig1) == 3
        assert len(enum.all_function_components(sig1)) == 3
        assert len(enum.enum_sem(sig1)) == 4
        assert enum.count_causal_teams(sig1) == 8

    def test_two_binary_variables(self, sig2):
        assert enum.count_function_components(sig2) == 33
        assert len(enum.all_function_components(sig2)) == 33
        assert len(enum.enum_sem(sig2)) == 48
        assert len(enum.representatives(sig2)) == 5
        assert enum.count_causal_teams(sig2) == 104

    def test_matches_naive_generator(self, sig2):
        assert set(enum.all_function_components(sig2)) == naive_function_components(sig2)

    def test_no_duplicates(self, sig2):
        fcs = enum.all_function_components(sig2)
        assert len(set(fcs)) == len(fcs)
        sem = enum.enum_sem(sig2)
        assert len(set(sem)) == len(sem)

    def test_sem_is_exactly_compatible_pairs(self, sig2):
        sem = set(enum.enum_sem(sig2))
        for f in enum.all_function_components(sig2):
            for s in enum.enum_assignments(sig2):
                assert ((s, f) in sem) == compatible(s, f)

    def test_guard(self, monkeypatch):
        monkeypatch.setattr(AppConfig, "MAX_FC_COUNT", 10)
        with pytest.raises(UniverseTooLargeError):
            enum.all_function_components(Signature.of({"P": (0, 1), "Q": (0, 1), "R": (0, 1)}))


class TestRepresentatives:
    def test_partition(self, sig2):
        reps = enum.representatives(sig2)
        for i, f in enumerate(reps):
            for g in reps[i + 1 :]:
                assert not fc_similar(f, g)
        for f in enum.all_function_components(sig2):
            rep = enum.representative_of(f)
            assert rep in reps
            assert fc_similar(f, rep)

    def test_similarity_is_an_equivalence(self, sig2):
        fcs = enum.all_function_components(sig2)
        for f in fcs:
            assert fc_similar(f, f)
            for g in fcs:
                assert fc_similar(f, g) == fc_similar(g, f)
                assert fc_similar(f, g) == (enum.representative_of(f) == enum.representative_of(g))

    def test_least_in_enumeration_order(self, sig2):
        fcs = enum.all_function_components(sig2)
        for rep in enum.representatives(sig2):
            first = next(f for f in fcs if fc_similar(f, rep))
            assert first == rep

    def test_constant_is_similar_to_empty(self, sig1):
        reps = enum.representatives(sig1)
        assert len(reps) == 1
        assert reps[0].endogenous == frozenset()

    def test_deterministic(self, sig2):
        assert enum.representatives(sig2) == enum.representatives(sig2)


class TestStreams:
    def test_causal_teams_exact(self, sig2):
        stream = enum.enum_causal_teams(sig2)
        teams = list(stream)
        assert stream.exact
        assert stream.total == len(teams) == 104
        assert len(set(teams)) == 104
        empties = [t for t in teams if t.is_empty()]
        assert len(empties) == 33

    def test_causal_teams_sampled(self, sig2):
        budget = UniverseBudget(max_sem_size=1, sample_count=25, rng_seed=3)
        stream = enum.enum_causal_teams(sig2, budget)
        assert not stream.exact
        first = list(stream)
        assert len(first) == 25
        assert first == list(enum.enum_causal_teams(sig2, budget))

    def test_gcts_exact(self, sig1):
        stream = enum.enum_gcts(sig1)
        assert stream.exact
        assert len(list(stream)) == 16

    def test_gcts_sampled(self, sig2):
        budget = UniverseBudget(max_sem_size=18, sample_count=40, rng_seed=7)
        stream = enum.enum_gcts(sig2, budget)
        assert not stream.exact
        assert list(stream) == list(enum.enum_gcts(sig2, budget))

    def test_small_gcts(self, sig1):
        teams = list(enum.enum_small_gcts(sig1, 2))
        assert len(teams) == 1 + 4 + 6

    def test_budget_validation(self):
        with pytest.raises(ValidationError):
            UniverseBudget(max_sem_size=0, sample_count=1, rng_seed=0)
