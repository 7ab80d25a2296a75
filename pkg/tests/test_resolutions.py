import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from common.enum import Dialect
from common.models import Signature
from common.syntax import And, Cf, Dep, Eq, Or, classify, parse
from common.syntax.generator import FormulaGenerator
from common.utils.exceptions import FormulaClassError, UniverseTooLargeError
from common.utils.rng import keyed_generator
from services.enumeration_service import sample_gct
from services.resolution_service import (
    ResolutionSet,
    count_resolutions,
    resolution_disjunction,
    resolutions,
    resolve,
)
from services.semantics_service import satisfies

SIG = Signature.of({"X": (0, 1), "Y": (0, 1)})


class TestResolutions:
    def test_co_formula_is_its_own_resolution(self):
        phi = parse(r"X=1 -> Y=2 \/ Z=3")
        assert resolutions(phi).members == (phi,)

    def test_intuitionistic_disjunction(self):
        rs = resolutions(parse(r"X=0 \\/ X=1"))
        assert rs.members == (Eq("X", "0"), Eq("X", "1"))
        assert Eq("X", "1") in rs

    def test_distributes_over_conjunction(self):
        rs = resolutions(parse(r"(X=0 \\/ X=1) /\ (Y=1 \\/ Y=2)"))
        assert len(rs) == 4
        assert And(Eq("X", "1"), Eq("Y", "2")) in rs

    def test_counterfactual_and_selective_implication(self):
        rs = resolutions(parse(r"U=0 => (X=1 -> Y=1 \\/ Y=2)"))
        assert len(rs) == 2
        assert all(classify(gamma) is Dialect.CO for gamma in rs)
        cf_branch = parse("X=1 -> Y=2")
        assert any(isinstance(g.right, Cf) and g.right == cf_branch for g in rs)

    def test_duplicates_removed(self):
        assert len(resolutions(parse(r"X=0 \\/ X=0"))) == 1
        assert count_resolutions(parse(r"X=0 \\/ X=0")) == 2

    def test_dependence_needs_translation(self, sig2):
        with pytest.raises(FormulaClassError):
            resolutions(Dep(("X",), "Y"))
        rs = resolve(Dep(("X",), "Y"), sig2)
        assert len(rs) == 4
        assert Or(And(Eq("X", "0"), Eq("Y", "1")), And(Eq("X", "1"), Eq("Y", "0"))) in rs

    def test_cap(self, sig2):
        with pytest.raises(UniverseTooLargeError):
            resolve(Dep(("X",), "Y"), sig2, cap=3)

    def test_members_must_be_co(self):
        with pytest.raises(FormulaClassError):
            ResolutionSet((Dep((), "X"),))

    def test_single_member_disjunction(self):
        phi = parse("X=0")
        assert resolution_disjunction(phi) == phi

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        dialect=st.sampled_from([Dialect.COD, Dialect.COI]),
    )
    def test_equivalent_to_disjunction_of_resolutions(self, seed, dialect):
        phi = FormulaGenerator(SIG, keyed_generator(seed, 0), dialect, max_depth=2).formula()
        team = sample_gct(SIG, keyed_generator(seed, 1), max_members=4)
        assert satisfies(team, phi) == satisfies(team, resolution_disjunction(phi, SIG))
