import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from common.constant.example_team import example_signature
from common.enum import Dialect
from common.models import EquationSeq
from common.syntax import BOT, TOP, And, Cf, Dep, Eq, IntDisj, Neg, Or, SelImp, classify, desugar, parse, render
from common.syntax.builders import big_and, big_idisj, big_or, cf, equations, node_count, occurrence_paths, substitute_at
from common.syntax.generator import FormulaGenerator
from common.syntax.wellformed import cf_free, ill_formed_path, variables
from common.utils.exceptions import FormulaClassError, FormulaSyntaxError, UnknownSymbolError, ValidationError
from common.utils.rng import keyed_generator

SIG = example_signature()


class TestParse:
    def test_counterfactual(self, example_sig):
        phi = parse("X=1 -> Y=2", example_sig)
        assert phi == Cf(EquationSeq.of(("X", "1")), Eq("Y", "2"))

    def test_antecedent_keeps_order(self):
        phi = parse("Y=1 /\\ X=0 /\\ Y=1 -> Z=2")
        assert phi.antecedent.pairs == (("Y", "1"), ("X", "0"), ("Y", "1"))

    def test_counterfactual_is_right_associative(self):
        phi = parse("X=1 -> Y=1 -> Z=1")
        assert phi == Cf(EquationSeq.of(("X", 1)), Cf(EquationSeq.of(("Y", 1)), Eq("Z", "1")))

    def test_precedence(self):
        phi = parse(r"X=1 /\ Y=1 \/ Z=1 \\/ U=0")
        assert phi == IntDisj(Or(And(Eq("X", "1"), Eq("Y", "1")), Eq("Z", "1")), Eq("U", "0"))

    def test_negated_equation(self):
        assert parse(r"Y!=2 \/ Y=2") == Or(Neg(Eq("Y", "2")), Eq("Y", "2"))
        assert parse("~Y=2") == parse("Y!=2")

    def test_dependence_atoms(self):
        assert parse("=(Y;Z)") == Dep(("Y",), "Z")
        assert parse("=(U,X;Z)") == Dep(("U", "X"), "Z")
        assert parse("=(Y)") == Dep((), "Y")

    def test_constants(self):
        assert parse("_|_") == BOT
        assert parse("^|^") == TOP
        assert parse("X=0 => _|_  # 注释") == SelImp(Eq("X", "0"), BOT)

    @pytest.mark.parametrize(
        "unicode_text, ascii_text",
        [
            ("X=1 ∧ Y=0 □→ Z=2", r"X=1 /\ Y=0 -> Z=2"),
            ("Y≠2 ∨ ¬Y=1", r"Y!=2 \/ ~Y=1"),
            ("X=0 ⩒ ⊥", r"X=0 \\/ _|_"),
            ("X=0 ⊃ ⊤", "X=0 => ^|^"),
            ("X=1 □→ (Y=1 ⩒ Z≠2)", r"X=1 -> (Y=1 \\/ Z!=2)"),
            ("U=0 □→ =(U;Z)", "U=0 -> =(U;Z)"),
            (r"X=1 ∧ Y=0 \/ Z=2 ⩒ U=0", r"X=1 /\ Y=0 \/ Z=2 \\/ U=0"),
        ],
    )
    def test_unicode_symbols(self, unicode_text, ascii_text):
        assert parse(unicode_text) == parse(ascii_text)

    @pytest.mark.parametrize("text", ["X=", "X=1 /\\", "(X=1", "X=1 ?? Y=1", ""])
    def test_syntax_errors(self, text):
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    def test_syntax_error_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse("X=1 $ Y=1")
        assert info.value.line == 1
        assert info.value.column == 5

    def test_antecedent_must_be_equations(self):
        with pytest.raises(FormulaSyntaxError):
            parse(r"X=1 \/ Y=1 -> Z=2")
        with pytest.raises(FormulaSyntaxError):
            parse("X!=1 -> Z=2")

    @pytest.mark.parametrize("text", ["W=1", "X=7", "X=1 -> W=0", "=(W;Z)"])
    def test_unknown_symbols(self, example_sig, text):
        with pytest.raises(UnknownSymbolError):
            parse(text, example_sig)

    @pytest.mark.parametrize("text", ["~=(Y)", r"~(X=1 \\/ X=0)", "=(Y) => X=1"])
    def test_negation_and_selective_implication_need_co(self, text):
        with pytest.raises(FormulaClassError):
            parse(text)

    def test_dialect_check(self):
        assert parse("=(Y)", dialect=Dialect.COD) == Dep((), "Y")
        with pytest.raises(FormulaClassError):
            parse("=(Y)", dialect=Dialect.COI)
        with pytest.raises(FormulaClassError):
            parse(r"X=0 \\/ X=1", dialect=Dialect.CO)


class TestRender:
    @pytest.mark.parametrize(
        "text",
        [
            "X=1 -> Y=2",
            "X=1 /\\ U=0 -> Y=2 -> Z=5",
            "(X=1 -> Y=2) /\\ Z=5",
            "X=1 => (U=0 -> Y=2)",
            "(X=1 => Y=2) => Z=5",
            r"(X=1 \/ Y=2) /\ Z=5",
            r"~(X=1 /\ Y=2)",
            "~X!=1",
            "=(U,X;Z)",
            "^|^",
            "_|_",
        ],
    )
    def test_canonical_text(self, text):
        assert render(parse(text)) == text

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1), dialect=st.sampled_from([Dialect.CO, Dialect.COD, Dialect.COI]))
    def test_render_then_parse(self, seed, dialect):
        phi = FormulaGenerator(SIG, keyed_generator(seed, 0), dialect).formula()
        assert parse(render(phi), SIG) == phi

    def test_str_is_render(self):
        phi = parse("X=1 -> Y=2")
        assert str(phi) == render(phi)


class TestClassify:
    @pytest.mark.parametrize(
        "text, dialect",
        [
            ("X=1 -> Y!=2", Dialect.CO),
            (r"X=1 => (Y=1 \/ ~(Z=2 -> _|_))", Dialect.CO),
            ("X=1 -> =(Y;Z)", Dialect.COD),
            (r"X=1 -> (Y=1 \\/ Y=2)", Dialect.COI),
            (r"=(Y) /\ (X=0 \\/ X=1)", Dialect.ILL_FORMED),
        ],
    )
    def test_classify(self, text, dialect):
        assert classify(parse(text)) is dialect

    def test_ill_formed_path(self):
        phi = And(Eq("X", "1"), Neg(Dep((), "Y")))
        assert classify(phi) is Dialect.ILL_FORMED
        assert ill_formed_path(phi) == (1,)
        assert ill_formed_path(parse("X=1 -> Y=2")) is None

    def test_admits(self):
        assert Dialect.COD.admits(Dialect.CO)
        assert not Dialect.CO.admits(Dialect.COD)
        assert not Dialect.COI.admits(Dialect.COD)
        assert not Dialect.COD.admits(Dialect.ILL_FORMED)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_generated_formulas_stay_in_dialect(self, seed):
        for i, dialect in enumerate((Dialect.CO, Dialect.COD, Dialect.COI)):
            phi = FormulaGenerator(SIG, keyed_generator(seed, i), dialect).formula()
            assert dialect.admits(classify(phi))

    def test_variables_and_cf_free(self):
        phi = parse("Y=1 /\\ X=0 -> =(U;Z)")
        assert variables(phi) == ("Y", "X", "U", "Z")
        assert not cf_free(phi)
        assert cf_free(phi.consequent)


class TestDesugar:
    def test_selective_implication(self):
        phi = parse("X=1 => (Y=2 => Z=3)")
        expected = Or(Neg(Eq("X", "1")), Or(Neg(Eq("Y", "2")), Eq("Z", "3")))
        assert desugar(phi) == expected

    def test_dependence_kept_without_elimination(self, sig2):
        phi = parse("X=1 -> =(X;Y)")
        assert desugar(phi, sig2) == phi

    def test_constancy_translation(self, sig2):
        assert desugar(Dep((), "Y"), sig2, eliminate_dep=True) == IntDisj(Eq("Y", "0"), Eq("Y", "1"))

    def test_dependence_translation(self, sig2):
        result = desugar(Dep(("X",), "Y"), sig2, eliminate_dep=True)
        constancy = IntDisj(Eq("Y", "0"), Eq("Y", "1"))
        assert result == Or(And(Eq("X", "0"), constancy), And(Eq("X", "1"), constancy))
        assert classify(result) is Dialect.COI

    def test_elimination_needs_signature(self):
        with pytest.raises(ValidationError):
            desugar(Dep((), "Y"), eliminate_dep=True)


class TestBuilders:
    def test_empty_connectives(self):
        assert big_and([]) == TOP
        assert big_or([]) == BOT
        assert big_idisj([]) == BOT

    def test_right_nesting(self):
        a, b, c = Eq("X", "0"), Eq("Y", "0"), Eq("Z", "0")
        assert big_and([a, b, c]) == And(a, And(b, c))
        assert big_or([a]) == a

    def test_empty_antecedent_is_body(self):
        body = Eq("Y", "1")
        assert cf([], body) is body
        assert cf([("X", "1")], body) == Cf(EquationSeq.of(("X", 1)), body)
        assert equations([("X", "1"), ("Y", "0")]) == And(Eq("X", "1"), Eq("Y", "0"))

    def test_node_count_counts_shared_subtrees(self):
        e = Eq("X", "1")
        assert node_count(e) == 1
        assert node_count(And(e, e)) == 3
        assert node_count(parse("X=1 -> Y=1 /\\ Z=2")) == 4

    def test_substitution(self):
        phi = parse(r"X=1 /\ (X=1 \/ Y=0)")
        paths = occurrence_paths(phi, Eq("X", "1"))
        assert set(paths) == {(0,), (1, 0)}
        replaced = substitute_at(phi, (1, 0), BOT)
        assert replaced == And(Eq("X", "1"), Or(BOT, Eq("Y", "0")))
