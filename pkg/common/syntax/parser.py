from functools import lru_cache
from typing import List, Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from common.enum import Dialect
from common.models.equation import EquationSeq
from common.models.signature import Signature
from common.syntax.formula import BOT, TOP, And, Cf, Dep, Eq, Formula, IntDisj, Neg, Or, SelImp
from common.syntax.grammar import FORMULA_GRAMMAR
from common.syntax.wellformed import check_dialect, is_co
from common.utils.exceptions import FormulaClassError, FormulaSyntaxError, UnknownSymbolError


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark(
        FORMULA_GRAMMAR,
        parser="lalr",
        lexer="contextual",
        propagate_positions=True,
        maybe_placeholders=False,
    )


@v_args(meta=True)
class FormulaBuilder(Transformer):
    """把 lark 语法树转换为公式 AST，同时按签名检查变量与取值"""

    def __init__(self, sig: Optional[Signature] = None):
        super().__init__()
        self.sig = sig

    def _check_symbol(self, var: Token, value: Optional[Token] = None) -> None:
        if self.sig is None:
            return
        if var not in self.sig:
            raise UnknownSymbolError(f"未声明的变量: {var}", str(var), var.line, var.column)
        if value is not None and value not in self.sig.ran(var):
            raise UnknownSymbolError(
                f"取值 {value} 不在 Ran({var}) 中", str(value), value.line, value.column
            )

    def eq(self, meta, children):
        var, value = children
        self._check_symbol(var, value)
        return Eq(str(var), str(value))

    def neq(self, meta, children):
        var, value = children
        self._check_symbol(var, value)
        return Neg(Eq(str(var), str(value)))

    def bot(self, meta, children):
        return BOT

    def top(self, meta, children):
        return TOP

    def dep_const(self, meta, children):
        (y,) = children
        self._check_symbol(y)
        return Dep((), str(y))

    def dep_full(self, meta, children):
        *xs, y = children
        for var in children:
            self._check_symbol(var)
        return Dep(tuple(str(x) for x in xs), str(y))

    def dep(self, meta, children):
        return children[0]

    def neg(self, meta, children):
        (child,) = children
        if not is_co(child):
            raise FormulaClassError(
                "¬ 只能作用于 CO 公式", (), meta.line, meta.column
            )
        return Neg(child)

    def conj(self, meta, children):
        left, _, right = children
        return And(left, right)

    def tdisj(self, meta, children):
        left, _, right = children
        return Or(left, right)

    def idisj(self, meta, children):
        left, _, right = children
        return IntDisj(left, right)

    def selimp(self, meta, children):
        left, right = children
        if not is_co(left):
            raise FormulaClassError(
                "⊃ 的左侧必须是 CO 公式", (), meta.line, meta.column
            )
        return SelImp(left, right)

    def cf(self, meta, children):
        left, right = children
        pairs = _equations(left)
        if pairs is None:
            raise FormulaSyntaxError(
                "□→ 的前件必须是等式的合取", meta.line, meta.column
            )
        return Cf(EquationSeq(tuple(pairs)), right)


def _equations(phi: Formula) -> Optional[List[tuple]]:
    if isinstance(phi, Eq):
        return [(phi.var, phi.value)]
    if isinstance(phi, And):
        left, right = _equations(phi.left), _equations(phi.right)
        if left is None or right is None:
            return None
        return left + right
    return None


def parse(text: str, sig: Optional[Signature] = None, dialect: Optional[Dialect] = None) -> Formula:
    """解析公式文本

    Args:
        text: 公式文本，ASCII 与 Unicode 记号均可
        sig: 给出时检查变量与取值都已在签名中声明
        dialect: 给出时要求公式属于该语言

    Returns:
        公式 AST

    Raises:
        FormulaSyntaxError: 词法或语法错误
        UnknownSymbolError: 未声明的变量或越界的取值
        FormulaClassError: ¬ 或 ⊃ 的位置不合法，或公式不属于 dialect
    """
    try:
        tree = _lark().parse(text)
    except UnexpectedCharacters as e:
        raise FormulaSyntaxError(f"无法识别的字符 {text[e.pos_in_stream]!r}", e.line, e.column)
    except UnexpectedEOF as e:
        raise FormulaSyntaxError("公式意外结束", e.line if e.line > 0 else 1, max(e.column, 1))
    except UnexpectedInput as e:
        token = getattr(e, "token", None)
        raise FormulaSyntaxError(f"意外的记号 {token!s}", e.line, e.column)
    try:
        phi = FormulaBuilder(sig).transform(tree)
    except VisitError as e:
        raise e.orig_exc
    if dialect is not None:
        check_dialect(phi, dialect)
    return phi
