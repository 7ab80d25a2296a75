from typing import Optional, Tuple

import numpy as np

from common.enum import Dialect
from common.models.equation import EquationSeq
from common.models.signature import Signature
from common.syntax.formula import BOT, And, Cf, Dep, Eq, Formula, IntDisj, Neg, Or, SelImp
from common.utils.rng import choice


class FormulaGenerator:
    """按种子生成随机的合法公式，供随机化测试与规则模糊测试使用

    Args:
        sig: 签名
        rng: numpy 随机数发生器
        dialect: CO、COD 或 COi
        max_depth: 最大嵌套深度
        inconsistent_rate: 反事实前件不一致的概率
    """

    def __init__(
        self,
        sig: Signature,
        rng: np.random.Generator,
        dialect: Dialect = Dialect.CO,
        max_depth: int = 3,
        inconsistent_rate: float = 0.1,
    ):
        if dialect is Dialect.ILL_FORMED:
            raise ValueError("不能生成 ill-formed 公式")
        self.sig = sig
        self.rng = rng
        self.dialect = dialect
        self.max_depth = max_depth
        self.inconsistent_rate = inconsistent_rate

    def _flip(self, p: float) -> bool:
        return bool(self.rng.random() < p)

    def equation(self) -> Eq:
        var = choice(self.rng, self.sig.dom)
        return Eq(var, choice(self.rng, self.sig.ran(var)))

    def equations(self, max_len: int = 2) -> EquationSeq:
        """随机前件；偶尔故意给出不一致的前件"""
        size = int(self.rng.integers(1, max_len + 1))
        pairs = [(eq.var, eq.value) for eq in (self.equation() for _ in range(size))]
        if self._flip(self.inconsistent_rate):
            var, value = pairs[0]
            others = [x for x in self.sig.ran(var) if x != value]
            if others:
                pairs.append((var, choice(self.rng, others)))
        return EquationSeq(tuple(pairs))

    def dependence(self) -> Dep:
        size = int(self.rng.integers(0, min(2, len(self.sig.dom) - 1) + 1))
        picked = self.rng.choice(len(self.sig.dom), size=size + 1, replace=False)
        names = [self.sig.dom[int(i)] for i in picked]
        return Dep(self.sig.sort_vars(names[:-1]), names[-1])

    def literal(self) -> Formula:
        if self._flip(0.05):
            return BOT
        eq = self.equation()
        return Neg(eq) if self._flip(0.3) else eq

    def co(self, depth: Optional[int] = None) -> Formula:
        """随机 CO 公式"""
        depth = self.max_depth if depth is None else depth
        if depth <= 0 or self._flip(0.25):
            return self.literal()
        op = int(self.rng.integers(6))
        if op == 0:
            return And(self.co(depth - 1), self.co(depth - 1))
        if op == 1:
            return Or(self.co(depth - 1), self.co(depth - 1))
        if op == 2:
            return Neg(self.co(depth - 1))
        if op == 3:
            return SelImp(self.co(depth - 1), self.co(depth - 1))
        return Cf(self.equations(), self.co(depth - 1))

    def formula(self, depth: Optional[int] = None) -> Formula:
        """dialect 语言中的随机公式"""
        depth = self.max_depth if depth is None else depth
        if self.dialect is Dialect.CO:
            return self.co(depth)
        if depth <= 0 or self._flip(0.2):
            if self.dialect is Dialect.COD and self._flip(0.4):
                return self.dependence()
            return self.literal()
        op = int(self.rng.integers(6))
        if op == 0:
            return And(self.formula(depth - 1), self.formula(depth - 1))
        if op == 1:
            return Or(self.formula(depth - 1), self.formula(depth - 1))
        if op == 2:
            if self.dialect is Dialect.COI:
                return IntDisj(self.formula(depth - 1), self.formula(depth - 1))
            return self.dependence()
        if op == 3:
            return SelImp(self.co(depth - 1), self.formula(depth - 1))
        if op == 4:
            return Neg(self.co(depth - 1))
        return Cf(self.equations(), self.formula(depth - 1))

    def pair(self) -> Tuple[Formula, Formula]:
        return self.formula(), self.formula()
