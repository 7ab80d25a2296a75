from typing import Any, Dict, List, Optional, Sequence


class BaseError(Exception):
    """基础异常类

    code 即命令行进程的退出码，data 为机器可读的错误详情。
    """

    def __init__(
        self,
        message: str,
        code: int = 2,
        data: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.data = data or {}

    def to_dict(self) -> Dict[str, Any]:
        """转换为错误响应体"""
        return {"code": self.code, "message": self.message, "data": self.data}


class ValidationError(BaseError):
    """验证错误"""

    def __init__(self, message: str, data: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, code=2, data=data)


class SignatureMismatchError(ValidationError):
    """签名不一致错误"""

    def __init__(self, message: str = "对象不属于同一签名"):
        super().__init__(message=message)


class UnknownSymbolError(ValidationError):
    """未声明的变量或取值"""

    def __init__(
        self,
        message: str,
        symbol: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        if line is not None:
            message = f"{message} (第{line}行, 第{column}列)"
        super().__init__(
            message=message, data={"symbol": symbol, "line": line, "column": column}
        )
        self.symbol = symbol


class NotRecursiveError(ValidationError):
    """函数组件的因果图含有环"""

    def __init__(self, cycle: Sequence[str]):
        super().__init__(
            message=f"函数组件不是递归的，存在环: {' -> '.join(cycle)}",
            data={"cycle": list(cycle)},
        )


class IncompatibleAssignmentError(ValidationError):
    """赋值与函数组件不相容"""

    def __init__(self, message: str, variable: Optional[str] = None):
        super().__init__(message=message, data={"variable": variable})


class FormulaSyntaxError(ValidationError):
    """公式语法错误，带有行列位置"""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(
            message=f"{message} (第{line}行, 第{column}列)",
            data={"line": line, "column": column},
        )
        self.line = line
        self.column = column


class FormulaClassError(ValidationError):
    """公式不属于所要求的语言（如 ¬ 作用于依赖原子）"""

    def __init__(
        self,
        message: str,
        path: Sequence[int] = (),
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        if line is not None:
            message = f"{message} (第{line}行, 第{column}列)"
        super().__init__(
            message=message,
            data={"path": list(path), "line": line, "column": column},
        )
        self.path = tuple(path)


class WorkspaceError(ValidationError):
    """工作区文件错误"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"第{line}行: " if line is not None else ""
        super().__init__(message=f"{prefix}{message}", data={"line": line})
        self.line = line


class DerivationFormatError(ValidationError):
    """推导文件格式错误"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"第{line}行: " if line is not None else ""
        super().__init__(message=f"{prefix}{message}", data={"line": line})
        self.line = line


class InconsistentEquationError(BaseError):
    """等式序列不一致（同一变量被赋两个不同值）"""

    def __init__(self, variable: str):
        super().__init__(
            message=f"干预等式不一致: 变量 {variable} 被赋予不同的值",
            data={"variable": variable},
        )


class NotSimilarError(BaseError):
    """函数组件不满足 ~ 关系"""

    def __init__(self, message: str = "两个函数组件不满足 ~ 关系，无法求并"):
        super().__init__(message=message)


class NotUniformError(BaseError):
    """广义因果团队无法转换为因果团队"""

    def __init__(self, message: str = "广义因果团队为空或含有不同的函数组件"):
        super().__init__(message=message)


class NotFoundError(BaseError):
    """资源未找到错误"""

    def __init__(self, message: str = "请求的资源不存在"):
        super().__init__(message=message)


class UniverseTooLargeError(BaseError):
    """语义全集过大，无法物化"""

    def __init__(self, message: str, count: Optional[int] = None):
        super().__init__(message=message, data={"count": count})


class ClassDefinabilityError(BaseError):
    """团队类不满足可定义性前提，附带反例"""

    def __init__(self, message: str, witness: Optional[List[Any]] = None):
        self.witness = list(witness or [])
        super().__init__(
            message=message, data={"witness": [str(w) for w in self.witness]}
        )


class StepError(BaseError):
    """推导中的某一步不符合规则模式"""

    def __init__(self, message: str, node: Optional[int] = None, rule: Optional[str] = None):
        super().__init__(message=message, code=1, data={"node": node, "rule": rule})
        self.node = node
        self.rule = rule
