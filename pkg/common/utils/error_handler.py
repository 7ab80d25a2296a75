from functools import wraps
from typing import Callable, Dict, Type

from lark.exceptions import LarkError

from common.utils.response import CliResponse, ExitCode
from common.utils.logger import log_manager
from common.utils.exceptions import (
    BaseError,
    ValidationError,
    FormulaSyntaxError,
    FormulaClassError,
    WorkspaceError,
    DerivationFormatError,
    InconsistentEquationError,
    NotSimilarError,
    NotUniformError,
    NotFoundError,
    UniverseTooLargeError,
    ClassDefinabilityError,
)

logger = log_manager.get_logger(__name__)


class ErrorHandler:
    """错误处理器，统一管理错误处理"""

    _instance = None
    _error_handlers: Dict[Type[Exception], Callable[[Exception], int]] = {}

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(ErrorHandler, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if not hasattr(self, "_initialized"):
            self._initialized = True
            self._setup_error_handlers()

    def _setup_error_handlers(self):
        """配置错误处理器"""

        def from_error(e: BaseError) -> int:
            return CliResponse.error(code=e.code, message=e.message, data=e.data)

        domain_handlers: Dict[Type[Exception], Callable[[Exception], int]] = {
            FormulaSyntaxError: from_error,
            FormulaClassError: from_error,
            WorkspaceError: from_error,
            DerivationFormatError: from_error,
            ValidationError: from_error,
            InconsistentEquationError: from_error,
            NotSimilarError: from_error,
            NotUniformError: from_error,
            NotFoundError: from_error,
            UniverseTooLargeError: from_error,
            ClassDefinabilityError: from_error,
            BaseError: from_error,
        }

        # 配置特殊错误处理器
        exception_handlers: Dict[Type[Exception], Callable[[Exception], int]] = {
            LarkError: lambda e: CliResponse.bad_request(f"语法解析失败: {e}"),
            FileNotFoundError: lambda e: CliResponse.bad_request(f"文件不存在: {e}"),
            KeyboardInterrupt: lambda e: CliResponse.error(
                ExitCode.USAGE, "操作已中断"
            ),
        }

        # 合并所有处理器
        for exc_type, handler in domain_handlers.items():
            self._error_handlers[exc_type] = handler
        for exc_type, handler in exception_handlers.items():
            self._error_handlers[exc_type] = handler

    def handle(self, error: BaseException) -> int:
        """按异常类型（沿 MRO 查找）生成错误响应并返回退出码"""
        for klass in type(error).__mro__:
            handler = self._error_handlers.get(klass)
            if handler is not None:
                logger.warning(f"命令执行失败: {error}")
                return handler(error)
        logger.error("Unhandled error: %s", str(error), exc_info=error)
        return CliResponse.error(ExitCode.USAGE, "内部错误", {"detail": str(error)})

    def wrap(self, func: Callable[..., int]) -> Callable[..., int]:
        """包装命令入口，使所有异常都转换为稳定的退出码"""

        @wraps(func)
        def wrapped(*args, **kwargs) -> int:
            try:
                return func(*args, **kwargs)
            except BaseException as e:  # noqa: BLE001
                if isinstance(e, SystemExit):
                    raise
                return self.handle(e)

        return wrapped


# 创建全局错误处理器实例
error_handler = ErrorHandler()
