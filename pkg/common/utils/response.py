import json
import sys
from typing import Any, Optional, TextIO


class ExitCode:
    """进程退出码"""

    OK = 0
    HOLDS = 0
    FAILS = 1
    USAGE = 2
    VALIDATION = 2


class CliResponse:
    """命令行响应封装类，统一输出 {"code", "message", "data"} 结构"""

    stream: Optional[TextIO] = None  # 为空时写到当前 sys.stdout

    @staticmethod
    def _emit(payload: dict) -> None:
        out = CliResponse.stream or sys.stdout
        out.write(json.dumps(payload, ensure_ascii=False, indent=2))
        out.write("\n")

    @staticmethod
    def raw(text: str) -> int:
        """直接输出文本（--raw 模式）"""
        out = CliResponse.stream or sys.stdout
        out.write(text)
        out.write("\n")
        return ExitCode.OK

    @staticmethod
    def ok(data: Any = None, message: str = "ok") -> int:
        """
        成功响应

        Args:
            data: 响应数据
            message: 响应消息

        Returns:
            int: 退出码
        """
        CliResponse._emit({"code": ExitCode.OK, "message": message, "data": data})
        return ExitCode.OK

    @staticmethod
    def holds(data: Any = None, message: str = "holds") -> int:
        """判定成立"""
        CliResponse._emit({"code": ExitCode.HOLDS, "message": message, "data": data})
        return ExitCode.HOLDS

    @staticmethod
    def fails(data: Any = None, message: str = "fails") -> int:
        """判定不成立"""
        CliResponse._emit({"code": ExitCode.FAILS, "message": message, "data": data})
        return ExitCode.FAILS

    @staticmethod
    def verdict(holds: bool, data: Any = None) -> int:
        """按判定结果选择响应"""
        return CliResponse.holds(data) if holds else CliResponse.fails(data)

    @staticmethod
    def error(code: int = ExitCode.USAGE, message: str = "error", data: Any = None) -> int:
        """
        错误响应

        Args:
            code: 退出码
            message: 错误信息
            data: 错误详情

        Returns:
            int: 退出码
        """
        CliResponse._emit({"code": code, "message": message, "data": data})
        return code

    @staticmethod
    def bad_request(message: str = "参数错误", data: Any = None) -> int:
        """用法或校验错误"""
        return CliResponse.error(ExitCode.USAGE, message, data)
