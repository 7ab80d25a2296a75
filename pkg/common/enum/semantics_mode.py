from enum import Enum


class Mode(Enum):
    """语义模式枚举"""

    CT = "ct"  # 因果团队语义
    GCT = "gct"  # 广义因果团队语义

    @classmethod
    def from_text(cls, text: str) -> "Mode":
        """从命令行参数转换为语义模式"""
        mode_map = {"ct": cls.CT, "gct": cls.GCT, "c": cls.CT, "g": cls.GCT}
        try:
            return mode_map[text.strip().lower()]
        except KeyError:
            raise ValueError(f"未知的语义模式: {text}")
