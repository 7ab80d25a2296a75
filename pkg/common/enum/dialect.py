from enum import Enum


class Dialect(Enum):
    """公式语言枚举"""

    CO = "CO"  # 不含依赖原子与直觉主义析取
    COD = "COD"  # 允许依赖原子
    COI = "COi"  # 允许直觉主义析取 ⩒
    ILL_FORMED = "ill-formed"

    @classmethod
    def from_text(cls, text: str) -> "Dialect":
        """从命令行参数转换为公式语言"""
        dialect_map = {"co": cls.CO, "cod": cls.COD, "coi": cls.COI, "cov": cls.COI}
        try:
            return dialect_map[text.strip().lower()]
        except KeyError:
            raise ValueError(f"未知的公式语言: {text}")

    def admits(self, other: "Dialect") -> bool:
        """本语言是否包含 other 语言的全部公式"""
        if other is Dialect.ILL_FORMED or self is Dialect.ILL_FORMED:
            return False
        return other is Dialect.CO or other is self
