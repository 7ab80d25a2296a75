from enum import Enum


class Calculus(Enum):
    """自然演绎系统枚举"""

    CO = "CO"
    COI_GCT = "COi-gct"  # 广义因果团队上的 CO∨
    COI_CT = "COi-ct"  # 因果团队上的 CO∨（加 Unf 公理）
    COD_GCT = "COD-gct"
    COD_CT = "COD-ct"  # 加 OneFun 与 NoMix 公理

    @classmethod
    def from_text(cls, text: str) -> "Calculus":
        """从命令行参数转换为演算"""
        for member in cls:
            if member.value.lower() == text.strip().lower():
                return member
        raise ValueError(f"未知的演算: {text}")

    @property
    def extended(self) -> bool:
        """是否为 CO 的扩展系统（判别受限规则只作用于 CO 公式）"""
        return self is not Calculus.CO
