from enum import Enum


class RuleId(Enum):
    """推导规则名称，取值即推导文件中的拼写"""

    HYP = "Hyp"

    # CO 基本规则
    VAL_DEF = "ValDef"
    VAL_UNQ = "ValUnq"
    AND_I = "AndI"
    AND_E_L = "AndE_L"
    AND_E_R = "AndE_R"
    OR_I_L = "OrI_L"
    OR_I_R = "OrI_R"
    OR_E = "OrE"
    NEG_I = "NegI"
    NEG_E = "NegE"
    RAA = "RAA"
    CF_EFF = "CfEff"
    CF_CMP = "CfCmp"
    CF_BOT_E = "CfBotE"
    BOT_CF_E = "BotCfE"
    CF_CTR = "CfCtr"
    CF_WK = "CfWk"
    CF_SUB = "CfSub"
    CF_AND_I = "CfAndI"
    CF_OR_DST_FWD = "CfOrDst_fwd"
    CF_OR_DST_BWD = "CfOrDst_bwd"
    CF_EXTR = "CfExtr"
    CF_EXP = "CfExp"
    NEG_CF_E = "NegCfE"
    RECUR = "Recur"

    # ∨ 与 ⩒ 的附加规则
    OR_COM = "OrCom"
    OR_ASS = "OrAss"
    OR_SUB = "OrSub"
    IDISJ_I_L = "IDisjI_L"
    IDISJ_I_R = "IDisjI_R"
    IDISJ_E = "IDisjE"
    OR_IDISJ_DST = "OrIDisjDst"
    CF_IDISJ_DST = "CfIDisjDst"
    UNF = "Unf"

    # 依赖原子规则
    DEP_I0 = "DepI0"
    DEP_I = "DepI"
    DEP0_E = "Dep0E"
    DEP_E = "DepE"
    ONE_FUN = "OneFun"
    NO_MIX = "NoMix"

    @classmethod
    def from_text(cls, text: str) -> "RuleId":
        """按精确拼写查找规则"""
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"未知的规则名: {text}")
