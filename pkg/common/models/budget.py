from dataclasses import dataclass

from common.utils.exceptions import ValidationError


@dataclass(frozen=True)
class UniverseBudget:
    """枚举预算：|Sem_σ| 不超过 max_sem_size 时精确枚举，否则按种子采样"""

    max_sem_size: int = 18
    sample_count: int = 2000
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_sem_size < 1:
            raise ValidationError("max_sem_size 必须 ≥ 1", {"max_sem_size": self.max_sem_size})
        if self.sample_count < 1:
            raise ValidationError("sample_count 必须 ≥ 1", {"sample_count": self.sample_count})
        if not (-(2**63) <= self.rng_seed < 2**64):
            raise ValidationError("rng_seed 必须是 64 位整数", {"rng_seed": self.rng_seed})

    def allows_exact(self, universe_size: int) -> bool:
        return universe_size <= self.max_sem_size
