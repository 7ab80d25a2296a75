from typing import List, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

_MASK64 = (1 << 64) - 1


def keyed_generator(seed: int, *index: int) -> np.random.Generator:
    """按 (seed, index...) 派生的 Philox 计数器随机数发生器

    同一键总是得到同一随机流，与消费顺序、进程划分无关。
    """
    entropy = [seed & _MASK64] + [i & _MASK64 for i in index]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def choice(rng: np.random.Generator, items: Sequence[T]) -> T:
    """从序列中均匀取一个元素"""
    return items[int(rng.integers(len(items)))]


def subset(rng: np.random.Generator, items: Sequence[T], p: float = 0.5) -> List[T]:
    """每个元素独立以概率 p 入选（p=0.5 时为均匀子集）"""
    mask = rng.random(len(items)) < p
    return [x for x, keep in zip(items, mask) if keep]
