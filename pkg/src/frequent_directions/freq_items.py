import logging
import math
from typing import Dict, Hashable, Iterable

from .utils import validate_count

logger = logging.getLogger(__name__)


class MgCounter:
    """
    Frequent-Items（Misra-Gries）计数器，采用“减去最小值”的删除方式。

    计数器最多保留 capacity 个正计数；插入后若超过 capacity 个，则所有计数同时减去
    最小的正计数 δ，删除归零的项，并把 δ 累加到 deleted_total。每次删除都从至少
    capacity+1 个不同的项中各删去 δ，因此 deleted_total·(capacity+1) ≤ 已处理总量 n，
    估计值满足 0 ≤ f_j − g_j ≤ deleted_total。

    Attributes:
        capacity: 正计数的最大个数
        deleted_total: 累计删除量 t
        items_processed: 已处理的总权重 n
    """

    def __init__(self, capacity: int) -> None:
        """
        初始化MgCounter对象。

        Args:
            capacity: 正计数的最大个数，可以为 0（此时什么也不保留）
        """
        self.capacity = validate_count("capacity", capacity, minimum=0)
        self.deleted_total = 0.0
        self.items_processed = 0.0
        self.__counters: Dict[Hashable, float] = {}

    @classmethod
    def for_sketch_rows(cls, ell: int) -> "MgCounter":
        """
        返回被 ℓ 行 Frequent-Directions 草图精确模仿的计数器。

        ℓ 行草图在每次收缩后至少有一行为零，最多保留 ℓ−1 个方向，对应 capacity = ℓ−1；
        此时 0 ≤ f_j − g_j ≤ n/ℓ。

        Args:
            ell: 草图行数 ℓ

        Returns:
            MgCounter: capacity 为 ℓ−1 的计数器
        """
        return cls(validate_count("ell", ell) - 1)

    def update(self, item: Hashable, weight: float = 1.0) -> None:
        """
        处理流中的一个元素。

        Args:
            item: 元素标识
            weight: 元素权重，必须为有限正数

        Raises:
            ValueError: 如果 weight 不是有限正数
        """
        if not (weight > 0 and math.isfinite(weight)):
            raise ValueError(f"weight must be a positive finite number, got {weight}")
        counters = self.__counters
        counters[item] = counters.get(item, 0.0) + weight
        self.items_processed += weight
        if len(counters) > self.capacity:
            delta = min(counters.values())
            self.__counters = {k: v - delta for k, v in counters.items() if v - delta > 0}
            self.deleted_total += delta
            logger.debug(
                "deleted %.6g from %d counters, %d left",
                delta,
                len(counters),
                len(self.__counters),
            )

    def extend(self, items: Iterable[Hashable]) -> None:
        for item in items:
            self.update(item)

    def estimate(self, item: Hashable) -> float:
        """返回元素的近似频率 g_j，不在计数器中时为 0。"""
        return self.__counters.get(item, 0.0)

    def items(self) -> Dict[Hashable, float]:
        return dict(self.__counters)

    def __len__(self) -> int:
        return len(self.__counters)

    def __contains__(self, item: Hashable) -> bool:
        return item in self.__counters
