from typing import Iterable, Optional

import numpy as np

from .linalg import Matrix
from .utils import check_row, validate_count


class MixSketcher:
    """
    流式草图的基础类，提供所有草图方法共用的功能。

    该类是 Frequent-Directions 与各个对比方法的基类：统一负责行向量校验、
    行号与输入 Frobenius 质量的统计，具体更新规则由子类的 _update 实现。

    Attributes:
        method: 方法名（与命令行 --method 的取值一致）
        ell: 草图行数 ℓ
        cols: 列数 m
        rows_seen: 已追加的行数
        frob_sq: 已追加行的平方范数之和 ‖A‖_F²
    """

    method: str = "mix"

    def __init__(self, ell: int, cols: int) -> None:
        """
        初始化MixSketcher对象。

        Args:
            ell: 草图行数，至少为 1
            cols: 列数，至少为 1

        Raises:
            ValueError: 如果 ell 或 cols 小于 1
        """
        self.ell = validate_count("ell", ell)
        self.cols = validate_count("cols", cols)
        self.rows_seen = 0
        self.frob_sq = 0.0

    @check_row
    def append(self, row: np.ndarray, index: Optional[int] = None) -> None:
        """
        追加流中的一行。

        Args:
            row: 长度为 cols 的行向量
            index: 行在流中的下标，缺省时使用已追加的行数

        Raises:
            ShapeError: 如果行长度与 cols 不符
            ValueError: 如果行中含有 NaN 或 Inf
        """
        if index is None:
            index = self.rows_seen
        self.rows_seen += 1
        self.frob_sq += float(row @ row)
        self._update(row, index)

    def extend(self, rows: Iterable) -> None:
        for row in rows:
            self.append(row)

    def finalize(self) -> Matrix:
        """返回 ℓ×m 的草图矩阵。"""
        raise NotImplementedError

    def _update(self, row: np.ndarray, index: int) -> None:
        raise NotImplementedError

    def __iadd__(self, row) -> "MixSketcher":
        self.append(row)
        return self

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(ell={self.ell}, cols={self.cols}, "
            f"rows_seen={self.rows_seen})"
        )
