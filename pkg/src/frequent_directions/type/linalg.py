from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class EighResult(NamedTuple):
    """对称矩阵特征分解的结果。

    属性:
        eigenvalues: np.ndarray - 非增排序的特征值
        eigenvectors: np.ndarray - 按列存放的正交特征向量，S = Q diag(λ) Qᵀ
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SvdResult:
    """窄奇异值分解的结果。

    属性:
        singular_values: np.ndarray - 非负、非增的奇异值
        right_vectors: np.ndarray - 每行一个右奇异向量，行数等于奇异值个数
        left_vectors: np.ndarray - 每列一个左奇异向量（零奇异值对应的列无意义）
    """

    singular_values: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """返回 U diag(σ) V，用于检查分解残差。"""
        return (self.left_vectors * self.singular_values) @ self.right_vectors
