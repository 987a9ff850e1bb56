from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .linalg import Matrix
from .utils import MASK64, validate_count

# 各分量使用独立的子种子，生成顺序不影响结果
_STREAM_SIGNAL = 0
_STREAM_SUBSPACE = 1
_STREAM_NOISE = 2


@dataclass(frozen=True)
class GenSpec:
    """
    合成矩阵 A = S·D·U + N/ζ 的生成参数。

    Attributes:
        n: 行数
        m: 列数
        d: 信号维数，1 ≤ d ≤ min(n, m)
        zeta: 信噪比 ζ > 0
        seed: 64 位整数种子
    """

    n: int
    m: int
    d: int
    zeta: float
    seed: int = 0

    def __post_init__(self) -> None:
        validate_count("n", self.n)
        validate_count("m", self.m)
        validate_count("d", self.d)
        if self.d > min(self.n, self.m):
            raise ValueError(f"d must be <= min(n, m) = {min(self.n, self.m)}, got {self.d}")
        if not (self.zeta > 0 and np.isfinite(self.zeta)):
            raise ValueError(f"zeta must be a positive finite number, got {self.zeta}")


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed) & MASK64, stream]))


def signal_diagonal(d: int) -> np.ndarray:
    """返回线性递减的信号奇异值 D_ii = 1 − (i−1)/d。"""
    return 1.0 - np.arange(d) / d


def random_subspace(d: int, m: int, rng: np.random.Generator) -> Matrix:
    """
    返回 d×m 的行正交矩阵 U（UUᵀ = I_d），其行空间是 ℝ^m 中均匀分布的 d 维子空间。

    对 d 个独立高斯向量做 QR 正交化；高斯分布的旋转不变性保证子空间均匀。
    """
    q, _ = np.linalg.qr(rng.standard_normal((m, d)))
    return q.T


def generate_parts(spec: GenSpec) -> Tuple[Matrix, Matrix]:
    """
    分别返回信号部分 S·D·U（秩恰为 d）和未缩放的噪声 N。

    Args:
        spec: 生成参数

    Returns:
        (signal, noise): 两个 n×m 矩阵
    """
    coeffs = _rng(spec.seed, _STREAM_SIGNAL).standard_normal((spec.n, spec.d))
    subspace = random_subspace(spec.d, spec.m, _rng(spec.seed, _STREAM_SUBSPACE))
    noise = _rng(spec.seed, _STREAM_NOISE).standard_normal((spec.n, spec.m))
    signal = (coeffs * signal_diagonal(spec.d)) @ subspace
    return signal, noise


def generate(spec: GenSpec) -> Matrix:
    """
    生成合成矩阵 A = S·D·U + N/ζ，给定种子时结果完全确定。

    Args:
        spec: 生成参数

    Returns:
        Matrix: n×m 的输入矩阵
    """
    signal, noise = generate_parts(spec)
    return signal + noise / spec.zeta
