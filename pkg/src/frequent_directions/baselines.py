from typing import Dict, Tuple

import numpy as np

from .fd import FrequentDirections
from .linalg import Matrix, Solver, sym_eigh
from .mix import MixSketcher
from .utils import hash64


METHODS: Tuple[str, ...] = ("fd", "fd-fast", "naive", "brute", "sample", "hash", "project")


class NaiveSketcher(MixSketcher):
    """朴素方法：忽略所有输入，返回全零的 ℓ×m 矩阵，但与其他方法承担相同的读取开销。"""

    method = "naive"

    def _update(self, row: np.ndarray, index: int) -> None:
        pass

    def finalize(self) -> Matrix:
        return np.zeros((self.ell, self.cols))


class BruteForceSketcher(MixSketcher):
    """
    暴力方法：精确累加 AᵀA，输出其前 ℓ 个特征方向 diag(√λ₁..√λ_ℓ)·V_ℓ。

    这是最优的 ℓ 行草图，误差恰为 σ_{ℓ+1}(A)²；它需要 m×m 的存储，不受 ℓ×m 的空间限制。
    """

    method = "brute"

    def __init__(self, ell: int, cols: int, solver: Solver = "jacobi") -> None:
        super().__init__(ell, cols)
        self.solver = solver
        self.__gram = np.zeros((self.cols, self.cols))

    def _update(self, row: np.ndarray, index: int) -> None:
        self.__gram += np.outer(row, row)

    def finalize(self) -> Matrix:
        eig = sym_eigh(self.__gram, self.solver)
        top = min(self.ell, self.cols)
        values = np.maximum(eig.eigenvalues[:top], 0.0)
        sketch = np.zeros((self.ell, self.cols))
        sketch[:top] = np.sqrt(values)[:, None] * eig.eigenvectors[:, :top].T
        return sketch


class SamplingSketcher(MixSketcher):
    """
    按范数平方加权的行采样，由 ℓ 个独立的加权蓄水池实现。

    处理第 i 行时先更新总权重 W_i，然后每个蓄水池以概率 ‖A_i‖²/W_i 用该行替换所持行，
    最终每个蓄水池持有的行 A_i 输出为 (1/√ℓ)(‖A‖_F/‖A_i‖)A_i，从而 E[BᵀB] = AᵀA。
    """

    method = "sample"

    def __init__(self, ell: int, cols: int, seed: int = 0) -> None:
        super().__init__(ell, cols)
        self.seed = seed
        self.__rng = np.random.default_rng(np.random.SeedSequence(int(seed) & (2**64 - 1)))
        self.__held = np.zeros((self.ell, self.cols))
        self.__held_norm_sq = np.zeros(self.ell)

    def _update(self, row: np.ndarray, index: int) -> None:
        # 每行都抽取 ℓ 个均匀数，保证结果只取决于 (seed, 流)
        draws = self.__rng.random(self.ell)
        weight = float(row @ row)
        if weight == 0.0:
            return
        replace = draws < weight / self.frob_sq
        self.__held[replace] = row
        self.__held_norm_sq[replace] = weight

    def finalize(self) -> Matrix:
        sketch = np.zeros((self.ell, self.cols))
        held = self.__held_norm_sq > 0.0
        if held.any():
            scale = np.sqrt(self.frob_sq / self.ell) / np.sqrt(self.__held_norm_sq[held])
            sketch[held] = self.__held[held] * scale[:, None]
        return sketch


class HashingSketcher(MixSketcher):
    """特征哈希：B_{h(i)} += s(i)·A_i，h 与 s 由种子和行号经 splitmix64 混合得到。"""

    method = "hash"

    def __init__(self, ell: int, cols: int, seed: int = 0) -> None:
        super().__init__(ell, cols)
        self.seed = seed
        self.__sketch = np.zeros((self.ell, self.cols))

    def _update(self, row: np.ndarray, index: int) -> None:
        bucket = int(hash64(self.seed, index, 0) % np.uint64(self.ell))
        sign = 1.0 if int(hash64(self.seed, index, 1) >> np.uint64(63)) else -1.0
        self.__sketch[bucket] += sign * row

    def finalize(self) -> Matrix:
        return self.__sketch.copy()


class RandomProjectionSketcher(MixSketcher):
    """
    随机投影 B = RA，R 的元素独立均匀取自 {−1/√ℓ, +1/√ℓ}。

    R 从不显式存储：第 i 行对应的 ℓ 个符号由 (seed, i, j) 哈希得到。
    """

    method = "project"

    def __init__(self, ell: int, cols: int, seed: int = 0) -> None:
        super().__init__(ell, cols)
        self.seed = seed
        self.__salts = np.arange(2, self.ell + 2, dtype=np.uint64)
        self.__sketch = np.zeros((self.ell, self.cols))

    def _update(self, row: np.ndarray, index: int) -> None:
        bits = hash64(self.seed, index, self.__salts) >> np.uint64(63)
        signs = np.where(bits == 1, 1.0, -1.0) / np.sqrt(self.ell)
        self.__sketch += np.outer(signs, row)

    def finalize(self) -> Matrix:
        return self.__sketch.copy()


_RANDOMIZED: Dict[str, type] = {
    "sample": SamplingSketcher,
    "hash": HashingSketcher,
    "project": RandomProjectionSketcher,
}


def create_sketcher(
    method: str,
    ell: int,
    cols: int,
    seed: int = 0,
    c: float = 1.0 / 3.0,
    solver: Solver = "jacobi",
) -> MixSketcher:
    """
    按方法名创建草图对象，使基准测试可以统一地对待所有方法。

    Args:
        method: METHODS 中的方法名
        ell: 草图行数
        cols: 列数
        seed: 随机方法的种子
        c: fd-fast 的参数
        solver: fd、fd-fast 与 brute 使用的特征分解方式

    Returns:
        MixSketcher: 新的草图对象

    Raises:
        ValueError: 如果方法名未知
    """
    if method == "fd":
        return FrequentDirections(ell, cols, solver=solver)
    if method == "fd-fast":
        return FrequentDirections.fast(ell, cols, c=c, solver=solver)
    if method == "naive":
        return NaiveSketcher(ell, cols)
    if method == "brute":
        return BruteForceSketcher(ell, cols, solver=solver)
    if method in _RANDOMIZED:
        return _RANDOMIZED[method](ell, cols, seed=seed)
    raise ValueError(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")
