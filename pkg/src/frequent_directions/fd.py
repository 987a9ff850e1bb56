import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Literal, Optional, Sequence, Union

import numpy as np

from .linalg import Matrix, Solver, as_matrix, thin_svd
from .mix import MixSketcher
from .utils import ShapeError, validate_count

logger = logging.getLogger(__name__)

C_MIN = 0.1
C_MAX = 0.9


class FrequentDirections(MixSketcher):
    """
    Frequent-Directions 流式矩阵草图。

    每个输入行放入草图的一个零行；当草图没有零行时计算 SVD，把所有平方奇异值同时减去
    δ = σ_k²（精确模式 k = ℓ，快速模式 k = ⌈cℓ⌉），使至少 ℓ−k+1 行归零。
    精确模式满足 ‖AᵀA − BᵀB‖ ≤ ‖A‖_F²/ℓ，快速模式满足 ‖AᵀA − BᵀB‖ ≤ ‖A‖_F²/(cℓ)，
    且 SVD 只在每 ⌊(1−c)ℓ⌋+1 行左右计算一次。

    精确模式下，草图还有零行时 σ_ℓ = 0，收缩不改变 BᵀB，因此直接跳过 SVD；
    全零输入行同理直接跳过。

    Attributes:
        c: 快速模式的参数，精确模式为 None
        shrink_rank_index: 取 δ 的奇异值序号 k（从 1 开始）
        delta_total: 累计收缩量 Σδ_i
        svd_count: 已计算的 SVD 次数
        last_delta: 最近一次追加产生的 δ
        deltas: 每次追加的 δ（仅当 keep_deltas=True 时记录）
    """

    def __init__(
        self,
        ell: int,
        cols: int,
        c: Optional[float] = None,
        solver: Solver = "jacobi",
        keep_deltas: bool = False,
    ) -> None:
        """
        初始化FrequentDirections对象。

        Args:
            ell: 草图行数 ℓ
            cols: 列数 m
            c: 快速模式参数，取值 [1/10, 9/10]；None 表示精确模式
            solver: SVD 使用的特征分解方式
            keep_deltas: 是否记录每次追加的 δ

        Raises:
            ValueError: 如果 ell、cols 小于 1 或 c 超出范围
        """
        super().__init__(ell, cols)
        if c is None:
            self.c: Optional[float] = None
            self.shrink_rank_index = self.ell
        else:
            if not (C_MIN <= c <= C_MAX):
                raise ValueError(f"c must lie in [{C_MIN}, {C_MAX}], got {c}")
            self.c = float(c)
            # cℓ 非整数时取上整；减去 1e-9 避免 1/3·300 这类舍入得到 101
            k = math.ceil(self.c * self.ell - 1e-9)
            self.shrink_rank_index = min(max(k, 1), self.ell)
        self.solver = solver
        self.delta_total = 0.0
        self.svd_count = 0
        self.last_delta = 0.0
        self.deltas: Optional[List[float]] = [] if keep_deltas else None
        self.__buffer = np.zeros((self.ell, self.cols))
        self.__cursor = 0

    @classmethod
    def fast(
        cls, ell: int, cols: int, c: float = 1.0 / 3.0, **kwargs
    ) -> "FrequentDirections":
        """创建快速模式的草图，实验中使用 c = 1/3。"""
        return cls(ell, cols, c=c, **kwargs)

    @classmethod
    def from_epsilon(cls, eps: float, cols: int, **kwargs) -> "FrequentDirections":
        """
        按精度参数 ε 创建草图，ℓ = ⌈1/ε⌉。

        Args:
            eps: 精度参数，取值 (0, 1]
            cols: 列数

        Raises:
            ValueError: 如果 eps 不在 (0, 1]
        """
        if not (0.0 < eps <= 1.0):
            raise ValueError(f"eps must lie in (0, 1], got {eps}")
        return cls(math.ceil(1.0 / eps - 1e-12), cols, **kwargs)

    @property
    def mode(self) -> Literal["exact", "fast"]:
        return "exact" if self.c is None else "fast"

    @property
    def method(self) -> str:  # type: ignore[override]
        return "fd" if self.c is None else "fd-fast"

    @property
    def zero_rows(self) -> int:
        """当前可直接放入新行的零行数量。"""
        return self.ell - self.__cursor

    def _update(self, row: np.ndarray, index: int) -> None:
        delta = 0.0
        if row.any():
            self.__buffer[self.__cursor] = row
            self.__cursor += 1
            if self.__cursor == self.ell:
                delta = self.__shrink()
        self.last_delta = delta
        if self.deltas is not None:
            self.deltas.append(delta)

    def __shrink(self) -> float:
        svd = thin_svd(self.__buffer, self.solver)
        sigma_sq = svd.singular_values**2
        k = self.shrink_rank_index
        delta = float(sigma_sq[k - 1]) if k <= sigma_sq.shape[0] else 0.0
        shrunk = np.sqrt(np.maximum(sigma_sq - delta, 0.0))
        rank = shrunk.shape[0]
        self.__buffer[:] = 0.0
        self.__buffer[:rank] = shrunk[:, None] * svd.right_vectors
        # shrunk 非增，非零行恰好是前缀
        self.__cursor = int(np.count_nonzero(shrunk))
        self.delta_total += delta
        self.svd_count += 1
        logger.debug(
            "shrink #%d: delta=%.6g, %d zero rows", self.svd_count, delta, self.zero_rows
        )
        return delta

    def sketch(self) -> Matrix:
        """
        返回当前草图 B（ℓ×m，包含零行）。

        快速模式不会在此处补做一次收缩：直接放入零行的原始输入行本身就是合法草图的一部分。
        """
        return self.__buffer.copy()

    def finalize(self) -> Matrix:
        return self.sketch()

    def merge(self, other: Union[Matrix, "FrequentDirections"]) -> None:
        """
        把另一个草图的所有行当作普通输入行追加进来。

        若 A₁、A₂ 的草图分别为 B₁、B₂，把两者依次并入得到 C，则对任意单位向量 x 有
        ‖Ax‖² − ‖Cx‖² ≤ (‖A‖_F² − ‖C‖_F²)/ℓ，其中 A 为 A₁ 与 A₂ 的拼接。
        frob_sq 只累计本草图摄入的质量（即 ‖B₂‖_F²），原始流的 ‖A‖_F² 由调用方另行记录。

        Args:
            other: 草图矩阵，或使用相同 ℓ 的 FrequentDirections

        Raises:
            ShapeError: 如果列数不一致
            ValueError: 如果 other 是 ℓ 不同的 FrequentDirections
        """
        if isinstance(other, FrequentDirections):
            if other.ell != self.ell:
                raise ValueError(
                    f"cannot merge sketches with ell={other.ell} into ell={self.ell}"
                )
            other = other.sketch()
        mat = as_matrix(other)
        if mat.shape[1] != self.cols:
            raise ShapeError(
                f"sketch has {mat.shape[1]} columns but this sketch has {self.cols}"
            )
        for row in mat:
            self.append(row)

    def lowrank_projection(self, k: int) -> Matrix:
        """
        返回投影到 B 的前 k 个右奇异向量张成空间上的 m×m 投影矩阵 P = V_kᵀV_k。

        满足 ‖A − AP‖² ≤ σ_{k+1}(A)² + 2‖AᵀA − BᵀB‖。

        Args:
            k: 保留的方向数，1 ≤ k ≤ ℓ

        Returns:
            Matrix: 对称幂等的投影矩阵

        Raises:
            ValueError: 如果 k 超出范围
        """
        if isinstance(k, bool) or int(k) != k or not (1 <= k <= self.ell):
            raise ValueError(f"k must lie in [1, {self.ell}], got {k}")
        svd = thin_svd(self.__buffer, self.solver)
        top = svd.right_vectors[: int(k)]
        return top.T @ top

    def guarantee(self) -> float:
        """按已摄入的质量给出当前模式的误差保证 ‖A‖_F²/ℓ 或 ‖A‖_F²/(cℓ)。"""
        if self.c is None:
            return self.frob_sq / self.ell
        return self.frob_sq / (self.c * self.ell)


def merge_sketches(
    sketches: Sequence[Union[Matrix, FrequentDirections]],
    ell: int,
    cols: Optional[int] = None,
    c: Optional[float] = None,
    solver: Solver = "jacobi",
) -> FrequentDirections:
    """
    把若干分片的草图合并成一个草图。

    Args:
        sketches: 分片草图（矩阵或 FrequentDirections）
        ell: 合并草图的行数
        cols: 列数，缺省时取第一个分片的列数
        c: 快速模式参数
        solver: SVD 使用的特征分解方式

    Returns:
        FrequentDirections: 合并后的草图

    Raises:
        ValueError: 如果 sketches 为空且未给出 cols
    """
    if cols is None:
        if not sketches:
            raise ValueError("cols is required when there is nothing to merge")
        first = sketches[0]
        cols = first.cols if isinstance(first, FrequentDirections) else first.shape[1]
    merged = FrequentDirections(ell, cols, c=c, solver=solver)
    for sketch in sketches:
        merged.merge(sketch)
    return merged


def parallel_sketch(
    matrix: Matrix,
    ell: int,
    shards: int = 2,
    c: Optional[float] = None,
    max_workers: Optional[int] = None,
    solver: Solver = "jacobi",
) -> FrequentDirections:
    """
    分片并行地计算草图：按行切分矩阵，各分片独立草图后再合并。

    Args:
        matrix: 输入矩阵
        ell: 草图行数
        shards: 分片数
        c: 快速模式参数
        max_workers: 线程池大小
        solver: SVD 使用的特征分解方式

    Returns:
        FrequentDirections: 合并后的草图
    """
    mat = as_matrix(matrix)
    validate_count("shards", shards)
    parts = np.array_split(mat, shards)

    def sketch_shard(part: Matrix) -> Matrix:
        fd = FrequentDirections(ell, mat.shape[1], c=c, solver=solver)
        fd.extend(part)
        return fd.sketch()

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        sketches = list(pool.map(sketch_shard, parts))
    logger.debug("merging %d shard sketches", len(sketches))
    return merge_sketches(sketches, ell, mat.shape[1], c=c, solver=solver)


def ell_for_lowrank(frob_sq: float, sigma_k1_sq: float, eps: float) -> int:
    """
    返回使低秩投影达到 (1+ε) 近似所需的草图行数 ℓ ≥ 2‖A‖_F²/(ε σ_{k+1}²)。

    Args:
        frob_sq: ‖A‖_F²
        sigma_k1_sq: σ_{k+1}(A)²
        eps: 目标近似比例

    Raises:
        ValueError: 如果参数不为正
    """
    if frob_sq <= 0 or sigma_k1_sq <= 0 or eps <= 0:
        raise ValueError("frob_sq, sigma_k1_sq and eps must be positive")
    return math.ceil(2.0 * frob_sq / (eps * sigma_k1_sq) - 1e-9)
