import logging
from functools import lru_cache
from typing import Any, List, Literal, Tuple

import numpy as np
import numpy.typing as npt

from .type import EighResult, SvdResult
from .utils import ShapeError, validate_count

logger = logging.getLogger(__name__)

Matrix = npt.NDArray[np.float64]
Solver = Literal["jacobi", "lapack"]

# σ_k² ≤ RANK_CUTOFF·σ₁² 视为零奇异值
RANK_CUTOFF = 1e-12
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 30
SYMMETRY_TOL = 1e-9


def as_matrix(data: Any) -> Matrix:
    """
    构造 Matrix：复制为 float64 的二维数组并检查数值有限。

    一维输入被视为单行矩阵。

    Args:
        data: 可转换为数组的任意对象

    Returns:
        Matrix: 新的二维 float64 数组

    Raises:
        ShapeError: 如果输入不是一维或二维
        ValueError: 如果含有 NaN 或 Inf
    """
    mat = np.array(data, dtype=np.float64)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    if mat.ndim != 2:
        raise ShapeError(f"matrix must be two-dimensional, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix contains NaN or Inf")
    return mat


def _require_2d(a: Matrix, name: str = "matrix") -> None:
    if a.ndim != 2:
        raise ShapeError(f"{name} must be two-dimensional, got shape {a.shape}")


def _require_square(s: Matrix) -> None:
    _require_2d(s)
    if s.shape[0] != s.shape[1]:
        raise ShapeError(f"matrix must be square, got shape {s.shape}")


def gram(a: Matrix) -> Matrix:
    """返回 AᵀA（cols×cols 的对称半正定矩阵）。"""
    _require_2d(a)
    return a.T @ a


def frobenius_sq(a: Matrix) -> float:
    """返回所有元素的平方和 ‖A‖_F²。"""
    return float(np.vdot(a, a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    _require_2d(a)
    _require_2d(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


@lru_cache(maxsize=64)
def _round_robin(k: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """
    循环赛排序：把 k 个下标的全部 k(k-1)/2 个配对分成若干轮互不相交的配对。

    同一轮内的旋转作用在不同的行列上，因此可以一次性向量化完成。

    Args:
        k: 矩阵阶数

    Returns:
        每轮一个 (p, q) 下标数组对，且 p < q
    """
    players: List[int] = list(range(k)) + ([-1] if k % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [
            (min(players[i], players[size - 1 - i]), max(players[i], players[size - 1 - i]))
            for i in range(size // 2)
            if players[i] >= 0 and players[size - 1 - i] >= 0
        ]
        p = np.array([pair[0] for pair in pairs], dtype=np.intp)
        q = np.array([pair[1] for pair in pairs], dtype=np.intp)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _jacobi(s: Matrix) -> EighResult:
    a = s.astype(np.float64, copy=True)
    k = a.shape[0]
    vectors = np.eye(k)
    scale = float(np.linalg.norm(a))
    if k > 1 and scale > 0.0:
        threshold = JACOBI_TOL * scale
        rounds = _round_robin(k)
        for sweep in range(JACOBI_MAX_SWEEPS):
            off = np.abs(a - np.diag(np.diag(a))).max()
            if off <= threshold:
                break
            for p, q in rounds:
                apq = a[p, q]
                app = a[p, p]
                aqq = a[q, q]
                with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                    tau = (aqq - app) / (2.0 * apq)
                    t = np.where(tau >= 0.0, 1.0, -1.0) / (
                        np.abs(tau) + np.sqrt(1.0 + tau * tau)
                    )
                t = np.where(apq == 0.0, 0.0, t)
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * c

                rp = a[p, :]
                rq = a[q, :]
                a[p, :] = c[:, None] * rp - sn[:, None] * rq
                a[q, :] = sn[:, None] * rp + c[:, None] * rq

                cp = a[:, p]
                cq = a[:, q]
                a[:, p] = cp * c - cq * sn
                a[:, q] = cp * sn + cq * c

                vp = vectors[:, p]
                vq = vectors[:, q]
                vectors[:, p] = vp * c - vq * sn
                vectors[:, q] = vp * sn + vq * c
        else:
            logger.debug("jacobi stopped after %d sweeps (k=%d)", JACOBI_MAX_SWEEPS, k)
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return EighResult(values[order], vectors[:, order])


def sym_eigh(s: Matrix, solver: Solver = "jacobi") -> EighResult:
    """
    对称矩阵的特征分解。

    默认使用循环 Jacobi 方法（循环赛排序，每轮向量化），当最大非对角元
    不超过 1e-14·‖S‖_F 或完成 30 轮扫描时停止；solver="lapack" 时交给
    numpy.linalg.eigh。两种方式的输出约定一致。

    Args:
        s: 对称方阵（相对误差 1e-9 以内）
        solver: "jacobi" 或 "lapack"

    Returns:
        EighResult: 非增排序的特征值与按列存放的正交特征向量

    Raises:
        ShapeError: 如果 s 不是方阵
        ValueError: 如果 s 不对称或 solver 未知
    """
    _require_square(s)
    scale = float(np.linalg.norm(s))
    if float(np.linalg.norm(s - s.T)) > SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric")
    if solver == "jacobi":
        return _jacobi(s)
    if solver == "lapack":
        values, vectors = np.linalg.eigh(s)
        order = np.argsort(-values, kind="stable")
        return EighResult(values[order], vectors[:, order])
    raise ValueError(f"unknown solver {solver!r}")


def _complete_orthonormal(basis: Matrix, count: int, cols: int) -> Matrix:
    """用标准基向量做 Gram-Schmidt，把 basis 的行补足 count 个正交单位向量。"""
    found = [row for row in basis]
    extra: List[np.ndarray] = []
    for j in range(cols):
        if len(extra) == count:
            break
        e = np.zeros(cols)
        e[j] = 1.0
        if found or extra:
            span = np.vstack(found + extra)
            for _ in range(2):
                e -= span.T @ (span @ e)
        norm = float(np.linalg.norm(e))
        if norm > 1e-6:
            extra.append(e / norm)
    return np.vstack(extra) if extra else np.zeros((0, cols))


def thin_svd(b: Matrix, solver: Solver = "jacobi") -> SvdResult:
    """
    通过 Gram 矩阵计算窄 SVD。

    rows ≤ cols 时对 BBᵀ 做特征分解得到 U 与 σ²，再由 v_k = u_kᵀB/σ_k 得到右奇异向量；
    σ_k² ≤ 1e-12·σ₁² 的方向视为零奇异值，其右奇异向量用 Gram-Schmidt 补全为正交组。
    rows > cols 时改为对 BᵀB 做特征分解，返回 cols 个奇异三元组。

    Args:
        b: 待分解矩阵
        solver: 特征分解方式

    Returns:
        SvdResult: min(rows, cols) 个奇异值及对应的左右奇异向量
    """
    _require_2d(b)
    rows, cols = b.shape
    if rows <= cols:
        eig = sym_eigh(b @ b.T, solver)
        values = np.maximum(eig.eigenvalues, 0.0)
        sigma = np.sqrt(values)
        keep = values > RANK_CUTOFF * values[0] if values[0] > 0.0 else np.zeros(rows, bool)
        left = eig.eigenvectors
        proj = left[:, keep].T @ b
        right = np.zeros((rows, cols))
        if proj.shape[0]:
            # 与 σ_k⁻¹ 缩放在精确算术下一致，按范数归一化在舍入下更稳
            right[keep] = proj / np.linalg.norm(proj, axis=1)[:, None]
        missing = int(rows - keep.sum())
        if missing:
            right[~keep] = _complete_orthonormal(right[keep], missing, cols)
        return SvdResult(sigma, right, left)

    eig = sym_eigh(b.T @ b, solver)
    values = np.maximum(eig.eigenvalues, 0.0)
    sigma = np.sqrt(values)
    right = eig.eigenvectors.T
    keep = values > RANK_CUTOFF * values[0] if values[0] > 0.0 else np.zeros(cols, bool)
    left = np.zeros((rows, cols))
    left[:, keep] = (b @ right[keep].T) / sigma[keep]
    return SvdResult(sigma, right, left)


def spectral_norm_sym(
    s: Matrix, tol: float = 1e-6, max_iter: int = 1000, seed: int = 0
) -> float:
    """
    幂迭代估计对称矩阵的谱范数（最大特征值绝对值）。

    起始向量由 seed 确定。序列 ‖Sx_k‖ 单调不减，按相邻增量的几何尾部估计剩余误差，
    当估计的剩余误差不超过 tol·当前值或达到 max_iter 次迭代时停止，后一种情况记录 WARNING。

    Args:
        s: 对称方阵
        tol: 相对精度
        max_iter: 最大迭代次数
        seed: 起始向量的随机种子

    Returns:
        float: |λ_max| 的估计

    Raises:
        ShapeError: 如果 s 不是方阵
        ValueError: 如果 tol 不为正
    """
    _require_square(s)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    validate_count("max_iter", max_iter)
    if not np.any(s):
        return 0.0
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(s.shape[0])
    x /= np.linalg.norm(x)
    estimate = 0.0
    prev_step = None
    for it in range(max_iter):
        y = s @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            break
        step = abs(norm - estimate)
        x = y / norm
        if it > 0:
            if step == 0.0:
                estimate = norm
                break
            if prev_step is not None and step < prev_step:
                ratio = step / prev_step
                if step * ratio / (1.0 - ratio) <= tol * norm:
                    estimate = norm
                    break
        prev_step = step if it > 0 else None
        estimate = norm
    else:
        logger.warning(
            "power iteration hit max_iter=%d before reaching tol=%g (estimate %.12g)",
            max_iter,
            tol,
            estimate,
        )
    return estimate
