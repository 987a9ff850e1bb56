import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def tall_matrix(rng) -> np.ndarray:
    """200×30 的标准正态矩阵。"""
    return rng.standard_normal((200, 30))


@pytest.fixture
def covariance_error():
    """稠密参照：返回 (‖AᵀA − BᵀB‖, AᵀA − BᵀB 的最小特征值)。"""

    def oracle(a: np.ndarray, b: np.ndarray):
        eig = np.linalg.eigvalsh(a.T @ a - b.T @ b)
        return float(np.max(np.abs(eig))), float(eig[0])

    return oracle


@pytest.fixture
def with_spectrum():
    """按给定奇异值构造矩阵 Q₁ diag(s) Q₂ᵀ。"""

    def build(singular_values, rows: int, cols: int, seed: int = 0) -> np.ndarray:
        gen = np.random.default_rng(seed)
        k = len(singular_values)
        left, _ = np.linalg.qr(gen.standard_normal((rows, k)))
        right, _ = np.linalg.qr(gen.standard_normal((cols, k)))
        return (left * np.asarray(singular_values, dtype=float)) @ right.T

    return build
