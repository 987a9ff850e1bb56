import functools
from typing import Any, Callable

import numpy as np

MASK64 = (1 << 64) - 1

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


class ShapeError(ValueError):
    """行向量或矩阵的维度与草图不匹配。"""


class MatrixFormatError(ValueError):
    """矩阵文件为空、被截断或格式不合法。"""


def splitmix64(x: Any) -> np.ndarray:
    """
    splitmix64 雪崩混合函数（向量化）。

    对每个 64 位无符号整数做一次 splitmix64 终结混合，溢出按模 2^64 回绕。

    Args:
        x: 整数或整数数组

    Returns:
        np.ndarray: 与输入同形状的 uint64 数组
    """
    z = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = z + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def hash64(seed: int, *keys: Any) -> np.ndarray:
    """
    由种子和若干键派生确定性的 64 位哈希值。

    依次把每个键异或进状态再做 splitmix64 混合，键可以是数组（按广播规则展开）。
    结果只依赖 (seed, keys)，与调用顺序无关。

    Args:
        seed: 64 位整数种子（负数按补码取低 64 位）
        *keys: 非负整数或整数数组

    Returns:
        np.ndarray: uint64 哈希值
    """
    h = splitmix64(np.uint64(int(seed) & MASK64))
    for key in keys:
        k = np.asarray(key)
        if k.dtype != np.uint64:
            k = (k.astype(np.int64) & np.int64(0x7FFFFFFFFFFFFFFF)).astype(np.uint64)
        h = splitmix64(h ^ k)
    return h


def validate_count(name: str, value: int, minimum: int = 1) -> int:
    """校验计数类参数为不小于 minimum 的整数。"""
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_row(func: Callable) -> Callable:
    """行向量检查装饰器，确保传入草图的每一行维度正确且数值有限。

    被装饰方法的第一个位置参数必须是行向量，实例必须提供 cols 属性。
    行向量会被转换为 float64 的一维数组后再交给原方法。

    Args:
        func: 形如 method(self, row, *args, **kwargs) 的方法

    Returns:
        装饰后的函数
    """

    @functools.wraps(func)
    def wrapper(self, row, *args, **kwargs) -> Any:
        if not hasattr(self, "cols"):
            raise AttributeError(f"{self.__class__.__name__} has no cols attribute")
        vec = np.asarray(row, dtype=np.float64)
        if vec.ndim == 2 and vec.shape[0] == 1:
            vec = vec[0]
        if vec.ndim != 1:
            raise ShapeError(f"row must be one-dimensional, got shape {vec.shape}")
        if vec.shape[0] != self.cols:
            raise ShapeError(
                f"row has {vec.shape[0]} entries but the sketch has {self.cols} columns"
            )
        if not np.all(np.isfinite(vec)):
            raise ValueError("row contains NaN or Inf")
        return func(self, vec, *args, **kwargs)

    return wrapper
