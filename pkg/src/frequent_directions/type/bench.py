from dataclasses import dataclass, field
from typing import List


@dataclass
class BenchRecord:
    """一次实验的单元格结果。

    属性:
        method: str - 草图方法名（与命令行的 --method 取值一致）
        ell: int - 草图行数 ℓ
        d: int - 信号维数
        zeta: float - 信噪比 ζ
        seed: int - 生成输入矩阵所用的种子
        repetition: int - 重复编号
        accuracy: float - ‖AᵀA − BᵀB‖
        seconds: float - 追加全部行并输出草图所用的墙钟时间
    """

    method: str
    ell: int
    d: int
    zeta: float
    seed: int
    repetition: int
    accuracy: float
    seconds: float


@dataclass(frozen=True)
class FdBound:
    """Frequent-Directions 的误差保证 ‖A‖_F²/(cℓ)，精确模式下 c = 1。"""

    ell: int
    c: float
    frob_sq: float

    @property
    def bound(self) -> float:
        return self.frob_sq / (self.c * self.ell)


@dataclass
class CellFailure:
    d: int
    zeta: float
    repetition: int
    seed: int
    error: str


@dataclass
class BenchResult:
    """
    一次基准测试的全部输出。

    Attributes:
        records: 每个方法、每个 ℓ、每次重复的原始记录
        bounds: Frequent-Directions 误差保证曲线（方法名带 -bound 后缀）
        failures: 执行失败的单元格
    """

    records: List[BenchRecord] = field(default_factory=list)
    bounds: List[BenchRecord] = field(default_factory=list)
    failures: List[CellFailure] = field(default_factory=list)
