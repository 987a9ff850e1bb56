from pathlib import Path
from typing import Any, Dict, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .baselines import METHODS

LIST_FIELDS = ("ells", "ds", "zetas", "methods")


class BenchConfig(BaseModel):
    """
    基准测试网格配置，默认值为可在普通机器上跑完的缩小网格。

    Attributes:
        n: 输入矩阵行数
        m: 输入矩阵列数
        ells: 草图行数 ℓ 的取值
        ds: 信号维数 d 的取值
        zetas: 信噪比 ζ 的取值
        methods: 参与比较的方法
        repetitions: 每个参数组合的重复次数
        base_seed: 派生各单元格种子的基础种子
        c: fd-fast 的参数
        solver: fd、fd-fast 与 brute 使用的特征分解方式
        workers: 并行执行单元格的线程数
    """

    model_config = ConfigDict(extra="forbid")

    n: int = Field(2000, ge=1)
    m: int = Field(200, ge=1)
    ells: List[int] = Field(default_factory=lambda: list(range(10, 81, 10)))
    ds: List[int] = Field(default_factory=lambda: [5, 10, 20])
    zetas: List[float] = Field(default_factory=lambda: [1.0, 5.0, 10.0])
    methods: List[str] = Field(
        default_factory=lambda: ["fd-fast", "naive", "brute", "sample", "hash", "project"]
    )
    repetitions: int = Field(3, ge=1)
    base_seed: int = 0
    c: float = Field(1.0 / 3.0, ge=0.1, le=0.9)
    solver: Literal["jacobi", "lapack"] = "jacobi"
    workers: int = Field(1, ge=1)

    @field_validator(*LIST_FIELDS, mode="before")
    @classmethod
    def split_comma_list(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [part.strip() for part in value.split(",") if part.strip()]
        return value

    @field_validator("ells", "ds")
    @classmethod
    def positive_counts(cls, value: List[int]) -> List[int]:
        if any(v < 1 for v in value):
            raise ValueError("values must be >= 1")
        return value

    @field_validator("zetas")
    @classmethod
    def positive_zetas(cls, value: List[float]) -> List[float]:
        if any(not v > 0 for v in value):
            raise ValueError("zeta values must be > 0")
        return value

    @field_validator("methods")
    @classmethod
    def known_methods(cls, value: List[str]) -> List[str]:
        unknown = [v for v in value if v not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}, expected from {list(METHODS)}")
        return value

    @model_validator(mode="after")
    def signal_fits(self) -> "BenchConfig":
        limit = min(self.n, self.m)
        if any(d > limit for d in self.ds):
            raise ValueError(f"every d must be <= min(n, m) = {limit}")
        return self

    @classmethod
    def full_grid(cls) -> "BenchConfig":
        """返回完整规模的实验网格，规模很大，因此改用 lapack 求解器。"""
        return cls(
            n=10000,
            m=1000,
            ells=list(range(10, 301, 10)),
            ds=[5, 10, 20, 50, 100],
            zetas=[float(z) for z in range(1, 16)],
            repetitions=7,
            solver="lapack",
        )


def parse_config_text(text: str) -> Dict[str, str]:
    """
    解析扁平的 key=value 文本，# 之后为注释，空行忽略。

    Raises:
        ValueError: 如果某行缺少 = 或键重复
    """
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def load_config(path: Union[str, Path]) -> BenchConfig:
    """
    从配置文件读取基准测试网格，未出现的键使用默认值。

    Args:
        path: 配置文件路径

    Returns:
        BenchConfig: 校验后的配置

    Raises:
        ValueError: 如果文件格式错误或取值非法（pydantic 的 ValidationError 也是 ValueError）
        OSError: 如果文件无法读取
    """
    text = Path(path).read_text(encoding="utf-8")
    return BenchConfig.model_validate(parse_config_text(text))
