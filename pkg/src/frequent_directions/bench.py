import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from .baselines import create_sketcher
from .config import BenchConfig
from .datagen import GenSpec, generate
from .linalg import Matrix, frobenius_sq, gram, spectral_norm_sym
from .mix import MixSketcher
from .type import BenchRecord, BenchResult, CellFailure, FdBound
from .utils import ShapeError, hash64

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["method", "ell", "d", "zeta", "seed", "repetition", "accuracy", "seconds"]
GROUP_COLUMNS = ["method", "ell", "d", "zeta"]
ACCURACY_TOL = 1e-6
ACCURACY_SEED = 0
ACCURACY_MAX_ITER = 50000
INVARIANT_SLACK = 1e-9


def measure_accuracy(
    a_gram: Matrix,
    b: Matrix,
    tol: float = ACCURACY_TOL,
    seed: int = ACCURACY_SEED,
    max_iter: int = ACCURACY_MAX_ITER,
) -> float:
    """
    计算草图精度 ‖AᵀA − BᵀB‖。

    Args:
        a_gram: m×m 的 AᵀA
        b: ℓ×m 的草图
        tol: 幂迭代的相对精度
        seed: 幂迭代起始向量的种子
        max_iter: 幂迭代的最大次数

    Returns:
        float: 谱范数误差

    Raises:
        ShapeError: 如果维度不匹配
    """
    if a_gram.ndim != 2 or a_gram.shape[0] != a_gram.shape[1]:
        raise ShapeError(f"a_gram must be square, got shape {a_gram.shape}")
    if b.ndim != 2 or b.shape[1] != a_gram.shape[0]:
        raise ShapeError(f"sketch shape {b.shape} does not match gram {a_gram.shape}")
    return spectral_norm_sym(a_gram - gram(b), tol=tol, max_iter=max_iter, seed=seed)


def fd_bound(ell: int, c: float, frob_sq: float) -> FdBound:
    """返回 Frequent-Directions 的误差保证 ‖A‖_F²/(cℓ)，精确模式传入 c = 1。"""
    return FdBound(ell=ell, c=c, frob_sq=frob_sq)


def derive_seed(base_seed: int, *keys: int) -> int:
    """由基础种子和单元格键派生非负的 63 位种子，与执行顺序无关。"""
    return int(hash64(base_seed, *keys)) & 0x7FFFFFFFFFFFFFFF


def sketch_stream(sketcher: MixSketcher, rows: Iterable) -> Tuple[Matrix, float]:
    """
    把行流送入草图并输出结果，只计时追加与输出两个阶段。

    Returns:
        (sketch, seconds): 草图矩阵与耗时
    """
    start = time.perf_counter()
    for row in rows:
        sketcher.append(row)
    sketch = sketcher.finalize()
    return sketch, time.perf_counter() - start


def check_record_invariants(
    records: List[BenchRecord], frob_sq: float, c: float
) -> List[str]:
    """
    检查同一输入矩阵、同一 ℓ 下的记录：brute 的精度不劣于其他方法，FD 不超过误差保证。

    违反时记录 WARNING 并返回问题描述（精度来自幂迭代，存在 1e-6 量级的相对误差）。
    """
    problems = []
    brute = [r.accuracy for r in records if r.method == "brute"]
    for record in records:
        if brute and record.method != "brute":
            slack = INVARIANT_SLACK + ACCURACY_TOL * brute[0]
            if record.accuracy + slack < brute[0]:
                problems.append(
                    f"{record.method} beats brute force at ell={record.ell}: "
                    f"{record.accuracy:.6g} < {brute[0]:.6g}"
                )
        if record.method in ("fd", "fd-fast"):
            bound = fd_bound(record.ell, c if record.method == "fd-fast" else 1.0, frob_sq)
            if record.accuracy > bound.bound + INVARIANT_SLACK:
                problems.append(
                    f"{record.method} exceeds its bound at ell={record.ell}: "
                    f"{record.accuracy:.6g} > {bound.bound:.6g}"
                )
    for problem in problems:
        logger.warning(problem)
    return problems


class BenchRunner:
    """
    基准测试执行器，负责遍历实验网格。

    每个 (d, ζ, 重复) 单元格生成一个输入矩阵，所有 ℓ 与所有方法共享该矩阵；
    单元格的种子由 base_seed 派生，精度结果与并行调度无关。

    Attributes:
        config: 实验网格配置
    """

    def __init__(self, config: Optional[BenchConfig] = None) -> None:
        """
        初始化BenchRunner对象。

        Args:
            config: 实验网格配置，缺省时使用默认的缩小网格
        """
        self.config = config or BenchConfig()

    def cells(self) -> List[Tuple[int, float, int]]:
        cfg = self.config
        return [
            (d, zeta, rep) for d in cfg.ds for zeta in cfg.zetas for rep in range(cfg.repetitions)
        ]

    def cell_seed(self, d: int, zeta: float, repetition: int) -> int:
        return derive_seed(self.config.base_seed, d, int(round(zeta * 1e6)), repetition)

    def run_cell(
        self, d: int, zeta: float, repetition: int
    ) -> Tuple[List[BenchRecord], List[BenchRecord]]:
        """
        执行一个单元格。

        Returns:
            (records, bounds): 各方法的记录与 FD 误差保证曲线
        """
        cfg = self.config
        if not cfg.methods:
            return [], []
        seed = self.cell_seed(d, zeta, repetition)
        a = generate(GenSpec(n=cfg.n, m=cfg.m, d=d, zeta=zeta, seed=seed))
        a_gram = gram(a)
        frob = frobenius_sq(a)
        records: List[BenchRecord] = []
        bounds: List[BenchRecord] = []
        for ell in cfg.ells:
            row_records = []
            for method in cfg.methods:
                sketcher = create_sketcher(
                    method,
                    ell,
                    cfg.m,
                    seed=derive_seed(seed, ell),
                    c=cfg.c,
                    solver=cfg.solver,
                )
                sketch, seconds = sketch_stream(sketcher, a)
                accuracy = measure_accuracy(a_gram, sketch)
                row_records.append(
                    BenchRecord(method, ell, d, zeta, seed, repetition, accuracy, seconds)
                )
                if method in ("fd", "fd-fast"):
                    c = cfg.c if method == "fd-fast" else 1.0
                    bounds.append(
                        BenchRecord(
                            f"{method}-bound",
                            ell,
                            d,
                            zeta,
                            seed,
                            repetition,
                            fd_bound(ell, c, frob).bound,
                            0.0,
                        )
                    )
            check_record_invariants(row_records, frob, cfg.c)
            records.extend(row_records)
        logger.info(
            "cell d=%d zeta=%g rep=%d done (%d records)", d, zeta, repetition, len(records)
        )
        return records, bounds

    def _safe_run_cell(self, cell: Tuple[int, float, int]):
        d, zeta, repetition = cell
        try:
            return self.run_cell(d, zeta, repetition)
        except Exception as e:
            logger.exception("cell d=%d zeta=%g rep=%d failed", d, zeta, repetition)
            return CellFailure(d, zeta, repetition, self.cell_seed(d, zeta, repetition), repr(e))

    def run(self) -> BenchResult:
        cells = self.cells()
        logger.info("running %d cells with %d worker(s)", len(cells), self.config.workers)
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                outcomes = list(pool.map(self._safe_run_cell, cells))
        else:
            outcomes = [self._safe_run_cell(cell) for cell in cells]
        result = BenchResult()
        for outcome in outcomes:
            if isinstance(outcome, CellFailure):
                result.failures.append(outcome)
            else:
                result.records.extend(outcome[0])
                result.bounds.extend(outcome[1])
        return result


def run_bench(config: Optional[BenchConfig] = None) -> BenchResult:
    """按配置运行整个实验网格，单元格失败不会中断其余单元格。"""
    return BenchRunner(config).run()


def records_frame(records: Iterable[BenchRecord]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in records], columns=RESULT_COLUMNS)


def aggregate_medians(result: BenchResult) -> pd.DataFrame:
    """
    对每个 (方法, ℓ, d, ζ) 取各次重复的中位数。

    取的是精度值的中位数，而不是中位数矩阵的精度；误差保证曲线以 *-bound 方法名一并输出。
    """
    frame = records_frame([*result.records, *result.bounds])
    if frame.empty:
        return pd.DataFrame(columns=[*GROUP_COLUMNS, "accuracy", "seconds", "repetitions"])
    return frame.groupby(GROUP_COLUMNS, as_index=False, sort=True).agg(
        accuracy=("accuracy", "median"),
        seconds=("seconds", "median"),
        repetitions=("repetition", "count"),
    )


def write_results(result: BenchResult, out_path: Union[str, Path]) -> Tuple[Path, Path]:
    """
    写出原始记录与中位数汇总两个 CSV。

    Args:
        result: 基准测试结果
        out_path: 原始记录的路径，汇总写到同目录下的 <stem>_median.csv

    Returns:
        (raw_path, median_path)
    """
    raw_path = Path(out_path)
    median_path = raw_path.with_name(f"{raw_path.stem}_median{raw_path.suffix or '.csv'}")
    records_frame(result.records).to_csv(raw_path, index=False)
    aggregate_medians(result).to_csv(median_path, index=False)
    logger.info("wrote %d records to %s and medians to %s", len(result.records), raw_path, median_path)
    return raw_path, median_path


def accuracy_from_stream(rows: Iterable, sketch: Matrix) -> Tuple[float, float]:
    """
    逐行累加 AᵀA 后计算草图精度，输入矩阵不会整体驻留内存。

    Returns:
        (accuracy, frob_sq): 精度与 ‖A‖_F²
    """
    a_gram: Optional[np.ndarray] = None
    frob = 0.0
    for row in rows:
        if a_gram is None:
            a_gram = np.zeros((row.shape[0], row.shape[0]))
        a_gram += np.outer(row, row)
        frob += float(row @ row)
    if a_gram is None:
        raise ValueError("input stream is empty")
    return measure_accuracy(a_gram, sketch), frob
