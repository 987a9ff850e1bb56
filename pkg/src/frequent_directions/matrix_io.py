import logging
import struct
from pathlib import Path
from typing import Iterator, Literal, Optional, Union

import numpy as np

from .linalg import Matrix, as_matrix
from .utils import MatrixFormatError

logger = logging.getLogger(__name__)

MAGIC = b"FDMX"
VERSION = 1
# magic, version u32, n u64, m u64，小端
HEADER = struct.Struct("<4sIQQ")
_ROW_DTYPE = np.dtype("<f8")

Format = Literal["binary", "csv"]


def infer_format(path: Union[str, Path]) -> Format:
    """按后缀选择写出格式：.csv 为 CSV，其余为二进制。"""
    return "csv" if Path(path).suffix.lower() == ".csv" else "binary"


def write_matrix(
    matrix: Matrix, out_path: Union[str, Path], fmt: Optional[Format] = None
) -> Path:
    """
    将矩阵写入文件。

    二进制格式：magic "FDMX"、版本号 u32 = 1、n u64、m u64，随后是按行存放的
    n·m 个小端 binary64；CSV 格式：每行一条记录，逗号分隔，无表头，保留 17 位有效数字
    以便读回后逐位一致。

    Args:
        matrix: 待写入的矩阵
        out_path: 输出文件路径
        fmt: "binary" 或 "csv"，缺省时按后缀推断

    Returns:
        Path: 输出文件路径
    """
    mat = as_matrix(matrix)
    target = Path(out_path)
    fmt = fmt or infer_format(target)
    if fmt == "csv":
        with open(target, "w", encoding="utf-8") as f:
            np.savetxt(f, mat, delimiter=",", fmt="%.17g")
    elif fmt == "binary":
        with open(target, "wb") as f:
            f.write(HEADER.pack(MAGIC, VERSION, mat.shape[0], mat.shape[1]))
            f.write(np.ascontiguousarray(mat, dtype=_ROW_DTYPE).tobytes())
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
    logger.info("wrote %dx%d matrix to %s", mat.shape[0], mat.shape[1], target)
    return target


def _stream_binary(f, path: Path) -> Iterator[np.ndarray]:
    header = f.read(HEADER.size)
    if len(header) < HEADER.size:
        raise MatrixFormatError(f"{path}: truncated header")
    magic, version, n, m = HEADER.unpack(header)
    if magic != MAGIC:
        raise MatrixFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise MatrixFormatError(f"{path}: unsupported version {version}")
    if n == 0 or m == 0:
        raise MatrixFormatError(f"{path}: empty matrix ({n}x{m})")
    width = m * _ROW_DTYPE.itemsize
    for i in range(n):
        buf = f.read(width)
        if len(buf) < width:
            raise MatrixFormatError(f"{path}: truncated at row {i} of {n}")
        yield np.frombuffer(buf, dtype=_ROW_DTYPE).astype(np.float64)
    if f.read(1):
        raise MatrixFormatError(f"{path}: trailing bytes after {n} rows")


def _stream_csv(path: Path) -> Iterator[np.ndarray]:
    width = None
    count = 0
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = np.array([float(v) for v in line.split(",")], dtype=np.float64)
            except ValueError as e:
                raise MatrixFormatError(f"{path}:{lineno}: {e}") from e
            if width is None:
                width = row.shape[0]
            elif row.shape[0] != width:
                raise MatrixFormatError(
                    f"{path}:{lineno}: expected {width} values, got {row.shape[0]}"
                )
            count += 1
            yield row
    if count == 0:
        raise MatrixFormatError(f"{path}: no rows")


def stream_rows(in_path: Union[str, Path]) -> Iterator[np.ndarray]:
    """
    逐行读取矩阵文件，整个矩阵从不同时驻留内存。

    通过文件开头的 magic 区分二进制与 CSV。

    Args:
        in_path: 矩阵文件路径

    Yields:
        np.ndarray: 每次一行

    Raises:
        MatrixFormatError: 如果文件为空、被截断或格式不合法
        OSError: 如果文件无法打开
    """
    path = Path(in_path)
    with open(path, "rb") as f:
        magic = f.read(len(MAGIC))
        if not magic:
            raise MatrixFormatError(f"{path}: empty file")
        if magic == MAGIC:
            f.seek(0)
            yield from _stream_binary(f, path)
            return
    yield from _stream_csv(path)


def read_matrix(in_path: Union[str, Path]) -> Matrix:
    """读取整个矩阵文件（二进制或 CSV）。"""
    rows = list(stream_rows(in_path))
    if not rows:
        raise MatrixFormatError(f"{in_path}: no rows")
    return as_matrix(np.vstack(rows))
