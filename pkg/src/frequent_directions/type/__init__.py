from .bench import BenchRecord, BenchResult, CellFailure, FdBound
from .linalg import EighResult, SvdResult

__all__ = [
    "BenchRecord",
    "BenchResult",
    "CellFailure",
    "EighResult",
    "FdBound",
    "SvdResult",
]
