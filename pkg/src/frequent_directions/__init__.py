from .baselines import (
    METHODS,
    BruteForceSketcher,
    HashingSketcher,
    NaiveSketcher,
    RandomProjectionSketcher,
    SamplingSketcher,
    create_sketcher,
)
from .bench import BenchRunner, measure_accuracy, run_bench
from .config import BenchConfig, load_config
from .datagen import GenSpec, generate
from .fd import FrequentDirections, merge_sketches, parallel_sketch
from .freq_items import MgCounter
from .mix import MixSketcher

__all__ = [
    "METHODS",
    "BenchConfig",
    "BenchRunner",
    "BruteForceSketcher",
    "FrequentDirections",
    "GenSpec",
    "HashingSketcher",
    "MgCounter",
    "MixSketcher",
    "NaiveSketcher",
    "RandomProjectionSketcher",
    "SamplingSketcher",
    "create_sketcher",
    "generate",
    "load_config",
    "measure_accuracy",
    "merge_sketches",
    "parallel_sketch",
    "run_bench",
]
__version__ = "0.1.0"
