import tracemalloc

import numpy as np
import pandas as pd
import pytest

from frequent_directions.cli import build_parser, main
from frequent_directions.datagen import GenSpec, generate
from frequent_directions.matrix_io import read_matrix, write_matrix


def _gen(tmp_path, name="a.bin"):
    out = tmp_path / name
    argv = ["gen", "--n", "60", "--m", "9", "--d", "3", "--zeta", "5", "--seed", "4"]
    assert main([*argv, "--out", str(out)]) == 0
    return out


def test_gen_writes_the_generated_matrix(tmp_path):
    out = _gen(tmp_path)
    expected = generate(GenSpec(n=60, m=9, d=3, zeta=5.0, seed=4))
    assert np.array_equal(read_matrix(out), expected)


def test_gen_csv_by_suffix(tmp_path):
    out = _gen(tmp_path, "a.csv")
    assert out.read_text().count("\n") == 60


@pytest.mark.parametrize("method", ["fd", "fd-fast", "brute", "hash"])
def test_sketch_then_accuracy(tmp_path, capsys, method):
    matrix = _gen(tmp_path)
    sketch = tmp_path / f"{method}.csv"
    argv = ["sketch", "--method", method, "--ell", "4", "--in", str(matrix), "--out", str(sketch)]
    assert main(argv) == 0
    assert read_matrix(sketch).shape == (4, 9)

    capsys.readouterr()
    assert main(["accuracy", "--in", str(matrix), "--sketch", str(sketch)]) == 0
    lines = dict(line.split("=") for line in capsys.readouterr().out.split())
    assert set(lines) == {"accuracy", "frob_sq", "relative"}
    a = read_matrix(matrix)
    assert float(lines["frob_sq"]) == pytest.approx(np.sum(a**2), rel=1e-9)
    if method == "fd":
        assert float(lines["relative"]) <= 1.0 / 4.0


@pytest.mark.slow
def test_sketch_streams_its_input(tmp_path, rng):
    n, m, ell = 20000, 50, 10
    matrix = write_matrix(rng.standard_normal((n, m)), tmp_path / "big.bin")
    argv = ["sketch", "--method", "fd-fast", "--ell", str(ell), "--solver", "lapack"]
    tracemalloc.start()
    try:
        assert main([*argv, "--in", str(matrix), "--out", str(tmp_path / "b.bin")]) == 0
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert peak < n * m * 8 / 10
    assert read_matrix(tmp_path / "b.bin").shape == (ell, m)


def test_sketch_reports_bad_input(tmp_path, capsys):
    empty = tmp_path / "empty.bin"
    empty.write_bytes(b"")
    argv = ["sketch", "--ell", "3", "--in", str(empty), "--out", str(tmp_path / "s.bin")]
    assert main(argv) == 2
    assert "empty file" in capsys.readouterr().err


def test_missing_input_file(tmp_path, capsys):
    argv = ["accuracy", "--in", str(tmp_path / "nope"), "--sketch", str(tmp_path / "s")]
    assert main(argv) == 2
    assert "fdsketch accuracy:" in capsys.readouterr().err


def test_unknown_method_is_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(
            ["sketch", "--method", "svd", "--ell", "3", "--in", "a", "--out", "b"]
        )


def test_bench_with_grid_file(tmp_path):
    grid = tmp_path / "grid.cfg"
    grid.write_text(
        "n=40\nm=8\nells=3,6\nds=2\nzetas=2\nmethods=fd-fast,brute,sample\nrepetitions=2\n",
        encoding="utf-8",
    )
    out = tmp_path / "results.csv"
    argv = ["bench", "--grid", str(grid), "--out", str(out), "--workers", "2", "--solver", "lapack"]
    assert main(argv) == 0
    raw = pd.read_csv(out)
    assert list(raw.columns) == [
        "method", "ell", "d", "zeta", "seed", "repetition", "accuracy", "seconds"
    ]
    assert len(raw) == 2 * 2 * 3
    medians = pd.read_csv(tmp_path / "results_median.csv")
    assert "fd-fast-bound" in set(medians["method"])


def test_bench_rejects_bad_grid(tmp_path, capsys):
    grid = tmp_path / "grid.cfg"
    grid.write_text("colour=blue\n", encoding="utf-8")
    assert main(["bench", "--grid", str(grid), "--out", str(tmp_path / "r.csv")]) == 2
    assert "colour" in capsys.readouterr().err
