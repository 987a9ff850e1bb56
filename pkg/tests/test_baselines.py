import numpy as np
import pytest

from frequent_directions.baselines import (
    METHODS,
    BruteForceSketcher,
    HashingSketcher,
    NaiveSketcher,
    RandomProjectionSketcher,
    SamplingSketcher,
    create_sketcher,
)
from frequent_directions.fd import FrequentDirections
from frequent_directions.linalg import frobenius_sq
from frequent_directions.utils import ShapeError

RANDOMIZED = ("sample", "hash", "project")


def _gram(b):
    return b.T @ b


def _finalize(method, a, ell, seed=0, **kwargs):
    sketcher = create_sketcher(method, ell, a.shape[1], seed=seed, **kwargs)
    sketcher.extend(a)
    return sketcher.finalize()


@pytest.mark.parametrize("method", METHODS)
def test_output_shape(tall_matrix, method):
    assert _finalize(method, tall_matrix, 7, seed=3).shape == (7, tall_matrix.shape[1])


def test_factory_types():
    assert isinstance(create_sketcher("fd", 4, 3), FrequentDirections)
    assert create_sketcher("fd-fast", 6, 3, c=0.5).shrink_rank_index == 3
    assert isinstance(create_sketcher("naive", 4, 3), NaiveSketcher)
    assert isinstance(create_sketcher("brute", 4, 3), BruteForceSketcher)
    assert isinstance(create_sketcher("sample", 4, 3), SamplingSketcher)
    assert isinstance(create_sketcher("hash", 4, 3), HashingSketcher)
    assert isinstance(create_sketcher("project", 4, 3), RandomProjectionSketcher)
    with pytest.raises(ValueError):
        create_sketcher("svd", 4, 3)


@pytest.mark.parametrize("method", METHODS)
def test_method_names_match_factory(method):
    assert create_sketcher(method, 4, 3).method == method


@pytest.mark.parametrize("method", RANDOMIZED)
def test_deterministic_given_seed(tall_matrix, method):
    first = _finalize(method, tall_matrix, 6, seed=42)
    second = _finalize(method, tall_matrix, 6, seed=42)
    assert np.array_equal(first, second)
    assert not np.array_equal(first, _finalize(method, tall_matrix, 6, seed=43))


@pytest.mark.parametrize("method", METHODS)
def test_append_validates_rows(method):
    sketcher = create_sketcher(method, 3, 4)
    with pytest.raises(ShapeError):
        sketcher.append(np.ones(3))


def test_naive_accuracy_is_top_singular_value(tall_matrix):
    b = _finalize("naive", tall_matrix, 5)
    assert not b.any()
    expected = np.linalg.svd(tall_matrix, compute_uv=False)[0] ** 2
    residual = tall_matrix.T @ tall_matrix - b.T @ b
    assert np.linalg.norm(residual, 2) == pytest.approx(expected, rel=1e-9)


def test_sampling_single_nonzero_row(rng):
    a = np.zeros((12, 5))
    a[7] = rng.standard_normal(5)
    b = _finalize("sample", a, 4, seed=9)
    expected_row = a[7] * np.sqrt(frobenius_sq(a) / 4) / np.linalg.norm(a[7])
    for row in b:
        np.testing.assert_allclose(row, expected_row, rtol=1e-12)
    np.testing.assert_allclose(b.T @ b, a.T @ a, rtol=1e-12, atol=1e-12)


def test_sampling_all_zero_stream():
    b = _finalize("sample", np.zeros((5, 3)), 4, seed=1)
    assert not b.any()


def test_hashing_single_row(rng):
    row = rng.standard_normal((1, 6))
    b = _finalize("hash", row, 4, seed=5)
    assert np.count_nonzero(np.abs(b).sum(axis=1)) == 1
    np.testing.assert_allclose(b.T @ b, row.T @ row, rtol=1e-12)


def test_projection_single_row(rng):
    row = rng.standard_normal((1, 6))
    b = _finalize("project", row, 9, seed=5)
    np.testing.assert_allclose(np.abs(b), np.abs(row).repeat(9, axis=0) / 3.0, rtol=1e-12)
    np.testing.assert_allclose(b.T @ b, row.T @ row, rtol=1e-12)


def test_explicit_index_matches_stream_position(rng):
    rows = rng.standard_normal((6, 4))
    implicit = HashingSketcher(8, 4, seed=1)
    implicit.extend(rows)
    explicit = HashingSketcher(8, 4, seed=1)
    for i, row in enumerate(rows):
        explicit.append(row, index=i)
    assert np.array_equal(implicit.finalize(), explicit.finalize())


@pytest.mark.parametrize("solver", ["jacobi", "lapack"])
def test_brute_force_is_optimal(tall_matrix, solver):
    ell = 6
    b = _finalize("brute", tall_matrix, ell, solver=solver)
    sigma = np.linalg.svd(tall_matrix, compute_uv=False)
    residual = tall_matrix.T @ tall_matrix - b.T @ b
    assert np.linalg.norm(residual, 2) == pytest.approx(sigma[ell] ** 2, rel=1e-6)
    for method in ("fd", "fd-fast", "naive", *RANDOMIZED):
        other = _finalize(method, tall_matrix, ell, seed=2)
        other_norm = np.linalg.norm(tall_matrix.T @ tall_matrix - other.T @ other, 2)
        assert other_norm >= sigma[ell] ** 2 - 1e-9 * frobenius_sq(tall_matrix)


def test_brute_force_recovers_low_rank(with_spectrum):
    a = with_spectrum([4.0, 2.0, 1.0, 0.5], 40, 10, seed=2)
    b = _finalize("brute", a, 4)
    residual = a.T @ a - b.T @ b
    assert np.linalg.norm(residual, 2) <= 1e-7 * frobenius_sq(a)


def test_brute_force_with_more_rows_than_columns(rng):
    a = rng.standard_normal((20, 3))
    b = _finalize("brute", a, 5)
    assert not b[3:].any()
    np.testing.assert_allclose(b.T @ b, a.T @ a, atol=1e-9 * frobenius_sq(a))


@pytest.mark.parametrize("method", RANDOMIZED)
def test_unbiased(method):
    a = np.random.default_rng(8).standard_normal((200, 20))
    target = a.T @ a
    grams = np.stack([_gram(_finalize(method, a, 10, seed=seed)) for seed in range(200)])
    mean = grams.mean(axis=0)
    stderr = grams.std(axis=0, ddof=1) / np.sqrt(len(grams))
    upper = np.triu_indices(20)
    z = np.abs(mean - target)[upper] / np.maximum(stderr[upper], 1e-12)
    assert np.mean(z <= 4.0) >= 0.99
    assert z.max() < 6.0
