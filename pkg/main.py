import numpy as np

from frequent_directions import (
    FrequentDirections,
    GenSpec,
    MgCounter,
    create_sketcher,
    generate,
    measure_accuracy,
)
from frequent_directions.linalg import frobenius_sq, gram


def demo_frequent_items():
    # 指示向量流上，ℓ 行草图与 capacity = ℓ−1 的计数器结果一致
    rng = np.random.default_rng(7)
    stream = rng.choice(6, size=200, p=[0.4, 0.25, 0.15, 0.1, 0.05, 0.05])
    ell = 4
    fd = FrequentDirections(ell, 6)
    counter = MgCounter.for_sketch_rows(ell)
    for item in stream:
        fd.append(np.eye(6)[item])
        counter.update(int(item))
    sketch = fd.sketch()
    for item in range(6):
        g_fd = float(np.sum(sketch[:, item] ** 2))
        print(f"item {item}: 真实频率={np.sum(stream == item)}, FD={g_fd:.3f}, MG={counter.estimate(item):.3f}")


def compare_methods():
    a = generate(GenSpec(n=1000, m=100, d=10, zeta=10.0, seed=1))
    a_gram = gram(a)
    frob = frobenius_sq(a)
    ell = 30
    for method in ("fd", "fd-fast", "naive", "brute", "sample", "hash", "project"):
        sketcher = create_sketcher(method, ell, a.shape[1], seed=3)
        sketcher.extend(a)
        accuracy = measure_accuracy(a_gram, sketcher.finalize())
        print(f"{method:>8}: ‖AᵀA−BᵀB‖/‖A‖_F² = {accuracy / frob:.5f}")
    print(f"FD 精确模式保证: 1/ℓ = {1 / ell:.5f}")


def main():
    demo_frequent_items()
    compare_methods()


if __name__ == "__main__":
    main()
