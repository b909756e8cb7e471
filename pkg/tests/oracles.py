"""Independent reference computations used by the tests.

Nothing here touches numpy linear algebra or the package's training code.
"""

import numpy as np

from hebbocr.hebbnet import Regime, TrainingSample
from hebbocr.labels import LABELS


def hadamard(n):
    """Sylvester construction; rows are mutually orthogonal +/-1 vectors."""
    h = [[1]]
    while len(h) < n:
        h = [row + row for row in h] + [row + [-v for v in row] for row in h]
    return np.array(h, dtype=np.int8)


def target(regime, own, label):
    if own == label:
        return 1
    return -1 if regime is Regime.ONE_VS_REST else 0


def brute_force_weights(labels, samples, regime, n):
    """label -> (weights list, bias) from one epoch, by explicit summation."""
    out = {}
    for k in labels:
        w = [0] * n
        b = 0
        for s in samples:
            t = target(regime, k, s.label)
            for i in range(n):
                w[i] += t * int(s.input[i])
            b += t
        out[k] = (w, b)
    return out


def random_instance(rng, max_n=64, max_classes=10, max_samples=20):
    n = int(rng.integers(1, max_n + 1))
    k = int(rng.integers(1, max_classes + 1))
    labels = [str(l) for l in rng.choice(LABELS, k, replace=False)]
    count = int(rng.integers(0, max_samples + 1))
    samples = [
        TrainingSample(labels[int(rng.integers(k))], rng.choice(np.array([-1, 1], np.int8), n))
        for _ in range(count)
    ]
    return labels, n, samples


def brute_force_scores(kb, x):
    return {
        n.label: n.bias + sum(int(w) * int(v) for w, v in zip(n.weights, x))
        for n in kb.neurons
    }
