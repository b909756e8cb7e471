"""Training the neuron bank and reading its decisions.

Each class owns one neuron. Training adds input * target to its weights;
a pattern is recognized only when exactly one neuron has the top score and
that score is positive.

Run: python demos/02_hebb_training.py
"""

import numpy as np

from hebbocr import Regime, TrainingSample, classify, init_zero, train
from hebbocr.kbstore import diff_kb, dumps_kb, format_diff, loads_kb

# %% Two tiny 2-pixel classes, trained one-vs-rest
samples = [TrainingSample("A", np.array([1, 1])), TrainingSample("B", np.array([1, -1]))]
kb = train(init_zero(["A", "B"], 2), samples)
for n in kb.neurons:
    print(f"neuron {n.label}: weights {n.weights.tolist()} bias {n.bias}")

for probe in ([1, 1], [1, -1], [-1, 1], [-1, -1]):
    d = classify(kb, probe)
    print(f"probe {probe}: scores {d.net_inputs} -> {d.label or 'unrecognized'}")
print()

# %% Orthogonal patterns: 52 rows of a Hadamard matrix, one per letter
h = np.array([[1]])
while len(h) < 64:
    h = np.block([[h, h], [h, -h]])
letters = [chr(c) for c in range(65, 91)] + [chr(c) for c in range(97, 123)]
bank = [TrainingSample(l, h[i]) for i, l in enumerate(letters)]
for regime in Regime:
    kb52 = train(init_zero(letters, 64, regime), bank)
    d = classify(kb52, h[0])
    others = sorted({v for k, v in d.net_inputs.items() if k != d.label})
    print(f"{regime.value}: 'A' scores {d.net_inputs['A']}, others {others} -> {d.label}")
print()

# %% More epochs only scale the weights; decisions do not change
kb3 = train(init_zero(letters, 64), bank, epochs=3)
kb1 = train(init_zero(letters, 64), bank)
same = all(classify(kb1, v).label == classify(kb3, v).label for v in h[:52])
print("3 epochs == 3 x 1 epoch:", np.array_equal(3 * kb1.weight_matrix(), kb3.weight_matrix()))
print("same decisions:", same)

# %% Saved knowledge bases are plain text with a checksum; compare them with diff_kb
text = dumps_kb(kb)
print(text.decode())
assert loads_kb(text) == kb
print(format_diff(diff_kb(kb1, kb3))[:200], "...")
