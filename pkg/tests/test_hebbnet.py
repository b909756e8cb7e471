import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hebbocr.errors import DimensionMismatch, UnknownLabel
from hebbocr.hebbnet import (
    ClusterNeuron,
    Regime,
    TrainingSample,
    classify,
    hebb_update,
    init_zero,
    net_input,
    train,
    train_epoch,
)
from hebbocr.labels import LABELS

from .oracles import brute_force_scores, brute_force_weights, hadamard, random_instance


def neuron(weights, bias=0, label="A"):
    return ClusterNeuron(label, np.array(weights, dtype=np.int64), bias)


class TestInitZero:
    def test_single(self):
        kb = init_zero(["A"], 4)
        assert kb.labels == ("A",)
        assert kb.neuron("A").weights.tolist() == [0, 0, 0, 0]
        assert kb.neuron("A").bias == 0
        assert kb.epochs_trained == 0

    def test_two(self):
        kb = init_zero(["B", "A"], 2)
        assert kb.labels == ("A", "B")
        assert all(n.weights.tolist() == [0, 0] for n in kb.neurons)

    def test_duplicate(self):
        with pytest.raises(ValueError):
            init_zero(["A", "A"], 2)

    def test_non_letter(self):
        with pytest.raises(UnknownLabel):
            init_zero(["7"], 2)


class TestHebbUpdate:
    def test_from_zero(self):
        n = hebb_update(neuron([0, 0, 0]), [1, -1, 1], 1)
        assert n.weights.tolist() == [1, -1, 1] and n.bias == 1

    def test_negative_target(self):
        n = hebb_update(neuron([0, 0, 0]), [1, -1, 1], -1)
        assert n.weights.tolist() == [-1, 1, -1] and n.bias == -1

    def test_two_steps(self):
        n = hebb_update(neuron([0, 0, 0]), [1, -1, 1], 1)
        n = hebb_update(n, [1, 1, -1], -1)
        assert n.weights.tolist() == [0, -2, 2] and n.bias == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            hebb_update(neuron([0, 0]), [1, 1, 1], 1)


class TestTraining:
    def test_positive_only_single(self):
        kb = init_zero(["A"], 3, Regime.POSITIVE_ONLY)
        kb = train_epoch(kb, [TrainingSample("A", np.array([1, -1, -1]))])
        assert kb.neuron("A").weights.tolist() == [1, -1, -1]
        assert kb.neuron("A").bias == 1

    def test_one_vs_rest_pair(self):
        kb = init_zero(["A", "B"], 2)
        samples = [TrainingSample("A", np.array([1, 1])), TrainingSample("B", np.array([1, -1]))]
        kb1 = train_epoch(kb, samples)
        assert kb1.neuron("A").weights.tolist() == [0, 2] and kb1.neuron("A").bias == 0
        assert kb1.neuron("B").weights.tolist() == [0, -2] and kb1.neuron("B").bias == 0
        kb3 = train(kb, samples, epochs=3)
        assert kb3.neuron("A").weights.tolist() == [0, 6]
        assert kb3.epochs_trained == 3
        assert train(kb, samples, epochs=1) == kb1

    def test_empty_epoch(self):
        kb = init_zero(["A", "B"], 2)
        kb1 = train_epoch(kb, [])
        assert kb1.epochs_trained == 1
        assert kb1.neurons == kb.neurons

    def test_unknown_label(self):
        kb = init_zero(["A"], 2)
        with pytest.raises(UnknownLabel):
            train_epoch(kb, [TrainingSample("B", np.array([1, 1]))])

    def test_dimension(self):
        kb = init_zero(["A"], 2)
        with pytest.raises(DimensionMismatch):
            train_epoch(kb, [TrainingSample("A", np.array([1, 1, 1]))])

    def test_training_does_not_mutate(self):
        kb = init_zero(["A"], 2)
        train_epoch(kb, [TrainingSample("A", np.array([1, 1]))])
        assert kb.neuron("A").weights.tolist() == [0, 0]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(list(Regime)), st.integers(1, 4))
    def test_closed_form(self, seed, regime, epochs):
        labels, n, samples = random_instance(np.random.default_rng(seed))
        kb = train(init_zero(labels, n, regime), samples, epochs)
        expected = brute_force_weights(labels, samples, regime, n)
        for label in labels:
            w, b = expected[label]
            got = kb.neuron(label)
            assert got.weights.tolist() == [epochs * v for v in w]
            assert got.bias == epochs * b
            assert all(isinstance(v, int) for v in got.weights.tolist())

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(list(Regime)), st.randoms())
    def test_order_independent(self, seed, regime, rnd):
        labels, n, samples = random_instance(np.random.default_rng(seed))
        shuffled = list(samples)
        rnd.shuffle(shuffled)
        kb = init_zero(labels, n, regime)
        assert train(kb, samples, 2) == train(kb, shuffled, 2)


class TestScoring:
    def test_zero_neuron(self):
        assert net_input(neuron([0, 0, 0]), [1, -1, 1]) == 0

    def test_self_correlation(self):
        x = np.array([1, -1, -1, 1, 1])
        assert net_input(neuron(x), x) == 5

    def test_dot(self):
        assert net_input(neuron([0, 2]), [1, -1]) == -2

    def test_zero_kb_rejects(self):
        d = classify(init_zero(["A", "B"], 3), [1, 1, 1])
        assert not d.recognized
        assert d.net_inputs == {"A": 0, "B": 0}

    def test_tie_rejects(self):
        kb = init_zero(["A", "B"], 2, Regime.POSITIVE_ONLY)
        x = np.array([1, -1])
        kb = train(kb, [TrainingSample("A", x), TrainingSample("B", x)])
        d = classify(kb, x)
        assert d.label is None and d.net_inputs == {"A": 3, "B": 3}

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            classify(init_zero(["A"], 2), [1, 1, 1])

    @pytest.mark.parametrize("regime", list(Regime))
    def test_orthogonal_recall(self, regime):
        h = hadamard(64)[:52]
        samples = [TrainingSample(l, h[i]) for i, l in enumerate(LABELS)]
        kb = train(init_zero(LABELS, 64, regime), samples)
        for i, label in enumerate(LABELS):
            d = classify(kb, h[i])
            assert d.label == label
            assert d.net_inputs == brute_force_scores(kb, h[i])
            if regime is Regime.ONE_VS_REST:
                assert d.net_inputs[label] == 14
                assert {v for k, v in d.net_inputs.items() if k != label} == {-114}
            else:
                assert d.net_inputs[label] == 65
                assert {v for k, v in d.net_inputs.items() if k != label} == {1}

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(list(Regime)))
    def test_never_recognizes_nonpositive(self, seed, regime):
        rng = np.random.default_rng(seed)
        labels, n, samples = random_instance(rng)
        kb = train(init_zero(labels, n, regime), samples)
        for _ in range(10):
            d = classify(kb, rng.choice([-1, 1], n))
            if d.recognized:
                top = d.net_inputs[d.label]
                assert top > 0
                assert all(v < top for k, v in d.net_inputs.items() if k != d.label)
