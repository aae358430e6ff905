"""
Tests for AAS, MAS and HAS.
"""

import math
import time
from itertools import permutations

import numpy as np
import pytest

from alignment_metrics import (
    EmbeddingTable,
    Metric,
    MetricConfig,
    build_matrices,
    build_matrix,
    count_oov,
    score,
    score_aas,
    score_batch,
    score_has,
    score_mas,
    score_mas_asym,
    score_matrix,
    word_alignment,
    best_matches,
    word_similarity,
)

from .conftest import random_segment, random_table, seg

GRID = [round(0.1 * i, 1) for i in range(10)]
SQRT_HALF = 1 / math.sqrt(2)


def test_build_matrix(table, config):
    matrix = build_matrix(seg("a", "c"), seg("a", "b"), table, config)
    np.testing.assert_allclose(matrix.values, [[1, 0], [SQRT_HALF, SQRT_HALF]], atol=1e-12)
    cut = build_matrix(seg("a", "c"), seg("a", "b"), table, config.with_threshold(0.8))
    np.testing.assert_allclose(cut.thresholded_values, [[1, 0], [0, 0]], atol=1e-12)


def test_build_matrix_empty(table, config):
    assert build_matrix(seg(), seg("a"), table, config).values.shape == (0, 1)


def test_aas(table, config):
    x, y = seg("a", "c"), seg("a", "b")
    assert score_aas(x, y, table, config) == pytest.approx(0.60355, abs=1e-5)
    assert score_aas(x, y, table, config.with_threshold(0.8)) == pytest.approx(0.25, abs=1e-12)
    assert score_aas(seg("a"), seg("a"), table, config) == 1.0


def test_mas_asym(table, config):
    assert score_mas_asym(seg("a", "c"), seg("a", "b"), table, config) == pytest.approx(
        0.85355, abs=1e-5)
    assert score_mas_asym(seg("a", "b", "c"), seg("a", "b", "c"), table, config) == 1.0
    assert score_mas_asym(seg("a"), seg(), table, config.with_threshold(0.3)) == 0.0
    assert score_mas_asym(seg(), seg("a"), table, config) == 0.0


def test_mas(table, config):
    x, y = seg("a", "c"), seg("a", "b")
    assert score_mas(x, y, table, config) == pytest.approx(0.85355, abs=1e-5)
    assert score_mas(x, y, table, config) == score_mas(y, x, table, config)
    assert score_mas(seg("c", "a"), seg("c", "a"), table, config) == 1.0
    expected = (score_mas_asym(x, y, table, config) + score_mas_asym(y, x, table, config)) / 2
    assert score_mas(x, y, table, config) == pytest.approx(expected, abs=1e-12)


def test_has(table, config):
    assert score_has(seg("a", "c"), seg("a", "b"), table, config) == pytest.approx(
        0.85355, abs=1e-5)
    assert score_has(seg("a", "b"), seg("a", "b"), table, config) == 1.0
    assert score_has(seg("a"), seg("b"), table, config.with_threshold(0.5)) == 0.0


def test_empty_segments_score_zero(table, config):
    for metric in Metric:
        cfg = config.with_metric(metric)
        assert score(seg(), seg("a"), table, cfg) == 0.0
        assert score(seg("a"), seg(), table, cfg) == 0.0
        assert score(seg(), seg(), table, cfg) == 0.0


def test_word_similarity_oov(table, config):
    assert word_similarity("a", "a", table, config) == 1.0
    assert word_similarity("zxqv", "zxqv", table, config) == 1.0
    assert word_similarity("zxqv", "a", table, config) == 0.0
    zero = MetricConfig(oov_policy="zero")
    assert word_similarity("zxqv", "zxqv", table, zero) == 0.0
    assert word_similarity("zxqv", "a", table, zero) == 0.0


def test_oov_in_matrix(table):
    """Surface policy scores identical OOV strings 1; zero policy scores them 0."""
    x, y = seg("Paris", "a"), seg("a", "Paris")
    surface = build_matrix(x, y, table, MetricConfig())
    zero = build_matrix(x, y, table, MetricConfig(oov_policy="zero"))
    np.testing.assert_allclose(surface.values, [[0, 1], [1, 0]])
    np.testing.assert_allclose(zero.values, [[0, 0], [1, 0]])


def test_lowercase_fallback(table):
    x, y = seg("A"), seg("c")
    assert score_mas(x, y, table, MetricConfig()) == 0.0
    assert score_mas(x, y, table, MetricConfig(lowercase_fallback=True)) == pytest.approx(
        SQRT_HALF)
    assert count_oov(x, table) == 1
    assert count_oov(x, table, fallback_lowercase=True) == 0


def test_negative_similarities_are_cut():
    table = EmbeddingTable(["up", "down"], [[1.0, 0.0], [-1.0, 0.0]])
    matrix = build_matrix(seg("up"), seg("down"), table, MetricConfig())
    assert matrix.values[0, 0] == -1.0
    assert matrix.thresholded_values[0, 0] == 0.0


def test_threshold_is_inclusive(table):
    """A pair exactly at the threshold survives."""
    x, y = seg("a"), seg("a")
    assert score_aas(x, y, table, MetricConfig(threshold=1.0)) == 1.0


def test_config_validation():
    with pytest.raises(ValueError):
        MetricConfig(threshold=1.5)
    with pytest.raises(ValueError):
        MetricConfig(threshold=-0.1)
    with pytest.raises(ValueError):
        MetricConfig(metric="xyz")
    assert MetricConfig(metric="HAS").metric is Metric.HAS


def test_properties(rng):
    """Symmetry, range, AAS <= MAS and monotonicity in the threshold on 500 random pairs."""
    table = random_table(rng)
    vocabulary = list(table.tokens) + ["oov1", "oov2"]
    for _ in range(500):
        x = random_segment(rng, vocabulary)
        y = random_segment(rng, vocabulary)
        previous = None
        for theta in GRID:
            config = MetricConfig(threshold=theta)
            aas = score_aas(x, y, table, config)
            mas = score_mas(x, y, table, config)
            has = score_has(x, y, table, config)
            assert aas == score_aas(y, x, table, config)
            assert mas == score_mas(y, x, table, config)
            assert has == score_has(y, x, table, config)
            for value in (aas, mas, has):
                assert 0.0 <= value <= 1.0
            assert aas <= mas + 1e-12
            if previous is not None:
                for before, after in zip(previous, (aas, mas, has)):
                    assert after <= before + 1e-12
            previous = (aas, mas, has)


def brute_force_has(x, y, table, config):
    if len(x) == 0 or len(y) == 0:
        return 0.0

    def weight(a, b):
        value = word_similarity(a, b, table, config)
        return 0.0 if value < config.threshold else value

    short, long_ = (x, y) if len(x) <= len(y) else (y, x)
    best = max(sum(weight(short[i], long_[j]) for i, j in enumerate(perm))
               for perm in permutations(range(len(long_)), len(short)))
    return best / len(short)


def test_has_matches_brute_force(rng):
    """HAS equals exhaustive maximization over injective alignments on 200 random pairs."""
    table = random_table(rng, size=10, dimension=4)
    vocabulary = list(table.tokens)
    for _ in range(200):
        x = random_segment(rng, vocabulary, max_length=6, min_length=1)
        y = random_segment(rng, vocabulary, max_length=6, min_length=1)
        config = MetricConfig(threshold=float(rng.choice(GRID + [1.0])))
        assert score_has(x, y, table, config) == pytest.approx(
            brute_force_has(x, y, table, config), abs=1e-9)


def test_word_similarity_matches_matrix(rng):
    """Every matrix entry equals word_similarity of its word pair exactly."""
    table = EmbeddingTable([f"w{i}" for i in range(50)], rng.normal(size=(50, 300)))
    vocabulary = list(table.tokens) + ["oov"]
    config = MetricConfig()
    for token in table.tokens:
        assert word_similarity(token, token, table, config) == 1.0
    for _ in range(50):
        x = random_segment(rng, vocabulary, min_length=1)
        y = random_segment(rng, vocabulary, min_length=1)
        values = build_matrix(x, y, table, config).values
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                assert values[i, j] == word_similarity(a, b, table, config)


def test_identical_words_survive_top_threshold(rng):
    """At threshold 1.0 identical words still count, in word_similarity and in HAS."""
    table = EmbeddingTable([f"w{i}" for i in range(20)], rng.normal(size=(20, 300)))
    config = MetricConfig(metric="has", threshold=1.0)
    x = seg("w3", "w7", "w11")
    for token in x:
        assert word_similarity(token, token, table, config) >= config.threshold
    assert score_has(x, x, table, config) == 1.0
    assert brute_force_has(x, x, table, config) == 1.0


def test_identical_segments(rng):
    table = random_table(rng)
    for _ in range(50):
        x = random_segment(rng, list(table.tokens), min_length=1)
        assert score_mas(x, x, table, MetricConfig()) == 1.0
        assert score_has(x, x, table, MetricConfig()) == 1.0


def test_scale_invariance(rng):
    """Scaling embedding vectors by positive constants leaves every score unchanged."""
    table = random_table(rng)
    scaled = EmbeddingTable(table.tokens,
                            table.vectors * rng.uniform(0.1, 10.0, size=(len(table), 1)))
    vocabulary = list(table.tokens)
    for _ in range(100):
        x = random_segment(rng, vocabulary)
        y = random_segment(rng, vocabulary)
        for metric in Metric:
            config = MetricConfig(metric=metric, threshold=0.3)
            assert score(x, y, scaled, config) == pytest.approx(
                score(x, y, table, config), abs=1e-9)


def test_rethresholding_matches_direct_scoring(rng):
    """Scoring a threshold-0 matrix at theta equals scoring at theta directly."""
    table = random_table(rng)
    vocabulary = list(table.tokens)
    pairs = [(random_segment(rng, vocabulary), random_segment(rng, vocabulary))
             for _ in range(50)]
    matrices = build_matrices(pairs, table, MetricConfig())
    for metric in Metric:
        for theta in GRID:
            config = MetricConfig(metric=metric, threshold=theta)
            direct = score_batch(pairs, table, config)
            swept = [score_matrix(matrix, metric, theta) for matrix in matrices]
            assert direct.tolist() == swept


def test_batch_order_and_workers(rng):
    table = random_table(rng)
    vocabulary = list(table.tokens)
    pairs = [(random_segment(rng, vocabulary), random_segment(rng, vocabulary))
             for _ in range(40)]
    config = MetricConfig(metric="has", threshold=0.1)
    serial = score_batch(pairs, table, config)
    parallel = score_batch(pairs, table, config, workers=4)
    assert serial.tolist() == parallel.tolist()
    assert serial.tolist() == [score(x, y, table, config) for x, y in pairs]


def test_word_alignment(table, config):
    links = word_alignment(seg("a", "c"), seg("a", "b"), table, config)
    assert [(link.hyp_index, link.ref_index) for link in links] == [(0, 0), (1, 1)]
    assert links[1].similarity == pytest.approx(SQRT_HALF)
    assert word_alignment(seg(), seg("a"), table, config) == []


def test_best_matches(table, config):
    links = best_matches(seg("a", "c"), seg("a", "b"), table, config)
    assert [(link.hyp_index, link.ref_index) for link in links] == [(0, 0), (1, 0)]


def test_mas_throughput(rng):
    """10,000 pairs of ~20 words with 300-dimensional vectors score in under 60 s."""
    table = EmbeddingTable([f"w{i}" for i in range(2000)], rng.normal(size=(2000, 300)))
    vocabulary = list(table.tokens)
    pairs = [(random_segment(rng, vocabulary, 24, 16), random_segment(rng, vocabulary, 24, 16))
             for _ in range(10000)]
    start = time.perf_counter()
    scores = score_batch(pairs, table, MetricConfig(metric="mas", threshold=0.2))
    assert time.perf_counter() - start < 60
    assert len(scores) == 10000


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
