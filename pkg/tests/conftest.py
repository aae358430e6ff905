"""
Shared fixtures: the 2-D table a=(1,0), b=(0,1), c=(1,1)/sqrt(2).
"""

import math

import numpy as np
import pytest

from alignment_metrics import EmbeddingTable, MetricConfig, Segment

FIXTURE_ROWS = {
    "a": (1.0, 0.0),
    "b": (0.0, 1.0),
    "c": (1 / math.sqrt(2), 1 / math.sqrt(2)),
}

FIXTURE_TEXT = "3 2\n" + "".join(
    f"{token} {x!r} {y!r}\n" for token, (x, y) in FIXTURE_ROWS.items())


@pytest.fixture
def table():
    return EmbeddingTable(list(FIXTURE_ROWS), list(FIXTURE_ROWS.values()))


@pytest.fixture
def config():
    return MetricConfig(threshold=0.0)


def seg(*tokens):
    return Segment(tuple(tokens))


def random_table(rng, size=10, dimension=3):
    """Random table whose vectors may point anywhere, negatives included."""
    tokens = [f"w{i}" for i in range(size)]
    return EmbeddingTable(tokens, rng.normal(size=(size, dimension)))


def random_segment(rng, vocabulary, max_length=6, min_length=0):
    length = int(rng.integers(min_length, max_length + 1))
    return Segment(tuple(rng.choice(vocabulary, size=length)))


@pytest.fixture
def rng():
    return np.random.default_rng(20170705)
