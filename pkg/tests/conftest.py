"""Fixtures compartidas: muestras de ejemplo, descomposición de referencia y muestras aleatorias"""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT_DIR = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT_DIR))

from core.base.automata_base import Decomposition, Dfa  # noqa: E402
from core.base.samples_base import Alphabet, LabeledSamples  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: suites de propiedades sobre muchas instancias aleatorias")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def toy_samples() -> LabeledSamples:
    """S+ = {aab, aaa, ab}, S- = {b, aba}"""
    return LabeledSamples.from_strings(['aab', 'aaa', 'ab'], ['b', 'aba'], alphabet=('a', 'b'))


def first_dfa() -> Dfa:
    # q0 -b-> q0, q0 -a-> q1, q1 absorbente y de aceptación
    return Dfa(num_states=2, delta=((2, 1), (2, 2)), accepting={2})


def second_dfa() -> Dfa:
    # b lleva siempre a q1; a alterna entre q0 y q1
    return Dfa(num_states=2, delta=((2, 2), (1, 2)), accepting={2})


@pytest.fixture
def toy_decomposition() -> Decomposition:
    return Decomposition(alphabet=Alphabet(('a', 'b')), dfas=(first_dfa(), second_dfa()))


@pytest.fixture
def second_only() -> Decomposition:
    return Decomposition(alphabet=Alphabet(('a', 'b')), dfas=(second_dfa(),))


def random_samples(rng: np.random.Generator, alphabet_size: int, max_words: int,
                   max_length: int) -> LabeledSamples:
    """Muestras aleatorias sin conflictos, con al menos una palabra"""
    count = int(rng.integers(1, max_words + 1))
    words = {}
    while len(words) < count:
        length = int(rng.integers(0, max_length + 1))
        word = tuple(int(x) for x in rng.integers(0, alphabet_size, size=length))
        words.setdefault(word, bool(rng.random() < 0.5))
    alphabet = Alphabet(tuple('abc'[:alphabet_size]))
    positives = tuple(w for w, label in words.items() if label)
    negatives = tuple(w for w, label in words.items() if not label)
    return LabeledSamples(alphabet, positives, negatives)


@pytest.fixture
def sample_factory():
    return random_samples
