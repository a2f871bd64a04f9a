from __future__ import annotations

import random

import pytest

from stringcat.corpus import SIG
from stringcat.frontend import parse_term
from stringcat.signature import load_signature


@pytest.fixture(scope='session')
def sig():
    return load_signature(SIG)


@pytest.fixture(scope='session')
def eq1_sig():
    return load_signature('''object A, B, C, D, E
morphism M : A -> B
morphism N : B * C -> D
morphism P : D -> E
''')


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def parse(sig):
    return lambda text, s=None: parse_term(text, s or sig)
