import random

import pytest
from hypothesis import strategies as st

from coble_lab.binform import BinaryForm

FIXTURE_A = BinaryForm.of(1, 0, -1)
FIXTURE_B = BinaryForm.of(1, 0, 1)
FIXTURE_C = BinaryForm.of(1, 1, -1)
FIXTURE_LAMBDA = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
# a Lambda for which every node of the sextic is ordinary
GENERIC_LAMBDA = [[1, 2, 0], [0, 1, 3], [2, 0, 1]]
DEPENDENT_C = 2 * FIXTURE_A + FIXTURE_B  # 3u^2 - v^2


def forms(degree, lo=-6, hi=6):
    return st.lists(st.integers(lo, hi), min_size=degree + 1, max_size=degree + 1).map(
        lambda cs: BinaryForm(tuple(cs)))


def nonzero_forms(degree, lo=-6, hi=6):
    return forms(degree, lo, hi).filter(lambda f: not f.is_zero())


@pytest.fixture
def rng():
    return random.Random(20240601)
