import numpy as np
import pytest

from mdsclass.codes import Code, repetition_code
from mdsclass.gf import field_new
from mdsclass.linear import hamming_code, kernel_code, linear_mds


def ternary_4_9():
    """(4, 9, 3)_3 code: x2 + x3 + x4 = 0 and x1 + x3 + 2 x4 = 0."""
    return kernel_code(field_new(3), np.array([[0, 1, 1, 1], [1, 0, 1, 2]]))


def random_mds_like(q, n, seed):
    """A relabeled linear MDS code: the same class, scrambled words."""
    from mdsclass.equiv import EquivMap, apply
    import random

    return apply(EquivMap.random(n, q, random.Random(seed)), linear_mds(q, n))


def corpus():
    """Small codes used by the invariance and round-trip suites."""
    return {
        "rep2": Code.from_words([[0, 0, 0], [1, 1, 1]], 2),
        "rep3": repetition_code(3),
        "t49": ternary_4_9(),
        "lin44": linear_mds(4, 4),
        "lin45": linear_mds(4, 5),
        "lin54": linear_mds(5, 4),
        "ham3": hamming_code(field_new(3)),
        "odd": Code.from_words([[0, 1, 2], [2, 2, 0], [1, 0, 1], [0, 0, 0]], 3),
    }


@pytest.fixture(scope="session")
def codes():
    return corpus()


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
