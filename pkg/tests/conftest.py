import numpy as np
import pytest

from setlab.algebra import XdOperator

# (criterion number, description) -> (passed, seconds, note); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, desc), (ok, secs, note) in sorted(ACCEPTANCE.items()):
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{mark}  [{num:>2}] {desc:<58} {secs:7.2f} s  {note}")


def dense_matrix(op: XdOperator, n: int) -> np.ndarray:
    """Matrix of ``op`` built straight from U|z> = (-1)^p(z) |z xor x>.

    Bit k of a basis index is site k.  Independent of the dense kernels.
    """
    dim = 1 << n
    mat = np.zeros((dim, dim))
    xmask = sum(1 << v for v in op.xsupport)
    for z in range(dim):
        bits = [(z >> k) & 1 for k in range(n)]
        sign = -1 if op.poly.evaluate(bits) else 1
        mat[z ^ xmask, z] = sign
    return mat


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
