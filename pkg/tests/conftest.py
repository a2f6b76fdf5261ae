import numpy as np
import pytest

from rkhs_action.decomposition import span
from rkhs_action.perm_group import named_group

MATRIX = ["cyclic:4", "cyclic:6", "dihedral:4", "symmetric:3", "symmetric:4",
          "regular:symmetric:3"]


def shift_matrix(n, k):
    """(M f)(x) = f(x - k), built with np.roll rather than perm_matrix."""
    return np.roll(np.eye(n), k, axis=0)


def character_projection(n, js):
    """Oracle: sum over j of (1/n) sum_k chi_j(k) rho(r^k)."""
    p = np.zeros((n, n), dtype=complex)
    for j in js:
        for k in range(n):
            p += np.exp(2j * np.pi * j * k / n) * shift_matrix(n, k) / n
    return p


def cosine_kernel(n):
    """K_x(y) = 2 cos(2 pi (y - x) / n) laid out as K[y, x]."""
    y, x = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return 2 * np.cos(2 * np.pi * (y - x) / n)


@pytest.fixture(scope="session")
def c4():
    return named_group("cyclic:4")


@pytest.fixture(scope="session")
def s3():
    return named_group("symmetric:3")


@pytest.fixture(scope="session")
def c4_pair(c4):
    """span{chi_1, chi_-1} for the regular action of C_4."""
    n = 4
    chars = np.array([np.exp(2j * np.pi * j * np.arange(n) / n) for j in (1, -1)]).T
    return span(c4, chars)


@pytest.fixture(scope="session", params=MATRIX)
def matrix_group(request):
    return named_group(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
