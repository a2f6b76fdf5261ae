import numpy as np
import pytest

from conftest import MATRIX, cosine_kernel
from rkhs_action.decomposition import (constants, corrupt_projection, decompose, full_space,
                                       make_rng, span, sum_subspaces)
from rkhs_action.errors import (LawViolation, NonTransitive, NotInSubspace,
                                NotPairwiseOrthogonal, TrivialSubspace, WrongCount)
from rkhs_action.kernels import (check_kernel_family, kernel_family, orthogonal_kernel_expansion,
                                 projection_extremality, reproduce, verify_basic_kernel_lemmas,
                                 verify_reproduction, verify_translation_laws)
from rkhs_action.perm_group import group_from_generators, named_group


def all_pass(report):
    return all(row["passed"] for row in report.values())


@pytest.mark.parametrize("key", ["cyclic:4", "symmetric:3", "regular:symmetric:3"])
def test_constants_kernel(key):
    kf = kernel_family(constants(named_group(key)))
    assert kf.c == pytest.approx(1)
    assert np.max(np.abs(kf.kernel_matrix - 1)) <= 1e-12


@pytest.mark.parametrize("n", [4, 6])
def test_cosine_kernel(n):
    g = named_group(f"cyclic:{n}")
    chars = np.array([np.exp(2j * np.pi * j * np.arange(n) / n) for j in (1, -1)]).T
    kf = kernel_family(span(g, chars))
    assert kf.c == pytest.approx(2)
    assert np.max(np.abs(kf.kernel_matrix - cosine_kernel(n))) <= 1e-9


def test_full_space_kernel():
    kf = kernel_family(full_space(named_group("dihedral:4")))
    assert np.max(np.abs(kf.kernel_matrix - 4 * np.eye(4))) <= 1e-12
    assert kf.c == 4


def test_trivial_subspace_rejected():
    g = named_group("cyclic:3")
    from rkhs_action.decomposition import InvariantSubspace
    with pytest.raises(TrivialSubspace):
        kernel_family(InvariantSubspace.from_basis(g, np.zeros((3, 0))))


def test_non_constant_diagonal_rejected():
    g = group_from_generators(3, [(1, 0, 2)])
    with pytest.raises(NonTransitive):
        kernel_family(span(g, np.array([1.0, 1.0, 0.0])))


def test_corrupted_projection_rejected():
    h = corrupt_projection(decompose(named_group("cyclic:4"), 1)[0])
    with pytest.raises(LawViolation):
        kernel_family(h)
    kf = kernel_family(h, check=False)
    assert not all_pass(check_kernel_family(kf))


def test_reproduce_examples(c4_pair):
    kf = kernel_family(c4_pair)
    for z in range(4):
        assert np.max(np.abs(reproduce(kf, kf.kernel(z)) - kf.kernel(z))) <= 1e-9
    assert np.max(np.abs(reproduce(kf, np.zeros(4)))) == 0
    f = kf.random_member(make_rng(3))
    direct = sum(f[x] * kf.kernel(x) for x in range(4)) / 4
    assert np.max(np.abs(direct - f)) <= 1e-9
    with pytest.raises(NotInSubspace):
        reproduce(kf, np.ones(4))


def test_translation_laws(c4_pair):
    kf = kernel_family(c4_pair)
    report = verify_translation_laws(kf)
    assert all_pass(report)
    # free action: only the identity fixes a point
    assert report["kernel-stabilizer-invariance"]["tuples"] == 4
    k = cosine_kernel(4)
    for x in range(4):
        for y in range(4):
            assert k[y, (x + 1) % 4] == pytest.approx(k[(y - 1) % 4, x])


def test_basic_lemmas_examples(c4_pair):
    kf = kernel_family(c4_pair)
    assert all_pass(verify_basic_kernel_lemmas(kf, trials=3, seed=1))
    assert abs(kf.value(0, 1)) <= 1e-12 and kf.c == pytest.approx(2)
    kc = kernel_family(constants(named_group("cyclic:4")))
    assert np.allclose(np.abs(kc.kernel_matrix), kc.c)


def test_projection_extremality_examples(c4_pair):
    kf = kernel_family(c4_pair)
    pi, holds = projection_extremality(kf, kf.kernel(0), 0)
    assert holds and np.allclose(pi, kf.kernel(0))
    # K_1 is orthogonal to K_0: both sides false
    pi, holds = projection_extremality(kf, kf.kernel(1), 0)
    assert holds and np.allclose(pi, 0)
    f = kf.random_member(make_rng(9))
    _, holds = projection_extremality(kf, f, 2)
    assert holds
    total = np.sum(np.abs(f) ** 2) / 4
    assert total > abs(f[2]) ** 2 / kf.c + 1e-6  # dim 2: strict, so both sides false


def test_orthogonal_expansion_examples(c4_pair):
    kc = kernel_family(constants(named_group("cyclic:4")))
    f = np.full(4, 2.5 + 1j)
    assert np.allclose(orthogonal_kernel_expansion(kc, [0], f), f)
    kf = kernel_family(c4_pair)
    assert np.allclose(kf.kernel(0), [2, 0, -2, 0]) and np.allclose(kf.kernel(1), [0, 2, 0, -2])
    f = kf.random_member(make_rng(1))
    assert np.max(np.abs(orthogonal_kernel_expansion(kf, [0, 1], f) - f)) <= 1e-8
    full = kernel_family(full_space(named_group("cyclic:4")))
    g = np.array([1, 2j, -3, 0.5])
    assert np.allclose(orthogonal_kernel_expansion(full, range(4), g), g)


def test_orthogonal_expansion_errors(c4_pair):
    kf = kernel_family(c4_pair)
    with pytest.raises(WrongCount):
        orthogonal_kernel_expansion(kf, [0], np.zeros(4))
    with pytest.raises(NotPairwiseOrthogonal):
        orthogonal_kernel_expansion(kf, [0, 2], np.zeros(4))


@pytest.mark.parametrize("key", MATRIX)
def test_kernel_laws_on_matrix(key):
    g = named_group(key)
    parts = decompose(g, 1)
    subspaces = list(parts) + [sum_subspaces([a, b]) for i, a in enumerate(parts)
                               for b in parts[i + 1:]]
    for h in subspaces:
        kf = kernel_family(h)
        assert abs(kf.c - h.dim) <= 1e-8
        assert all_pass(check_kernel_family(kf))
        assert all_pass(verify_reproduction(kf))
        assert all_pass(verify_translation_laws(kf))
        assert all_pass(verify_basic_kernel_lemmas(kf, trials=2, seed=0))
