import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkhs_action.errors import DegreeMismatch, LengthMismatch
from rkhs_action.function_space import (function_from_json, function_to_json, inner_product,
                                        integrate, norm_sq, translate, verify_invariance_lemma)
from rkhs_action.perm_group import Permutation, named_group

complexes = st.one_of(st.just(0j), st.complex_numbers(min_magnitude=1e-100, max_magnitude=1e3,
                                                      allow_nan=False, allow_infinity=False))


def test_inner_product_examples():
    for n in (1, 3, 7):
        assert inner_product(np.ones(n), np.ones(n)) == pytest.approx(1)
    e0, e1 = np.eye(4)[0], np.eye(4)[1]
    assert inner_product(e0, e1) == 0
    assert inner_product([1, 1j], [1, 1]) == pytest.approx((1 + 1j) / 2)


def test_inner_product_length_mismatch():
    with pytest.raises(LengthMismatch):
        inner_product(np.ones(2), np.ones(3))


def test_translate_examples():
    a, b, c = 1.0, 2.0, 3.0
    alpha = Permutation((1, 2, 0))
    assert np.allclose(translate([a, b, c], alpha), [b, c, a])
    assert np.allclose(translate([a, b, c], Permutation.identity(3)), [a, b, c])
    with pytest.raises(DegreeMismatch):
        translate([a, b], alpha)


@settings(max_examples=50, deadline=None)
@given(st.lists(complexes, min_size=5, max_size=5), st.permutations(range(5)),
       st.permutations(range(5)))
def test_translation_is_a_right_action(values, a, b):
    # pulling back reverses order: ((f . beta) . alpha)(x) = f(beta alpha x)
    f = np.array(values)
    alpha, beta = Permutation(tuple(a)), Permutation(tuple(b))
    assert np.array_equal(translate(translate(f, beta), alpha), translate(f, beta * alpha))


@settings(max_examples=50, deadline=None)
@given(st.lists(complexes, min_size=4, max_size=4), st.lists(complexes, min_size=4, max_size=4))
def test_inner_product_properties(fv, gv):
    f, g = np.array(fv), np.array(gv)
    ff = inner_product(f, f)
    assert abs(ff.imag) <= 1e-12 * max(1.0, abs(ff)) and ff.real >= 0
    assert (ff.real == 0) == bool(np.all(f == 0))
    assert abs(inner_product(f, g) - np.conj(inner_product(g, f))) <= 1e-14 * max(1.0, abs(inner_product(f, g)))
    assert norm_sq(f) == pytest.approx(ff.real)


@pytest.mark.parametrize("key", ["cyclic:4", "symmetric:3", "regular:symmetric:3"])
def test_invariance_lemma_random(key):
    report = verify_invariance_lemma(named_group(key), trials=4, seed=3)
    for row in report.values():
        assert row["passed"] and row["max_deviation"] <= 1e-12


def test_invariance_lemma_zero_functions():
    g = named_group("cyclic:4")
    report = verify_invariance_lemma(g, trials=0, seed=0)
    assert all(row["max_deviation"] == 0 for row in report.values())


def test_measure_invariance_direct():
    g = named_group("dihedral:4")
    f = np.array([1.5, -2j, 0.25, 3 + 1j])
    for alpha in g.elements:
        assert abs(integrate(translate(f, alpha)) - integrate(f)) <= 1e-15


def test_lemma_identities_by_direct_summation():
    g = named_group("cyclic:4")
    rng = np.random.default_rng(0)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    h = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    for alpha in g.elements:
        a = alpha.images
        ainv = alpha.inverse().images
        lhs1 = sum(f[a[x]] * np.conj(h[a[x]]) for x in range(4)) / 4
        rhs1 = sum(f[x] * np.conj(h[x]) for x in range(4)) / 4
        lhs2 = sum(f[a[x]] * np.conj(h[x]) for x in range(4)) / 4
        rhs2 = sum(f[x] * np.conj(h[ainv[x]]) for x in range(4)) / 4
        assert abs(lhs1 - rhs1) <= 1e-12 and abs(lhs2 - rhs2) <= 1e-12


def test_json_round_trip():
    f = np.array([1 + 2j, -0.5, 3j])
    assert np.array_equal(function_from_json(function_to_json(f)), f)
