import itertools
import math
import random

import numpy as np

from quantoda.harish_chandra import (Character, WeylPermutation,
                                     b_denominator, c_alpha_factor, c_function,
                                     c_s, delta_set, lambda_alpha,
                                     m_b_compatibility, m_elementary,
                                     m_function, plancherel_density,
                                     scattering_matrices, word_to_permutation)


def _all_perms(n):
    return [WeylPermutation(p) for p in itertools.permutations(range(1, n + 1))]


def test_group_laws():
    for n in (2, 3, 4):
        e = WeylPermutation.identity(n)
        for s in _all_perms(n):
            assert s * s.inverse() == e
            assert (e * s) == s
        for s in _all_perms(n):
            for t in _all_perms(n):
                for i in range(1, n + 1):
                    assert (s * t)(i) == s(t(i))


def test_apply_is_group_action():
    rng = random.Random(2)
    lam = [rng.uniform(-2, 2) for _ in range(4)]
    for s in _all_perms(4)[:8]:
        for t in _all_perms(4)[::5]:
            got = (s * t).apply(lam)
            assert np.allclose(got, s.apply(t.apply(lam)))


def test_reduced_words():
    for n in (2, 3, 4):
        for s in _all_perms(n):
            w = s.reduced_word()
            assert len(w) == s.length()
            assert word_to_permutation(w, n) == s
    w0 = WeylPermutation.longest(3)
    words = {tuple(w) for w in w0.all_reduced_words()}
    assert words == {(1, 2, 1), (2, 1, 2)}


def test_delta_set_counts_length():
    for s in _all_perms(4):
        assert len(delta_set(s)) == s.length()
    assert delta_set(WeylPermutation.simple(1, 3)) == {(1, 2)}


def test_c_alpha_goldens():
    # lambda_alpha = 1/2 -> Gamma(1/2)^2/Gamma(1) = pi
    assert abs(c_alpha_factor([0.5, -0.5], (1, 2)) - math.pi) < 1e-14
    # lambda_alpha = 1 -> Gamma(1) sqrt(pi) / Gamma(3/2) = 2
    assert abs(c_alpha_factor([1.0, -1.0], (1, 2)) - 2.0) < 1e-14


def test_c_function_product_formula():
    lam = [0.9, 0.2, -0.6]
    expect = 1.0
    for root in ((1, 2), (1, 3), (2, 3)):
        expect *= c_alpha_factor(lam, root)
    assert abs(c_function(lam) - expect) < 1e-13 * abs(expect)


def test_c_s_multiplicative_when_lengths_add():
    # Delta(s1 s2) = Delta(s1) + s1 Delta(s2) when lengths add, hence
    # c_{s1 s2}(lam) = c_{s1}(lam) c_{s2}(s1^{-1} lam)
    lam = [1.1, 0.35, -0.4, -0.9]
    for s1 in _all_perms(4):
        for s2 in _all_perms(4)[::7]:
            if (s1 * s2).length() != s1.length() + s2.length():
                continue
            lhs = c_s(lam, s1 * s2)
            rhs = c_s(lam, s1) * c_s(s1.inverse().apply(lam), s2)
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_m_cocycle():
    lam = [0.8, 0.1, -0.5]
    f = Character.unit(3)
    for s1 in _all_perms(3):
        for s2 in _all_perms(3):
            if (s1 * s2).length() != s1.length() + s2.length():
                continue
            lhs = m_function(s1 * s2, lam, f)
            rhs = m_function(s2, lam, f) * m_function(s1, s2.apply(lam), f)
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_m_word_independence():
    lam = [0.7, -0.1, -0.45]
    f = Character.unit(3)
    w0 = WeylPermutation.longest(3)
    vals = [m_function(w0, lam, f, word=w) for w in w0.all_reduced_words()]
    for v in vals[1:]:
        assert abs(v - vals[0]) < 1e-10 * max(1.0, abs(vals[0]))


def test_m_elementary_unimodular_on_unitary_spectrum():
    # on the imaginary axis (unitary spectrum) the elementary scattering
    # factor is a pure phase
    f = Character.unit(2)
    for la in (0.3, 1.2, -0.8):
        v = m_elementary([1j * la, -1j * la], 1, f)
        assert abs(abs(v) - 1.0) < 1e-12


def test_plancherel_weyl_invariance_and_zeros():
    lam = [1.3, 0.4, -0.2, -1.1]
    base = plancherel_density(lam)
    assert base > 0
    for s in _all_perms(4):
        assert abs(plancherel_density(list(s.apply(lam))) - base) \
            <= 1e-11 * base
    assert plancherel_density([0.5, 0.5, -0.3]) == 0.0


def test_b_denominator_is_gamma_product():
    from quantoda.specfun import gamma
    lam = [0.6, -0.3]
    expect = gamma(-1j * (0.6 + 0.3) + 0.5)
    assert abs(b_denominator(lam) - expect) < 1e-13 * abs(expect)


def test_m_b_ratio_constant_along_orthogonal_lines():
    rng = random.Random(5)
    for N, k in ((2, 1), (3, 1), (3, 2), (4, 2)):
        lam0 = [rng.uniform(-1, 1) for _ in range(N)]
        direction = [rng.uniform(-1, 1) for _ in range(N)]
        vals = m_b_compatibility(N, k, lam0, direction,
                                 ts=[-1.0, -0.3, 0.0, 0.4, 1.2])
        for v in vals[1:]:
            assert abs(v - vals[0]) < 1e-8 * max(1.0, abs(vals[0]))


def test_scattering_matrices_structure():
    lam = [0.9, 0.1, -0.7]
    f = Character.unit(3)
    s_full, s_sph = scattering_matrices(lam, f)
    w0 = WeylPermutation.longest(3)
    assert abs(s_full - s_sph * m_function(w0, lam, f)) \
        < 1e-12 * max(1.0, abs(s_full))
