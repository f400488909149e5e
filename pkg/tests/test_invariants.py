from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chernpatch import invariants as inv
from chernpatch.errors import IllConditionedSpectrum, PreconditionFailed


def test_char_poly_matches_numpy():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((4, 4))
    mine = inv._char_poly(x)
    ref = np.poly(x)
    assert np.max(np.abs(np.array(mine) - ref)) < 1e-9


def test_elementary_symmetric_exact():
    x = inv.exact_matrix([[1, 2], [3, 4]])
    assert inv.elementary_symmetric_value(x, 1) == 5       # trace
    assert inv.elementary_symmetric_value(x, 2) == -2      # determinant


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_polarization_diagonal(seed):
    rng = np.random.default_rng(seed)
    f = inv.elementary_symmetric(3, 2)
    x = rng.standard_normal((3, 3))
    assert abs(inv.polarize_eval(f, [x, x]) - f(x)) < 1e-8


def test_polarization_multilinear():
    rng = np.random.default_rng(1)
    f = inv.elementary_symmetric(3, 2)
    x, y, z = (rng.standard_normal((3, 3)) for _ in range(3))
    lhs = inv.polarize_eval(f, [x + z, y])
    rhs = inv.polarize_eval(f, [x, y]) + inv.polarize_eval(f, [z, y])
    assert abs(lhs - rhs) < 1e-9


def test_springer_exact_zero():
    x = inv.exact_matrix([[2, 0, 0], [0, 2, 0], [0, 0, 5]])
    n = inv.exact_matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    for k in range(1, 4):
        f = inv.elementary_symmetric(3, k)
        assert inv.springer_check(f, x, n) == 0


def test_springer_rejects_noncommuting():
    x = np.diag([1.0, 2.0, 3.0])
    n = np.zeros((3, 3))
    n[0, 1] = 1.0  # nilpotent but [x, n] != 0
    f = inv.elementary_symmetric(3, 2)
    with pytest.raises(PreconditionFailed):
        inv.springer_check(f, x, n)


def test_jordan_decompose_exact():
    x = inv.exact_matrix([[2, 1], [0, 2]])
    s, n = inv.jordan_decompose(x)
    assert all(v == w for v, w in zip(s.ravel(),
                                      inv.exact_matrix([[2, 0], [0, 2]]).ravel()))
    assert inv.is_nilpotent(n)
    assert all(v == 0 for v in (s @ n - n @ s).ravel())


def test_jordan_decompose_float_semisimple():
    rng = np.random.default_rng(2)
    d = np.diag([1.0, 2.0, 3.0])
    q = rng.standard_normal((3, 3))
    x = q @ d @ np.linalg.inv(q)
    s, n = inv.jordan_decompose(x)
    assert np.max(np.abs(s + n - x)) < 1e-10
    assert np.max(np.abs(n)) < 1e-8


def test_jordan_decompose_float_defective_triangular():
    x = np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]])
    s, n = inv.jordan_decompose(x)
    assert np.max(np.abs(s - np.diag([1.0, 1.0, 3.0]))) < 1e-10
    assert abs(n[0, 1] - 0.5) < 1e-10


def test_jordan_decompose_float_rejects_blurred_defective():
    # generic conjugation blurs the double eigenvalue by about sqrt(eps),
    # which is indistinguishable from a genuinely tight spectrum
    rng = np.random.default_rng(3)
    q = rng.standard_normal((3, 3))
    x = np.array([[1.0, 0.7, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]])
    x = q @ x @ np.linalg.inv(q)
    with pytest.raises(IllConditionedSpectrum):
        inv.jordan_decompose(x)


def test_jordan_decompose_rejects_tight_spectrum():
    x = np.diag([1.0, 1.0 + 1e-9, 3.0])
    with pytest.raises(IllConditionedSpectrum):
        inv.jordan_decompose(x, gap_tol=1e-6)


def test_nilpotent_shift_changes_noninvariant_function():
    # negative control: entry functions are not conjugation-invariant
    x = inv.exact_matrix([[2, 0], [0, 2]])
    n = inv.exact_matrix([[0, 1], [0, 0]])
    assert (x + n)[0][1] != x[0][1]
    # but every elementary symmetric invariant agrees
    for k in (1, 2):
        assert (inv.elementary_symmetric_value(x + n, k)
                == inv.elementary_symmetric_value(x, k))
