import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chernpatch import exterior as ext
from chernpatch.dual import Dual


def _poly_form(m, rng, deg=1, d=2):
    comps = {}
    idxs = [(i,) for i in range(m)] if deg == 1 else [()]
    for idx in idxs:
        A = rng.uniform(-1, 1, (d, d))
        B = rng.uniform(-1, 1, (m, d, d))

        def cf(x, A=A, B=B):
            return np.array(
                [[A[r][c] + sum(0.5 * x[k] * B[k][r][c] for k in range(m))
                  for c in range(d)] for r in range(d)], dtype=object)

        comps[idx] = ext.SmoothMap(m, cf)
    return ext.VForm(m, deg, comps)


def test_d_squared_vanishes():
    rng = np.random.default_rng(0)
    f = _poly_form(3, rng, deg=0)
    ddf = ext.exterior_d(ext.exterior_d(f))
    x = rng.uniform(-1, 1, 3)
    vecs = [rng.standard_normal(3) for _ in range(2)]
    assert np.max(np.abs(ddf.evaluate(x, vecs))) < 1e-7


def test_dual_jacobian_matches_finite_difference():
    rng = np.random.default_rng(1)

    def f(x):
        return x[0] * x[1] + x[1] ** 3

    sm = ext.SmoothMap(2, f)
    x = rng.uniform(-1, 1, 2)
    J = sm.jacobian(x)
    assert abs(J[0] - x[1]) < 1e-9
    assert abs(J[1] - (x[0] + 3 * x[1] ** 2)) < 1e-9


def test_wedge_antisymmetry_scalar():
    rng = np.random.default_rng(2)
    m = 3
    a = ext.VForm(m, 1, {(i,): ext.SmoothMap(m, (lambda c: lambda x: c[0]
                         + c[1] * x[0])(rng.uniform(-1, 1, 2)))
                         for i in range(m)})
    b = ext.VForm(m, 1, {(i,): ext.SmoothMap(m, (lambda c: lambda x: c[0]
                         + c[1] * x[1])(rng.uniform(-1, 1, 2)))
                         for i in range(m)})
    ab = ext.wedge_scalar(a, b)
    ba = ext.wedge_scalar(b, a)
    x = rng.uniform(-1, 1, m)
    vecs = [rng.standard_normal(m) for _ in range(2)]
    assert abs(ab.evaluate(x, vecs) + ba.evaluate(x, vecs)) < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_patch_combination_identity(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 5))

    f1 = ext.SmoothMap(m, (lambda c: lambda x: c[0] + c[1] * x[0] * x[1])(
        rng.uniform(-1, 1, 2)))
    f2 = ext.SmoothMap(m, (lambda c: lambda x: c[0] + c[1] * x[0] ** 2)(
        rng.uniform(-1, 1, 2)))
    f3 = ext.SmoothMap(m, lambda x: 1.0 - f1.func(x) - f2.func(x))
    omegas = [_poly_form(m, rng) for _ in range(3)]
    direct, formula = ext.patch_combination_curvature([f1, f2, f3], omegas)
    pts = [rng.uniform(-0.5, 0.5, m) for _ in range(2)]
    assert ext.form_distance(direct, formula, pts, rng=rng) < 1e-6


def test_pifiber_check_passes_on_pullback():
    # a form depending only on the projected coordinates is a pullback
    rng = np.random.default_rng(3)
    proj = ext.SmoothMap(3, lambda x: np.array([x[0], x[1]]))
    comps = {(0,): ext.SmoothMap(3, lambda x: np.array([[x[0] + x[1]]])),
             (1,): ext.SmoothMap(3, lambda x: np.array([[x[0] * x[1]]]))}
    form = ext.VForm(3, 1, comps)
    pts = [rng.uniform(-1, 1, 3) for _ in range(5)]
    rpt = ext.pifiber_check(form, proj, pts, tol=1e-8, rng=rng)
    assert rpt["ok"]


def test_pifiber_check_flags_vertical_component():
    # a dr component along the fiber direction must be reported
    rng = np.random.default_rng(4)
    proj = ext.SmoothMap(3, lambda x: np.array([x[0], x[1]]))
    comps = {(2,): ext.SmoothMap(3, lambda x: np.array([[1.0]]))}
    form = ext.VForm(3, 1, comps)
    pts = [rng.uniform(-1, 1, 3) for _ in range(5)]
    rpt = ext.pifiber_check(form, proj, pts, tol=1e-8, rng=rng)
    assert not rpt["ok"]
    assert rpt["max_vertical_contraction"] > 1e-2


def test_curvature_of_exact_scalar_form_vanishes():
    m = 2
    omega = ext.exterior_d(ext.VForm(m, 0, {
        (): ext.SmoothMap(m, lambda x: np.array([[x[0] ** 2 * x[1]]]))}))
    curv = ext.curvature_form(omega)
    rng = np.random.default_rng(5)
    x = rng.uniform(-1, 1, m)
    vecs = [rng.standard_normal(m) for _ in range(2)]
    assert np.max(np.abs(curv.evaluate(x, vecs))) < 1e-6


def test_dual_arithmetic():
    x = Dual(1.5, np.array([1.0, 0.0]))
    y = Dual(2.0, np.array([0.0, 1.0]))
    z = x * y + x ** 2
    assert abs(z.val - 5.25) < 1e-14
    assert np.allclose(z.grad, [2.0 + 3.0, 1.5])
