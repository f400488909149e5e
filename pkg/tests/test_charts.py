import numpy as np

from chernpatch import charts, connections, exterior as ext, hcrepr, liecore


def test_mc_coefficients_reproduce_basis_at_origin():
    spec = liecore.su_pq(1, 1)
    chart = charts.GroupChart(spec)
    x0 = np.zeros(chart.dim)
    for i, b in enumerate(chart.basis):
        assert np.max(np.abs(chart.mc_coeff(i, x0) - b)) < 1e-12


def test_mc_value_is_in_algebra():
    spec = liecore.sp2nR(2)
    chart = charts.GroupChart(spec)
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = rng.uniform(-0.3, 0.3, chart.dim)
        i = int(rng.integers(chart.dim))
        assert liecore.alg_residual(spec, chart.mc_coeff(i, x)) < 1e-10


def test_curvature_bridge_su11():
    spec = liecore.su_pq(1, 1)
    rep = hcrepr.builtin_representation(spec, "weight:2")
    conn = connections.nomizu_connection(spec, rep)
    rng = np.random.default_rng(1)
    pts = [rng.uniform(-0.4, 0.4, 4) for _ in range(10)]
    assert charts.curvature_bridge_residual(spec, conn, pts, rng=rng) < 1e-6


def test_curvature_bridge_flat():
    spec = liecore.su_pq(1, 1)
    rep = hcrepr.Representation(
        spec, "std-restriction", 2,
        lambda kc: np.asarray(kc, dtype=complex),
        lambda kc: np.asarray(kc, dtype=complex))
    hom = [np.asarray(b, dtype=complex) for b in liecore.algebra_basis(spec)]
    conn = connections.flat_connection_from_hom(spec, rep, hom)
    chart = charts.GroupChart(spec)
    om = chart.connection_form(conn)
    curv = ext.curvature_form(om)
    rng = np.random.default_rng(2)
    for _ in range(3):
        x = rng.uniform(-0.3, 0.3, chart.dim)
        vecs = [rng.standard_normal(chart.dim) for _ in range(2)]
        assert np.max(np.abs(curv.evaluate(x, vecs))) < 1e-8


def test_p1_chern_number_weights():
    assert abs(charts.p1_chern_number(weight=2, n_theta=120, n_phi=120)
               - 2.0) < 1e-3
    assert abs(charts.p1_chern_number(weight=-1, n_theta=120, n_phi=120)
               + 1.0) < 1e-3
