import numpy as np
import pytest

from chernpatch import hcrepr, liecore


def _sp4_rep(name="std"):
    return hcrepr.builtin_representation(liecore.sp2nR(2), name)


def test_su11_decomposition_oracle():
    """Lower-triangular unipotent times diagonal times upper-triangular."""
    spec = liecore.su_pq(1, 1)
    g = np.array([[1.25, 0.75], [0.75, 1.25]])  # exp of 0.8 * offdiag
    d = hcrepr.hc_decompose(spec, g)
    assert np.max(np.abs(d.p_plus @ d.k_c @ d.p_minus - np.asarray(g, complex))) < 1e-12
    j = hcrepr.middle_j(spec, g)
    assert abs(j[0, 0] * j[1, 1] - 1) < 1e-12


@pytest.mark.parametrize("r", [1, 2])
def test_cayley_element_in_complexified_group(r):
    spec = liecore.sp2nR(2)
    c = hcrepr.cayley_element(spec, r)
    # symplectic form is preserved exactly
    J = spec.form
    assert np.max(np.abs(c.T @ J @ c - J)) < 1e-12


def test_middle_j_multiplicative_on_kc():
    spec = liecore.sp2nR(2)
    rng = np.random.default_rng(0)
    for _ in range(5):
        k1 = liecore.exp_grp(spec, liecore.cartan_split(
            spec, liecore.random_alg(spec, rng, 0.4))[0])
        g = liecore.exp_grp(spec, liecore.random_alg(spec, rng, 0.2))
        jk = hcrepr.middle_j(spec, k1 @ g)
        jj = hcrepr.middle_j(spec, k1) @ hcrepr.middle_j(spec, g)
        # j(k g) = lam_C-compatible product when k is in K
        assert np.max(np.abs(jk - jj)) < 1e-8


@pytest.mark.parametrize("name", ["std", "det^1", "sym2"])
def test_extension_restricts_to_rep_on_k(name):
    rep = _sp4_rep(name)
    spec = rep.spec
    ext = hcrepr.canonical_extension(rep, 2)
    rng = np.random.default_rng(1)
    for _ in range(5):
        k = liecore.exp_grp(spec, liecore.cartan_split(
            spec, liecore.random_alg(spec, rng, 0.4))[0])
        assert np.max(np.abs(ext(k) - rep.lam_grp(k))) < 1e-8


def test_extension_homomorphism_on_parabolic():
    rep = _sp4_rep()
    spec = rep.spec
    pd = liecore.parabolic_data(spec, (2,))
    ext = hcrepr.canonical_extension(rep, 2)
    rng = np.random.default_rng(2)
    for _ in range(10):
        c1 = 0.3 * rng.standard_normal(len(pd.basis_q))
        c2 = 0.3 * rng.standard_normal(len(pd.basis_q))
        q1 = liecore.exp_grp(spec, liecore.from_coords(c1, pd.basis_q))
        q2 = liecore.exp_grp(spec, liecore.from_coords(c2, pd.basis_q))
        assert np.max(np.abs(ext(q1 @ q2) - ext(q1) @ ext(q2))) < 1e-8


def test_extension_derivative_matches_difference_quotient():
    rep = _sp4_rep()
    spec = rep.spec
    pd = liecore.parabolic_data(spec, (2,))
    ext = hcrepr.canonical_extension(rep, 2)
    rng = np.random.default_rng(3)
    X = liecore.from_coords(0.4 * rng.standard_normal(len(pd.basis_q)),
                            pd.basis_q)
    h = 1e-6
    num = (ext(liecore.exp_grp(spec, h * X)) - np.eye(rep.dim)) / h
    assert np.max(np.abs(ext.alg(X) - num)) < 1e-5


def test_nested_extension_compatibility():
    rep = _sp4_rep()
    report = hcrepr.extension_compat_check(rep, 1, 2, samples=20, rng=0)
    assert report["max_residual"] < 1e-8


def test_nested_extension_compatibility_sp6():
    rep = hcrepr.builtin_representation(liecore.sp2nR(3), "std")
    for pair in [(1, 2), (1, 3), (2, 3)]:
        report = hcrepr.extension_compat_check(rep, *pair, samples=10, rng=0)
        assert report["max_residual"] < 1e-8


def test_automorphy_cocycle():
    spec = liecore.su_pq(1, 1)
    rep = hcrepr.builtin_representation(spec, "weight:2")
    rng = np.random.default_rng(4)
    g1 = liecore.exp_grp(spec, liecore.random_alg(spec, rng, 0.3))
    g2 = liecore.exp_grp(spec, liecore.random_alg(spec, rng, 0.3))
    h = liecore.exp_grp(spec, liecore.random_alg(spec, rng, 0.3))
    lhs = hcrepr.automorphy(rep, g1 @ g2, h)
    rhs = hcrepr.automorphy(rep, g1, g2 @ h) @ hcrepr.automorphy(rep, g2, h)
    assert np.max(np.abs(lhs - rhs)) < 1e-9
