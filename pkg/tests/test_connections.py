import numpy as np
import pytest

from chernpatch import connections, hcrepr, liecore
from chernpatch.errors import ConditionViolation


def _su11(rep_name="weight:2"):
    spec = liecore.su_pq(1, 1)
    return spec, hcrepr.builtin_representation(spec, rep_name)


def test_nomizu_accepted():
    spec, rep = _su11()
    conn = connections.nomizu_connection(spec, rep)
    assert conn is not None


def test_nomizu_curvature_oracle():
    # curvature on horizontal pairs is -lambda'([p1, p2])
    spec, rep = _su11()
    conn = connections.nomizu_connection(spec, rep)
    p1, p2 = connections.p_basis(spec)
    expected = -rep.lam_alg(liecore.bracket(p1, p2))
    assert np.max(np.abs(conn.curvature0(p1, p2) - expected)) < 1e-12


def test_flat_connection_is_flat():
    # the standard representation restricted to K extends to the group,
    # so the inclusion is a Lie algebra homomorphism and the connection
    # it defines is flat
    spec = liecore.su_pq(1, 1)
    rep = hcrepr.Representation(
        spec, "std-restriction", 2,
        lambda kc: np.asarray(kc, dtype=complex),
        lambda kc: np.asarray(kc, dtype=complex))
    basis = liecore.algebra_basis(spec)
    hom = [np.asarray(b, dtype=complex) for b in basis]
    conn = connections.flat_connection_from_hom(spec, rep, hom)
    assert conn.is_flat()


def test_perturbation_on_k_rejected_with_condition_one():
    spec, rep = _su11()
    nom = connections.nomizu_connection(spec, rep)
    basis = liecore.algebra_basis(spec)
    kidx = next(i for i, b in enumerate(basis)
                if np.allclose(liecore.cartan_split(spec, b)[1], 0))
    vals = [v.copy() for v in nom.values]
    vals[kidx] = vals[kidx] + 0.1
    with pytest.raises(ConditionViolation) as exc:
        connections.make_invariant_connection(spec, rep, vals)
    assert 1 in exc.value.conditions


def test_perturbation_on_p_rejected_with_condition_two():
    spec, rep = _su11()
    nom = connections.nomizu_connection(spec, rep)
    basis = liecore.algebra_basis(spec)
    pidx = next(i for i, b in enumerate(basis)
                if not np.allclose(liecore.cartan_split(spec, b)[1], 0))
    vals = [v.copy() for v in nom.values]
    vals[pidx] = vals[pidx] + np.array([[0.2]])
    with pytest.raises(ConditionViolation) as exc:
        connections.make_invariant_connection(spec, rep, vals)
    assert 2 in exc.value.conditions
    assert 1 not in exc.value.conditions


def test_induced_connection_ad_commutation_guard():
    spec = liecore.sp2nR(2)
    rep = hcrepr.builtin_representation(spec, "std")
    pd = liecore.parabolic_data(spec, (1,))
    base = connections.nomizu_base(pd, rep)
    assert connections.check_ad_commutation(pd, rep, base)


def test_chain_difference_nilpotent():
    spec = liecore.sp2nR(2)
    rep = hcrepr.builtin_representation(spec, "std")
    pd = liecore.parabolic_data(spec, (1, 2))
    # difference of unipotent radical images is nilpotent
    rng = np.random.default_rng(1)
    c = rng.standard_normal(len(pd.basis_q))
    X = liecore.from_coords(c, pd.basis_q)
    u, _, _ = pd.split(X)
    val = connections.chain_difference_nilpotent(pd, rep, u)
    # the returned image is strictly nilpotent
    p = val.copy()
    for _ in range(val.shape[0] - 1):
        p = p @ val
    assert np.max(np.abs(p)) < 1e-9


def test_trivialization_transform_consistency():
    # gauge transform of the zero form is j dj^{-1}-type conjugation data
    spec, rep = _su11()
    rng = np.random.default_rng(2)
    g = liecore.exp_grp(spec, liecore.random_alg(spec, rng, 0.3))
    X = liecore.random_alg(spec, rng, 0.5)

    def omega_eval(gpt, Xdot):
        return np.zeros((rep.dim, rep.dim), dtype=complex)

    out = connections.trivialization_transform(rep, omega_eval, g, X)
    assert out.shape == (rep.dim, rep.dim)
