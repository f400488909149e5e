"""Invariant connections on homogeneous bundles and their parabolically
induced relatives.

A connection on the bundle attached to a K-representation lambda is stored
through its value omega_0 on the Lie algebra at the identity; evaluation
anywhere else is by left translation.  The classification conditions are

    (1)  omega_0(kdot) = lambda'(kdot)            for kdot in Lie(K),
    (2)  omega_0([gdot, kdot]) = [omega_0(gdot), lambda'(kdot)],

and the curvature at the identity is

    Omega_0(g1, g2) = [omega_0 g1, omega_0 g2] - omega_0([g1, g2]).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hcrepr, liecore
from .errors import CommutationHypothesisFailed, ConditionViolation

TOL = 1e-9


def k_basis(spec):
    """Orthonormalized basis of Lie(K) inside the ambient algebra."""
    basis = liecore.algebra_basis(spec)
    ks = [liecore.cartan_split(spec, b)[0] for b in basis]
    return liecore._orthonormalize(ks)


def p_basis(spec):
    basis = liecore.algebra_basis(spec)
    ps = [liecore.cartan_split(spec, b)[1] for b in basis]
    return liecore._orthonormalize(ps)


@dataclass
class InvariantConnection:
    spec: object
    rep: object
    basis: list          # ambient algebra basis
    values: list         # omega_0 on each basis element, End(V) matrices

    def omega0(self, X):
        c = liecore.algebra_coords(self.spec, X, basis=self.basis)
        out = None
        for ci, v in zip(c, self.values):
            t = ci * v
            out = t if out is None else out + t
        return out

    def curvature0(self, X, Y):
        a, b = self.omega0(X), self.omega0(Y)
        return a @ b - b @ a - self.omega0(liecore.bracket(X, Y))

    def is_flat(self, tol=1e-9):
        worst = 0.0
        for i, X in enumerate(self.basis):
            for Y in self.basis[i + 1:]:
                worst = max(worst, float(np.max(np.abs(self.curvature0(X, Y)))))
        return worst <= tol


def make_invariant_connection(spec, rep, values, basis=None, tol=TOL) -> InvariantConnection:
    """Validate the classification conditions; raise ConditionViolation if not.

    values: omega_0 on each element of the ambient algebra basis.
    """
    if basis is None:
        basis = liecore.algebra_basis(spec)
    conn = InvariantConnection(spec, rep, basis, [np.asarray(v, dtype=complex) for v in values])
    kb = k_basis(spec)
    bad = []
    residuals = []
    # condition (1)
    r1 = 0.0
    for kdot in kb:
        r1 = max(r1, float(np.max(np.abs(conn.omega0(kdot) - rep.lam_alg(kdot)))))
    if r1 > tol:
        bad.append(1)
        residuals.append(r1)
    # condition (2)
    r2 = 0.0
    for g in basis:
        og = conn.omega0(g)
        for kdot in kb:
            lk = rep.lam_alg(kdot)
            lhs = conn.omega0(liecore.bracket(g, kdot))
            rhs = og @ lk - lk @ og
            r2 = max(r2, float(np.max(np.abs(lhs - rhs))))
    if r2 > tol:
        bad.append(2)
        residuals.append(r2)
    if bad:
        raise ConditionViolation(bad, residuals)
    return conn


def nomizu_connection(spec, rep) -> InvariantConnection:
    """omega_0 = lambda' o (projection to Lie(K)); curvature -lambda'([p1,p2])."""
    basis = liecore.algebra_basis(spec)
    values = [rep.lam_alg(liecore.cartan_split(spec, b)[0]) for b in basis]
    return make_invariant_connection(spec, rep, values, basis=basis)


def flat_connection_from_hom(spec, rep, hom_values, basis=None, tol=TOL):
    """Connection given by a Lie algebra homomorphism extending lambda'."""
    conn = make_invariant_connection(spec, rep, hom_values, basis=basis, tol=tol)
    return conn


# ---------------------------------------------------------------------------
# parabolic induction


class InducedConnection:
    """Connection on the large domain induced from one on the hermitian part.

    pd is the parabolic data of a maximal standard parabolic (rank r); the
    base connection lives on the hermitian Levi factor and is given by its
    invariant value base_omega0 on Lie(G_h) directions (already an End(V)
    matrix for the canonically extended bundle).  Evaluation:

        omega(L_g (udot + hdot + ldot))
            = lambda_1'(ldot) + Ad(lambda_1(g_l^{-1})) (omega_1(L_{g_h} hdot))
    """

    def __init__(self, pd, rep, base_omega0=None):
        spec = pd.spec
        if len(pd.flag) != 1:
            raise CommutationHypothesisFailed(
                "single-step induction needs a maximal parabolic; use multi_induce")
        self.pd = pd
        self.rep = rep
        self.r = pd.flag[0]
        self.ext = hcrepr.canonical_extension(rep, self.r)
        self.base_omega0 = base_omega0  # callable hdot -> End(V), or None

    def evaluate(self, g, xdot):
        """omega at L_g(xdot) for g in P, xdot in Lie(P)."""
        pd = self.pd
        udot, hdot, ldot = pd.split(xdot)
        _, g_h, g_l = liecore.group_factor(pd, g)
        val = self.ext.alg(ldot)
        if self.base_omega0 is not None:
            base = self.base_omega0(g_h, hdot)
            lam = self.ext(np.linalg.inv(g_l))
            val = val + lam @ base @ np.linalg.inv(lam)
        return val

    def curvature(self, g, x1, x2, h=1e-6):
        """Curvature on left-invariant extensions of x1, x2 at g.

        The induced form is not constant along left-invariant fields (the
        Levi twist depends on the base point), so besides the algebraic
        terms the derivative terms of d(omega) are differenced numerically.
        """
        a, b = self.evaluate(g, x1), self.evaluate(g, x2)
        alg = a @ b - b @ a - self.evaluate(g, liecore.bracket(x1, x2))

        def deriv(xa, xb):
            gp = g @ liecore.exp_grp(self.pd.spec, h * xa, check=False)
            gm = g @ liecore.exp_grp(self.pd.spec, -h * xa, check=False)
            return (self.evaluate(gp, xb) - self.evaluate(gm, xb)) / (2 * h)

        return alg + deriv(x1, x2) - deriv(x2, x1)


def induced_connection(pd, rep, base_conn=None) -> InducedConnection:
    """base_conn: InvariantConnection on the hermitian factor, or None (point).

    The base omega_1 must be expressed on ambient Lie(G_h) directions; for
    an InvariantConnection built on the small hermitian group, pass a
    callable translating (g_h, hdot) to the End(V) value instead.
    """
    if base_conn is None:
        return InducedConnection(pd, rep, None)
    if callable(base_conn):
        return InducedConnection(pd, rep, base_conn)
    return InducedConnection(pd, rep, lambda g_h, hdot: base_conn.omega0(hdot))


def nomizu_base(pd, rep):
    """Nomizu connection on the hermitian Levi factor, as a base for induction.

    The bundle over the small domain carries the canonical extension of the
    restricted representation, so the value on hdot in Lie(G_h) is
    lambda_1' of the Lie(K_h)-projection of hdot.
    """
    ext = hcrepr.canonical_extension(rep, pd.flag[-1])

    def base(g_h, hdot):
        k, _ = liecore.cartan_split(pd.spec, hdot)
        return ext.alg(k)

    return base


def check_ad_commutation(pd, rep, base_omega0, generator_scale=0.7, tol=TOL):
    """Hypothesis for curvature descent / multi-step induction.

    Checks Ad(lambda_1(exp(t l))) base = base for generators l of the linear
    Levi factor.  Raises CommutationHypothesisFailed beyond tol.
    """
    r = pd.flag[-1]
    ext = hcrepr.canonical_extension(rep, r)
    worst = 0.0
    for l in pd.basis_l:
        g = liecore.exp_grp(pd.spec, generator_scale * l)
        lam = ext(g)
        lam_inv = np.linalg.inv(lam)
        for h in pd.basis_h:
            v = base_omega0(None, h) if base_omega0 else None
            if v is None:
                continue
            worst = max(worst, float(np.max(np.abs(lam @ v @ lam_inv - v))))
    if worst > tol:
        raise CommutationHypothesisFailed(f"Ad commutation residual {worst}")
    return worst


class MultiInducedConnection:
    """Connection induced along a chain of parabolics in one step:

        omega(L_g (udot_Q + gdot_1h + gdot_Ql))
            = omega_1(L_{g_1h} gdot_1h) + lambda_1'(gdot_Ql).

    Valid when the base connection commutes with Ad lambda_1 of the linear
    Levi and of U_{P_1 Q}; the hypothesis is verified on generators at
    construction time.
    """

    def __init__(self, pd, rep, base_omega0=None, check=True, tol=1e-9):
        self.pd = pd
        self.rep = rep
        self.r = pd.flag[-1]
        self.ext = hcrepr.canonical_extension(rep, self.r)
        self.base_omega0 = base_omega0
        if check and base_omega0 is not None:
            worst = 0.0
            gens = list(pd.basis_l) + list(pd.basis_u_rel)
            for l in gens:
                lam = self.ext(liecore.exp_grp(pd.spec, 0.7 * l))
                li = np.linalg.inv(lam)
                for h in pd.basis_h:
                    v = base_omega0(None, h)
                    worst = max(worst, float(np.max(np.abs(lam @ v @ li - v))))
            if worst > tol:
                raise CommutationHypothesisFailed(f"generator residual {worst}")

    def evaluate(self, g, xdot):
        pd = self.pd
        udot, hdot, ldot = pd.split(xdot)
        val = self.ext.alg(ldot)
        if self.base_omega0 is not None:
            _, g_1h, _, _ = liecore.group_factor_fine(pd, g)
            val = val + self.base_omega0(g_1h, hdot)
        return val


def chain_difference_nilpotent(pd_q, rep, udot_diff, tol=1e-9):
    """lambda_1'(udot) for udot in Lie(U_{P_1 Q}); nilpotency is asserted.

    This is the difference term between two chains inducing from the same
    base; it is strictly triangular in the standard representations.
    """
    r = pd_q.flag[-1]
    ext = hcrepr.canonical_extension(rep, r)
    val = ext.alg(udot_diff)
    d = val.shape[0]
    p = val.copy()
    for _ in range(d - 1):
        p = p @ val
    if float(np.max(np.abs(p))) > tol * max(1.0, float(np.max(np.abs(val))) ** d):
        raise CommutationHypothesisFailed("chain difference term is not nilpotent")
    return val


# ---------------------------------------------------------------------------
# trivialization transform


def trivialization_transform(rep, omega_eval, g, X, h=1e-6):
    """One-form in the automorphy trivialization:

        eta(q_* L_g X) = J omega(L_g X) J^{-1} - (d_X J) J^{-1}

    where J(g) = lambda(j(g)) along the curve g exp(tX).  omega_eval(g, X)
    returns the connection value; the derivative of J is central-difference.
    """
    spec = rep.spec
    Jg = rep.lamC(hcrepr.middle_j(spec, g))
    Jinv = np.linalg.inv(Jg)
    om = omega_eval(g, X)
    gp = g @ liecore.exp_grp(spec, h * X)
    gm = g @ liecore.exp_grp(spec, -h * X)
    dJ = (rep.lamC(hcrepr.middle_j(spec, gp)) - rep.lamC(hcrepr.middle_j(spec, gm))) / (2 * h)
    return Jg @ om @ Jinv - dJ @ Jinv
