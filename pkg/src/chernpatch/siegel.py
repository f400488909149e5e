"""The rank-two Siegel space with its two boundary strata: the geometric
instance of the patched-connection machinery.

Strata (top to bottom):

    X = H_2 (the open symmetric space of Sp(4,R)),
    Y = H_1 (upper half plane, hermitian part of the rank-1 parabolic),
    Z = point (boundary component of the Lagrangian parabolic).

Control data on the chart Z = [[z11, z12],[z12, z22]]:

    pi_Y(Z) = z11,   rho_Y(Z) = 1 / Im z22,   rho_Z(Z) = 1 / Im z11,

which satisfy rho_Z(pi_Y(Z)) = rho_Z(Z) exactly.  The section

    s(Z) = [[L, X L^{-T}], [0, L^{-T}]],   Im Z = L L^T (Cholesky)

lands in the intersection of both standard parabolics and maps the basepoint
i*I to Z, with pi compatible with the group-level Levi factorization.
"""

from __future__ import annotations

import numpy as np

from . import connections as cn
from . import exterior as ext
from . import hcrepr
from . import invariants as inv
from . import liecore
from . import strata
from .errors import PreconditionFailed

CHART_ORDER = ("x11", "x12", "x22", "y11", "y12", "y22")


def z_from_coords(x):
    x11, x12, x22, y11, y12, y22 = x
    return (np.array([[x11, x12], [x12, x22]], dtype=complex)
            + 1j * np.array([[y11, y12], [y12, y22]], dtype=complex))


def coords_from_z(Z):
    return [Z[0, 0].real, Z[0, 1].real, Z[1, 1].real,
            Z[0, 0].imag, Z[0, 1].imag, Z[1, 1].imag]


def _chol_lower(Y):
    return np.linalg.cholesky(Y)


def section(x):
    """Group element s in Sp(4,R) with s . (i I) = Z(x), inside both
    standard parabolics."""
    Z = z_from_coords(x)
    Y = Z.imag
    X = Z.real
    L = _chol_lower(Y)
    Lit = np.linalg.inv(L).T
    g = np.zeros((4, 4))
    g[:2, :2] = L
    g[:2, 2:] = X @ Lit
    g[2:, 2:] = Lit
    return g


def section_mc(x):
    """List of s^{-1} d_i s over the six chart directions (analytic)."""
    Z = z_from_coords(x)
    Y = Z.imag
    X = Z.real
    L = _chol_lower(Y)
    Linv = np.linalg.inv(L)
    Lit = Linv.T
    s = section(x)
    sinv = np.linalg.inv(s)
    out = []
    for k in range(6):
        dX = np.zeros((2, 2))
        dY = np.zeros((2, 2))
        i, j = [(0, 0), (0, 1), (1, 1)][k % 3]
        if k < 3:
            dX[i, j] = dX[j, i] = 1.0
        else:
            dY[i, j] = dY[j, i] = 1.0
        # Cholesky differential: dL = L Phi(L^{-1} dY L^{-T})
        M = Linv @ dY @ Linv.T
        Phi = np.tril(M, -1) + np.diag(np.diag(M)) / 2.0
        dL = L @ Phi
        dLit = -Lit @ dL.T @ Lit
        ds = np.zeros((4, 4))
        ds[:2, :2] = dL
        ds[:2, 2:] = dX @ Lit + X @ dLit
        ds[2:, 2:] = dLit
        out.append(sinv @ ds)
    return out


# ---------------------------------------------------------------------------


class SiegelModel:
    """Bundle data and patched-connection evaluators on the three strata."""

    def __init__(self, rep_name="std", eps0=1.0):
        self.spec = liecore.sp2nR(2)
        self.rep = hcrepr.builtin_representation(self.spec, rep_name)
        self.pdK = liecore.parabolic_data(self.spec, (1,))   # normalizes Y
        self.pdS = liecore.parabolic_data(self.spec, (2,))   # normalizes Z
        self.extK = hcrepr.canonical_extension(self.rep, 1)
        self.extS = hcrepr.canonical_extension(self.rep, 2)
        self.ext21 = hcrepr.relative_extension(self.rep, 1, 2)
        self.model = strata.FlagTubeModel(
            strata=[{"name": "Z", "dimC": 0}, {"name": "Y", "dimC": 1},
                    {"name": "X", "dimC": 3}],
            flags=[["Z", "Y", "X"]], eps0=eps0)
        # Borel split data inside the hermitian sl(2) on the (e0, f0) plane
        H = np.zeros((4, 4)); H[0, 0] = 1.0; H[2, 2] = -1.0
        E = np.zeros((4, 4)); E[0, 2] = 1.0
        F = np.zeros((4, 4)); F[2, 0] = 1.0
        self._W_H, self._W_E, self._W_F = H, E, F
        self._kcache = {}

    # control data ------------------------------------------------------

    def rho_Z(self, x):
        return 1.0 / x[3]

    def rho_Y(self, x):
        return 1.0 / x[5]

    def model_point(self, x):
        return self.model.point(("Z", "Y", "X"), (self.rho_Z(x), self.rho_Y(x)))

    def model_point_Y(self, y11):
        return self.model.point(("Z", "Y"), (1.0 / y11,))

    def pi_Y(self, x):
        """Chart projection to the H_1 coordinates (x11, y11)."""
        return [x[0], x[3]]

    # hermitian-plane helpers -------------------------------------------

    def _borel_split_W(self, hdot, tol=1e-8):
        """hdot in the Borel of sl(2)_W -> (l_part, u_part)."""
        a = hdot[0, 0]
        b = hdot[0, 2]
        c = hdot[2, 0]
        if abs(c) > tol * max(1.0, float(np.max(np.abs(hdot)))):
            raise PreconditionFailed("hermitian component not in the plane Borel")
        return a * self._W_H, b * self._W_E

    def _h1_point(self, g_h):
        """H_1 coordinate of g_h . i for g_h in the (e0, f0) plane block."""
        a, b = g_h[0, 0], g_h[0, 2]
        c, d = g_h[2, 0], g_h[2, 2]
        z = (a * 1j + b) / (c * 1j + d)
        return complex(z)

    # connection-form evaluators ----------------------------------------
    # each takes (x, mc) with mc = s^{-1} ds(v) and returns an End(V) matrix

    def omega_nomizu(self, x, mc):
        k, _ = liecore.cartan_split(self.spec, mc)
        return self.rep.lam_alg(k)

    def omega_XZ(self, x, mc):
        """Induced from the point stratum through the Lagrangian parabolic."""
        _, _, ldot = self.pdS.split(mc)
        return self.extS.alg(ldot)

    def omega_Y_nomizu(self, g_h, hdot):
        k, _ = liecore.cartan_split(self.spec, hdot)
        return self.extK.alg(k)

    def omega_YZ(self, g_h, hdot):
        """Induced from the point through the plane Borel of sl(2)_W."""
        lW, _ = self._borel_split_W(hdot)
        return self.ext21.alg(lW)

    def omega_Y_patched(self, g_h, hdot):
        """Patched connection on the Y stratum, at L_{g_h} hdot."""
        z = self._h1_point(g_h)
        ypt = self.model_point_Y(z.imag)
        md = self.model
        bY = md.B("Y", md.eps("Y"), ypt)
        bZ = md.B("Z", md.eps("Y"), ypt)
        return bY * self.omega_Y_nomizu(g_h, hdot) + bZ * self.omega_YZ(g_h, hdot)

    def _klingen_data(self, x, mc):
        _, hdot, ldot = self.pdK.split(mc)
        xt = tuple(map(float, x))
        hit = self._kcache.get(xt)
        if hit is None:
            if len(self._kcache) > 256:
                self._kcache.clear()
            _, g_h, g_l = liecore.group_factor(self.pdK, section(x))
            lam = self.extK(np.linalg.inv(g_l))
            hit = (g_h, lam, np.linalg.inv(lam))
            self._kcache[xt] = hit
        g_h, lam, lam_inv = hit
        return hdot, ldot, g_h, lam, lam_inv

    def omega_XY(self, x, mc, base="patched"):
        """Pullback through the rank-1 parabolic of a connection on Y."""
        hdot, ldot, g_h, lam, lam_inv = self._klingen_data(x, mc)
        if base == "patched":
            val = self.omega_Y_patched(g_h, hdot)
        elif base == "nomizu":
            val = self.omega_Y_nomizu(g_h, hdot)
        elif base == "point":
            val = self.omega_YZ(g_h, hdot)
        else:
            raise ValueError(base)
        return self.extK.alg(ldot) + lam @ val @ lam_inv

    # patched connection on X -------------------------------------------

    def omega_patched(self, x, mc):
        """Recursive definition of the patched form."""
        md = self.model
        pt = self.model_point(x)
        epsX = md.eps("X")
        val = md.B("X", epsX, pt) * self.omega_nomizu(x, mc)
        bY = md.B("Y", epsX, pt)
        if bY != 0.0:
            val = val + bY * self.omega_XY(x, mc, base="patched")
        bZ = md.B("Z", epsX, pt)
        if bZ != 0.0:
            val = val + bZ * self.omega_XZ(x, mc)
        return val

    def omega_patched_chain(self, x, mc):
        """Closed chain form of the same connection."""
        md = self.model
        pt = self.model_point(x)
        ptY = md.pi(pt, "Y")
        epsX, epsY, epsZ = md.eps("X"), md.eps("Y"), md.eps("Z")
        w_top = md.B("X", epsX, pt)
        wYX = md.B("Y", epsX, pt) * md.B("Y", epsY, ptY)
        wZX = md.B("Z", epsX, pt) * md.B("Z", epsZ, md.pi(pt, "Z"))
        wZYX = md.B("Y", epsX, pt) * md.B("Z", epsY, ptY)
        val = w_top * self.omega_nomizu(x, mc)
        if wYX != 0.0:
            val = val + wYX * self.omega_XY(x, mc, base="nomizu")
        if wZX != 0.0:
            val = val + wZX * self.omega_XZ(x, mc)
        if wZYX != 0.0:
            val = val + wZYX * self.omega_XY(x, mc, base="point")
        return val

    def omega_patched_localized(self, x, mc):
        """Localized form around the base stratum W; returns (value, W, wsum)."""
        md = self.model
        pt = self.model_point(x)
        W = md.localization_base(pt)
        if W == "X":
            return self.omega_patched(x, mc), W, 1.0
        if W == "Y":
            w = md.B("Y", md.eps("X"), pt)
            return w * self.omega_XY(x, mc, base="patched"), W, w
        # W == "Z": chains Z<X and Z<Y<X
        ptY = md.pi(pt, "Y")
        wZX = md.B("Z", md.eps("X"), pt)
        wZYX = md.B("Y", md.eps("X"), pt) * md.B("Z", md.eps("Y"), ptY)
        val = None
        if wZX != 0.0:
            val = wZX * self.omega_XZ(x, mc)
        if wZYX != 0.0:
            t = wZYX * self.omega_XY(x, mc, base="point")
            val = t if val is None else val + t
        return val, W, wZX + wZYX

    # chart forms --------------------------------------------------------

    def form_from_evaluator(self, evaluator) -> ext.VForm:
        """Assemble a chart VForm from an (x, mc) -> End(V) evaluator.

        All six coefficients at a point come from one section/split pass
        (the numerical differentiation in exterior_d revisits points)."""
        cache = {}

        def allvals(xt):
            if xt not in cache:
                if len(cache) > 256:
                    cache.clear()
                x = list(xt)
                mcs = section_mc(x)
                cache[xt] = [evaluator(x, mc) for mc in mcs]
            return cache[xt]

        comps = {}
        for i in range(6):
            def cf(x, i=i):
                xt = tuple(float(np.real(v)) for v in x)
                return allvals(xt)[i]
            comps[(i,)] = ext.SmoothMap(6, cf)
        return ext.VForm(6, 1, comps)

    def projection_map(self) -> ext.SmoothMap:
        """pi_Y as a chart map (6 coords -> 2 coords), analytic Jacobian."""
        J = np.zeros((6, 2))
        J[0, 0] = 1.0
        J[3, 1] = 1.0
        return ext.SmoothMap(6, lambda x: np.array([x[0], x[3]]),
                             jac=lambda x: J)
