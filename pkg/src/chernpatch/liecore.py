"""Matrix models for the small-rank reductive groups used throughout.

Supported families:

* ``sp2nR``  -- Sp(2n, R), real symplectic group for J = [[0, I], [-I, 0]], n <= 3
* ``su_pq`` -- SU(p, q) preserving H = diag(I_p, -I_q), p + q <= 4
* ``su2``   -- SU(2)
* ``u``     -- U(n)
* ``so2``   -- SO(2)

Elements are plain numpy arrays; the functions here validate the defining
relations, split along the Cartan involution theta(X) = -X^H, and build
parabolic subalgebra data for isotropic flags.

All numeric work is float64/complex128 with default tolerance 1e-9.  The
purely algebraic operations (bracket, cartan_split, residuals) also accept
object-dtype arrays of ``fractions.Fraction`` for exact checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import DecompositionError, UnsupportedFlag

TOL = 1e-9


# ---------------------------------------------------------------------------
# group specs


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int = 0
    p: int = 0
    q: int = 0

    @property
    def size(self) -> int:
        if self.family == "sp2nR":
            return 2 * self.n
        if self.family == "su_pq":
            return self.p + self.q
        if self.family == "su2":
            return 2
        if self.family == "u":
            return self.n
        if self.family == "so2":
            return 2
        raise ValueError(f"unknown family {self.family}")

    @property
    def form(self):
        """Invariant bilinear/hermitian form (J or H), or None."""
        if self.family == "sp2nR":
            n = self.n
            J = np.zeros((2 * n, 2 * n))
            J[:n, n:] = np.eye(n)
            J[n:, :n] = -np.eye(n)
            return J
        if self.family == "su_pq":
            return np.diag([1.0] * self.p + [-1.0] * self.q)
        return None


def sp2nR(n: int) -> GroupSpec:
    if not 1 <= n <= 3:
        raise ValueError("sp2nR supported for 1 <= n <= 3")
    return GroupSpec("sp2nR", n=n)


def su_pq(p: int, q: int) -> GroupSpec:
    if p < 1 or q < 1 or p + q > 4:
        raise ValueError("su_pq supported for p,q >= 1, p + q <= 4")
    return GroupSpec("su_pq", p=p, q=q)


def su2() -> GroupSpec:
    return GroupSpec("su2")


def u_n(n: int) -> GroupSpec:
    if not 1 <= n <= 4:
        raise ValueError("u supported for 1 <= n <= 4")
    return GroupSpec("u", n=n)


def so2() -> GroupSpec:
    return GroupSpec("so2")


# ---------------------------------------------------------------------------
# defining relations


def _conjT(X):
    if X.dtype == object:
        return X.T
    return X.conj().T


def alg_residual(spec: GroupSpec, X) -> float:
    """Residual of the linearized defining relation at X."""
    fam = spec.family
    if fam == "sp2nR":
        J = spec.form
        R = X.T @ J + J @ X
        r = float(np.max(np.abs(R)))
        r = max(r, float(np.max(np.abs(np.asarray(X, dtype=complex).imag))))
        return r
    if fam == "su_pq":
        H = spec.form
        R = _conjT(X) @ H + H @ X
        return max(float(np.max(np.abs(R))), abs(complex(np.trace(X)).real) + abs(complex(np.trace(X)).imag) * 0.0, abs(complex(np.trace(X))))
    if fam == "su2":
        R = _conjT(X) + X
        return max(float(np.max(np.abs(R))), abs(complex(np.trace(X))))
    if fam == "u":
        R = _conjT(X) + X
        return float(np.max(np.abs(R)))
    if fam == "so2":
        R = X.T + X
        return float(np.max(np.abs(R)))
    raise ValueError(fam)


def grp_residual(spec: GroupSpec, g) -> float:
    """Residual of the group defining relation at g."""
    fam = spec.family
    if fam == "sp2nR":
        J = spec.form
        R = g.T @ J @ g - J
        r = float(np.max(np.abs(R)))
        return max(r, float(np.max(np.abs(np.asarray(g, dtype=complex).imag))))
    if fam == "su_pq":
        H = spec.form
        R = _conjT(g) @ H @ g - H
        return max(float(np.max(np.abs(R))), abs(np.linalg.det(np.asarray(g, dtype=complex)) - 1.0))
    if fam == "su2":
        R = _conjT(g) @ g - np.eye(2)
        return max(float(np.max(np.abs(R))), abs(np.linalg.det(np.asarray(g, dtype=complex)) - 1.0))
    if fam == "u":
        R = _conjT(g) @ g - np.eye(spec.n)
        return float(np.max(np.abs(R)))
    if fam == "so2":
        R = g.T @ g - np.eye(2)
        return max(float(np.max(np.abs(R))), abs(float(np.linalg.det(np.asarray(g, dtype=float))) - 1.0))
    raise ValueError(fam)


def check_alg(spec: GroupSpec, X, tol: float = TOL):
    r = alg_residual(spec, X)
    if isinstance(r, Fraction):
        ok = r == 0
    else:
        ok = r <= tol
    if not ok:
        raise DecompositionError(f"not in Lie algebra of {spec.family}: residual {r}")
    return X


def check_grp(spec: GroupSpec, g, tol: float = TOL):
    r = grp_residual(spec, g)
    if not r <= tol:
        raise DecompositionError(f"not in {spec.family}: residual {r}")
    return g


# ---------------------------------------------------------------------------
# algebra bases

def _sym_basis(n):
    out = []
    for i in range(n):
        for j in range(i, n):
            S = np.zeros((n, n))
            S[i, j] = 1.0
            S[j, i] = 1.0
            out.append(S)
    return out


def algebra_basis(spec: GroupSpec):
    """Real basis of the Lie algebra, as a list of numpy matrices."""
    fam = spec.family
    if fam == "sp2nR":
        n = spec.n
        out = []
        for i in range(n):
            for j in range(n):
                A = np.zeros((n, n))
                A[i, j] = 1.0
                X = np.zeros((2 * n, 2 * n))
                X[:n, :n] = A
                X[n:, n:] = -A.T
                out.append(X)
        for S in _sym_basis(n):
            X = np.zeros((2 * n, 2 * n))
            X[:n, n:] = S
            out.append(X)
        for S in _sym_basis(n):
            X = np.zeros((2 * n, 2 * n))
            X[n:, :n] = S
            out.append(X)
        return out
    if fam in ("su_pq", "su2"):
        N = spec.size
        H = spec.form if fam == "su_pq" else np.eye(2)
        out = []
        # off-diagonal: for i<j the pair (E_ij - s E_ji) and i(E_ij + s E_ji)
        # with s = H_ii H_jj sign so that X^H H + H X = 0
        for i in range(N):
            for j in range(i + 1, N):
                s = H[i, i] * H[j, j]
                X = np.zeros((N, N), dtype=complex)
                X[i, j] = 1.0
                X[j, i] = -s
                out.append(X)
                Y = np.zeros((N, N), dtype=complex)
                Y[i, j] = 1.0j
                Y[j, i] = 1.0j * s
                out.append(Y)
        # traceless diagonal imaginary
        for i in range(N - 1):
            X = np.zeros((N, N), dtype=complex)
            X[i, i] = 1.0j
            X[i + 1, i + 1] = -1.0j
            out.append(X)
        return out
    if fam == "u":
        n = spec.n
        out = []
        for i in range(n):
            X = np.zeros((n, n), dtype=complex)
            X[i, i] = 1.0j
            out.append(X)
        for i in range(n):
            for j in range(i + 1, n):
                X = np.zeros((n, n), dtype=complex)
                X[i, j] = 1.0
                X[j, i] = -1.0
                out.append(X)
                Y = np.zeros((n, n), dtype=complex)
                Y[i, j] = 1.0j
                Y[j, i] = 1.0j
                out.append(Y)
        return out
    if fam == "so2":
        return [np.array([[0.0, -1.0], [1.0, 0.0]])]
    raise ValueError(fam)


def _vec(X):
    """Flatten a (possibly complex) matrix into a real coordinate vector."""
    X = np.asarray(X, dtype=complex)
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def algebra_coords(spec: GroupSpec, X, basis=None, tol: float = 1e-8):
    """Coordinates of X in the real algebra basis; error if X is not in it."""
    if basis is None:
        basis = algebra_basis(spec)
    B = np.stack([_vec(b) for b in basis], axis=1)
    v = _vec(X)
    c, res, *_ = np.linalg.lstsq(B, v, rcond=None)
    if np.max(np.abs(B @ c - v)) > tol * max(1.0, np.max(np.abs(v))):
        raise DecompositionError("matrix not in the spanned Lie algebra")
    return c


def from_coords(coords, basis):
    out = None
    for c, b in zip(coords, basis):
        term = c * b
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# bracket and Cartan split


def bracket(X, Y):
    return X @ Y - Y @ X


def cartan_theta(spec: GroupSpec, X):
    return -_conjT(X)


def cartan_split(spec: GroupSpec, X):
    """(k, p) with X = k + p, theta(k) = k, theta(p) = -p."""
    th = cartan_theta(spec, X)
    if X.dtype == object:
        half = Fraction(1, 2)
    else:
        half = 0.5
    k = half * (X + th)
    p = half * (X - th)
    return k, p


def exp_grp(spec: GroupSpec, X, check: bool = True, tol: float = TOL):
    g = scipy.linalg.expm(np.asarray(X, dtype=complex))
    if spec.family in ("sp2nR", "so2"):
        g = g.real
    if check:
        check_grp(spec, g, tol=max(tol, 1e-8 * float(np.linalg.norm(g))))
    return g


def log_alg(spec: GroupSpec, g, check: bool = True, tol: float = TOL):
    """Principal matrix logarithm; requires g in the convergence region."""
    N = spec.size
    if np.linalg.norm(np.asarray(g, dtype=complex) - np.eye(N), 2) >= 1.0 - 1e-12:
        # logm still works beyond the series radius, but guarantee is gone
        evals = np.linalg.eigvals(np.asarray(g, dtype=complex))
        if np.any(evals.real <= 0) and np.any(np.abs(evals.imag) < 1e-12):
            raise DecompositionError("group element outside the principal log domain")
    X = scipy.linalg.logm(np.asarray(g, dtype=complex))
    if spec.family in ("sp2nR", "so2"):
        X = X.real
    if check:
        check_alg(spec, X, tol=max(tol, 1e-8 * float(np.linalg.norm(X) + 1.0)))
    return X


def adjoint(g, X):
    return g @ X @ np.linalg.inv(g)


def random_alg(spec: GroupSpec, rng, scale: float = 1.0):
    basis = algebra_basis(spec)
    c = rng.standard_normal(len(basis)) * scale
    return from_coords(c, basis)


# ---------------------------------------------------------------------------
# parabolic data
#
# Standard maximal parabolics of Sp(2n,R) are stabilizers of the isotropic
# subspace spanned by the last r of the Lagrangian basis vectors e_1..e_n;
# that way the hermitian Levi factor Sp(2(n-r)) sits in the leading plane
# block and matches the chart projection onto leading principal blocks.
# For SU(p,q) the rank-r isotropic subspace is spanned by
# (e_i + e_{p+i})/sqrt(2), i = 1..r.


def _iso_subspace(spec: GroupSpec, r: int):
    """Columns spanning the standard isotropic subspace of rank r."""
    N = spec.size
    if spec.family == "sp2nR":
        n = spec.n
        if not 1 <= r <= n:
            raise UnsupportedFlag(f"rank {r} isotropic subspace in sp2nR(n={n})")
        V = np.zeros((N, r))
        for a in range(r):
            V[n - r + a, a] = 1.0
        return V
    if spec.family == "su_pq":
        p, q = spec.p, spec.q
        if not 1 <= r <= min(p, q):
            raise UnsupportedFlag(f"rank {r} isotropic subspace in su({p},{q})")
        V = np.zeros((N, r), dtype=complex)
        for a in range(r):
            V[a, a] = 1.0 / np.sqrt(2)
            V[p + a, a] = 1.0 / np.sqrt(2)
        return V
    raise UnsupportedFlag(f"parabolic data not defined for family {spec.family}")


def _nullspace_combos(basis, constraint):
    """Sub-span {X in span(basis) : constraint(X) = 0}; returns matrices."""
    rows = []
    for b in basis:
        rows.append(_vec(constraint(b)))
    M = np.stack(rows, axis=1)
    ns = scipy.linalg.null_space(M, rcond=1e-10)
    return [from_coords(ns[:, k], basis) for k in range(ns.shape[1])]


def _span_intersection(basA, basB):
    if not basA or not basB:
        return []
    A = np.stack([_vec(x) for x in basA], axis=1)
    B = np.stack([_vec(x) for x in basB], axis=1)
    ns = scipy.linalg.null_space(np.hstack([A, -B]), rcond=1e-10)
    out = []
    for k in range(ns.shape[1]):
        out.append(from_coords(ns[: A.shape[1], k], basA))
    return _orthonormalize(out)


def _orthonormalize(mats, tol=1e-10):
    out = []
    for m in mats:
        v = _vec(m)
        for o in out:
            v = v - np.dot(_vec(o), v) * _vec(o)
        nrm = np.linalg.norm(v)
        if nrm > tol:
            M = v[: v.size // 2].reshape(m.shape) + 1j * v[v.size // 2:].reshape(m.shape)
            if np.max(np.abs(M.imag)) < 1e-14:
                M = M.real
            out.append(M / nrm)
    # renormalize in matrix form
    return [m / np.linalg.norm(_vec(m)) for m in out]


@dataclass
class ParabolicData:
    """Subalgebra data for a standard parabolic given by an isotropic flag.

    flag is an increasing tuple of ranks (r_1 < ... < r_m); the parabolic is
    the intersection of the maximal parabolics P^(r_i).  P_1 below always
    refers to the maximal parabolic of the largest rank (the one with the
    smallest hermitian part).
    """

    spec: GroupSpec
    flag: tuple
    basis_u: list = field(repr=False)        # nilradical of Lie(Q)
    basis_u1: list = field(repr=False)       # nilradical of Lie(P_1)
    basis_u_rel: list = field(repr=False)    # U_{P_1 Q} = Lie(U_Q) cap Levi(P_1)
    basis_h: list = field(repr=False)        # hermitian Levi part g_{1h}
    basis_l: list = field(repr=False)        # linear Levi part g_{Q ell}
    _split_mat: np.ndarray = field(repr=False, default=None)

    @property
    def dims(self):
        return (len(self.basis_u), len(self.basis_h), len(self.basis_l))

    @property
    def basis_q(self):
        return list(self.basis_u) + list(self.basis_h) + list(self.basis_l)

    def contains_alg(self, X, tol=1e-8) -> bool:
        try:
            self.split(X, tol=tol)
            return True
        except DecompositionError:
            return False

    def split(self, X, tol: float = 1e-8):
        """Split X in Lie(Q) into (u, h, l) components."""
        if self._split_mat is None:
            self._split_mat = np.stack([_vec(b) for b in self.basis_q], axis=1)
        v = _vec(X)
        c, *_ = np.linalg.lstsq(self._split_mat, v, rcond=None)
        if np.max(np.abs(self._split_mat @ c - v)) > tol * max(1.0, np.max(np.abs(v))):
            raise DecompositionError("element not in the parabolic subalgebra")
        nu, nh = len(self.basis_u), len(self.basis_h)
        Z = np.zeros_like(np.asarray(X, dtype=float if X.dtype != complex else complex))
        u = from_coords(c[:nu], self.basis_u) if nu else Z.copy()
        h = from_coords(c[nu:nu + nh], self.basis_h) if nh else Z.copy()
        l = from_coords(c[nu + nh:], self.basis_l)
        return u, h, l

    def split_u(self, U, tol: float = 1e-8):
        """Split a nilpotent part into (u_1, u_rel) along U_Q = U_1 + U_{P_1 Q}."""
        basis = list(self.basis_u1) + list(self.basis_u_rel)
        B = np.stack([_vec(b) for b in basis], axis=1)
        v = _vec(U)
        c, *_ = np.linalg.lstsq(B, v, rcond=None)
        if np.max(np.abs(B @ c - v)) > tol * max(1.0, np.max(np.abs(v))):
            raise DecompositionError("element not in Lie(U_Q)")
        n1 = len(self.basis_u1)
        Z = np.zeros_like(np.asarray(U, dtype=float if U.dtype != complex else complex))
        u1 = from_coords(c[:n1], self.basis_u1) if n1 else Z.copy()
        ur = from_coords(c[n1:], self.basis_u_rel) if len(basis) > n1 else Z.copy()
        return u1, ur


def parabolic_data(spec: GroupSpec, flag) -> ParabolicData:
    flag = tuple(flag)
    if not flag or list(flag) != sorted(set(flag)):
        raise UnsupportedFlag(f"flag must be strictly increasing, got {flag}")
    basis = algebra_basis(spec)
    subspaces = [_iso_subspace(spec, r) for r in flag]

    # Lie(Q) = { X : X V_i subset V_i for all i }
    def stab_constraint(V):
        P = V @ np.linalg.pinv(V)

        def c(X):
            return (np.eye(spec.size) - P) @ (X @ V)
        return c

    bas_q = basis
    for V in subspaces:
        bas_q = _nullspace_combos(bas_q, stab_constraint(V))
    bas_q = _orthonormalize(bas_q)

    # theta-stable Levi: Lie(Q) cap theta(Lie(Q))
    theta_q = [cartan_theta(spec, X) for X in bas_q]
    levi = _span_intersection(bas_q, theta_q)

    # nilradical = radical of the trace form on Lie(Q)
    def trace_radical(bas):
        G = np.array([[complex(np.trace(a @ b)).real for b in bas] for a in bas])
        ns = scipy.linalg.null_space(G, rcond=1e-10)
        return _orthonormalize([from_coords(ns[:, k], bas) for k in range(ns.shape[1])])

    bas_u = trace_radical(bas_q)

    # largest-rank maximal parabolic P_1 and its pieces
    rmax = flag[-1]
    Vmax = subspaces[-1]
    bas_p1 = _orthonormalize(_nullspace_combos(basis, stab_constraint(Vmax)))
    bas_u1 = trace_radical(bas_p1)
    levi1 = _span_intersection(bas_p1, [cartan_theta(spec, X) for X in bas_p1])
    bas_u_rel = _span_intersection(bas_u, levi1)

    # hermitian part: kills V_max and its form-dual
    form = spec.form
    Vbar = form @ Vmax.conj() if spec.family == "su_pq" else form @ Vmax

    def kill_constraint(X):
        return np.hstack([X @ Vmax, X @ Vbar])

    bas_h = _orthonormalize(_nullspace_combos(levi, kill_constraint))

    # linear part: centralizer of g_{1h} in the Levi
    if bas_h:
        def comm_constraint(X):
            return np.hstack([bracket(X, Y) for Y in bas_h])
        bas_l = _orthonormalize(_nullspace_combos(levi, comm_constraint))
    else:
        bas_l = levi

    pd = ParabolicData(spec=spec, flag=flag, basis_u=bas_u, basis_u1=bas_u1,
                       basis_u_rel=bas_u_rel, basis_h=bas_h, basis_l=bas_l)
    # consistency: dims add up and h/l commute
    if len(bas_u) + len(bas_h) + len(bas_l) != len(bas_q):
        raise DecompositionError("parabolic decomposition dimensions inconsistent")
    for X in bas_h:
        for Y in bas_l:
            if np.max(np.abs(bracket(X, Y))) > 1e-8:
                raise DecompositionError("hermitian and linear Levi parts fail to commute")
    return pd


# ---------------------------------------------------------------------------
# group-level factorization (sp2nR only: coordinate subspaces make the
# embeddings exact)


def _sp_indices(spec: GroupSpec, r: int):
    n = spec.n
    idx_v = list(range(n - r, n))                  # e-part of V
    idx_vbar = list(range(2 * n - r, 2 * n))       # f-part (dual of V)
    idx_w = list(range(0, n - r)) + list(range(n, 2 * n - r))
    return idx_v, idx_vbar, idx_w


def sp_hermitian_block(spec: GroupSpec, r: int, g):
    """Restrict to the W = V^perp/V plane block; lands in Sp(2(n-r),R)."""
    _, _, idx_w = _sp_indices(spec, r)
    return np.asarray(g)[np.ix_(idx_w, idx_w)]


def sp_embed_hermitian(spec: GroupSpec, r: int, h):
    _, _, idx_w = _sp_indices(spec, r)
    N = spec.size
    out = np.eye(N, dtype=np.asarray(h).dtype)
    out[np.ix_(idx_w, idx_w)] = h
    return out


def sp_embed_gl(spec: GroupSpec, r: int, a):
    """Embed a in GL(r) as the linear Levi element acting as a on V."""
    idx_v, idx_vbar, _ = _sp_indices(spec, r)
    N = spec.size
    a = np.asarray(a, dtype=float)
    out = np.eye(N)
    out[np.ix_(idx_v, idx_v)] = a
    out[np.ix_(idx_vbar, idx_vbar)] = np.linalg.inv(a).T
    return out


def group_factor(pd: ParabolicData, g, tol: float = 1e-8):
    """Factor g in Q as (u, g_h, g_l) with u in U_Q, per the Levi split.

    For a flag of length > 1 the unipotent GL(V) part is folded into u, so
    g_l is the block-diagonal linear Levi element.  Only implemented for
    sp2nR (coordinate isotropic subspaces).
    """
    spec = pd.spec
    if spec.family != "sp2nR":
        raise UnsupportedFlag("group factorization implemented for sp2nR only")
    u, g1h, urel, gql = group_factor_fine(pd, g, tol=tol)
    u_full = u @ g1h @ urel @ np.linalg.inv(g1h)
    # u_full = u * (g1h urel g1h^{-1}); both factors unipotent in U_Q's group
    return u_full, g1h, gql


def group_factor_fine(pd: ParabolicData, g, tol: float = 1e-8):
    """Factor g in Q as (u_1, g_{1h}, u_rel, g_{Ql}), in that product order."""
    spec = pd.spec
    if spec.family != "sp2nR":
        raise UnsupportedFlag("group factorization implemented for sp2nR only")
    g = np.asarray(g, dtype=float)
    n = spec.n
    rmax = pd.flag[-1]
    idx_v, _, _ = _sp_indices(spec, rmax)

    a_full = g[np.ix_(idx_v, idx_v)]               # action on V, block triangular
    # sub-flag block sizes inside V (coordinates ordered e_{n-rmax}..e_{n-1};
    # the rank-r_i subspace is the span of the *last* r_i of these)
    ranks = list(pd.flag)
    cuts = [rmax - r for r in reversed(ranks)] + [rmax]   # ascending cut points
    cuts = sorted(set([0] + cuts))
    blocks = [(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)]
    # a_full is block *lower*-triangular w.r.t. these cuts is false; V_small is
    # the span of the last coordinates, so invariance makes a_full block
    # lower-right triangular: entries below the block diagonal vanish on the
    # left of each invariant tail.  Concretely a_full[i, j] = 0 when i-block < j-block.
    d = np.zeros_like(a_full)
    for (s, e) in blocks:
        d[s:e, s:e] = a_full[s:e, s:e]
    nmat = a_full @ np.linalg.inv(d)
    for (s, e) in blocks:
        blk = nmat[s:e, s:e]
        if np.max(np.abs(blk - np.eye(e - s))) > tol * max(1.0, np.max(np.abs(a_full))):
            raise DecompositionError("group element not in the parabolic cell")

    g_ql = sp_embed_gl(spec, rmax, d)
    u_rel = sp_embed_gl(spec, rmax, nmat)
    h_small = sp_hermitian_block(spec, rmax, g)
    g_1h = sp_embed_hermitian(spec, rmax, h_small)
    u1 = g @ np.linalg.inv(g_1h @ u_rel @ g_ql)
    # validate u1 against Lie(U_1)
    X = u1 - np.eye(spec.size)
    # U_1 is abelian iff rmax = n; in general exp is polynomial, log via series
    L = scipy.linalg.logm(u1).real
    B = np.stack([_vec(b) for b in pd.basis_u1], axis=1) if pd.basis_u1 else None
    if B is not None:
        c, *_ = np.linalg.lstsq(B, _vec(L), rcond=None)
        if np.max(np.abs(B @ c - _vec(L))) > 1e-7 * max(1.0, np.max(np.abs(L))):
            raise DecompositionError("unipotent factor not in U_1")
    elif np.max(np.abs(X)) > tol:
        raise DecompositionError("unexpected unipotent factor")
    return u1, g_1h, u_rel, g_ql
