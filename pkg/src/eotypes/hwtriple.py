"""Hasse-Witt triples of complete intersection curves.

For a smooth curve cut out by forms f_1..f_(n-1) in P^n (char p not dividing
any degree), the triple consists of the space Q of dual classes in degree -d,
the Hasse-Witt operator on it, and the second operator from the kernel of the
first into the annihilator of its image. The plane-curve path extracts both
operators by pure coefficient bookkeeping in f^(p-1) and f^(p-2); the general
path multiplies classes through the dual module directly.
"""

from __future__ import annotations

from math import prod

import numpy as np

from .errors import ConstraintError, InternalInvariantError, SingularCurveError
from .gf import DTYPE, GF
from .polyring import (GradedPoly, TClass, monomial_basis, partial_derivative,
                       poly_mul, poly_pow, t_multiply)
from .semilinear import Subspace, null_space, rank, rref, solve_matrix


class CurveCI:
    """Complete intersection curve Z(f_1, ..., f_(n-1)) in P^n."""

    def __init__(self, field: GF, polys):
        polys = list(polys)
        if not polys:
            raise ConstraintError("a curve needs at least one defining form")
        nvars = polys[0].nvars
        n = nvars - 1
        if n < 2:
            raise ConstraintError("ambient projective dimension must be >= 2")
        if len(polys) != n - 1:
            raise ConstraintError(
                f"a curve in P^{n} needs {n - 1} forms, got {len(polys)}")
        for f in polys:
            if f.field != field or f.nvars != nvars:
                raise ConstraintError("defining forms live in different rings")
            if f.degree < 2:
                raise ConstraintError("defining forms must have degree >= 2")
            if f.degree % field.p == 0:
                raise ConstraintError(
                    f"characteristic {field.p} divides the degree {f.degree}")
        self.field = field
        self.n = n
        self.nvars = nvars
        self.polys = polys
        self.degrees = tuple(f.degree for f in polys)
        self.d = sum(self.degrees)
        if n == 2 and self.d < 3:
            raise ConstraintError("a plane curve must have degree >= 3")
        self._cache = {}

    def __repr__(self):
        return f"CurveCI(P^{self.n}, degrees={self.degrees}, {self.field!r})"

    def _power(self, i: int, e: int) -> GradedPoly:
        key = ("pow", i, e)
        if key not in self._cache:
            self._cache[key] = poly_pow(self.polys[i], e)
        return self._cache[key]

    def _product_pm1(self) -> GradedPoly:
        """(f_1 ... f_(n-1))^(p-1)."""
        key = "prod_pm1"
        if key not in self._cache:
            acc = self._power(0, self.field.p - 1)
            for i in range(1, len(self.polys)):
                acc = poly_mul(acc, self._power(i, self.field.p - 1))
            self._cache[key] = acc
        return self._cache[key]

    def _product_pm1_over(self, ell: int) -> GradedPoly:
        """(f_1 ... f_(n-1))^(p-1) / f_ell."""
        key = ("prod_over", ell)
        if key not in self._cache:
            acc = self._power(ell, self.field.p - 2)
            for i in range(len(self.polys)):
                if i != ell:
                    acc = poly_mul(acc, self._power(i, self.field.p - 1))
            self._cache[key] = acc
        return self._cache[key]


def plane_curve(field: GF, f: GradedPoly) -> CurveCI:
    return CurveCI(field, [f])


def genus(curve: CurveCI) -> int:
    """Arithmetic genus; for n >= 3 cross-checked against dim Q."""
    if curve.n == 2:
        d = curve.d
        g = (d - 1) * (d - 2) // 2
    else:
        deg = prod(curve.degrees)
        twice = deg * (curve.d - curve.n - 1)
        if twice % 2:
            raise InternalInvariantError("genus formula did not give an integer")
        g = 1 + twice // 2
    if g < 1:
        raise ConstraintError("genus 0 configurations are not supported")
    if curve.n >= 3 and ci_q_basis(curve).dim != g:
        raise SingularCurveError(
            f"dim Q = {ci_q_basis(curve).dim} differs from the genus {g}")
    return g


def plane_smoothness_check(curve: CurveCI) -> bool:
    """True iff the partials of f generate everything in degree 3d-5,
    i.e. they have no common projective zero."""
    if curve.n != 2:
        raise ConstraintError("smoothness check only implemented for plane curves")
    field = curve.field
    f = curve.polys[0]
    d = f.degree
    target = monomial_basis(3, 3 * d - 5)
    dom = monomial_basis(3, 2 * d - 4)
    cols = np.zeros((len(target), 3 * len(dom)), DTYPE)
    c = 0
    for j in range(3):
        df = partial_derivative(f, j)
        terms = [(e, int(v)) for e, v in zip(df.basis.monomials, df.coeffs) if v]
        for mexp in dom.monomials:
            for e, v in terms:
                cols[target.index[tuple(a + b for a, b in zip(e, mexp))], c] = v
            c += 1
    return rank(field, cols) == len(target)


def ci_q_basis(curve: CurveCI) -> Subspace:
    """Echelon basis of Q: the joint kernel of multiplication by each f_i
    on the degree -d piece of the dual module."""
    if "q_basis" in curve._cache:
        return curve._cache["q_basis"]
    field, nvars, d = curve.field, curve.nvars, curve.d
    N = TClass.basis_size(nvars, -d)
    blocks = []
    for f in curve.polys:
        if TClass.basis_size(nvars, -d + f.degree) == 0:
            continue
        blocks.append(_tmul_matrix(f, -d))
    if blocks:
        sub = Subspace.span(field, null_space(field, np.vstack(blocks)), ambient=N)
    else:
        sub = Subspace.full(field, N)
    if curve.n == 2:
        expected = (d - 1) * (d - 2) // 2
        if sub.dim != expected:
            raise InternalInvariantError("plane curve Q space has wrong dimension")
    curve._cache["q_basis"] = sub
    return sub


def _tmul_matrix(s: GradedPoly, src_degree: int):
    """Matrix of t -> s*t from the degree src_degree piece of T."""
    nvars = s.nvars
    n_src = TClass.basis_size(nvars, src_degree)
    n_tgt = TClass.basis_size(nvars, src_degree + s.degree)
    M = np.zeros((n_tgt, n_src), DTYPE)
    if n_tgt == 0:
        return M
    for k in range(n_src):
        unit = np.zeros(n_src, DTYPE)
        unit[k] = 1
        M[:, k] = t_multiply(s, TClass(s.field, nvars, src_degree, unit)).coeffs
    return M


def hasse_witt_matrix(curve: CurveCI):
    """Matrix of the Hasse-Witt operator: left action, twist 1."""
    if curve.n == 2:
        return _hw_plane_matrix(curve)
    return _hw_general_matrix(curve)


def _hw_plane_matrix(curve: CurveCI):
    field, p, d = curve.field, curve.field.p, curve.d
    md = monomial_basis(3, d - 3).monomials
    g = len(md)
    fp1 = poly_mul(curve.polys[0], curve._power(0, p - 2))
    A = np.zeros((g, g), DTYPE)
    fb = fp1.basis
    for j, mj in enumerate(md):
        for i, mi in enumerate(md):
            e = tuple(p * a + (p - 1) - b for a, b in zip(mj, mi))
            pos = fb.index.get(e)
            if pos is not None:
                A[i, j] = fp1.coeffs[pos]
    return A


def _hw_general_matrix(curve: CurveCI):
    field, nvars, d = curve.field, curve.nvars, curve.d
    qb = ci_q_basis(curve)
    F = curve._product_pm1()
    cols = []
    for row in qb.rows:
        t = TClass(field, nvars, -d, row)
        image = t_multiply(F, t.frobenius())
        cols.append(qb.coords_of(image.coeffs))
    return np.array(cols, DTYPE).T


def u_generator(curve: CurveCI):
    """Generator of the one-dimensional relation space behind the duality,
    as a tuple of T-classes (one per defining form), first nonzero
    coordinate normalized to 1."""
    if "u" in curve._cache:
        return curve._cache["u"]
    field, nvars, d, n = curve.field, curve.nvars, curve.d, curve.n
    src_degrees = [n + 1 - 2 * d - f.degree for f in curve.polys]
    sizes = [TClass.basis_size(nvars, m) for m in src_degrees]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    blocks = []
    # derivative conditions, one row block per variable
    for j in range(nvars):
        row = []
        for f, m in zip(curve.polys, src_degrees):
            row.append(_tmul_matrix(partial_derivative(f, j), m))
        blocks.append(np.hstack(row))
    if n >= 3:
        # membership of each component in the curve's dual module
        for ell, m in enumerate(src_degrees):
            for f in curve.polys:
                if TClass.basis_size(nvars, m + f.degree) == 0:
                    continue
                block = np.zeros((TClass.basis_size(nvars, m + f.degree),
                                  int(offsets[-1])), DTYPE)
                block[:, offsets[ell]:offsets[ell + 1]] = _tmul_matrix(f, m)
                blocks.append(block)
    kernel = null_space(field, np.vstack(blocks))
    if kernel.shape[0] != 1:
        raise SingularCurveError(
            f"curve fails smoothness necessary condition: dim U = {kernel.shape[0]} != 1")
    vec = kernel[0]
    first = int(np.nonzero(vec)[0][0])
    vec = field.mul(vec, field.inv_scalar(int(vec[first])))
    u = tuple(TClass(field, nvars, m, vec[offsets[i]:offsets[i + 1]])
              for i, m in enumerate(src_degrees))
    curve._cache["u"] = u
    return u


def psi_matrix(curve: CurveCI, A_phi, kappa, u):
    """Columns are the second operator's values on the twisted kernel basis,
    written in the dual of the Q basis."""
    g = A_phi.shape[0]
    kappa = np.asarray(kappa, DTYPE)
    h = kappa.shape[0]
    if h == 0:
        return np.zeros((g, 0), DTYPE)
    if curve.n == 2:
        return _psi_plane(curve, kappa, u)
    return _psi_general(curve, kappa, u)


def _psi_plane(curve: CurveCI, kappa, u):
    field, p, d = curve.field, curve.field.p, curve.d
    md = monomial_basis(3, d - 3).monomials
    big = monomial_basis(3, 2 * d - 3).monomials
    g, c = len(md), len(big)
    fp2 = curve._power(0, p - 2)
    fb = fp2.basis
    # rows of B: coordinates of m_j * u in the degree -2d piece
    B = np.zeros((g, c), DTYPE)
    for j, mj in enumerate(md):
        B[j] = t_multiply(GradedPoly.monomial(field, 3, mj), u[0]).coeffs
    if rank(field, B) != g:
        raise SingularCurveError("duality pairing is degenerate")
    C = np.zeros((g, c), DTYPE)
    for j, mj in enumerate(md):
        for i, Mi in enumerate(big):
            e = tuple(p * a + (p - 1) - b for a, b in zip(mj, Mi))
            pos = fb.index.get(e)
            if pos is not None:
                C[j, i] = fp2.coeffs[pos]
    K = field.matmul(kappa, C)
    _assert_second_operator_relations(curve, K)
    # transpose(A_psi) . B = kappa . C
    return solve_matrix(field, B.T, K.T)


def _assert_second_operator_relations(curve: CurveCI, K):
    """Each solved class must be annihilated by every partial derivative."""
    field, nvars, d = curve.field, curve.nvars, curve.d
    for row in K:
        xi = TClass(field, nvars, -2 * d, row)
        for f in curve.polys:
            for j in range(nvars):
                if not t_multiply(partial_derivative(f, j), xi).is_zero():
                    raise InternalInvariantError(
                        "second operator image violates the derivative relations")


def _psi_general(curve: CurveCI, kappa, u):
    field, nvars, d = curve.field, curve.nvars, curve.d
    qb = ci_q_basis(curve)
    g = qb.dim
    pairing = _pairing_matrix(curve, qb)
    mu = _u_multiplication_matrix(curve, u)
    cols = []
    for kap in kappa:
        tau_kap = field.frob(kap, -1)
        vec = field.matmul(tau_kap[None, :], qb.rows)[0]
        t = TClass(field, nvars, -d, vec).frobenius()
        parts = []
        for ell, f in enumerate(curve.polys):
            xi = t_multiply(curve._product_pm1_over(ell), t)
            _assert_in_dual_module(curve, xi)
            parts.append(xi.coeffs)
        xi_vec = np.concatenate(parts)
        _assert_tuple_relations(curve, xi_vec, u)
        gvec = solve_matrix(field, mu, xi_vec)
        cols.append(field.matmul(pairing, gvec[:, None])[:, 0])
    return np.array(cols, DTYPE).T


def _assert_in_dual_module(curve: CurveCI, xi: TClass):
    for f in curve.polys:
        if not t_multiply(f, xi).is_zero():
            raise InternalInvariantError(
                "second operator image left the curve's dual module")


def _assert_tuple_relations(curve: CurveCI, xi_vec, u):
    field, nvars, d, n = curve.field, curve.nvars, curve.d, curve.n
    src_degrees = [-d - f.degree for f in curve.polys]
    sizes = [TClass.basis_size(nvars, m) for m in src_degrees]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    for j in range(nvars):
        acc = TClass.zero(field, nvars, -d - 1)
        for ell, (f, m) in enumerate(zip(curve.polys, src_degrees)):
            xi = TClass(field, nvars, m, xi_vec[offsets[ell]:offsets[ell + 1]])
            acc = acc + t_multiply(partial_derivative(f, j), xi)
        if not acc.is_zero():
            raise InternalInvariantError(
                "second operator image violates the derivative relations")


def _pairing_matrix(curve: CurveCI, qb: Subspace):
    """pairing[i, k] = coefficient of the all-(-1) class in mono_k * q_i."""
    field, nvars, d, n = curve.field, curve.nvars, curve.d, curve.n
    monos = monomial_basis(nvars, d - n - 1).monomials
    P = np.zeros((qb.dim, len(monos)), DTYPE)
    for k, mono in enumerate(monos):
        mp = GradedPoly.monomial(field, nvars, mono)
        for i, row in enumerate(qb.rows):
            out = t_multiply(mp, TClass(field, nvars, -d, row))
            P[i, k] = out.coeffs[0] if out.coeffs.size else 0
    if rank(field, P) != qb.dim:
        raise SingularCurveError("duality pairing is degenerate")
    return P


def _u_multiplication_matrix(curve: CurveCI, u):
    """Matrix of g -> g*u from degree d-n-1 forms into the stacked tuple."""
    field, nvars, d, n = curve.field, curve.nvars, curve.d, curve.n
    monos = monomial_basis(nvars, d - n - 1).monomials
    cols = []
    for mono in monos:
        mp = GradedPoly.monomial(field, nvars, mono)
        cols.append(np.concatenate([t_multiply(mp, comp).coeffs for comp in u]))
    return np.array(cols, DTYPE).T


def theta_apply(curve: CurveCI, u, xi):
    """Coordinates in the dual of the Q basis of a tuple class xi,
    through the perfect pairing fixed by the generator u."""
    field = curve.field
    qb = ci_q_basis(curve)
    mu = _u_multiplication_matrix(curve, u)
    xi_vec = np.concatenate([comp.coeffs for comp in xi])
    gvec = solve_matrix(field, mu, xi_vec)
    pairing = _pairing_matrix(curve, qb)
    return field.matmul(pairing, gvec[:, None])[:, 0]


class HWTriple:
    """Hasse-Witt data: the operator matrix, the echelon basis of its linear
    null space, and the second operator's matrix on the twisted kernel."""

    __slots__ = ("field", "g", "A_phi", "kappa", "A_psi", "fast_tag")

    def __init__(self, field: GF, g: int, A_phi, kappa, A_psi, fast_tag: str):
        self.field = field
        self.g = g
        self.A_phi = np.asarray(A_phi, DTYPE)
        self.kappa = np.asarray(kappa, DTYPE).reshape(-1, g)
        self.A_psi = np.asarray(A_psi, DTYPE).reshape(g, -1)
        self.fast_tag = fast_tag
        self.validate()

    @property
    def h(self) -> int:
        return self.kappa.shape[0]

    def validate(self):
        field, g, h = self.field, self.g, self.h
        if self.A_phi.shape != (g, g) or self.A_psi.shape != (g, h):
            raise InternalInvariantError("triple matrices have inconsistent shapes")
        if not np.array_equal(rref(field, self.kappa)[0], self.kappa):
            raise InternalInvariantError("kernel basis is not in echelon form")
        if self.kappa.shape[0] and np.count_nonzero(
                field.matmul(self.A_phi, self.kappa.T)):
            raise InternalInvariantError("kernel basis is not in the null space")
        if rank(field, self.A_psi) != h:
            raise InternalInvariantError("second operator is not injective")
        if h and np.count_nonzero(field.matmul(self.A_psi.T, self.A_phi)):
            raise InternalInvariantError(
                "second operator does not annihilate the image of the first")

    def __repr__(self):
        return f"HWTriple(g={self.g}, h={self.h}, tag={self.fast_tag})"


def hw_triple(curve: CurveCI, check_smooth: bool = True) -> HWTriple:
    """Full pipeline from a curve to its Hasse-Witt triple."""
    field = curve.field
    if curve.n == 2 and check_smooth and not plane_smoothness_check(curve):
        raise SingularCurveError("the plane curve is singular")
    g = genus(curve)
    A_phi = hasse_witt_matrix(curve)
    kappa = null_space(field, A_phi)
    h = kappa.shape[0]
    if h == 0:
        tag = "ordinary"
    elif not A_phi.any():
        tag = "superspecial"
    else:
        tag = "interesting"
    if h:
        u = u_generator(curve)
        A_psi = psi_matrix(curve, A_phi, kappa, u)
    else:
        A_psi = np.zeros((g, 0), DTYPE)
    return HWTriple(field, g, A_phi, kappa, A_psi, tag)
