"""Stabilizer Lie algebras, fixed-point subspaces, and subalgebra checks.

Group-level fixed points are handled at the algebra level throughout: a
connected stabilizer fixes a vector exactly when the annihilator algebra
does, and annihilators are exact nullspace computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .multilinear import AlternatingForm, all_keys, lie_action


@dataclass
class LieSubalgebra:
    """A subspace of matrices given by a basis; label is a human tag."""

    ambient_dim: int
    basis: list
    label: str = ""

    @property
    def dim(self):
        return len(self.basis)


def sl_basis(n):
    """Basis of trace-zero n x n matrices: off-diagonal units then E11 - Eii."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                M = linalg.zeros(n, n)
                M[i][j] = Fraction(1)
                out.append(M)
    for i in range(1, n):
        M = linalg.zeros(n, n)
        M[0][0] = Fraction(1)
        M[i][i] = Fraction(-1)
        out.append(M)
    return out


def stab_lie_algebra(x, label=""):
    """Annihilator of x in sl(dim): all traceless X with lie_action(X, x) = 0.

    Exact nullspace over the rationals for exact coefficients; float forms
    use a numpy SVD nullspace with a relative cutoff.
    """
    n = x.dim
    basis = sl_basis(n)
    keys = all_keys(n, x.degree)
    if x.scalar_kind() == "float":
        import numpy as np
        rows = []
        for X in basis:
            act = lie_action(X, x)
            rows.append([float(act.coeffs.get(k, 0.0)) for k in keys])
        A = np.array(rows, dtype=float).T  # keys x basis
        u, s, vh = np.linalg.svd(A)
        tol = max(A.shape) * (s[0] if len(s) else 0.0) * 1e-12
        null = vh[int((s > tol).sum()):]
        mats = []
        for coeffs in null:
            M = [[0.0] * n for _ in range(n)]
            for c, B in zip(coeffs, basis):
                if c:
                    for i in range(n):
                        for j in range(n):
                            M[i][j] += c * float(B[i][j])
            mats.append(M)
        return LieSubalgebra(n, mats, label or "stab(float)")
    acts = [lie_action(X, x) for X in basis]
    rows = [[acts[b].coeffs.get(k, Fraction(0)) for b in range(len(basis))] for k in keys]
    combos = linalg.nullspace(rows, len(basis))
    mats = [_combine(c, basis, n) for c in combos]
    return LieSubalgebra(n, mats, label or "stab")


def _combine(coeffs, basis, n):
    M = linalg.zeros(n, n)
    for c, B in zip(coeffs, basis):
        if c != 0:
            for i in range(n):
                for j in range(n):
                    M[i][j] = M[i][j] + c * B[i][j]
    return M


def fixed_space(L, shape):
    """Exact basis of the forms of the given (dim, degree) killed by all of L."""
    dim, degree = shape
    if L.ambient_dim != dim:
        raise ValueError("ambient dimension mismatch")
    keys = all_keys(dim, degree)
    kidx = {k: i for i, k in enumerate(keys)}
    rows = []
    for X in L.basis:
        # operator matrix of lie_action(X, .): stack rows (out_key x in_key)
        cols = []
        for k in keys:
            img = lie_action(X, AlternatingForm(dim, degree, {k: Fraction(1)}))
            cols.append([img.coeffs.get(k2, Fraction(0)) for k2 in keys])
        for r in range(len(keys)):
            rows.append([cols[c][r] for c in range(len(keys))])
    vecs = linalg.nullspace(rows, len(keys)) if rows else linalg.identity(len(keys))
    out = []
    for v in vecs:
        out.append(AlternatingForm(dim, degree, {k: v[i] for k, i in kidx.items() if v[i] != 0}))
    return out


def bracket(X, Y):
    """Commutator X Y - Y X."""
    if len(X) != len(Y):
        raise ValueError("dimension mismatch")
    return linalg.mat_sub(linalg.mat_mul(X, Y), linalg.mat_mul(Y, X))


def subalgebra_closed(L):
    """(True, None) if [L, L] lies in span(L); else (False, witness pair).

    The span is row-reduced once; each bracket is then reduced against the
    echelon rows, so the whole check is a single elimination plus one sweep
    per basis pair.
    """
    n = L.ambient_dim
    flat = [[M[i][j] for i in range(n) for j in range(n)] for M in L.basis]
    if not flat:
        return True, None
    rows, pivots = linalg.rref(flat)
    rows = [r for r in rows if any(v != 0 for v in r)]

    def reduce(v):
        v = list(v)
        for r, c in zip(rows, pivots):
            if v[c] != 0:
                f = v[c]
                v = [a - f * b for a, b in zip(v, r)]
        return any(a != 0 for a in v)

    for a, X in enumerate(L.basis):
        for Y in L.basis[a:]:
            B = bracket(X, Y)
            if reduce([B[i][j] for i in range(n) for j in range(n)]):
                return False, (X, Y)
    return True, None


def span_dim(subalgebras):
    """Dimension of the sum of the given subspaces (exact rank)."""
    rows = []
    n = None
    for L in subalgebras:
        n = L.ambient_dim
        for M in L.basis:
            rows.append([M[i][j] for i in range(n) for j in range(n)])
    return linalg.rank(rows) if rows else 0


# Named pieces of the dim-6 picture: block algebras inside sl(6).

def h1_case1():
    """Pairs of traceless 3x3 blocks on the diagonal (dimension 16)."""
    basis = []
    for blk in (0, 3):
        for i in range(3):
            for j in range(3):
                if i != j:
                    M = linalg.zeros(6, 6)
                    M[blk + i][blk + j] = Fraction(1)
                    basis.append(M)
        for i in range(1, 3):
            M = linalg.zeros(6, 6)
            M[blk][blk] = Fraction(1)
            M[blk + i][blk + i] = Fraction(-1)
            basis.append(M)
    return LieSubalgebra(6, basis, "h1")


def u1_case1():
    """Strictly upper-right 3x3 block (dimension 9)."""
    basis = []
    for i in range(3):
        for j in range(3):
            M = linalg.zeros(6, 6)
            M[i][j + 3] = Fraction(1)
            basis.append(M)
    return LieSubalgebra(6, basis, "u1")


def u2_case1():
    """Strictly lower-left 3x3 block (dimension 9)."""
    basis = []
    for i in range(3):
        for j in range(3):
            M = linalg.zeros(6, 6)
            M[i + 3][j] = Fraction(1)
            basis.append(M)
    return LieSubalgebra(6, basis, "u2")


def t_case1():
    """The line through diag(I3, -I3)."""
    M = linalg.zeros(6, 6)
    for i in range(3):
        M[i][i] = Fraction(1)
        M[i + 3][i + 3] = Fraction(-1)
    return LieSubalgebra(6, [M], "t")


def join(*subs):
    label = "+".join(s.label for s in subs)
    basis = [M for s in subs for M in s.basis]
    return LieSubalgebra(subs[0].ambient_dim, basis, label)
