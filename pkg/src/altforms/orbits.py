"""Real and rational orbit classification, eigenspace geometry, and the
irrationality predicates feeding the density search.

Rationality of a projective or Grassmannian point is certified only in exact
arithmetic (rational or quadratic-extension coefficients); float inputs get a
bounded-denominator reconstruction verdict, and every report records which
mode produced it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .invariants import (case_of, delta_case1, delta_case1_explicit, delta_case2,
                         pfaffian, q_case2, s_case1)
from .scalars import (QuadExt, demote, rational_reconstruct, rational_sqrt,
                      squarefree_part)

REAL_ORBITS = ("case1_positive", "case1_negative", "case2_split", "case2_nonsplit",
               "case3_nondegenerate", "degenerate")

# Real rank of the identity component of the special stabilizer is positive
# on every orbit except the definite dim-7 one; table-driven by design.
_RANK_POSITIVE = {
    "case1_positive": True,
    "case1_negative": True,
    "case2_split": True,
    "case2_nonsplit": False,
    "case3_nondegenerate": True,
    "degenerate": False,
}


@dataclass
class OrbitReport:
    case: int
    real_orbit: str
    field_d: int = None          # squarefree d with k(x) = Q(sqrt(d)); 1 means Q
    real_rank_positive: bool = False
    delta: object = None


@dataclass
class GrassmannPoint:
    """Unordered pair of 3-dimensional subspaces of a 6-space."""

    basis1: list
    basis2: list
    plucker1: list = None
    plucker2: list = None

    def __post_init__(self):
        if self.plucker1 is None:
            self.plucker1 = plucker(self.basis1)
        if self.plucker2 is None:
            self.plucker2 = plucker(self.basis2)


def classify_real(x, tol=1e-9):
    """OrbitReport for a form of any of the three shapes.

    Exact coefficients give exact verdicts; float coefficients compare
    against tol scaled by the coefficient magnitude.
    """
    case = case_of(x)
    is_float = x.scalar_kind() == "float"
    if case == 1:
        d = delta_case1_explicit(x)
        scale = max(1.0, x.max_abs()) ** 4
        if (d == 0) if not is_float else (abs(float(d)) <= tol * scale):
            orbit = "degenerate"
        elif float(d) > 0:
            orbit = "case1_positive"
        else:
            orbit = "case1_negative"
        rep = OrbitReport(1, orbit, real_rank_positive=_RANK_POSITIVE[orbit], delta=d)
        if orbit != "degenerate" and x.scalar_kind() == "rational":
            rep.field_d = field_kx(x)
        return rep
    if case == 2:
        q = q_case2(x)
        kind = q.definiteness(tol=tol * max(1.0, x.max_abs()) ** 3 if is_float else None)
        delta, _ = delta_case2(x)
        if kind == "degenerate":
            orbit = "degenerate"
        elif kind in ("positive", "negative"):
            orbit = "case2_nonsplit"
        else:
            orbit = "case2_split"
        return OrbitReport(2, orbit, real_rank_positive=_RANK_POSITIVE[orbit], delta=delta)
    pf = pfaffian(x)
    scale = max(1.0, x.max_abs()) ** (x.dim // 2)
    if (pf == 0) if not is_float else (abs(float(pf)) <= tol * scale):
        orbit = "degenerate"
    else:
        orbit = "case3_nondegenerate"
    return OrbitReport(3, orbit, real_rank_positive=_RANK_POSITIVE[orbit], delta=pf)


def field_kx(x):
    """Squarefree d with k(x) = Q(sqrt(d)) for a rational dim-6 trivector.

    d = 1 means the splitting field is Q itself.
    """
    d = delta_case1(x)
    if d == 0:
        raise ValueError("not semistable")
    sf, _ = squarefree_part(d)
    return sf


def eigenspaces(x, tol=1e-9):
    """The two rank-3 eigenspaces of S_x for the eigenvalues +/- sqrt(delta).

    Exact over Q(sqrt(d)) for rational input (basis1 belongs to +sqrt(delta));
    float input uses complex numpy arithmetic.
    """
    if x.scalar_kind() == "float":
        return _eigenspaces_float(x, tol)
    S = s_case1(x)
    delta = demote(delta_case1(x))
    if delta == 0:
        raise ValueError("not semistable")
    if isinstance(delta, QuadExt):
        raise ValueError("eigenspaces need a rational invariant (no field towers)")
    root = rational_sqrt(delta)
    bases = []
    for sign in (1, -1):
        lam = sign * root
        rows = [[_to_common(S[i][j], root) - (lam if i == j else 0) for j in range(6)]
                for i in range(6)]
        ns = linalg.nullspace(rows, 6)
        assert len(ns) == 3, "eigenspace dimension must be 3"
        bases.append([[demote(c) for c in v] for v in ns])
    return GrassmannPoint(bases[0], bases[1])


def _to_common(v, root):
    if isinstance(root, QuadExt) and not isinstance(v, QuadExt):
        return QuadExt(v, 0, root.d)
    return v


def _eigenspaces_float(x, tol):
    import numpy as np
    S = np.array([[float(v) for v in row] for row in s_case1(x)])
    delta = float(delta_case1_explicit(x))
    if abs(delta) <= tol * max(1.0, x.max_abs()) ** 4:
        raise ValueError("not semistable")
    lam = np.sqrt(complex(delta))
    bases = []
    for sign in (1, -1):
        M = S.astype(complex) - sign * lam * np.eye(6)
        u, s, vh = np.linalg.svd(M)
        ns = vh[np.sum(s > s[0] * 1e-9):].conj()
        assert ns.shape[0] == 3, "eigenspace dimension must be 3"
        bases.append([[complex(v) for v in row] for row in ns])
    return GrassmannPoint(bases[0], bases[1])


def plucker(basis):
    """Length-20 coordinate vector of a 3-plane in 6-space given by 3 rows."""
    assert len(basis) == 3 and all(len(r) == 6 for r in basis)
    out = []
    for cols in itertools.combinations(range(6), 3):
        m = [[basis[r][c] for c in cols] for r in range(3)]
        out.append(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                   - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                   + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    return out


def _normalize(vec, tol=0.0):
    """Scale a coordinate vector by its first (significantly) nonzero entry."""
    pivot = None
    best = None
    for v in vec:
        mag = abs(complex(v)) if isinstance(v, complex) else abs(float(v)) if isinstance(v, float) else (0 if v == 0 else 1)
        if isinstance(v, (float, complex)):
            if best is None or mag > best:
                best, pivot = mag, v
        elif not (v == 0):
            pivot = v
            break
    if pivot is None or (isinstance(pivot, (float, complex)) and abs(pivot) <= tol):
        raise ValueError("zero vector has no projective normalization")
    return [v / pivot for v in vec]


@dataclass
class PointVerdict:
    rational: bool
    mode: str            # "exact" (certified) or "float" (heuristic)
    detail: str = ""

    @property
    def certified(self):
        return self.mode == "exact"


def point_rationality(vec, max_den=1000, tol=1e-9):
    """Rationality of a projective point given by a coordinate vector.

    Exact scalars: certified by normalizing and checking every coordinate is
    rational.  Floats/complex: heuristic bounded-denominator reconstruction;
    for the verdict to discriminate, tol must be well below 1/max_den^2
    (a generic real reconstructs to ~1/q^2 at the best q <= max_den).
    """
    kinds = {type(v) for v in vec}
    is_float = any(k in (float, complex) for k in kinds)
    nv = _normalize(vec, tol=0.0)
    if not is_float:
        ok = all((not isinstance(v, QuadExt)) or v.is_rational for v in nv)
        return PointVerdict(ok, "exact", "all coordinate ratios rational" if ok
                            else "some coordinate ratio lies outside Q")
    for v in nv:
        c = complex(v)
        if abs(c.imag) > tol:
            return PointVerdict(False, "float", "nonreal coordinate ratio")
        if rational_reconstruct(c.real, max_den, tol) is None:
            return PointVerdict(False, "float", "no rational point found")
    return PointVerdict(True, "float", "all ratios reconstruct")


def grassmann_rationality(gr, max_den=1000, tol=1e-9):
    """Rationality of the unordered pair via symmetric functions of the
    normalized coordinate vectors (sum and coordinatewise product)."""
    p = _normalize(gr.plucker1, tol=0.0)
    q = _normalize(gr.plucker2, tol=0.0)
    s = [a + b for a, b in zip(p, q)]
    m = [a * b for a, b in zip(p, q)]
    flags = []
    for vec in (s, m):
        if all((v == 0) if not isinstance(v, (float, complex)) else abs(complex(v)) <= tol
               for v in vec):
            flags.append(PointVerdict(True, "exact" if not isinstance(vec[0], (float, complex)) else "float",
                                      "symmetric function vanishes"))
        else:
            flags.append(point_rationality(vec, max_den, tol))
    rational = all(f.rational for f in flags)
    mode = "exact" if all(f.mode == "exact" for f in flags) else "float"
    return PointVerdict(rational, mode, "symmetric functions of the pair")


@dataclass
class IrrationalityReport:
    case: int
    flags: dict = field(default_factory=dict)   # name -> PointVerdict

    def all_irrational(self, names=None):
        names = names or list(self.flags)
        return all(not self.flags[n].rational for n in names)


def irrationality_report(x, max_den=1000, tol=1e-9):
    """Per-predicate rationality flags for the case of x.

    dim 6: the two eigenspace points and the unordered pair; dim 7: the
    projective image of the quadratic covariant; degree 2: the projective
    image of x itself.
    """
    case = case_of(x)
    rep = IrrationalityReport(case)
    if case == 1:
        gr = eigenspaces(x, tol=tol)
        rep.flags["E1"] = point_rationality(gr.plucker1, max_den, tol)
        rep.flags["E2"] = point_rationality(gr.plucker2, max_den, tol)
        rep.flags["Gr"] = grassmann_rationality(gr, max_den, tol)
        return rep
    if case == 2:
        q = q_case2(x)
        vec = [q.gram[i][j] for i in range(7) for j in range(i, 7)]
        rep.flags["Q"] = point_rationality(vec, max_den, tol)
        return rep
    vec = [x.coeffs.get(k, 0) for k in itertools.combinations(range(1, x.dim + 1), 2)]
    rep.flags["x"] = point_rationality(vec, max_den, tol)
    return rep
