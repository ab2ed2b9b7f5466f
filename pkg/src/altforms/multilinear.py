"""Alternating tensors, the wedge product, derived actions, and evaluation.

Sign and action conventions (all bookkeeping is confined to this module):

* Index tuples are 1-based and strictly increasing, matching the classical
  e_{ijk} = e_i ^ e_j ^ e_k notation for a basis e_1..e_n of W.
* Coefficients of an AlternatingForm live on wedge powers of W.
* ``gl_action(g, x)`` pushes coefficients forward by g acting on W: on a
  basis term e_K it wedges the columns g e_k, k in K.
* ``evaluate(x, v_1..v_d)`` treats x as an alternating d-linear form on the
  dual space: the v_i are coordinate vectors in the dual basis f_1..f_n, and
  evaluate(x, f_i, f_j, f_k) returns the stored coefficient x_{ijk}.
  Consequently evaluate(gl_action(g, x), v...) == evaluate(x, g^T v...).
* ``lie_action`` is the derivative of ``gl_action``: X applied in one tensor
  slot at a time, summed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .scalars import scalar_kind


def sort_sign(idx):
    """Sort an index tuple; return (tuple, sign), or (None, 0) on a repeat."""
    idx = list(idx)
    n = len(idx)
    sign = 1
    for i in range(1, n):
        j = i
        while j > 0 and idx[j - 1] >= idx[j]:
            if idx[j - 1] == idx[j]:
                return None, 0
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


def _clean(coeffs):
    return {k: v for k, v in coeffs.items() if not (v == 0)}


class AlternatingForm:
    """Sparse alternating tensor of a fixed degree on an n-dimensional space."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim, degree, coeffs=None):
        if degree < 0 or degree > dim:
            raise ValueError(f"degree {degree} out of range for dim {dim}")
        clean = {}
        for key, val in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"key {key} has wrong length for degree {degree}")
            if any(not (1 <= i <= dim) for i in key):
                raise ValueError(f"index out of range in {key}")
            if list(key) != sorted(set(key)):
                raise ValueError(f"indices not strictly increasing: {key}")
            if not (val == 0):
                clean[key] = val
        self.dim = dim
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def from_terms(cls, dim, degree, *terms):
        """Build from (coefficient, i, j, ...) tuples; indices may be unordered."""
        coeffs = {}
        for term in terms:
            c, idx = term[0], term[1:]
            key, s = sort_sign(idx)
            if s == 0:
                continue
            coeffs[key] = coeffs.get(key, 0) + s * c
        return cls(dim, degree, coeffs)

    def coeff(self, *idx):
        """Signed coefficient for an arbitrary-order index tuple."""
        key, s = sort_sign(idx)
        if s == 0:
            return 0
        v = self.coeffs.get(key, 0)
        return s * v if not (v == 0) else 0

    def terms(self):
        return sorted(self.coeffs.items())

    def is_zero(self):
        return not self.coeffs

    def scalar_kind(self):
        """Dominant scalar kind of the coefficients ('rational' when empty)."""
        kinds = {scalar_kind(v) for v in self.coeffs.values()}
        for k in ("float", "quadext", "rational"):
            if k in kinds:
                return k
        return "rational"

    def map_coeffs(self, fn):
        return AlternatingForm(self.dim, self.degree, {k: fn(v) for k, v in self.coeffs.items()})

    def as_float(self):
        return self.map_coeffs(float)

    def max_abs(self):
        return max((abs(float(v)) for v in self.coeffs.values()), default=0.0)

    def __add__(self, other):
        self._check_shape(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return AlternatingForm(self.dim, self.degree, _clean(out))

    def __sub__(self, other):
        self._check_shape(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return AlternatingForm(self.dim, self.degree, _clean(out))

    def __neg__(self):
        return self.map_coeffs(lambda v: -v)

    def scale(self, c):
        return AlternatingForm(self.dim, self.degree,
                               _clean({k: c * v for k, v in self.coeffs.items()}))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, AlternatingForm):
            return NotImplemented
        return (self.dim == other.dim and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(sorted(self.coeffs.items()))))

    def _check_shape(self, other):
        if self.dim != other.dim or self.degree != other.degree:
            raise ValueError("dimension or degree mismatch")

    def __repr__(self):
        inner = " + ".join(f"{v}*e{''.join(map(str, k))}" for k, v in self.terms())
        return f"AlternatingForm({self.dim},{self.degree}: {inner or '0'})"


class MixedTensor:
    """Element of wedge^a W (x) W^(x b): sparse map (increasing a-tuple, b-tuple) -> scalar."""

    __slots__ = ("dim", "wedge_degree", "arity", "coeffs")

    def __init__(self, dim, wedge_degree, arity, coeffs=None):
        self.dim = dim
        self.wedge_degree = wedge_degree
        self.arity = arity
        clean = {}
        for (wkey, tkey), val in (coeffs or {}).items():
            wkey, tkey = tuple(wkey), tuple(tkey)
            if list(wkey) != sorted(set(wkey)) or len(wkey) != wedge_degree:
                raise ValueError(f"bad wedge key {wkey}")
            if len(tkey) != arity:
                raise ValueError(f"bad tensor key {tkey}")
            if not (val == 0):
                clean[(wkey, tkey)] = val
        self.coeffs = clean

    def terms(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, MixedTensor):
            return NotImplemented
        return (self.dim, self.wedge_degree, self.arity, self.coeffs) == \
               (other.dim, other.wedge_degree, other.arity, other.coeffs)

    def __repr__(self):
        return f"MixedTensor(dim={self.dim}, a={self.wedge_degree}, b={self.arity}, {len(self.coeffs)} terms)"


def wedge(a, b):
    """Graded-anticommutative product of two alternating forms on the same space."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    deg = a.degree + b.degree
    if deg > a.dim:
        raise ValueError(f"wedge degree {deg} exceeds dimension {a.dim}")
    out = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            key, s = sort_sign(ka + kb)
            if s:
                out[key] = out.get(key, 0) + s * va * vb
    return AlternatingForm(a.dim, deg, _clean(out))


def d3(x):
    """Polarization of a trivector into wedge^2 W (x) W.

    On a basis term e_{ijk} it produces e_{jk} (x) e_i - e_{ik} (x) e_j
    + e_{ij} (x) e_k, extended linearly.
    """
    if x.degree != 3:
        raise ValueError("d3 needs a degree-3 form")
    out = {}
    for (i, j, k), v in x.coeffs.items():
        for pair, vec, s in (((j, k), i, 1), ((i, k), j, -1), ((i, j), k, 1)):
            key = (pair, (vec,))
            out[key] = out.get(key, 0) + s * v
    return MixedTensor(x.dim, 2, 1, _clean(out))


def gl_action(g, x):
    """Push an alternating form forward by an invertible matrix acting on W."""
    n = x.dim
    if len(g) != n or any(len(row) != n for row in g):
        raise ValueError("matrix dimension mismatch")
    cols = []
    for c in range(n):
        cols.append({(r + 1,): g[r][c] for r in range(n) if not (g[r][c] == 0)})
    out = {}
    for key, v in x.coeffs.items():
        prods = [(key2, val) for key2, val in _wedge_cols(cols, key, x.dim)]
        for key2, val in prods:
            out[key2] = out.get(key2, 0) + v * val
    return AlternatingForm(x.dim, x.degree, _clean(out))


def _wedge_cols(cols, key, dim):
    acc = {(): 1}
    for idx in key:
        nxt = {}
        for kacc, vacc in acc.items():
            for (r,), vc in cols[idx - 1].items():
                k2, s = sort_sign(kacc + (r,))
                if s:
                    nxt[k2] = nxt.get(k2, 0) + s * vacc * vc
        acc = {k: v for k, v in nxt.items() if not (v == 0)}
    return acc.items()


def lie_action(X, x):
    """Derived action: sum over slots of X applied in one slot of the form."""
    n = x.dim
    if len(X) != n or any(len(row) != n for row in X):
        raise ValueError("matrix dimension mismatch")
    out = {}
    for key, v in x.coeffs.items():
        for pos, idx in enumerate(key):
            col = X  # X[r][idx-1] over rows r
            for r in range(n):
                c = X[r][idx - 1]
                if c == 0:
                    continue
                newkey, s = sort_sign(key[:pos] + (r + 1,) + key[pos + 1:])
                if s:
                    out[newkey] = out.get(newkey, 0) + s * c * v
    return AlternatingForm(x.dim, x.degree, _clean(out))


def evaluate(x, *vectors):
    """Evaluate the form on dual-coordinate vectors: x(v_1, ..., v_d).

    Each v_i is a length-dim sequence of coordinates in the dual basis; on
    the dual standard basis vectors this reads off the stored coefficient.
    """
    d = x.degree
    if len(vectors) != d:
        raise ValueError(f"need {d} vectors, got {len(vectors)}")
    for v in vectors:
        if len(v) != x.dim:
            raise ValueError("vector length mismatch")
    total = 0
    for key, c in x.coeffs.items():
        rows = [[v[i - 1] for v in vectors] for i in key]
        total = total + c * _small_det(rows)
    return total


def _small_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        return (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))
    total = 0
    for perm in itertools.permutations(range(n)):
        _, s = sort_sign(tuple(p + 1 for p in perm))
        total = total + s * _prod(rows[i][perm[i]] for i in range(n))
    return total


def _prod(it):
    out = 1
    for v in it:
        out = out * v
    return out


def all_keys(dim, degree):
    """All strictly increasing index tuples, in lexicographic order."""
    return list(itertools.combinations(range(1, dim + 1), degree))


def basis_form(dim, degree, key):
    return AlternatingForm(dim, degree, {tuple(key): Fraction(1)})
