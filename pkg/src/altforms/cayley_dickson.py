"""Doubling construction, concrete normed algebras, the trilinear form, and
reconstruction of an octonion algebra from a nondegenerate trivector.

Algebras are stored as explicit structure-constant tables (dim x dim table of
coordinate vectors) with the bilinear norm gram; the unit is basis index 0.
The doubling A -> A(+/-) multiplies by

    (a, b)(c, d) = (a c -/+ conj(d) b,  d a + b conj(c))

with norm |a| +/- |b|; conjugation is conj(x) = 2 Re(x) 1 - x.

The split octonion instance is built directly from pairs of 2x2 matrices so
that its imaginary basis is, in order,

    f1 = diag(1,-1), f2 = E12, f3 = E11 e, f4 = -E21 e,
    f5 = -E21,       f6 = E22 e, f7 = E12 e,

the basis in which all golden coefficients of the package are stated.  The
dual basis of f1..f7 is the e1..e7 used by the dim-7 forms, so form
coefficients and algebra coordinates line up index by index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .invariants import QuadraticForm, q_case2, delta_case2
from .multilinear import AlternatingForm, evaluate, gl_action, sort_sign


class AlgebraStructure:
    """Structure constants + norm of a finite-dimensional normed algebra."""

    __slots__ = ("dim", "table", "gram", "label")

    def __init__(self, dim, table, gram, label=""):
        self.dim = dim
        self.table = tuple(tuple(tuple(vec) for vec in row) for row in table)
        self.gram = tuple(tuple(row) for row in gram)
        self.label = label
        unit = self.table[0][0]
        assert unit[0] == 1 and all(c == 0 for c in unit[1:]), "basis 0 must be the unit"

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        return AlgElement(self, coords)

    def basis_element(self, i):
        return self.element(tuple(Fraction(1) if j == i else Fraction(0)
                                  for j in range(self.dim)))

    @property
    def one(self):
        return self.basis_element(0)

    def mul_coords(self, u, v):
        out = [0] * self.dim
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                t = self.table[i][j]
                c = ui * vj
                for m in range(self.dim):
                    if not (t[m] == 0):
                        out[m] = out[m] + c * t[m]
        return tuple(out)

    def inner_coords(self, u, v):
        return sum(self.gram[i][j] * u[i] * v[j]
                   for i in range(self.dim) for j in range(self.dim)
                   if not (self.gram[i][j] == 0))

    def norm_form(self):
        return QuadraticForm(self.dim, [list(r) for r in self.gram])

    def __eq__(self, other):
        if not isinstance(other, AlgebraStructure):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table and self.gram == other.gram

    def __repr__(self):
        return f"AlgebraStructure(dim={self.dim}, label={self.label!r})"


@dataclass(frozen=True)
class AlgElement:
    algebra: AlgebraStructure
    coords: tuple

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AlgElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return AlgElement(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        return AlgElement(self.algebra, tuple(a * other for a in self.coords))

    def __rmul__(self, c):
        return AlgElement(self.algebra, tuple(c * a for a in self.coords))

    def inner(self, other):
        self._check(other)
        return self.algebra.inner_coords(self.coords, other.coords)

    def norm(self):
        return self.inner(self)

    def re(self):
        """Scalar coefficient of the unit: <x, 1> / <1, 1>."""
        one = self.algebra.basis_element(0)
        return self.inner(one) / one.norm()

    def im(self):
        out = list(self.coords)
        r = self.re()
        one = self.algebra.basis_element(0)
        return AlgElement(self.algebra,
                          tuple(c - r * o for c, o in zip(out, one.coords)))

    def conj(self):
        r = self.re()
        return AlgElement(self.algebra,
                          tuple(2 * r * o - c for c, o in
                                zip(self.coords, self.algebra.basis_element(0).coords)))

    def associator(self, y, z):
        return (self * y) * z - self * (y * z)


def ground_field():
    """The 1-dimensional algebra k with norm x^2."""
    return AlgebraStructure(1, [[(Fraction(1),)]], [[Fraction(1)]], "k")


def cd_double(A, sign=+1):
    """One doubling step A -> A(+) (sign=+1) or A(-) (sign=-1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = A.dim
    N = 2 * n

    def conj_vec(v):
        return A.element(v).conj().coords

    table = [[None] * N for _ in range(N)]
    for i in range(N):
        a = tuple(Fraction(1) if m == i else Fraction(0) for m in range(n)) if i < n \
            else (Fraction(0),) * n
        b = (Fraction(0),) * n if i < n \
            else tuple(Fraction(1) if m == i - n else Fraction(0) for m in range(n))
        for j in range(N):
            c = tuple(Fraction(1) if m == j else Fraction(0) for m in range(n)) if j < n \
                else (Fraction(0),) * n
            d = (Fraction(0),) * n if j < n \
                else tuple(Fraction(1) if m == j - n else Fraction(0) for m in range(n))
            ac = A.mul_coords(a, c)
            db = A.mul_coords(conj_vec(d), b)
            da = A.mul_coords(d, a)
            bc = A.mul_coords(b, conj_vec(c))
            first = tuple(x - sign * y for x, y in zip(ac, db))
            second = tuple(x + y for x, y in zip(da, bc))
            table[i][j] = first + second
    gram = linalg.zeros(N, N)
    for i in range(n):
        for j in range(n):
            gram[i][j] = A.gram[i][j]
            gram[i + n][j + n] = sign * A.gram[i][j]
    sign_tag = "+" if sign == 1 else "-"
    return AlgebraStructure(N, table, gram, f"{A.label}({sign_tag})")


def complex_type():
    """k(+): 2-dimensional, commutative, associative, norm a^2 + b^2."""
    return cd_double(ground_field(), +1)


def quaternions():
    """H = k(+)(+) with basis 1, i, j, k."""
    return cd_double(complex_type(), +1)


def octonions():
    """The norm-definite octonions H(+) with basis 1, i, j, k, e, ie, je, ke."""
    A = cd_double(quaternions(), +1)
    return AlgebraStructure(A.dim, A.table, A.gram, "O")


def matrix_2x2():
    """M(2,2) as k(+)(-): 4-dimensional with determinant norm."""
    return cd_double(complex_type(), -1)


def _m(a, b, c, d):
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


_SPLIT_BASIS = (
    (_m(1, 0, 0, 1), _m(0, 0, 0, 0)),   # 1
    (_m(1, 0, 0, -1), _m(0, 0, 0, 0)),  # f1
    (_m(0, 1, 0, 0), _m(0, 0, 0, 0)),   # f2
    (_m(0, 0, 0, 0), _m(1, 0, 0, 0)),   # f3
    (_m(0, 0, 0, 0), _m(0, 0, -1, 0)),  # f4
    (_m(0, 0, -1, 0), _m(0, 0, 0, 0)),  # f5
    (_m(0, 0, 0, 0), _m(0, 0, 0, 1)),   # f6
    (_m(0, 0, 0, 0), _m(0, 1, 0, 0)),   # f7
)


def _mat_mul2(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _mat_conj2(A):
    return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))


def _mat_add2(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _mat_det2(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def _pair_mul(x, y):
    a, b = x
    c, d = y
    first = _mat_add2(_mat_mul2(a, c), tuple(tuple(-v for v in r)
                                             for r in _mat_mul2(_mat_conj2(d), b)))
    second = _mat_add2(_mat_mul2(d, a), _mat_mul2(b, _mat_conj2(c)))
    return first, second


def _pair_coords(x):
    a, b = x
    return (Fraction(a[0][0] + a[1][1], 2), Fraction(a[0][0] - a[1][1], 2),
            a[0][1], b[0][0], -b[1][0], -a[1][0], b[1][1], b[0][1])


def split_octonions():
    """M(2,2)(+) in the pinned imaginary basis f1..f7 (see module docstring)."""
    def norm(x):
        return _mat_det2(x[0]) + _mat_det2(x[1])

    table = [[_pair_coords(_pair_mul(_SPLIT_BASIS[i], _SPLIT_BASIS[j]))
              for j in range(8)] for i in range(8)]
    gram = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(8):
            s = (_mat_add2(_SPLIT_BASIS[i][0], _SPLIT_BASIS[j][0]),
                 _mat_add2(_SPLIT_BASIS[i][1], _SPLIT_BASIS[j][1]))
            gram[i][j] = Fraction(norm(s) - norm(_SPLIT_BASIS[i]) - norm(_SPLIT_BASIS[j]), 2)
    return AlgebraStructure(8, table, gram, "split O")


def c_form(A):
    """Trilinear form C(x, y, z) = <x, yz> on the imaginary part of a dim-8 algebra.

    The result is verified alternating (an assertion trips otherwise) and is
    returned as a degree-3 form on the 7-dimensional imaginary part.
    """
    if A.dim != 8:
        raise ValueError("c_form needs an 8-dimensional algebra")
    vals = {}
    for i in range(1, 8):
        bi = A.basis_element(i)
        for j in range(1, 8):
            bj = A.basis_element(j)
            for k in range(1, 8):
                v = bi.inner(bj * A.basis_element(k))
                key, s = sort_sign((i, j, k))
                if s == 0:
                    assert v == 0, "C is not alternating (bug)"
                    continue
                prev = vals.get(key)
                cur = s * v
                if prev is None:
                    vals[key] = cur
                else:
                    assert prev == cur, "C is not alternating (bug)"
    return AlternatingForm(7, 3, {k: v for k, v in vals.items() if not (v == 0)})


def octonion_from_form(x):
    """Octonion algebra on k + W* reconstructed from a nondegenerate trivector.

    The imaginary product u.v solves gram(Q) * (u.v) = 3 x(., u, v); the real
    part is -Q(u, v)/delta and the norm of v is Q(v)/delta.  Raises
    ValueError("not semistable") when Q is degenerate.
    """
    if x.dim != 7 or x.degree != 3:
        raise ValueError("octonion_from_form needs dim 7, degree 3")
    Q = q_case2(x)
    is_float = x.scalar_kind() == "float"
    delta, exact = delta_case2(x)
    if (not is_float and delta == 0) or (is_float and abs(delta) < 1e-12 * max(1.0, x.max_abs()) ** 7):
        raise ValueError("not semistable")
    gram7 = [list(r) for r in Q.gram]
    basis7 = [[Fraction(1) if m == i else Fraction(0) for m in range(7)] for i in range(7)]
    if is_float:
        import numpy as np
        Gf = np.array([[float(v) for v in r] for r in gram7])
        def solve7(rhs):
            sol = np.linalg.solve(Gf, np.array([float(v) for v in rhs]))
            resid = float(np.max(np.abs(Gf @ sol - rhs)))
            assert resid <= 1e-9 * max(1.0, float(np.max(np.abs(rhs)))), "ill-conditioned product solve"
            return [float(s) for s in sol]
    else:
        def solve7(rhs):
            return linalg.solve(gram7, list(rhs))

    dim = 8
    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        table[0][i] = tuple((1 if m == i else 0) for m in range(dim))
        table[i][0] = tuple((1 if m == i else 0) for m in range(dim))
    for i in range(7):
        for j in range(7):
            rhs = [3 * evaluate(x, basis7[m], basis7[i], basis7[j]) for m in range(7)]
            im = solve7(rhs)
            re = -Q.bilinear(basis7[i], basis7[j]) / delta
            table[i + 1][j + 1] = tuple([re] + list(im))
    gram = [[(0.0 if is_float else Fraction(0))] * dim for _ in range(dim)]
    gram[0][0] = 1.0 if is_float else Fraction(1)
    for i in range(7):
        for j in range(7):
            gram[i + 1][j + 1] = gram7[i][j] / delta
    return AlgebraStructure(8, table, gram, "O_x")


def iso_check(x, y, t, g, tol=None):
    """Verify that the group element (t, g) induces an isomorphism O_x -> O_y.

    g is the matrix acting on W (as in gl_action); the induced map on the
    dual coordinates carrying the algebras is v -> t^2 det(g) (g^T)^{-1} v.
    Requires y == t * gl_action(g, x) (the group action pairing the two
    forms); raises ValueError otherwise.  Checks unit, imaginary parts of
    products, and the inner product on imaginary basis pairs.
    """
    moved = gl_action(g, x).scale(t)
    if tol is None:
        if not moved == y:
            raise ValueError("y is not (t, g) . x")
    else:
        diff = (moved - y).max_abs()
        if diff > tol * max(1.0, y.max_abs()):
            raise ValueError("y is not (t, g) . x")
    A = octonion_from_form(x)
    B = octonion_from_form(y)
    detg = linalg.mat_det(g)
    scale = t * t * detg
    dual = linalg.transpose(linalg.mat_inv(g))

    def m_of(v7):
        img = [scale * sum(dual[r][c] * v7[c] for c in range(7)) for r in range(7)]
        return img

    def close(a, b):
        if tol is None:
            return a == b
        return abs(float(a) - float(b)) <= tol

    for i in range(1, 8):
        vi = [1 if m == i - 1 else 0 for m in range(7)]
        mi = B.element(tuple([0] + m_of(vi)))
        ai = A.basis_element(i)
        for j in range(1, 8):
            vj = [1 if m == j - 1 else 0 for m in range(7)]
            mj = B.element(tuple([0] + m_of(vj)))
            aj = A.basis_element(j)
            if not close(mi.inner(mj), ai.inner(aj)):
                return False
            lhs = (mi * mj).im().coords
            rhs_im = (ai * aj).im().coords[1:]
            rhs = tuple([0] + m_of(list(rhs_im)))
            if not all(close(a, b) for a, b in zip(lhs, rhs)):
                return False
    return True
