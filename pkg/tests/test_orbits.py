import math
import random
from fractions import Fraction

import pytest

from altforms import linalg
from altforms.invariants import delta_case1, s_case1
from altforms.multilinear import AlternatingForm, all_keys, gl_action
from altforms.orbits import (classify_real, eigenspaces, field_kx,
                             grassmann_rationality, irrationality_report, plucker,
                             point_rationality)
from altforms.representatives import make_rep
from altforms.scalars import QuadExt


def rand_form(rng, dim, degree, span=4, density=0.6):
    coeffs = {}
    for key in all_keys(dim, degree):
        if rng.random() < density:
            v = rng.randint(-span, span)
            if v:
                coeffs[key] = Fraction(v)
    return AlternatingForm(dim, degree, coeffs)


def test_classify_goldens():
    rep = classify_real(make_rep("case1_w"))
    assert rep.real_orbit == "case1_positive" and rep.real_rank_positive
    assert rep.field_d == 1

    rep = classify_real(make_rep("case1_w1"))
    assert rep.real_orbit == "case1_negative" and rep.real_rank_positive
    assert rep.field_d == -1

    rep = classify_real(make_rep("case2_w"))
    assert rep.real_orbit == "case2_split" and rep.real_rank_positive

    rep = classify_real(make_rep("case2_w1"))
    assert rep.real_orbit == "case2_nonsplit" and not rep.real_rank_positive

    rep = classify_real(make_rep("case2_wprime"))
    assert rep.real_orbit == "degenerate"

    rep = classify_real(make_rep("case3_w", n=2))
    assert rep.real_orbit == "case3_nondegenerate" and rep.real_rank_positive

    rep = classify_real(AlternatingForm(6, 3, {(1, 2, 3): Fraction(1)}))
    assert rep.real_orbit == "degenerate"


def test_classify_real_invariance_under_float_action():
    rng = random.Random(51)
    base = [make_rep("case1_w"), make_rep("case1_w1"), make_rep("case2_w"),
            make_rep("case2_w1"), make_rep("case3_w", n=2)]
    for x in base:
        want = classify_real(x).real_orbit
        xf = x.as_float()
        n = x.dim
        for _ in range(5):
            while True:
                g = [[rng.uniform(-1.5, 1.5) for _ in range(n)] for _ in range(n)]
                det = linalg.mat_det([[Fraction(v).limit_denominator(10 ** 6) for v in row]
                                      for row in g])
                if abs(float(det)) > 0.1:
                    break
            moved = gl_action(g, xf)
            assert classify_real(moved).real_orbit == want


def test_field_kx():
    assert field_kx(make_rep("case1_w")) == 1
    assert field_kx(make_rep("case1_walpha", d=2)) == 2
    assert field_kx(make_rep("case1_walpha", d=-5)) == -5
    assert field_kx(make_rep("case1_w1")) == -1
    with pytest.raises(ValueError):
        field_kx(AlternatingForm(6, 3, {(1, 2, 3): Fraction(1)}))


def test_field_kx_invariant_under_rational_action():
    rng = random.Random(52)
    x = make_rep("case1_walpha", d=3)
    for _ in range(10):
        while True:
            g = [[Fraction(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)]
            if linalg.mat_det(g) != 0:
                break
        assert field_kx(gl_action(g, x)) == 3


def test_eigenspaces_of_w():
    gr = eigenspaces(make_rep("case1_w"))
    span1 = {tuple(i for i, v in enumerate(vec) if v != 0) for vec in gr.basis1}
    span2 = {tuple(i for i, v in enumerate(vec) if v != 0) for vec in gr.basis2}
    assert span1 == {(0,), (1,), (2,)}
    assert span2 == {(3,), (4,), (5,)}


def test_eigenspace_dimensions_and_eigenvalue_identity():
    rng = random.Random(53)
    found = 0
    while found < 5:
        x = rand_form(rng, 6, 3, span=2, density=0.5)
        d = delta_case1(x)
        if d == 0:
            continue
        found += 1
        gr = eigenspaces(x)
        assert len(gr.basis1) == 3 and len(gr.basis2) == 3
        # S restricted to the first eigenspace acts as +sqrt(delta)
        S = s_case1(x)
        from altforms.scalars import rational_sqrt
        root = rational_sqrt(d)
        for vec in gr.basis1:
            img = [sum(_lift(S[i][j], root) * _lift(vec[j], root) for j in range(6))
                   for i in range(6)]
            want = [_lift(root, root) * _lift(vec[i], root) for i in range(6)]
            assert img == want


def _lift(v, root):
    if isinstance(root, QuadExt) and not isinstance(v, QuadExt):
        return QuadExt(v, 0, root.d)
    return v


def test_eigenspace_equivariance():
    rng = random.Random(54)
    x = make_rep("case1_w")
    for _ in range(5):
        while True:
            g = [[Fraction(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)]
            if linalg.mat_det(g) != 0:
                break
        gr = eigenspaces(gl_action(g, x))
        # the eigenspaces of the moved form are g * (eigenspaces of x)
        moved1 = [[sum(g[i][j] * v[j] for j in range(6)) for i in range(6)]
                  for v in eigenspaces(x).basis1]
        got = {1: gr.basis1, -1: gr.basis2}
        # determinant sign of g can swap which eigenvalue is labeled first
        match = any(_same_span(moved1, got[s]) for s in (1, -1))
        assert match


def _same_span(vs, ws):
    rows = [list(v) for v in vs]
    rows2 = rows + [list(w) for w in ws]
    return linalg.rank(rows) == linalg.rank(rows2) == 3


def test_grassmann_conjugation_equivariance():
    # x = g . w with g over Q(sqrt(2)) of determinant 1: conjugating the
    # coefficients conjugates the pair of subspaces
    d = 2
    g = [[QuadExt(1 if i == j else 0, 0, d) for j in range(6)] for i in range(6)]
    g[0][3] = QuadExt(0, 1, d)  # unipotent shear by sqrt(2)
    x = gl_action(g, make_rep("case1_w"))
    gr = eigenspaces(x)
    xs = x.map_coeffs(lambda v: v.conjugate() if isinstance(v, QuadExt) else v)
    grs = eigenspaces(xs)
    conj1 = [[_conj(v) for v in vec] for vec in gr.basis1]
    conj2 = [[_conj(v) for v in vec] for vec in gr.basis2]
    assert (_same_span_qe(conj1, grs.basis1) and _same_span_qe(conj2, grs.basis2)) or \
           (_same_span_qe(conj1, grs.basis2) and _same_span_qe(conj2, grs.basis1))


def _conj(v):
    return v.conjugate() if isinstance(v, QuadExt) else v


def _same_span_qe(vs, ws):
    rows = [list(v) for v in vs]
    rows2 = rows + [list(w) for w in ws]
    return linalg.rank(rows) == linalg.rank(rows2) == 3


def test_plucker_shape():
    basis = [[Fraction(1), 0, 0, 0, 0, 0],
             [0, Fraction(1), 0, 0, 0, 0],
             [0, 0, Fraction(1), 0, 0, 0]]
    p = plucker(basis)
    assert len(p) == 20
    assert p[0] == 1 and all(v == 0 for v in p[1:])


def test_point_rationality_exact_modes():
    v = point_rationality([Fraction(2), Fraction(4), Fraction(6)])
    assert v.rational and v.certified
    q = point_rationality([QuadExt(0, 1, 2), QuadExt(0, 2, 2)])
    assert q.rational and q.certified  # ratio 2 is rational even if coords are not
    q2 = point_rationality([QuadExt(1, 0, 2), QuadExt(0, 1, 2)])
    assert not q2.rational and q2.certified


def test_point_rationality_float_modes():
    ok = point_rationality([0.5, 0.25, 1.0], max_den=1000, tol=1e-9)
    assert ok.rational and not ok.certified
    bad = point_rationality([1.0, math.sqrt(2)], max_den=1000, tol=1e-12)
    assert not bad.rational


def test_irrationality_reports_certified():
    rep = irrationality_report(make_rep("case3_w", n=2))
    assert rep.flags["x"].rational and rep.flags["x"].certified

    rep = irrationality_report(make_rep("case2_w"))
    assert rep.flags["Q"].rational and rep.flags["Q"].certified

    rep = irrationality_report(make_rep("case1_w"))
    assert rep.flags["E1"].rational and rep.flags["E2"].rational
    assert rep.flags["Gr"].rational


def test_irrationality_heuristic_for_float_orbit_point():
    # transport the representative by shears on both block sides so that
    # both eigenspaces (and the pair) move off every rational point
    up = [[1.0 if i == j else 0.0 for j in range(6)] for i in range(6)]
    up[0][3] = math.sqrt(2)
    up[1][4] = 1.0 / math.pi
    lo = [[1.0 if i == j else 0.0 for j in range(6)] for i in range(6)]
    lo[3][0] = 1.0 / math.e
    lo[4][1] = math.sqrt(3) / 5.0
    g = [[sum(lo[i][k] * up[k][j] for k in range(6)) for j in range(6)] for i in range(6)]
    x = gl_action(g, make_rep("case1_w").as_float())
    rep = irrationality_report(x, max_den=1000, tol=1e-12)
    assert not rep.flags["E1"].rational
    assert not rep.flags["E2"].rational
    assert not rep.flags["Gr"].rational
    assert rep.all_irrational()


def test_negative_orbit_float_eigenspaces_are_complex_but_pair_is_real():
    x = make_rep("case1_w1").as_float()
    gr = eigenspaces(x)
    rep = grassmann_rationality(gr, max_den=1000, tol=1e-9)
    # the representative itself is rational, so the unordered pair is rational
    assert rep.rational
