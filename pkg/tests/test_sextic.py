from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.polys.matrices import DomainMatrix

from coble_lab.binform import BinaryForm, divide_exact
from coble_lab.errors import BasePoint, DegenerateInput, DependentForms, NonBirational, NotTenNodal
from coble_lab.sextic import (
    PlaneForm,
    build_parametrization,
    coble_check,
    double_point_candidate,
    double_point_form,
    implicitize,
    monomials,
    nodal_system,
    nodal_system_dimension,
    parametrization_from_forms,
    pullback,
    remainder_functionals,
)

from conftest import DEPENDENT_C, FIXTURE_A, FIXTURE_B, FIXTURE_C, FIXTURE_LAMBDA, GENERIC_LAMBDA

u, v, x, t = sympy.symbols("u v x t")
A_S, B_S, C_S = u**2 - v**2, u**2 + v**2, u**2 + u*v - v**2


def sympy_net(C=C_S, lam=FIXTURE_LAMBDA):
    G = [lam[i][0] * A_S + lam[i][1] * B_S + lam[i][2] * C for i in range(3)]
    return [sympy.expand(B_S * C * G[0]), sympy.expand(A_S * C * G[1]), sympy.expand(A_S * B_S * G[2])]


def sympy_kernel_dimension(F, m):
    """Dimension of degree-m forms vanishing on the image, by direct expansion."""
    P = [sympy.Poly(f, u, v) for f in F]
    rows = []
    for i, j, k in monomials(m):
        terms = dict((P[0] ** i * P[1] ** j * P[2] ** k).terms())
        rows.append([sympy.ZZ(int(terms.get((6 * m - e, e), 0))) for e in range(6 * m + 1)])
    M = DomainMatrix(rows, (len(rows), 6 * m + 1), sympy.ZZ)
    return len(rows) - M.convert_to(sympy.QQ).rank()


def sympy_double_point_form(F):
    """gcd of the three pairwise resultants of the secant quotients, in the chart v = 1."""
    aff = [f.subs({u: x, v: 1}) for f in F]
    aft = [f.subs({u: t, v: 1}) for f in F]

    def Q(i, j):
        return sympy.Poly(sympy.cancel((aff[i] * aft[j] - aft[i] * aff[j]) / (x - t)), t)

    Qs = [Q(0, 1), Q(0, 2), Q(1, 2)]
    rs = [sympy.resultant(Qs[a], Qs[b]) for a, b in ((0, 1), (0, 2), (1, 2))]
    return sympy.Poly(sympy.gcd(sympy.gcd(rs[0], rs[1]), rs[2]), x)


@pytest.fixture(scope="module")
def fixture_net():
    return build_parametrization(FIXTURE_A, FIXTURE_B, FIXTURE_C, FIXTURE_LAMBDA)


@pytest.fixture(scope="module")
def generic_net():
    return build_parametrization(FIXTURE_A, FIXTURE_B, FIXTURE_C, GENERIC_LAMBDA)


@pytest.fixture(scope="module")
def dependent_net():
    return build_parametrization(FIXTURE_A, FIXTURE_B, DEPENDENT_C, FIXTURE_LAMBDA)


def test_build_matches_sympy(fixture_net):
    for ours, theirs in zip(fixture_net.forms, sympy_net()):
        p = sympy.Poly(theirs, u, v)
        assert list(ours.coeffs) == [p.coeff_monomial(u ** (6 - e) * v ** e) for e in range(7)]


def test_build_errors():
    with pytest.raises(DependentForms):
        build_parametrization(FIXTURE_A, FIXTURE_B, FIXTURE_C, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(DegenerateInput):
        build_parametrization(BinaryForm.of(1, 0, 0), FIXTURE_B, FIXTURE_C, FIXTURE_LAMBDA)
    with pytest.raises(DegenerateInput):
        build_parametrization(FIXTURE_A, FIXTURE_B, FIXTURE_C, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(DegenerateInput):
        build_parametrization(FIXTURE_A, FIXTURE_A.scale(2) + BinaryForm.of(0, 1, -1), FIXTURE_C, FIXTURE_LAMBDA)
    uv = BinaryForm.of(0, 1, 0)
    with pytest.raises(BasePoint):
        parametrization_from_forms(uv * FIXTURE_A * FIXTURE_B, uv * FIXTURE_B * FIXTURE_C,
                                   uv * FIXTURE_C * FIXTURE_A)


def test_plane_form_json():
    D = PlaneForm(2, {(1, 1, 0): 1, (0, 0, 2): Fraction(-1, 3)})
    assert PlaneForm.from_json(D.to_json()) == D
    assert D.to_json() == {"deg": 2, "terms": [{"e": [1, 1, 0], "c": "1"}, {"e": [0, 0, 2], "c": "-1/3"}]}
    assert PlaneForm.from_vector(2, D.vector()) == D


def test_pullback_examples(fixture_net):
    assert pullback(PlaneForm(1, {(1, 0, 0): 1}), fixture_net) == fixture_net.F0
    D = PlaneForm(2, {(1, 1, 0): 1, (0, 0, 2): -1})
    F = sympy_net()
    p = sympy.Poly(sympy.expand(F[0] * F[1] - F[2] ** 2), u, v)
    assert list(pullback(D, fixture_net).coeffs) == [p.coeff_monomial(u ** (12 - e) * v ** e) for e in range(13)]


coeff = st.integers(-5, 5)


@given(st.lists(coeff, min_size=10, max_size=10), st.lists(coeff, min_size=10, max_size=10), coeff, coeff)
@settings(max_examples=40, deadline=None)
def test_pullback_is_linear(a, b, s, r):
    g = build_parametrization(FIXTURE_A, FIXTURE_B, FIXTURE_C, GENERIC_LAMBDA)
    D1, D2 = PlaneForm.from_vector(3, a), PlaneForm.from_vector(3, b)
    lhs = pullback(D1.scale(s) + D2.scale(r), g)
    assert lhs == pullback(D1, g).scale(s) + pullback(D2, g).scale(r)


@pytest.mark.parametrize("lam", [GENERIC_LAMBDA, FIXTURE_LAMBDA])
def test_double_point_form_matches_sympy(lam):
    g = build_parametrization(FIXTURE_A, FIXTURE_B, FIXTURE_C, lam)
    W = double_point_form(g)
    oracle = sympy_double_point_form(sympy_net(lam=lam))
    assert oracle.degree() == 20 and W.degree == 20 and W.coeffs[0] != 0
    affine = BinaryForm(tuple(Fraction(int(c)) for c in oracle.all_coeffs()))
    assert W.is_proportional(affine)


def test_generic_fixture_properties(generic_net):
    W = double_point_form(generic_net)
    assert W.is_squarefree()
    for q in (FIXTURE_A, FIXTURE_B, FIXTURE_C):
        divide_exact(W, q)
    assert nodal_system_dimension(generic_net, 3, 1, W) == 0
    assert nodal_system_dimension(generic_net, 6, 2, W) == 1
    # quartics through the ten nodes: chi(4L - E1 - ... - E10) = 5
    assert nodal_system_dimension(generic_net, 4, 1, W) == 5


def test_printed_fixture_has_a_triple_point(fixture_net):
    W = double_point_form(fixture_net)
    assert W.degree == 20
    for q in (FIXTURE_A, FIXTURE_B, FIXTURE_C):
        divide_exact(W, q)
    # G0 = A + B = 2u^2, so u = 0 and the roots of C all map to [0:0:1]
    assert not W.is_squarefree()
    divide_exact(W, BinaryForm.of(1, 0) ** 2 * FIXTURE_C)
    D = implicitize(fixture_net)
    assert max(e[2] for e in D.terms) == 3
    assert nodal_system_dimension(fixture_net, 3, 1, W) == 0
    assert nodal_system_dimension(fixture_net, 6, 2, W) == 1


@pytest.mark.parametrize("which", ["generic_net", "fixture_net"])
def test_implicitize(which, request):
    g = request.getfixturevalue(which)
    D = implicitize(g)
    assert pullback(D, g).is_zero()
    assert sympy_kernel_dimension(_sym(g), 6) == 1
    W = double_point_form(g)
    assert all(c == 0 for c in remainder_functionals(pullback(D, g), W, 2))
    (gen,) = nodal_system(g, 6, 2, W)
    assert sorted(gen.terms) == sorted(D.terms)
    ratio = {D.terms[e] / gen.terms[e] for e in D.terms}
    assert len(ratio) == 1


def _sym(g):
    return [sum(sympy.Rational(c.numerator, c.denominator) * u ** (6 - i) * v ** i
                for i, c in enumerate(f.coeffs)) for f in g.forms]


def test_dependent_triple(dependent_net):
    assert double_point_candidate(dependent_net).is_zero()
    with pytest.raises(NotTenNodal) as info:
        double_point_form(dependent_net)
    assert info.value.exit_code == 3
    with pytest.raises(NonBirational) as info:
        implicitize(dependent_net)
    # the map is a double cover of a nodal cubic: sextics vanishing on it are cubic multiples
    assert info.value.certificate["kernel_dimension"] == 10
    assert sympy_kernel_dimension(_sym(dependent_net), 6) == 10
    assert sympy_kernel_dimension(_sym(dependent_net), 3) == 1
    assert nodal_system_dimension(dependent_net, 6, 2) == 10
    report = coble_check(dependent_net)
    assert report["is_coble"] is False and report["reason"] == "NotTenNodal"


def test_remainder_with_root_at_infinity():
    W = BinaryForm.of(0, 1, 1)  # v (u + v)
    P = W * W * BinaryForm.of(3, 1)
    assert all(c == 0 for c in remainder_functionals(P, W, 2))
    assert any(c != 0 for c in remainder_functionals(W * BinaryForm.of(1, 1, 0), W, 2))


def test_coble_check_report(generic_net):
    report = coble_check(generic_net)
    assert report["is_coble"] is True
    assert report["w_degree"] == 20 and report["w_squarefree"] is True
    assert (report["cubics_through_nodes"], report["sextics_singular_at_nodes"]) == (0, 1)
    assert report["metadata"]["moduli"]["dim_moduli"] == 9
    assert report["metadata"]["moduli"]["formula"] == "12 - 3 = 9"
