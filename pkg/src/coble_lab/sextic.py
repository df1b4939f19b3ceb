"""Rational plane sextics given by three binary sextic forms.

A net F0, F1, F2 of binary sextics defines gamma: P^1 -> P^2.  The nodes of the
image are never located explicitly; instead the degree-20 form W vanishing on
their parameter preimages is computed, and conditions "multiplicity >= r at
every node" become divisibility of the pullback by W^r.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Optional, Tuple

from . import linalg
from .binform import (
    BinaryForm,
    divide_exact,
    divmod_forms,
    format_rational,
    gcd_form,
    parse_rational,
    resultant,
)
from .errors import (
    BasePoint,
    DegenerateInput,
    DependentForms,
    NonBirational,
    NotTenNodal,
    PreconditionFailed,
)

DOUBLE_POINT_DEGREE = 20
GRASSMANNIAN_DIM = 12  # Gr(3, 7): nets inside H^0(O_P1(6))
PGL2_DIM = 3


def monomials(m):
    """Exponent triples (i, j, k) with i + j + k = m, in descending lexicographic order."""
    return [(i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1)]


@dataclass(frozen=True)
class PlaneForm:
    """Ternary form of degree ``deg``; ``terms`` maps exponent triples to nonzero rationals."""

    deg: int
    terms: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in dict(self.terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != self.deg:
                raise PreconditionFailed(f"exponent {e} does not have degree {self.deg}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def from_vector(cls, deg, vec):
        return cls(deg, dict(zip(monomials(deg), vec)))

    def vector(self):
        return [self.terms.get(e, Fraction(0)) for e in monomials(self.deg)]

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if other.deg != self.deg:
            raise PreconditionFailed("degree mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PlaneForm(self.deg, out)

    def scale(self, c):
        c = Fraction(c)
        return PlaneForm(self.deg, {e: c * x for e, x in self.terms.items()})

    def __call__(self, x0, x1, x2):
        return sum(c * x0 ** e[0] * x1 ** e[1] * x2 ** e[2] for e, c in self.terms.items())

    def to_json(self):
        return {"deg": self.deg, "terms": [{"e": list(e), "c": format_rational(c)}
                                           for e, c in sorted(self.terms.items(), reverse=True)]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or set(obj) != {"deg", "terms"}:
            raise PreconditionFailed('PlaneForm JSON needs exactly the keys "deg" and "terms"')
        terms = {}
        for t in obj["terms"]:
            if set(t) != {"e", "c"}:
                raise PreconditionFailed('each term needs exactly the keys "e" and "c"')
            e = tuple(t["e"])
            terms[e] = terms.get(e, Fraction(0)) + parse_rational(t["c"])
        return cls(int(obj["deg"]), terms)


@dataclass(frozen=True)
class Witness:
    A: BinaryForm
    B: BinaryForm
    C: BinaryForm
    G: Tuple[BinaryForm, BinaryForm, BinaryForm]
    Lambda: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SexticParametrization:
    F0: BinaryForm
    F1: BinaryForm
    F2: BinaryForm
    witness: Optional[Witness] = None

    @property
    def forms(self):
        return (self.F0, self.F1, self.F2)

    def to_json(self):
        out = {"F": [f.to_json() for f in self.forms]}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "A": w.A.to_json(), "B": w.B.to_json(), "C": w.C.to_json(),
                "G": [g.to_json() for g in w.G],
                "Lambda": [[format_rational(x) for x in row] for row in w.Lambda],
            }
        return out


def validate_net(forms):
    """Raise DependentForms / BasePoint unless the forms span a base-point-free net."""
    if any(f.degree != 6 for f in forms):
        raise PreconditionFailed("the net must consist of binary sextics")
    if linalg.rank([list(f.coeffs) for f in forms]) < 3:
        raise DependentForms("F0, F1, F2 are linearly dependent")
    g = gcd_form(gcd_form(forms[0], forms[1]), forms[2])
    if g.degree > 0:
        raise BasePoint("F0, F1, F2 have a common root", certificate={"gcd": g.to_json()})


def parametrization_from_forms(F0, F1, F2):
    forms = (F0, F1, F2)
    validate_net(forms)
    return SexticParametrization(*forms)


def build_parametrization(A, B, C, Lambda):
    """F0 = B C G0, F1 = A C G1, F2 = A B G2 with (G0, G1, G2) = Lambda (A, B, C)."""
    quads = {"A": A, "B": B, "C": C}
    for name, q in quads.items():
        if q.degree != 2:
            raise DegenerateInput(f"{name} must be a binary quadratic")
        if q.discriminant() == 0:
            raise DegenerateInput(f"{name} is a square of a linear form (zero discriminant)")
    for (n1, q1), (n2, q2) in combinations(quads.items(), 2):
        if resultant(q1, q2) == 0:
            raise DegenerateInput(f"{n1} and {n2} share a root")
    lam = tuple(tuple(Fraction(x) for x in row) for row in Lambda)
    if len(lam) != 3 or any(len(r) != 3 for r in lam):
        raise DegenerateInput("Lambda must be 3x3")
    if linalg.det([list(r) for r in lam]) == 0:
        raise DegenerateInput("Lambda is singular")
    G = tuple(r[0] * A + r[1] * B + r[2] * C for r in lam)
    forms = (B * C * G[0], A * C * G[1], A * B * G[2])
    validate_net(forms)
    return SexticParametrization(*forms, witness=Witness(A, B, C, G, lam))


def pullback(D, g):
    """D(F0, F1, F2), a binary form of degree 6 * deg D."""
    return _pullback_terms(D.deg, g)(D.vector())


def _pullback_terms(m, g):
    """Returns a function mapping a coefficient vector to the pulled-back form."""
    powers = [[BinaryForm.constant(1)] for _ in range(3)]
    for i, F in enumerate(g.forms):
        for _ in range(m):
            powers[i].append(powers[i][-1] * F)
    images = [powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] for e in monomials(m)]

    def apply(vec):
        out = BinaryForm.zero(6 * m)
        for c, img in zip(vec, images):
            if c:
                out = out + img.scale(c)
        return out

    apply.images = images
    return apply


# ---------------------------------------------------------------- double points

def _interpolate(xs, ys):
    """Coefficients (low degree first) of the polynomial through the points."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Newton form -> monomial basis
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(n - 1):
            new[i + 1] += poly[i]
        for i in range(n):
            new[i] -= xs[k] * poly[i]
        new[0] += coef[k]
        poly = new
    return poly


def _secant_quotient(Fi, Fj, x):
    """(F_i(s) F_j(t) - F_i(t) F_j(s)) / (s0 t1 - s1 t0) at s = [x:1], as a quintic in t."""
    a, b = Fi(x, 1), Fj(x, 1)
    num = Fj.scale(a) - Fi.scale(b)
    return divide_exact(num, BinaryForm.of(-1, x))


def secant_resultants(g):
    """The three resultants in t of the secant quotients Q_01, Q_02, Q_12, as binary forms of degree 50.

    Each is computed by evaluating at s = [x:1] for 51 integers x and interpolating.
    """
    F = g.forms
    pairs = [(0, 1), (0, 2), (1, 2)]
    deg = 50
    xs = list(range(deg + 1))
    values = {p: [] for p in combinations(pairs, 2)}
    for x in xs:
        Q = {p: _secant_quotient(F[p[0]], F[p[1]], x) for p in pairs}
        for p, q in values:
            values[(p, q)].append(resultant(Q[p], Q[q]))
    out = []
    for key in combinations(pairs, 2):
        low = _interpolate(xs, values[key])
        # coefficient of x^k is the coefficient of u^k v^(deg-k), index deg - k
        out.append(BinaryForm(tuple(reversed(low))))
    return out


def double_point_candidate(g):
    """Primitive gcd of the three secant resultants (the zero form if all vanish)."""
    r = secant_resultants(g)
    w = gcd_form(gcd_form(r[0], r[1]), r[2])
    return w


def double_point_form(g):
    """The degree-20 form whose roots are the parameter preimages of the nodes."""
    w = double_point_candidate(g)
    if w.is_zero() or w.degree != DOUBLE_POINT_DEGREE:
        deg = None if w.is_zero() else w.degree
        raise NotTenNodal(f"double-point gcd has degree {deg}, expected {DOUBLE_POINT_DEGREE}",
                          certificate={"gcd_degree": deg,
                                       "gcd": None if w.is_zero() else w.to_json()})
    return w


def remainder_functionals(P, W, r):
    """Linear coordinates of P modulo W^r; all vanish iff W^r divides P.

    The power of v in W (roots at [1:0]) is handled by requiring the first
    coefficients of P to vanish; the rest by division by the remaining factor.
    ``W`` equal to zero means no reduction at all.
    """
    if W.is_zero():
        return list(P.coeffs)
    a = W.leading_zeros()
    core = BinaryForm(W.coeffs[a:])
    out = list(P.coeffs[:a * r])
    _, rem = divmod_forms(P, core ** r)
    out.extend(rem.coeffs)
    return out


def _system_matrix(g, m, r, W):
    images = _pullback_terms(m, g).images
    cols = [remainder_functionals(img, W, r) for img in images]
    return [list(row) for row in zip(*cols)]


def nodal_system_dimension(g, m, r, W=None):
    """Dimension of the degree-m plane forms whose pullback is divisible by W^r.

    When every parameter is a double point (the secant resultants vanish
    identically, e.g. gamma is not birational) W is taken to be zero, so the
    condition becomes vanishing of the pullback.
    """
    if r not in (1, 2):
        raise PreconditionFailed("multiplicity must be 1 or 2")
    if m < 0:
        raise PreconditionFailed("degree must be non-negative")
    if W is None:
        W = double_point_candidate(g)
        if not W.is_zero() and W.degree != DOUBLE_POINT_DEGREE:
            double_point_form(g)  # raises NotTenNodal with its certificate
    mat = _system_matrix(g, m, r, W)
    return len(monomials(m)) - linalg.rank(mat)


def nodal_system(g, m, r, W=None):
    """Basis of the space counted by nodal_system_dimension, as PlaneForms."""
    if W is None:
        W = double_point_form(g)
    mat = _system_matrix(g, m, r, W)
    return [PlaneForm.from_vector(m, v) for v in linalg.nullspace(mat, len(monomials(m)))]


def implicitize(g):
    """The sextic equation of the image, integral and primitive."""
    images = _pullback_terms(6, g).images
    mat = [list(row) for row in zip(*(img.coeffs for img in images))]
    ker = linalg.nullspace(mat, len(images))
    if len(ker) != 1:
        raise NonBirational(f"degree-6 forms vanishing on the image: {len(ker)}, expected 1",
                            certificate={"kernel_dimension": len(ker)})
    D = PlaneForm.from_vector(6, ker[0])
    assert pullback(D, g).is_zero()
    return D


def moduli_audit():
    return {
        "dim_Gr(3,7)": GRASSMANNIAN_DIM,
        "dim_PGL2": PGL2_DIM,
        "dim_moduli": GRASSMANNIAN_DIM - PGL2_DIM,
        "formula": f"{GRASSMANNIAN_DIM} - {PGL2_DIM} = {GRASSMANNIAN_DIM - PGL2_DIM}",
    }


def coble_check(g):
    """Run the whole pipeline; failures are recorded, never raised."""
    report = {"is_coble": False, "reason": None, "metadata": {"moduli": moduli_audit()}}
    try:
        W = double_point_form(g)
    except NotTenNodal as e:
        report["reason"] = e.code
        report["w_form"] = e.to_json()
        return report
    report["w_form"] = W.to_json()
    report["w_degree"] = W.degree
    report["w_squarefree"] = W.is_squarefree()
    d31 = nodal_system_dimension(g, 3, 1, W)
    d62 = nodal_system_dimension(g, 6, 2, W)
    report["cubics_through_nodes"] = d31
    report["sextics_singular_at_nodes"] = d62
    try:
        D = implicitize(g)
        report["implicit"] = D.to_json()
    except NonBirational as e:
        report["reason"] = e.code
        report["implicit"] = e.to_json()
        return report
    if (d31, d62) != (0, 1):
        report["reason"] = "CobleConditionsFail"
        return report
    report["is_coble"] = True
    return report
