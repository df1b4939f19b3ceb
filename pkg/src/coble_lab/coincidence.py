"""Coincidence calculus for triples of binary quadratics.

For quadratics A, B, C the three pencil involutions sigma_A = <B, C>,
sigma_B = <A, C>, sigma_C = <A, B> have fixed-point forms J(B, C), J(A, C),
J(A, B).  The Jacobians are dependent exactly when A, B, C are, which is a
single determinant condition det M = 0.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

from . import linalg
from .binform import (
    BinaryForm,
    format_rational,
    is_scalar,
    jacobian,
    parse_rational,
    pencil_involution,
    resultant,
)
from .errors import CobleLabError, InvalidTriple, PreconditionFailed, SingularLambda

# Reversing the columns of N and conjugating by S = diag(1, -1, 1) gives
# EPSILON * det(M) * M^-1 after transposition; fixed once on A = u^2, B = uv, C = v^2.
EPSILON = 1
SIGN = (1, -1, 1)


@dataclass(frozen=True)
class QuadTriple:
    A: BinaryForm
    B: BinaryForm
    C: BinaryForm

    @property
    def forms(self):
        return (self.A, self.B, self.C)

    def validate(self):
        names = ("A", "B", "C")
        for n, q in zip(names, self.forms):
            if q.degree != 2:
                raise InvalidTriple(f"{n} is not a binary quadratic")
            if q.discriminant() == 0:
                raise InvalidTriple(f"{n} has zero discriminant")
        for (n1, q1), (n2, q2) in combinations(zip(names, self.forms), 2):
            if resultant(q1, q2) == 0:
                raise InvalidTriple(f"{n1} and {n2} share a root")
        return self

    def substitute(self, m):
        return QuadTriple(*(q.substitute(m) for q in self.forms))

    def to_json(self):
        return {"A": self.A.to_json(), "B": self.B.to_json(), "C": self.C.to_json()}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or not {"A", "B", "C"} <= set(obj):
            raise PreconditionFailed('triple JSON needs the keys "A", "B", "C"')
        return cls(*(BinaryForm.from_json(obj[k]) for k in "ABC"))


@dataclass(frozen=True)
class CoeffMatrices:
    M: tuple
    N: tuple

    @property
    def det_M(self):
        return linalg.det([list(r) for r in self.M])

    @property
    def det_N(self):
        return linalg.det([list(r) for r in self.N])

    def to_json(self):
        fmt = lambda m: [[format_rational(x) for x in r] for r in m]
        return {"M": fmt(self.M), "N": fmt(self.N),
                "detM": format_rational(self.det_M), "detN": format_rational(self.det_N)}


def _minors(p, q):
    """(p0 q1 - p1 q0, p0 q2 - p2 q0, p1 q2 - p2 q1)."""
    return (p[0] * q[1] - p[1] * q[0], p[0] * q[2] - p[2] * q[0], p[1] * q[2] - p[2] * q[1])


def normalized_identity_holds(mats):
    """M . (S N~^T S) == EPSILON * det(M) * I, with N~ = N with columns reversed."""
    M = [list(r) for r in mats.M]
    Nt = [list(reversed(r)) for r in mats.N]
    adj = [[SIGN[i] * Nt[j][i] * SIGN[j] for j in range(3)] for i in range(3)]
    prod = linalg.matmul(M, adj)
    d = mats.det_M
    return all(prod[i][j] == (EPSILON * d if i == j else 0) for i in range(3) for j in range(3))


def build_matrices(t, check=True):
    """M has rows A, B, C; N has rows the Jacobian triples of (B,C), (A,C), (A,B) with halved middle."""
    if check:
        t.validate()
    a, b, c = (q.coeffs for q in t.forms)
    mats = CoeffMatrices(M=(tuple(a), tuple(b), tuple(c)),
                         N=(_minors(b, c), _minors(a, c), _minors(a, b)))
    if not normalized_identity_holds(mats):
        raise AssertionError("normalized cofactor identity failed")
    return mats


def jacobian_triple(t):
    return (jacobian(t.B, t.C), jacobian(t.A, t.C), jacobian(t.A, t.B))


def coincidence_condition(t, check=True):
    """True iff det M = 0, i.e. A, B, C (equivalently their Jacobians) are dependent."""
    return build_matrices(t, check).det_M == 0


def involutions(t):
    """(sigma_A, sigma_B, sigma_C) = pencil involutions of <B,C>, <A,C>, <A,B>."""
    return (pencil_involution(t.B, t.C), pencil_involution(t.A, t.C), pencil_involution(t.A, t.B))


def pompilj_residual(t):
    """(sigma_A sigma_B sigma_C)^2; scalar exactly when the composite is an involution."""
    sa, sb, sc = involutions(t)
    r = sa @ sb @ sc
    return r @ r


def residual_is_scalar(t):
    return is_scalar(pompilj_residual(t))


def _lambda(Lambda):
    lam = [[parse_rational(x) for x in row] for row in Lambda]
    if len(lam) != 3 or any(len(r) != 3 for r in lam):
        raise PreconditionFailed("Lambda must be 3x3")
    return lam


def family_coincidence_test(A, B, Lambda, C, check=True):
    """Whether G2 = l20 A + l21 B + l22 C is proportional to J(A, B)."""
    t = QuadTriple(A, B, C)
    if check:
        t.validate()
    lam = _lambda(Lambda)
    if linalg.det(lam) == 0:
        raise SingularLambda("Lambda is not invertible")
    l0, l1, l2 = lam[2]
    G2 = l0 * A + l1 * B + l2 * C
    return linalg.rank([list(G2.coeffs), list(jacobian(A, B).coeffs)]) <= 1


def coincidence_equations(A, B, C):
    """Independent linear conditions on (l20, l21, l22) for G2 to be proportional to J(A, B).

    Rows are the 2x2 minors of the matrix [G2; J(A, B)], reduced to a basis.
    """
    J = jacobian(A, B).coeffs
    cols = [q.coeffs for q in (A, B, C)]
    rows = []
    for p, q in ((0, 1), (0, 2), (1, 2)):
        row = [cols[k][p] * J[q] - cols[k][q] * J[p] for k in range(3)]
        row = linalg.primitive_keep_sign(linalg.integer_row(row))
        if any(row) and linalg.rank(rows + [row]) > len(rows):
            rows.append(row)
    return rows


# ---------------------------------------------------------------- family scan

def scan_point(args):
    t, lam = args
    out = {"lambda": [[format_rational(x) for x in r] for r in lam]}
    try:
        mats = build_matrices(t)
        out["detM"] = format_rational(mats.det_M)
        out["coincident"] = mats.det_M == 0
        out["marked_fix"] = family_coincidence_test(t.A, t.B, lam, t.C)
    except CobleLabError as e:
        out = {"lambda": out["lambda"], "error": e.code, "message": str(e)}
    return out


def grid_points(grid):
    """Lambda matrices described by a grid description, in input order.

    Either ``{"lambdas": [M, ...]}`` or ``{"base": M, "row": i, "values": [...]}``,
    the latter running row ``i`` of ``base`` over the cartesian cube of values.
    """
    if "lambdas" in grid:
        return [_lambda(m) for m in grid["lambdas"]]
    base = _lambda(grid["base"])
    i = int(grid.get("row", 2))
    values = [parse_rational(v) for v in grid["values"]]
    out = []
    for row in product(values, repeat=3):
        m = [list(r) for r in base]
        m[i] = list(row)
        out.append(m)
    return out


def family_scan(t, lambdas, workers=None):
    if workers is None:
        try:
            workers = max(1, int(os.environ.get("COBLE_LAB_THREADS", "1")))
        except ValueError:
            workers = 1
    jobs = [(t, lam) for lam in lambdas]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(scan_point, jobs, chunksize=8))
    return [scan_point(j) for j in jobs]
