"""Bounded enumeration of classes with prescribed square and canonical degree.

Solutions of d^2 - sum m_i^2 = s and -3d + sum m_i = k (i.e. D^2 = s and
D.K = k on Bl_N P^2) are listed degree by degree.  On top of that sit the
extension of disjoint (-1)-classes to a full blow-down frame, the passage to
isotropic classes E - K, the Fano class (sum of a maximal isotropic
sequence)/3 and a lattice version of the phi-invariant.

Lattice extendability is necessary but not sufficient for the geometric
statements about unnodal surfaces: effectivity and irreducibility are not
visible to this module.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import linalg
from .errors import (
    BoundExceeded,
    BoundTooSmall,
    NonExtendable,
    NonIntegralFano,
    NotExceptionalClass,
    NotUnimodularFrame,
    PreconditionFailed,
    UnstableBound,
)
from .picard import BlowupSurface, DivisorClass, contract_basis

PRESETS = {
    "minus-one": (-1, -1),
    "root": (-2, 0),
    "isotropic": (0, 0),
}
PRESET_DEGREE_BOUND = 6
DEFAULT_EXTENSION_CAP = 8
DEFAULT_PHI_BOX = 6


@dataclass(frozen=True)
class ClassQuery:
    n: int
    self_intersection: int
    k_pairing: int
    degree_bound: int

    def __post_init__(self):
        if self.degree_bound < 1:
            raise PreconditionFailed("degree_bound must be >= 1")
        if self.n < 0:
            raise PreconditionFailed("n must be non-negative")


def preset_query(name, n, degree_bound=None):
    if name not in PRESETS:
        raise PreconditionFailed(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    s, k = PRESETS[name]
    if degree_bound is None:
        if name == "isotropic":
            raise PreconditionFailed("the isotropic preset needs an explicit degree bound")
        if n > 10:
            raise PreconditionFailed("presets cover N <= 10")
        degree_bound = PRESET_DEGREE_BOUND
    return ClassQuery(n, s, k, degree_bound)


def env_workers():
    try:
        return max(1, int(os.environ.get("COBLE_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _mult_range(r, S, Q):
    """Integers m with (S - m)^2 <= (r - 1)(Q - m^2), i.e. the rest stays feasible."""
    def ok(m):
        return r * m * m - 2 * S * m + S * S - (r - 1) * Q <= 0

    disc = (r - 1) * (r * Q - S * S)
    if disc < 0:
        return range(0)
    t = isqrt(disc)
    lo = (S - t - 1) // r
    hi = (S + t + 1) // r + 1
    while lo <= hi and not ok(lo):
        lo += 1
    while hi >= lo and not ok(hi):
        hi -= 1
    return range(lo, hi + 1)


def _solutions_with(n, S, Q, prefix=()):
    """All m in Z^n with sum m = S and sum m^2 = Q, lexicographically ascending.

    With ``prefix`` only solutions starting with it are listed.
    """
    if Q < 0 or (S - Q) % 2:
        return []
    out = []
    m = list(prefix) + [0] * (n - len(prefix))
    S -= sum(prefix)
    Q -= sum(x * x for x in prefix)

    def rec(i, S, Q):
        r = n - i
        if r == 1:
            if S * S == Q:
                m[i] = S
                out.append(tuple(m))
            return
        for x in _mult_range(r, S, Q):
            m[i] = x
            rec(i + 1, S - x, Q - x * x)

    if len(prefix) == n:
        return [tuple(m)] if S == 0 and Q == 0 else []
    if Q < 0:
        return []
    rec(len(prefix), S, Q)
    return out


def classes_at_degree(n, d, self_intersection, k_pairing, prefix=()):
    S = k_pairing + 3 * d
    Q = d * d - self_intersection
    return [DivisorClass(d, m) for m in _solutions_with(n, S, Q, prefix)]


def _degree_job(args):
    return classes_at_degree(*args)


def _split_jobs(n, d, s, k):
    """One job per admissible first multiplicity, for load balancing."""
    S, Q = k + 3 * d, d * d - s
    if n < 2 or Q < 0:
        return [(n, d, s, k)]
    return [(n, d, s, k, (x,)) for x in _mult_range(n, S, Q)]


def enumerate_classes(q, verify=False, workers=None, degrees=None):
    """All classes with D^2 = s, D.K = k and |d| <= bound, sorted lexicographically by (d, m).

    ``verify`` re-runs the search at ``bound + 1`` and raises BoundTooSmall if
    anything new appears there.  The degree range is split across ``workers``
    processes; the merged result is sorted, so it does not depend on them.
    """
    if degrees is None:
        degrees = range(-q.degree_bound, q.degree_bound + 1)
    jobs = [(q.n, d, q.self_intersection, q.k_pairing) for d in degrees]
    workers = env_workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        jobs = [j for job in jobs for j in _split_jobs(*job)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_degree_job, jobs, chunksize=4))
    else:
        chunks = [_degree_job(j) for j in jobs]
    out = sorted(c for chunk in chunks for c in chunk)
    if verify:
        b = q.degree_bound + 1
        edge = classes_at_degree(q.n, b, q.self_intersection, q.k_pairing)
        edge += classes_at_degree(q.n, -b, q.self_intersection, q.k_pairing)
        if edge:
            raise BoundTooSmall(f"{len(edge)} solutions at |d| = {b}", certificate={
                "degree": b, "example": edge[0].to_json()})
    return out


def exact_degree_bound(n, self_intersection, k_pairing):
    """Largest |d| of any solution when K^2 = 9 - n > 0 (K-perp is negative definite).

    Writing D = (k/K^2) K + D' and L = (-3/K^2) K + L', Cauchy-Schwarz on the
    negative definite part gives (d + 3k/K^2)^2 <= (k^2/K^2 - s)(9/K^2 - 1).
    Returns None when the solution set is infinite (n >= 9).
    """
    kk = 9 - n
    if kk <= 0:
        return None
    shift = Fraction(3 * k_pairing, kk)
    rhs = (Fraction(k_pairing * k_pairing, kk) - self_intersection) * (Fraction(9, kk) - 1)
    if rhs < 0:
        return -1
    best = -1
    d = 0
    limit = int(abs(shift)) + isqrt(int(rhs) + 1) + 2
    for d in range(-limit, limit + 1):
        if (d + shift) ** 2 <= rhs:
            best = max(best, abs(d))
    return best


# ------------------------------------------------------------ (-1)-frames

def _check_exceptional(s, E):
    K = s.canonical()
    if E.n != s.n_points or E.dot(E) != -1 or E.dot(K) != -1:
        raise NotExceptionalClass(f"{E} is not a (-1)-class (E^2 = {E.dot(E)}, E.K = {E.dot(K)})")


def _check_disjoint(s, classes):
    for E in classes:
        _check_exceptional(s, E)
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            if a.dot(b) != 0:
                raise PreconditionFailed(f"{a} and {b} are not orthogonal")


def orthogonal_complement(classes, n=10):
    """Z-basis (as DivisorClasses) of the classes orthogonal to all of ``classes``."""
    if not classes:
        basis = [[int(i == j) for j in range(n + 1)] for i in range(n + 1)]
    else:
        # D.x = d*x0 - sum m_i (-x_i) in lattice coordinates x
        rows = [[c.d] + list(c.m) for c in classes]
        basis = linalg.integer_kernel(rows, n + 1)
    return [DivisorClass(v[0], tuple(-x for x in v[1:])) for v in basis]


def _integer_roots_quadratic(a, b, c):
    """Integer t with a t^2 + b t + c = 0 (all integer coefficients)."""
    if a == 0:
        if b == 0:
            return None if c == 0 else []
        return [-c // b] if c % b == 0 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = isqrt(disc)
    if r * r != disc:
        return []
    return sorted({t for t in ((-b + r), (-b - r)) if t % (2 * a) == 0 for t in [t // (2 * a)]})


def extension_obstruction(given, n=10):
    """Look for a certificate that ``given`` admits no disjoint (-1)-class at all.

    Returns a JSON-able certificate or None.  Two checks:
    the K-degrees of a basis of the orthogonal complement must generate
    a subgroup containing -1; and when the complement has rank 2 the
    remaining one-parameter quadratic is solved exactly.
    """
    s = BlowupSurface(n)
    K = s.canonical()
    comp = orthogonal_complement(given, n)
    kdeg = [b.dot(K) for b in comp]
    g = 0
    for x in kdeg:
        g = gcd(g, x)
    if g == 0 or -1 % g:
        return {
            "kind": "k_degree_gcd",
            "complement_basis": [b.to_json() for b in comp],
            "k_degrees": kdeg,
            "gcd": g,
            "statement": f"x.K = -1 has no integral solution: every x in the complement has x.K divisible by {g}",
        }
    if len(comp) != 2:
        return None
    # for disjoint input the rank-2 complement is unimodular, so this branch only
    # confirms the completion; it stays as an exact guard
    (b1, b2), (k1, k2) = comp, kdeg
    _, p, q = linalg.xgcd(k1, k2)
    x0 = (-p) * b1 + (-q) * b2
    w = (k2 // g) * b1 - (k1 // g) * b2
    # (x0 + t w)^2 = -1
    a, b, c = w.dot(w), 2 * x0.dot(w), x0.dot(x0) + 1
    roots = _integer_roots_quadratic(a, b, c)
    if roots is None:
        return None
    sols = [x0 + t * w for t in roots]
    frames = []
    for x in sols:
        try:
            contract_basis(s, list(given) + [x])
            frames.append(x)
        except NotUnimodularFrame:
            pass
    if frames:
        return None
    return {
        "kind": "rank2_exhausted",
        "complement_basis": [b1.to_json(), b2.to_json()],
        "particular": x0.to_json(),
        "direction": w.to_json(),
        "quadratic": [a, b, c],
        "integer_solutions": [x.to_json() for x in sols],
        "statement": "every (-1)-class orthogonal to the input fails to complete a unimodular frame",
    }


def _candidates(s, given, max_degree):
    K = s.canonical()
    out = []
    for d in range(0, max_degree + 1):
        for c in classes_at_degree(s.n_points, d, -1, -1):
            if all(c.dot(g) == 0 for g in given) and c.dot(K) == -1:
                out.append(c)
    return out


def _cliques(s, given, cands, size, first_only):
    """Sets of ``size`` pairwise orthogonal candidates completing a unimodular frame."""
    idx = range(len(cands))
    adj = [{j for j in idx if j > i and cands[i].dot(cands[j]) == 0} for i in idx]
    found = []

    def rec(chosen, allowed):
        if len(chosen) == size:
            frame = list(given) + [cands[i] for i in chosen]
            try:
                contract_basis(s, frame)
            except NotUnimodularFrame:
                return False
            found.append([cands[i] for i in chosen])
            return first_only
        if len(chosen) + len(allowed) < size:
            return False
        for j in sorted(allowed):
            if rec(chosen + [j], allowed & adj[j]):
                return True
        return False

    rec([], set(idx))
    return found


def extend_exceptional(given, n=10, max_degree=DEFAULT_EXTENSION_CAP, all_solutions=False):
    """Complete disjoint (-1)-classes to a frame E_1..E_10 that blows down to P^2.

    Iterative deepening on the degree of the added classes, starting at 1;
    candidates are (-1)-classes of degree 0..D orthogonal to the input, tried
    in lexicographic order.  Returns the completed frame (input first), or
    with ``all_solutions`` the list of all frames at the minimal degree.
    """
    s = BlowupSurface(n)
    given = list(given)
    if len(given) > n - 1:
        raise PreconditionFailed(f"at most {n - 1} classes can be extended")
    _check_disjoint(s, given)
    cert = extension_obstruction(given, n)
    if cert is not None:
        raise NonExtendable("no completion exists", certificate=cert)
    need = n - len(given)
    for D in range(1, max_degree + 1):
        cands = _candidates(s, given, D)
        found = _cliques(s, given, cands, need, first_only=not all_solutions)
        if found:
            frames = [given + extra for extra in found]
            return frames if all_solutions else frames[0]
    raise BoundExceeded(f"no completion with added classes of degree <= {max_degree}",
                        certificate={"max_degree": max_degree})


# ------------------------------------------------------------ isotropic classes

def elliptic_from_exceptional(E, n=10):
    """The isotropic class E - K attached to a (-1)-class E."""
    s = BlowupSurface(n)
    _check_exceptional(s, E)
    return E - s.canonical()


def exceptional_from_elliptic(F, n=10):
    s = BlowupSurface(n)
    return F + s.canonical()


def check_isotropic_sequence(seq, n=10):
    s = BlowupSurface(n)
    K = s.canonical()
    for i, a in enumerate(seq):
        if a.n != n or a.dot(a) != 0 or a.dot(K) != 0:
            raise PreconditionFailed(f"class {i + 1} is not isotropic and K-orthogonal")
        for b in seq[i + 1:]:
            if a.dot(b) != 1:
                raise PreconditionFailed("isotropic sequence needs pairwise products 1")


def extend_isotropic(seq, n=10, max_degree=DEFAULT_EXTENSION_CAP):
    """Extend an isotropic sequence of length r <= 8 to length 10 via E_i = F_i + K."""
    seq = list(seq)
    if len(seq) > 8:
        raise PreconditionFailed("isotropic extension needs r <= 8")
    check_isotropic_sequence(seq, n)
    frame = extend_exceptional([exceptional_from_elliptic(F, n) for F in seq], n, max_degree)
    return [elliptic_from_exceptional(E, n) for E in frame]


def fano_polarization(seq, n=10):
    """(F_1 + ... + F_10)/3 for a maximal isotropic sequence."""
    seq = list(seq)
    if len(seq) != 10:
        raise PreconditionFailed("the Fano class needs a full sequence of length 10")
    check_isotropic_sequence(seq, n)
    total = BlowupSurface(n).zero()
    for F in seq:
        total = total + F
    if total.d % 3 or any(x % 3 for x in total.m):
        raise NonIntegralFano("sum of the sequence is not divisible by 3",
                              certificate={"sum": total.to_json()})
    H = DivisorClass(total.d // 3, tuple(x // 3 for x in total.m))
    assert H.dot(H) == 10
    return H


def _min_isotropic_product(H, box, workers):
    q = ClassQuery(H.n, 0, 0, box)
    best, witness = None, None
    for f in enumerate_classes(q, workers=workers):
        v = H.dot(f)
        if v <= 0 or (best is not None and v >= best):
            continue
        g = abs(f.d)
        for x in f.m:
            g = gcd(g, x)
        if g != 1:
            continue
        best, witness = v, f
    return best, witness


def phi_invariant(H, box=DEFAULT_PHI_BOX, workers=None, with_witness=False):
    """min{H.f : f^2 = 0, f.K = 0, f primitive, H.f > 0} over the box |deg f| <= box.

    The minimum is recomputed on the doubled box; a change raises UnstableBound.
    """
    s = BlowupSurface(H.n)
    if H.dot(H) <= 0 or H.dot(s.line()) <= 0:
        raise PreconditionFailed("H must lie in the positive cone (H^2 > 0, H.L > 0)")
    best, witness = _min_isotropic_product(H, box, workers)
    best2, witness2 = _min_isotropic_product(H, 2 * box, workers)
    if best != best2:
        raise UnstableBound(f"minimum {best} on box {box} but {best2} on box {2 * box}",
                            certificate={"box": box, "min": best, "doubled_min": best2})
    if best is None:
        raise UnstableBound(f"no isotropic class with positive product in box {2 * box}")
    return (best, witness) if with_witness else best
