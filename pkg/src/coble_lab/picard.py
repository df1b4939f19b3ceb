"""Divisor classes on the blow-up of P^2 in N points.

A class ``dL - m_1 E_1 - ... - m_N E_N`` is stored as ``DivisorClass(d, m)``.
Only numerical invariants are computed here: intersection numbers, the
adjunction genus and the Riemann-Roch characteristic (chi(O_X) = 1).
Dimensions of linear systems are never claimed.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from . import linalg
from .errors import NonIntegralGenus, NotUnimodularFrame, PreconditionFailed, RankMismatch
from .lattice import IsometryMap, LatticeVector, is_isometry

MAX_POINTS = 64


@dataclass(frozen=True, order=True)
class DivisorClass:
    d: int
    m: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @property
    def n(self):
        return len(self.m)

    def _check(self, other):
        if other.n != self.n:
            raise RankMismatch(f"classes on Bl_{self.n} and Bl_{other.n}")

    def __add__(self, other):
        self._check(other)
        return DivisorClass(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(self.d - other.d, tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self):
        return DivisorClass(-self.d, tuple(-a for a in self.m))

    def __rmul__(self, c):
        return DivisorClass(c * self.d, tuple(c * a for a in self.m))

    def dot(self, other):
        self._check(other)
        s = self.d * other.d
        for a, b in zip(self.m, other.m):
            s -= a * b
        return s

    def to_lattice(self):
        """Standard coordinates (d, -m_1, ..., -m_N) in Z^{1,N}."""
        return LatticeVector((self.d,) + tuple(-x for x in self.m))

    @classmethod
    def from_lattice(cls, v):
        return cls(v.coords[0], tuple(-x for x in v.coords[1:]))

    def to_json(self):
        return {"d": self.d, "m": list(self.m)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or set(obj) != {"d", "m"}:
            raise PreconditionFailed('DivisorClass JSON needs exactly the keys "d" and "m"')
        return cls(obj["d"], tuple(obj["m"]))

    def __str__(self):
        parts = [f"{self.d}L"]
        for i, a in enumerate(self.m, 1):
            if a:
                parts.append(f"{'-' if a > 0 else '+'} {abs(a) if abs(a) != 1 else ''}E{i}")
        return " ".join(parts)


@dataclass(frozen=True)
class BlowupSurface:
    n_points: int

    def __post_init__(self):
        if not 0 <= self.n_points <= MAX_POINTS:
            raise PreconditionFailed(f"number of points must lie in 0..{MAX_POINTS}")

    def line(self):
        return DivisorClass(1, (0,) * self.n_points)

    def exceptional(self, i):
        """E_i for 1 <= i <= N."""
        m = [0] * self.n_points
        m[i - 1] = -1
        return DivisorClass(0, tuple(m))

    def zero(self):
        return DivisorClass(0, (0,) * self.n_points)

    def canonical(self):
        """K = -3L + E_1 + ... + E_N."""
        return DivisorClass(-3, (-1,) * self.n_points)

    def divisor(self, d, *mults):
        """dL - sum m_i E_i with missing multiplicities padded by zeros."""
        if len(mults) > self.n_points:
            raise RankMismatch("too many multiplicities")
        return DivisorClass(d, tuple(mults) + (0,) * (self.n_points - len(mults)))

    def _check(self, *classes):
        for c in classes:
            if c.n != self.n_points:
                raise RankMismatch(f"class has {c.n} multiplicities, surface has {self.n_points} points")


def intersect(s, a, b):
    s._check(a, b)
    return a.dot(b)


def arithmetic_genus(s, D):
    """p_a(D) = 1 + (D^2 + D.K)/2; raises when the numerator is odd."""
    s._check(D)
    num = D.dot(D) + D.dot(s.canonical())
    if num % 2:
        raise NonIntegralGenus(f"D^2 + D.K = {num} is odd")
    return 1 + num // 2


def euler_characteristic(s, D):
    """chi(O_X(D)) = 1 + D.(D - K)/2 on a rational surface."""
    s._check(D)
    num = D.dot(D - s.canonical())
    if num % 2:
        # D^2 and D.K always have the same parity on Bl_N P^2
        raise NonIntegralGenus(f"D.(D - K) = {num} is odd")
    return 1 + num // 2


def _identity(lhs, rhs, **extra):
    out = {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}
    out.update(extra)
    return out


def quintic_model_audit(s, H=None):
    """Check the numerical identities behind the quintic model with a triple point.

    ``H`` defaults to 6L - 2E_1 - ... - 2E_7 - E_8 - E_9 - E_10.  Returns a
    dict keyed by identity name; each entry has both sides and ``holds``.
    """
    if s.n_points != 10:
        raise PreconditionFailed("the quintic model lives on Bl_10 P^2")
    K = s.canonical()
    if H is None:
        H = s.divisor(6, *([2] * 7 + [1] * 3))
    s._check(H)
    E = {i: s.exceptional(i) for i in range(1, 11)}
    H_prime = s.divisor(9, *([3] * 7 + [2] * 3))
    report = {
        "H^2": _identity(H.dot(H), 5),
    }
    for i in (8, 9, 10):
        report[f"H.E{i}"] = _identity(H.dot(E[i]), 1)
    for k in (8, 9, 10):
        report[f"H.(-K+E{k})"] = _identity(H.dot(-K + E[k]), 2)
    decomposition = -2 * K + E[8] + E[9] + E[10]
    report["H = -2K + E8 + E9 + E10"] = _identity(H.to_json(), decomposition.to_json())
    report["H = H' + K"] = _identity(H.to_json(), (H_prime + K).to_json())
    report["chi(H)"] = _identity(euler_characteristic(s, H), 4, label="expected h0(X, H)")
    report["chi(H')"] = _identity(euler_characteristic(s, H_prime), 4,
                                  label="h0 of the sextic model in P^3")
    report["H'^2"] = _identity(H_prime.dot(H_prime), 6)
    report["H'.K"] = _identity(H_prime.dot(K), 0)
    return report


def bordiga_audit(s):
    """Numerics of |4L - E_1 - ... - E_10|: degree 6 in P^4 and chi = 5."""
    if s.n_points != 10:
        raise PreconditionFailed("the Bordiga model lives on Bl_10 P^2")
    H = s.divisor(4, *([1] * 10))
    K = s.canonical()
    return {
        "H^2": _identity(H.dot(H), 6),
        "chi(H)": _identity(euler_characteristic(s, H), 5, label="expected h0 (embedding in P^4)"),
        "p_a(H)": _identity(arithmetic_genus(s, H), 3),
        "H.E_i": _identity(sorted({H.dot(s.exceptional(i)) for i in range(1, 11)}), [1]),
        "(H+K)^2": _identity((H + K).dot(H + K), 1),
    }


def contract_basis(s, classes):
    """Isometry of Pic(Bl_10 P^2) sending ``classes`` to E_1..E_10 and fixing K.

    The new line class is L' = (E'_1 + ... + E'_10 - K)/3; it must be integral
    with L'^2 = 1 and the frame (L', E'_1, ..., E'_10) must be unimodular.
    """
    n = s.n_points
    classes = list(classes)
    if len(classes) != n:
        raise NotUnimodularFrame(f"need {n} classes, got {len(classes)}")
    s._check(*classes)
    K = s.canonical()
    for i, a in enumerate(classes):
        if a.dot(K) != -1:
            raise NotUnimodularFrame(f"class {i + 1} has K-degree {a.dot(K)}, expected -1")
        for j, b in enumerate(classes):
            if a.dot(b) != (-1 if i == j else 0):
                raise NotUnimodularFrame(f"classes {i + 1}, {j + 1} pair to {a.dot(b)}")
    total = s.zero()
    for a in classes:
        total = total + a
    three_L = total - K
    if three_L.d % 3 or any(x % 3 for x in three_L.m):
        raise NotUnimodularFrame("(sum E'_i - K)/3 is not integral", certificate={
            "sum_minus_K": three_L.to_json()})
    L_new = DivisorClass(three_L.d // 3, tuple(x // 3 for x in three_L.m))
    if L_new.dot(L_new) != 1:
        raise NotUnimodularFrame(f"L'^2 = {L_new.dot(L_new)}")
    # columns of P are the new frame in standard coordinates; the map is P^-1
    P = [list(c) for c in zip(*(x.to_lattice().coords for x in [L_new] + classes))]
    inv = linalg.inverse(P) if linalg.det(P) != 0 else None
    if inv is None or any(Fraction(x).denominator != 1 for r in inv for x in r):
        raise NotUnimodularFrame("frame is not a Z-basis")
    f = IsometryMap(tuple(tuple(int(x) for x in r) for r in inv))
    if not is_isometry(f):
        raise NotUnimodularFrame("frame change is not an isometry")
    return f


def apply_map(f, D):
    return DivisorClass.from_lattice(f(D.to_lattice()))
