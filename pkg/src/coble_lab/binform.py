"""Binary forms over Q and the involution calculus on P^1.

A :class:`BinaryForm` of declared degree ``n`` stores ``coeffs[i]`` as the
coefficient of ``u**(n-i) * v**i``.  Leading zeros are allowed and encode
roots at ``[1:0]``.  A :class:`MobiusMap` ``[[a, b], [c, d]]`` acts on column
vectors, ``(u, v) -> (a*u + b*v, c*u + d*v)``; composition is the matrix
product, so ``compose(S, T)`` applies ``T`` first.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple

from . import linalg
from .errors import CoincidentFixedPoints, DegeneratePencil, PreconditionFailed, ScalarMap


def parse_rational(x):
    """Parse ``"p/q"`` strings (q > 0), ints or Fractions into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise PreconditionFailed(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            p, q = int(p), int(q)
            if q <= 0:
                raise PreconditionFailed(f"denominator must be positive: {x!r}")
            return Fraction(p, q)
        return Fraction(int(s))
    raise PreconditionFailed(f"not a rational: {x!r}")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BinaryForm:
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise PreconditionFailed("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, *coeffs):
        return cls(tuple(parse_rational(c) for c in coeffs))

    @classmethod
    def zero(cls, degree):
        return cls((Fraction(0),) * (degree + 1))

    @classmethod
    def constant(cls, c=1):
        return cls((Fraction(c),))

    @classmethod
    def linear(cls, a, b):
        """The form ``a*u + b*v``."""
        return cls.of(a, b)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        if other.degree != self.degree:
            raise PreconditionFailed("cannot add forms of different degree")
        return BinaryForm(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BinaryForm(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return BinaryForm(tuple(c * x for x in self.coeffs))

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return BinaryForm(tuple(out))

    def __pow__(self, k):
        out = BinaryForm.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, u, v):
        n = self.degree
        return sum(c * u ** (n - i) * v ** i for i, c in enumerate(self.coeffs))

    def d_du(self):
        n = self.degree
        if n == 0:
            return BinaryForm.zero(0)
        return BinaryForm(tuple((n - i) * c for i, c in enumerate(self.coeffs[:-1])))

    def d_dv(self):
        if self.degree == 0:
            return BinaryForm.zero(0)
        return BinaryForm(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def substitute(self, m):
        """``F o T``: the form ``F(a*u + b*v, c*u + d*v)`` for ``T = [[a, b], [c, d]]``."""
        (a, b), (c, d) = m.rows if isinstance(m, MobiusMap) else m
        first, second = BinaryForm.linear(a, b), BinaryForm.linear(c, d)
        n = self.degree
        out = BinaryForm.zero(n)
        for i, coef in enumerate(self.coeffs):
            if coef:
                out = out + (first ** (n - i) * second ** i).scale(coef)
        return out

    def leading_zeros(self):
        """Multiplicity of the root ``[1:0]`` (power of ``v`` dividing the form)."""
        k = 0
        for c in self.coeffs:
            if c:
                return k
            k += 1
        return k

    def primitive(self):
        """Integral primitive multiple with first nonzero coefficient positive."""
        if self.is_zero():
            return self
        return BinaryForm(tuple(Fraction(x) for x in linalg.primitive(linalg.integer_row(self.coeffs))))

    def is_proportional(self, other):
        """True iff the two forms span a space of dimension <= 1."""
        if self.degree != other.degree:
            return self.is_zero() or other.is_zero()
        return linalg.rank([self.coeffs, other.coeffs]) <= 1

    def discriminant(self):
        """Discriminant of a quadratic form."""
        if self.degree != 2:
            raise PreconditionFailed("discriminant is implemented for quadratic forms")
        c0, c1, c2 = self.coeffs
        return c1 * c1 - 4 * c0 * c2

    def is_squarefree(self):
        """No repeated projective root (the partials have no common root)."""
        if self.is_zero():
            return False
        if self.degree <= 1:
            return True
        return gcd_form(self.d_du(), self.d_dv()).degree == 0

    def to_json(self):
        return {"deg": self.degree, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or set(obj) != {"deg", "coeffs"}:
            raise PreconditionFailed("BinaryForm JSON needs exactly the keys 'deg' and 'coeffs'")
        coeffs = tuple(parse_rational(c) for c in obj["coeffs"])
        if len(coeffs) != int(obj["deg"]) + 1:
            raise PreconditionFailed("coefficient count does not match declared degree")
        return cls(coeffs)

    def __str__(self):
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(p for p in (_pw("u", n - i), _pw("v", i)) if p)
            terms.append(f"({format_rational(c)})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) or "0"


def _pw(x, k):
    if k == 0:
        return ""
    return x if k == 1 else f"{x}^{k}"


U = BinaryForm.of(1, 0)
V = BinaryForm.of(0, 1)


# ---------------------------------------------------------------- resultants

def sylvester_matrix(f, g):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(f.coeffs) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(g.coeffs) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(f, g):
    """Homogeneous resultant (Sylvester determinant) of two forms of declared degree.

    Zero iff the forms share a projective root, including ``[1:0]``.
    ``resultant(g, f) == (-1)**(deg f * deg g) * resultant(f, g)``.
    """
    if f.degree == 0 and g.degree == 0:
        raise PreconditionFailed("resultant needs a form of positive degree")
    return linalg.det(sylvester_matrix(f, g))


# ---------------------------------------------------------------- gcd

def _int_poly(coeffs):
    """Rational dense coefficients (high degree first) -> primitive integer list, leading zeros stripped."""
    ints = linalg.integer_row(coeffs)
    while ints and ints[0] == 0:
        ints.pop(0)
    return _prim(ints)


def _prim(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    if g == 0:
        return []
    p = [c // g for c in p]
    return p if p[0] > 0 else [-c for c in p]


def _prem(a, b):
    """Pseudo-remainder of integer polynomials (high degree first)."""
    a = list(a)
    lb, db = b[0], len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[0]
        a = [lb * x for x in a]
        for i, y in enumerate(b):
            a[i] -= la * y
        a.pop(0)
        while a and a[0] == 0:
            a.pop(0)
    return a


def _poly_gcd(a, b):
    """Primitive polynomial remainder sequence over Z."""
    a, b = _prim(a), _prim(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prim(_prem(a, b))
        a, b = b, r
    return a


def gcd_form(f, g):
    """Greatest common divisor, integral-primitive with first nonzero coefficient positive.

    The power of ``v`` (roots at ``[1:0]``) is split off first; the rest is
    dehomogenised at ``v = 1`` and handled by a primitive remainder sequence.
    """
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    kv = min(f.leading_zeros(), g.leading_zeros())
    pf = _int_poly(f.coeffs)
    pg = _int_poly(g.coeffs)
    h = _poly_gcd(pf, pg)
    # homogenise h(u) and multiply by v**kv (a shift towards higher v-powers)
    coeffs = [Fraction(0)] * kv + [Fraction(c) for c in h]
    return BinaryForm(tuple(coeffs)).primitive()


def divide_exact(f, g):
    """Exact quotient ``f / g``; raises if ``g`` does not divide ``f``."""
    q, r = divmod_forms(f, g)
    if not r.is_zero():
        raise PreconditionFailed("division is not exact")
    return q


def divmod_forms(f, g):
    """Homogeneous division ``f = q*g + r`` with ``deg q = deg f - deg g``.

    Requires ``g`` to have a nonzero ``u**deg`` coefficient; ``r`` is returned
    with declared degree ``deg f`` (its top ``deg q + 1`` coefficients vanish).
    """
    if g.coeffs[0] == 0:
        raise PreconditionFailed("divisor has a root at [1:0]")
    n, m = f.degree, g.degree
    if n < m:
        return BinaryForm.zero(0), f
    rem = list(f.coeffs)
    quo = []
    lead = g.coeffs[0]
    for i in range(n - m + 1):
        c = rem[i] / lead
        quo.append(c)
        if c:
            for j, y in enumerate(g.coeffs):
                rem[i + j] -= c * y
    return BinaryForm(tuple(quo)), BinaryForm(tuple(rem))


# ---------------------------------------------------------------- Jacobians and pencils

def jacobian(f, g):
    """``dF/du * dG/dv - dF/dv * dG/du``."""
    return f.d_du() * g.d_dv() - f.d_dv() * g.d_du()


@dataclass(frozen=True)
class MobiusMap:
    rows: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]

    def __post_init__(self):
        (a, b), (c, d) = self.rows
        rows = ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))
        object.__setattr__(self, "rows", rows)
        if self.det == 0:
            raise PreconditionFailed("Mobius map needs a nonzero determinant")

    @classmethod
    def of(cls, a, b, c, d):
        return cls(((parse_rational(a), parse_rational(b)), (parse_rational(c), parse_rational(d))))

    @property
    def det(self):
        (a, b), (c, d) = self.rows
        return a * d - b * c

    @property
    def trace(self):
        return self.rows[0][0] + self.rows[1][1]

    def entries(self):
        (a, b), (c, d) = self.rows
        return a, b, c, d

    def normalized(self):
        """Projective representative: integral, primitive, first nonzero entry positive."""
        ints = linalg.primitive(linalg.integer_row(self.entries()))
        return MobiusMap(((ints[0], ints[1]), (ints[2], ints[3])))

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return self.normalized().entries() == other.normalized().entries()

    def __hash__(self):
        return hash(self.normalized().entries())

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self):
        a, b, c, d = self.entries()
        return MobiusMap(((d, -b), (-c, a)))

    def apply(self, point):
        u, v = point
        (a, b), (c, d) = self.rows
        return (a * u + b * v, c * u + d * v)

    def to_json(self):
        return {"m": [[format_rational(x) for x in r] for r in self.normalized().rows]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or set(obj) != {"m"}:
            raise PreconditionFailed("MobiusMap JSON needs exactly the key 'm'")
        (a, b), (c, d) = obj["m"]
        return cls.of(a, b, c, d)


IDENTITY = MobiusMap(((1, 0), (0, 1)))


def compose(s, t):
    (a, b), (c, d) = s.rows
    (e, f), (g, h) = t.rows
    return MobiusMap(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))


def is_scalar(t):
    (a, b), (c, d) = t.rows
    return b == 0 and c == 0 and a == d


def is_involution(t):
    return not is_scalar(t) and t.trace == 0


def fixed_form(t):
    """Quadratic ``-c*u^2 + (a-d)*u*v + b*v^2`` vanishing at the fixed points of ``t``."""
    if is_scalar(t):
        raise ScalarMap("a scalar map fixes every point")
    (a, b), (c, d) = t.rows
    return BinaryForm((-c, a - d, b))


def involution_from_fixed_form(phi):
    """The involution with fixed-point form ``phi = c0 u^2 + c1 uv + c2 v^2``."""
    c0, c1, c2 = phi.coeffs
    if phi.discriminant() == 0:
        raise CoincidentFixedPoints("fixed-point form has a double root")
    return MobiusMap(((-c1, -2 * c2), (2 * c0, c1)))


def pencil_involution(f, g):
    """Involution of P^1 swapping the two roots of every member of the pencil <f, g>."""
    if f.degree != 2 or g.degree != 2:
        raise PreconditionFailed("pencil involutions need quadratic forms")
    if f.is_proportional(g):
        raise DegeneratePencil("pencil generators are dependent")
    if resultant(f, g) == 0:
        raise DegeneratePencil("pencil generators share a root")
    return involution_from_fixed_form(jacobian(f, g))
