"""The Lorentzian lattice Z^{1,N} and the E10 lattice k-perp inside Z^{1,10}.

Coordinates are Python ints throughout, so long Weyl words never overflow.
The pairing on the standard basis e_0, ..., e_N is diag(1, -1, ..., -1).
"""
from dataclasses import dataclass
from typing import Tuple

from .errors import NotARoot, PreconditionFailed, RankMismatch


@dataclass(frozen=True)
class LatticeVector:
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise PreconditionFailed("empty lattice vector")
        for c in coords:
            if isinstance(c, bool) or int(c) != c:
                raise PreconditionFailed(f"non-integer coordinate {c!r}")
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    @property
    def rank_param(self):
        return len(self.coords) - 1

    def _check(self, other):
        if len(other.coords) != len(self.coords):
            raise RankMismatch(f"Z^(1,{self.rank_param}) vs Z^(1,{other.rank_param})")

    def __add__(self, other):
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LatticeVector(tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return LatticeVector(tuple(c * a for a in self.coords))

    def __mul__(self, other):
        """``x * y`` is the pairing; ``x * n`` scales."""
        if isinstance(other, LatticeVector):
            return pair(self, other)
        return LatticeVector(tuple(other * a for a in self.coords))

    def is_zero(self):
        return not any(self.coords)

    def to_json(self):
        return {"basis": "standard", "coords": list(self.coords)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls(tuple(obj))
        if not isinstance(obj, dict) or set(obj) != {"basis", "coords"} or obj["basis"] != "standard":
            raise PreconditionFailed('expected {"basis": "standard", "coords": [...]}')
        return cls(tuple(obj["coords"]))


@dataclass(frozen=True)
class E10Vector:
    """A vector of k-perp written in the root basis alpha_0, ..., alpha_9."""

    root_coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.root_coords)
        if len(coords) != 10:
            raise RankMismatch("E10 vectors have 10 root coordinates")
        object.__setattr__(self, "root_coords", coords)

    def embed(self):
        out = [0] * 11
        for c, alpha in zip(self.root_coords, ROOT_BASIS):
            if c:
                for i, a in enumerate(alpha.coords):
                    out[i] += c * a
        return LatticeVector(tuple(out))

    def __add__(self, other):
        return E10Vector(tuple(a + b for a, b in zip(self.root_coords, other.root_coords)))

    def __neg__(self):
        return E10Vector(tuple(-a for a in self.root_coords))

    def to_json(self):
        return {"basis": "root", "coords": list(self.root_coords)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or set(obj) != {"basis", "coords"} or obj["basis"] != "root":
            raise PreconditionFailed('expected {"basis": "root", "coords": [...]}')
        return cls(tuple(obj["coords"]))


@dataclass(frozen=True)
class IsometryMap:
    """Integer matrix acting on standard coordinates (columns are images of e_j)."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not m or any(len(r) != len(m) for r in m):
            raise PreconditionFailed("isometry matrix must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def size(self):
        return len(self.matrix)

    def __call__(self, x):
        if len(x.coords) != self.size:
            raise RankMismatch("matrix size does not match vector")
        return LatticeVector(tuple(sum(a * b for a, b in zip(row, x.coords)) for row in self.matrix))

    def to_json(self):
        return {"matrix": [list(r) for r in self.matrix]}


def basis_vector(i, n):
    """e_i in Z^{1,n}."""
    coords = [0] * (n + 1)
    coords[i] = 1
    return LatticeVector(tuple(coords))


def gram(n):
    return [[(1 if i == 0 else -1) if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]


def pair(x, y):
    """x0*y0 - sum_{i>=1} xi*yi."""
    if len(x.coords) != len(y.coords):
        raise RankMismatch(f"Z^(1,{x.rank_param}) vs Z^(1,{y.rank_param})")
    c = x.coords[0] * y.coords[0]
    for a, b in zip(x.coords[1:], y.coords[1:]):
        c -= a * b
    return c


def canonical_vector(n=10):
    """k = -3 e_0 + e_1 + ... + e_n."""
    return LatticeVector((-3,) + (1,) * n)


K10 = canonical_vector(10)

ROOT_BASIS = (LatticeVector((1, -1, -1, -1) + (0,) * 7),) + tuple(
    basis_vector(i, 10) - basis_vector(i + 1, 10) for i in range(1, 10)
)


def e10_gram_table():
    """Root-basis Gram matrix as tabulated: -2 diagonal, chain 1..9, alpha_0 joined to alpha_3."""
    g = [[0] * 10 for _ in range(10)]
    for i in range(10):
        g[i][i] = -2
    for i in range(1, 9):
        g[i][i + 1] = g[i + 1][i] = 1
    g[0][3] = g[3][0] = 1
    return g


def e10_gram_from_embedding():
    return [[pair(a, b) for b in ROOT_BASIS] for a in ROOT_BASIS]


def to_root_basis(w):
    """Write w in k-perp (inside Z^{1,10}) in the root basis."""
    if w.rank_param != 10:
        raise RankMismatch("root basis lives in Z^(1,10)")
    if pair(w, K10) != 0:
        raise PreconditionFailed("vector is not orthogonal to k")
    c0 = w.coords[0]
    rest = (w - c0 * ROOT_BASIS[0]).coords
    # rest = sum_{i=1}^9 r_i (e_i - e_{i+1})  =>  r_i = partial sums of rest[1..i]
    out = [c0]
    acc = 0
    for i in range(1, 10):
        acc += rest[i]
        out.append(acc)
    if acc + rest[10] != 0 or rest[0] != 0:
        raise PreconditionFailed("vector is not in the span of the root basis")
    return E10Vector(tuple(out))


def split_along_k(v):
    """Decompose v = w + c*k with w in k-perp; returns (w in root coordinates, c)."""
    if v.rank_param != 10:
        raise RankMismatch("split_along_k needs a vector of Z^(1,10)")
    vk = pair(v, K10)
    w = v + vk * K10
    return to_root_basis(w), -vk


def recompose(w, c):
    return w.embed() + c * K10


def pair_e10(x, y):
    g = E10_GRAM
    return sum(x.root_coords[i] * g[i][j] * y.root_coords[j] for i in range(10) for j in range(10)
               if x.root_coords[i] and y.root_coords[j])


def reflect(alpha, x):
    """rho_alpha(x) = x + (x.alpha) alpha, for alpha^2 = -2."""
    if pair(alpha, alpha) != -2:
        raise NotARoot(f"alpha^2 = {pair(alpha, alpha)}, expected -2")
    return x + pair(x, alpha) * alpha


def reflection_matrix(alpha):
    n = alpha.rank_param
    cols = [reflect(alpha, basis_vector(j, n)).coords for j in range(n + 1)]
    return IsometryMap(tuple(tuple(cols[j][i] for j in range(n + 1)) for i in range(n + 1)))


def identity_map(n):
    return IsometryMap(tuple(tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)))


def negation_map(n):
    return IsometryMap(tuple(tuple(-int(i == j) for j in range(n + 1)) for i in range(n + 1)))


def is_isometry(f):
    """True iff f^T G f = G for the Gram matrix G of Z^{1,N}."""
    m = f.matrix
    n = len(m)
    g = [1] + [-1] * (n - 1)
    for i in range(n):
        for j in range(i, n):
            s = sum(g[k] * m[k][i] * m[k][j] for k in range(n))
            if s != (g[i] if i == j else 0):
                return False
    return True


def weyl_word(word, x):
    """Apply simple reflections rho_{alpha_i} for i in ``word`` (rightmost first)."""
    for i in reversed(word):
        x = reflect(ROOT_BASIS[i], x)
    return x


E10_GRAM = e10_gram_table()
