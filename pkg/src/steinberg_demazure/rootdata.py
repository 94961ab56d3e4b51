"""Exact root data for the simple Lie algebras of types A-G.

Weights are plain tuples of ints in the fundamental-weight basis
(``lam[i] == lam(h_{i+1})``); roots are :class:`Root` tuples in the
simple-root basis.  Node labels in the public API are 1-based, matching
the usual Dynkin numbering; label 0 is reserved for the affine node.

Numbering is Bourbaki for every type except G2, where node 1 is the long
simple root and node 2 the short one.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

Weight = tuple  # tuple[int, ...] in fundamental-weight coordinates

# Number of positive roots per type, used as an independent check on the
# closure algorithm.
POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class RootDataError(ValueError):
    pass


class Root(NamedTuple):
    coords: tuple
    long: bool

    @property
    def height(self) -> int:
        return sum(self.coords)


def _valid(type_letter: str, rank: int) -> bool:
    if type_letter == "A":
        return rank >= 1
    if type_letter in "BC":
        return rank >= 2
    if type_letter == "D":
        return rank >= 3
    if type_letter == "E":
        return rank in (6, 7, 8)
    if type_letter == "F":
        return rank == 4
    if type_letter == "G":
        return rank == 2
    return False


def _dynkin(type_letter: str, n: int):
    """Edges (0-based) and the d_i values of the simple roots."""
    chain = [(i, i + 1) for i in range(n - 1)]
    d = [1] * n
    if type_letter == "A":
        edges = chain
    elif type_letter == "B":
        edges = chain
        d[n - 1] = 2
    elif type_letter == "C":
        edges = chain
        d = [2] * (n - 1) + [1]
    elif type_letter == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif type_letter == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
    elif type_letter == "F":
        edges = chain
        d = [1, 1, 2, 2]
    else:  # G2, node 1 long
        edges = chain
        d = [1, 3]
    return edges, d


def _mat_inverse(m):
    """Inverse of a square matrix over the rationals (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _det(m) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


class RootSystem:
    """Immutable root datum of one simple type and rank.

    Instances are interned per ``(type_letter, rank)`` by :func:`build`, so
    identity comparison and hashing are cheap and safe to use as cache keys.
    """

    __slots__ = (
        "type_letter", "rank", "cartan", "d", "gram", "positive_roots", "theta",
        "_root_index", "simple_root_weights", "theta_weight", "theta_coroot",
        "cartan_inverse", "weight_form", "_rho",
    )

    def __init__(self, type_letter: str, rank: int):
        n = rank
        edges, d = _dynkin(type_letter, n)
        self.type_letter = type_letter
        self.rank = n
        self.d = tuple(d)
        gram = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = Fraction(2, d[i])
        for i, j in edges:
            # adjacent simple roots: (a_i, a_j) = -max(|a_i|^2, |a_j|^2) / 2
            v = -max(gram[i][i], gram[j][j]) / 2
            gram[i][j] = gram[j][i] = v
        self.gram = tuple(tuple(row) for row in gram)
        cartan = [[int(2 * gram[i][j] / gram[i][i]) for j in range(n)] for i in range(n)]
        self.cartan = tuple(tuple(row) for row in cartan)
        # alpha_j in fundamental coordinates: alpha_j(h_i) = c_ij (column j)
        self.simple_root_weights = tuple(
            tuple(cartan[i][j] for i in range(n)) for j in range(n))
        self.cartan_inverse = _mat_inverse(cartan)
        # (omega_i, omega_j) = (C^-1)_{ji} / d_j
        self.weight_form = tuple(
            tuple(self.cartan_inverse[j][i] / d[j] for j in range(n)) for i in range(n))
        self.positive_roots = self._close()
        self._root_index = {r.coords: r for r in self.positive_roots}
        self.theta = self.positive_roots[-1]
        self.theta_weight = self.root_to_weight(self.theta.coords)
        self.theta_coroot = self.coroot_coefficients(self.theta)
        self._rho = tuple([1] * n)

    def _close(self):
        n = self.rank
        c = self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        known = set(simple)
        layer = list(simple)
        roots = list(simple)
        while layer:
            nxt = set()
            for beta in layer:
                for i in range(n):
                    # length of the alpha_i-string below beta
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in known:
                            p += 1
                        else:
                            break
                    pair = sum(beta[j] * c[i][j] for j in range(n))
                    if p - pair > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in known:
                            nxt.add(up)
            layer = sorted(nxt)
            known.update(layer)
            roots.extend(layer)
        roots.sort(key=lambda r: (sum(r), r))
        out = []
        for r in roots:
            norm = sum(r[i] * r[j] * self.gram[i][j] for i in range(n) for j in range(n))
            out.append(Root(r, norm == 2))
        return tuple(out)

    # --- identity -------------------------------------------------------
    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.type_letter!r}, {self.rank})"

    def __reduce__(self):
        return (build, (self.type_letter, self.rank))

    # --- roots ----------------------------------------------------------
    def d_root(self, root) -> int:
        """d_alpha: 1 for long roots, 2 (3 in G2) for short ones."""
        coords = root.coords if isinstance(root, Root) else tuple(root)
        r = self._root_index.get(coords) or self._root_index.get(tuple(-x for x in coords))
        if r is None:
            raise RootDataError(f"{coords} is not a root of {self.name}")
        if r.long:
            return 1
        return 3 if self.type_letter == "G" else 2

    def is_root(self, coords) -> bool:
        coords = tuple(coords)
        return coords in self._root_index or tuple(-x for x in coords) in self._root_index

    def simple_root(self, i: int) -> Root:
        return self._root_index[tuple(int(j == i - 1) for j in range(self.rank))]

    def root_to_weight(self, coords) -> Weight:
        n = self.rank
        return tuple(sum(coords[j] * self.cartan[i][j] for j in range(n)) for i in range(n))

    def weight_to_root_coords(self, lam) -> tuple:
        """Simple-root coordinates of a weight (rational in general)."""
        n = self.rank
        return tuple(sum(self.cartan_inverse[i][j] * lam[j] for j in range(n)) for i in range(n))

    def coroot_coefficients(self, root) -> tuple:
        """Integers k_i with h_alpha = sum_i k_i h_i."""
        coords = root.coords if isinstance(root, Root) else tuple(root)
        da = self.d_root(coords)
        return tuple(da * a // di for a, di in zip(coords, self.d))

    # --- forms ----------------------------------------------------------
    def form(self, lam, mu) -> Fraction:
        """Normalized invariant form (lam, mu) of two weights."""
        n = self.rank
        wf = self.weight_form
        return sum((lam[i] * mu[j] * wf[i][j] for i in range(n) for j in range(n)), Fraction(0))

    def dominant_chamber_rho(self) -> Weight:
        return self._rho

    def height(self, lam) -> Fraction:
        return sum(self.weight_to_root_coords(lam), Fraction(0))


@lru_cache(maxsize=None)
def build(type_letter: str, rank: int) -> RootSystem:
    """Root system of the given simple type; raises on invalid combinations."""
    type_letter = type_letter.upper()
    if not _valid(type_letter, rank):
        raise RootDataError(f"invalid simple type {type_letter}{rank}")
    rs = RootSystem(type_letter, rank)
    expected = POSITIVE_ROOT_COUNTS[type_letter](rank)
    if len(rs.positive_roots) != expected:
        raise AssertionError(f"closure produced {len(rs.positive_roots)} roots for {rs.name}")
    return rs


def parse_type(name: str) -> RootSystem:
    """``'F4'`` -> build('F', 4)."""
    name = name.strip()
    return build(name[0].upper(), int(name[1:]))


def pairing(rs: RootSystem, lam: Sequence[int], alpha) -> Fraction:
    """(lam, alpha) for a weight and a root given in simple-root coordinates."""
    coords = alpha.coords if isinstance(alpha, Root) else alpha
    if len(lam) != rs.rank or len(coords) != rs.rank:
        raise RootDataError("dimension mismatch")
    return sum((Fraction(a * x, di) for a, x, di in zip(coords, lam, rs.d)), Fraction(0))


def eval_coroot(rs: RootSystem, lam: Sequence[int], alpha) -> int:
    """lam(h_alpha)."""
    k = rs.coroot_coefficients(alpha)
    return sum(a * b for a, b in zip(k, lam))


def fundamental_weight(rs: RootSystem, i: int) -> Weight:
    return tuple(int(j == i - 1) for j in range(rs.rank))


def coweight_basis(rs: RootSystem) -> list:
    """The generators d_i * omega_i of the lattice L."""
    return [tuple(rs.d[i] * int(j == i) for j in range(rs.rank)) for i in range(rs.rank)]


def in_coweight_lattice(rs: RootSystem, lam) -> bool:
    return all(x % di == 0 for x, di in zip(lam, rs.d))


def coweight_coefficients(rs: RootSystem, lam) -> tuple:
    if not in_coweight_lattice(rs, lam):
        raise RootDataError(f"{tuple(lam)} is not in the coweight lattice of {rs.name}")
    return tuple(x // di for x, di in zip(lam, rs.d))


def is_dominant(lam) -> bool:
    return all(x >= 0 for x in lam)


def reflect(rs: RootSystem, i: int, lam) -> Weight:
    """Simple reflection s_i (1-based) on a weight."""
    k = lam[i - 1]
    if k == 0:
        return tuple(lam)
    a = rs.simple_root_weights[i - 1]
    return tuple(x - k * y for x, y in zip(lam, a))


def descend_to_dominant(rs: RootSystem, lam) -> tuple:
    """Dominant conjugate of ``lam`` and the descent word.

    Always reflects in the smallest node with a negative coordinate.  The
    word ``(i_1, ..., i_r)`` is in application order, so
    ``s_{i_r} ... s_{i_1} lam`` is dominant and ``w = s_{i_1} ... s_{i_r}``
    maps the dominant weight back to ``lam``.
    """
    lam = tuple(lam)
    word = []
    while True:
        i = next((j for j, x in enumerate(lam) if x < 0), None)
        if i is None:
            return lam, tuple(word)
        lam = reflect(rs, i + 1, lam)
        word.append(i + 1)


def w0_word(rs: RootSystem) -> tuple:
    """A reduced word for the longest element of W."""
    _, word = descend_to_dominant(rs, tuple(-1 for _ in range(rs.rank)))
    return word


def w0_weight(rs: RootSystem, lam) -> Weight:
    """w_0(lam): the antidominant conjugate of a dominant weight."""
    for i in reversed(w0_word(rs)):
        lam = reflect(rs, i, lam)
    return tuple(lam)


def dual_weight(rs: RootSystem, lam) -> Weight:
    """-w_0(lam)."""
    return tuple(-x for x in w0_weight(rs, lam))


def gram_is_positive_definite(rs: RootSystem) -> bool:
    g = rs.gram
    return all(_det([row[:k] for row in g[:k]]) > 0 for k in range(1, rs.rank + 1))
