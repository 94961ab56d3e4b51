"""Finite, affine and extended affine Weyl groups acting on affine weights."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .rootdata import (
    RootSystem,
    descend_to_dominant,
    in_coweight_lattice,
    pairing,
)


class DescentError(RuntimeError):
    """The chamber walk did not terminate within its iteration cap."""


def _norm_delta(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class AffineWeight(NamedTuple):
    """classical + level * Lambda_0 + delta * delta."""

    classical: tuple
    level: int
    delta: object = 0  # int or Fraction

    def pairing(self, rs: RootSystem, i: int) -> int:
        """<Lambda, alpha_i^vee> for an affine node 0..n."""
        if i == 0:
            return self.level - sum(a * b for a, b in zip(self.classical, rs.theta_coroot))
        return self.classical[i - 1]

    def is_dominant(self, rs: RootSystem) -> bool:
        return all(self.pairing(rs, i) >= 0 for i in range(rs.rank + 1))

    def shift_delta(self, s) -> "AffineWeight":
        return AffineWeight(self.classical, self.level, _norm_delta(self.delta + s))


def affine_reflect(rs: RootSystem, i: int, lam: AffineWeight) -> AffineWeight:
    """Simple reflection s_i, i in 0..n, with alpha_0 = delta - theta."""
    if not 0 <= i <= rs.rank:
        raise ValueError(f"node {i} out of range for {rs.name}")
    k = lam.pairing(rs, i)
    if k == 0:
        return lam
    if i == 0:
        cl = tuple(x + k * t for x, t in zip(lam.classical, rs.theta_weight))
        return AffineWeight(cl, lam.level, _norm_delta(lam.delta - k))
    a = rs.simple_root_weights[i - 1]
    return AffineWeight(tuple(x - k * y for x, y in zip(lam.classical, a)), lam.level, lam.delta)


def extended_form(rs: RootSystem, a: AffineWeight, b: AffineWeight) -> Fraction:
    """(.,.) on h^* + C Lambda_0 + C delta with (Lambda_0, delta) = 1."""
    return rs.form(a.classical, b.classical) + a.level * b.delta + a.delta * b.level


# --- finite Weyl group ------------------------------------------------------

def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
                 for i in range(n))


def _apply(m, v):
    return tuple(sum(r * x for r, x in zip(row, v)) for row in m)


@lru_cache(maxsize=None)
def _simple_matrices(rs: RootSystem):
    """Matrices of s_i on fundamental-weight and on simple-root coordinates."""
    n = rs.rank
    weight_mats = []
    root_mats = []
    for i in range(n):
        a = rs.simple_root_weights[i]
        # s_i(lam) = lam - lam_i * alpha_i
        wm = [[int(r == c) - (a[r] if c == i else 0) for c in range(n)] for r in range(n)]
        weight_mats.append(tuple(tuple(row) for row in wm))
        # s_i(beta) = beta - beta(h_i) e_i with beta(h_i) = sum_j c_ij b_j
        rm = [[int(r == c) - (rs.cartan[i][c] if r == i else 0) for c in range(n)]
              for r in range(n)]
        root_mats.append(tuple(tuple(row) for row in rm))
    return tuple(weight_mats), tuple(root_mats)


class FiniteWeylElement:
    """Element of W stored as a reduced word plus its action matrices.

    Equality and hashing go through the image of rho, which determines the
    element uniquely.
    """

    __slots__ = ("rs", "word", "matrix", "root_matrix", "_key")

    def __init__(self, rs: RootSystem, word=()):
        self.rs = rs
        wmats, rmats = _simple_matrices(rs)
        m = _identity(rs.rank)
        r = _identity(rs.rank)
        for i in word:
            m = _matmul(m, wmats[i - 1])
            r = _matmul(r, rmats[i - 1])
        self.matrix = m
        self.root_matrix = r
        self._key = _apply(m, rs.dominant_chamber_rho())
        # canonical reduced word from the rho image
        _, desc = descend_to_dominant(rs, self._key)
        self.word = desc

    @classmethod
    def identity(cls, rs):
        return cls(rs, ())

    @classmethod
    def from_rho_image(cls, rs, image):
        _, word = descend_to_dominant(rs, image)
        return cls(rs, word)

    def __eq__(self, other):
        return isinstance(other, FiniteWeylElement) and self.rs is other.rs and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FiniteWeylElement({self.rs.name}, word={self.word})"

    def __len__(self):
        return len(self.word)

    def act(self, lam):
        return _apply(self.matrix, lam)

    def act_root(self, beta):
        return _apply(self.root_matrix, beta)

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return FiniteWeylElement(self.rs, self.word + other.word)

    def inverse(self) -> "FiniteWeylElement":
        return FiniteWeylElement(self.rs, tuple(reversed(self.word)))


def reflection_in_root(rs: RootSystem, root) -> FiniteWeylElement:
    """s_alpha for a positive root alpha."""
    k = rs.coroot_coefficients(root)
    rho = rs.dominant_chamber_rho()
    r = sum(a * b for a, b in zip(k, rho))
    w = rs.root_to_weight(root.coords if hasattr(root, "coords") else root)
    return FiniteWeylElement.from_rho_image(rs, tuple(x - r * y for x, y in zip(rho, w)))


def finite_weyl_group(rs: RootSystem):
    """All elements of W, by orbit enumeration of rho."""
    rho = rs.dominant_chamber_rho()
    seen = {rho}
    frontier = [rho]
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(rs.rank):
                a = rs.simple_root_weights[i]
                mu = tuple(x - lam[i] * y for x, y in zip(lam, a))
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    return [FiniteWeylElement.from_rho_image(rs, img) for img in sorted(seen)]


# --- extended affine Weyl group ---------------------------------------------

class ExtendedWeylElement:
    """w t_mu with w in W and mu in the coweight lattice L."""

    __slots__ = ("finite", "translation")

    def __init__(self, finite: FiniteWeylElement, translation):
        rs = finite.rs
        translation = tuple(translation)
        if not in_coweight_lattice(rs, translation):
            raise ValueError(f"translation {translation} not in L for {rs.name}")
        self.finite = finite
        self.translation = translation

    @property
    def rs(self):
        return self.finite.rs

    @classmethod
    def identity(cls, rs):
        return cls(FiniteWeylElement.identity(rs), (0,) * rs.rank)

    @classmethod
    def translation_by(cls, rs, mu):
        return cls(FiniteWeylElement.identity(rs), mu)

    @classmethod
    def simple(cls, rs, i: int):
        if i == 0:
            # s_0 = s_theta t_{-theta}
            return cls(reflection_in_root(rs, rs.theta), tuple(-x for x in rs.theta_weight))
        return cls(FiniteWeylElement(rs, (i,)), (0,) * rs.rank)

    @classmethod
    def from_affine_word(cls, rs, word):
        x = cls.identity(rs)
        for i in word:
            x = x * cls.simple(rs, i)
        return x

    def __eq__(self, other):
        return (isinstance(other, ExtendedWeylElement) and self.finite == other.finite
                and self.translation == other.translation)

    def __hash__(self):
        return hash((self.finite, self.translation))

    def __repr__(self):
        return f"ExtendedWeylElement({self.finite.word}, t={self.translation})"

    def __mul__(self, other: "ExtendedWeylElement") -> "ExtendedWeylElement":
        # (w1 t_m1)(w2 t_m2) = w1 w2 t_{w2^-1 m1 + m2}
        w2inv = other.finite.inverse()
        m = tuple(a + b for a, b in zip(w2inv.act(self.translation), other.translation))
        return ExtendedWeylElement(self.finite * other.finite, m)

    def inverse(self) -> "ExtendedWeylElement":
        winv = self.finite.inverse()
        return ExtendedWeylElement(winv, tuple(-x for x in self.finite.act(self.translation)))

    def act(self, lam: AffineWeight) -> AffineWeight:
        rs = self.rs
        mu = self.translation
        k = lam.level
        nu = lam.classical
        delta = lam.delta - rs.form(nu, mu) - Fraction(k) * rs.form(mu, mu) / 2
        moved = tuple(x + k * y for x, y in zip(nu, mu))
        return AffineWeight(self.finite.act(moved), k, _norm_delta(delta))

    def act_affine_root(self, beta, r):
        """Image of the real affine root beta + r delta as (root, delta-coefficient)."""
        s = r - pairing(self.rs, self.translation, beta)
        return self.finite.act_root(beta), _norm_delta(s)

    def inversion_set(self) -> frozenset:
        """Positive affine real roots sent to negative roots, as (beta, r) pairs."""
        rs = self.rs
        roots = [r.coords for r in rs.positive_roots]
        bound = 1 + max((abs(pairing(rs, self.translation, b)) for b in roots), default=0)
        out = set()
        for sign in (1, -1):
            for b in roots:
                beta = b if sign == 1 else tuple(-x for x in b)
                for r in range(0 if sign == 1 else 1, int(bound) + 1):
                    img, s = self.act_affine_root(beta, r)
                    if s < 0 or (s == 0 and _is_negative(img)):
                        out.add((beta, r))
        return frozenset(out)

    def length(self) -> int:
        return len(self.inversion_set())


def _is_negative(coords) -> bool:
    return any(x < 0 for x in coords)


def length(x: ExtendedWeylElement) -> int:
    return x.length()


def inversion_set(x: ExtendedWeylElement) -> frozenset:
    return x.inversion_set()


def act(x: ExtendedWeylElement, lam: AffineWeight) -> AffineWeight:
    return x.act(lam)


def iteration_cap(lam: AffineWeight) -> int:
    return 100 + 20 * (lam.level + sum(abs(x) for x in lam.classical))


def to_dominant(rs: RootSystem, lam: AffineWeight, cap: int | None = None):
    """Walk ``lam`` into the dominant affine chamber.

    Returns ``(dominant, word)`` where ``word`` lists the applied nodes in
    application order; the smallest node with negative pairing is always
    chosen.
    """
    if lam.level <= 0:
        raise ValueError("to_dominant needs positive level")
    if cap is None:
        cap = iteration_cap(lam)
    word = []
    n = rs.rank
    while True:
        i = next((j for j in range(n + 1) if lam.pairing(rs, j) < 0), None)
        if i is None:
            return lam, tuple(word)
        if len(word) >= cap:
            raise DescentError(f"descent exceeded {cap} steps for {lam}")
        lam = affine_reflect(rs, i, lam)
        word.append(i)
