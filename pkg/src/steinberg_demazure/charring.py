"""Sparse exact characters in Z[P] and Z[P^] and the Demazure operators."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType

from .rootdata import RootSystem, reflect

DEFAULT_TERM_BUDGET = 5_000_000
_budget = DEFAULT_TERM_BUDGET


class TermBudgetExceeded(MemoryError):
    """A character grew past the configured number of terms."""


def set_term_budget(n: int) -> int:
    """Set the global term budget; returns the previous value."""
    global _budget
    old, _budget = _budget, int(n)
    return old


def term_budget() -> int:
    return _budget


def _check(n):
    if n > _budget:
        raise TermBudgetExceeded(f"character has {n} terms (budget {_budget})")


def _clean(d):
    return {k: v for k, v in d.items() if v}


def _add_weights(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Character:
    """Finite sum of e(mu) with integer coefficients, mu in P."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = _clean(dict(terms or {}))
        _check(len(self._terms))

    @classmethod
    def _wrap(cls, d):
        obj = cls.__new__(cls)
        obj._terms = d
        _check(len(d))
        return obj

    @classmethod
    def monomial(cls, weight, coeff: int = 1):
        return cls({tuple(weight): coeff})

    @classmethod
    def one(cls, rank: int):
        return cls.monomial((0,) * rank)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), reverse=True))

    def items(self):
        return self._terms.items()

    def coefficient(self, weight) -> int:
        return self._terms.get(tuple(weight), 0)

    def support(self):
        return self._terms.keys()

    def __eq__(self, other):
        if isinstance(other, Character):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "Character(0)"
        parts = [f"{c}*e{w}" for w, c in self]
        if len(parts) > 8:
            parts = parts[:8] + [f"... ({len(parts)} terms)"]
        return "Character(" + " + ".join(parts) + ")"

    def __add__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        d = dict(self._terms)
        for k, v in other._terms.items():
            d[k] = d.get(k, 0) + v
        return Character._wrap(_clean(d))

    def __neg__(self):
        return Character._wrap({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self + (-other)

    def scale(self, c: int):
        if c == 0:
            return Character()
        return Character._wrap({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Character):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = defaultdict(int)
        for kb, vb in b.items():
            for ka, va in a.items():
                out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
        return Character._wrap(_clean(out))

    __rmul__ = __mul__

    def dim(self) -> int:
        """Evaluate at e(mu) -> 1."""
        return sum(self._terms.values())

    def is_w_invariant(self, rs: RootSystem) -> bool:
        t = self._terms
        for i in range(1, rs.rank + 1):
            for w, c in t.items():
                if t.get(reflect(rs, i, w), 0) != c:
                    return False
        return True

    def dominant_terms(self) -> dict:
        return {w: c for w, c in self._terms.items() if all(x >= 0 for x in w)}

    def shift(self, weight):
        """Multiply by e(weight)."""
        return Character._wrap({_add_weights(k, weight): v for k, v in self._terms.items()})

    def to_level(self, level: int = 0, graded: bool = True) -> "AffineCharacter":
        """Embed into Z[P^] at the given level with delta-exponent 0."""
        return AffineCharacter(level, {(w, 0): c for w, c in self._terms.items()}, graded=graded)


class AffineCharacter:
    """Finite sum of e(lambda + level*Lambda_0 + n*delta); keys are (lambda, n).

    With ``graded=False`` the character lives in Z[P^]/I_delta: every
    delta-exponent is 0 and operators drop delta shifts.
    """

    __slots__ = ("level", "graded", "_terms")

    def __init__(self, level: int, terms=None, graded: bool = True):
        self.level = level
        self.graded = graded
        d = defaultdict(int)
        for (w, n), c in dict(terms or {}).items():
            d[(tuple(w), _norm(n) if graded else 0)] += c
        self._terms = _clean(d)
        _check(len(self._terms))

    @classmethod
    def _wrap(cls, level, d, graded):
        obj = cls.__new__(cls)
        obj.level = level
        obj.graded = graded
        obj._terms = d
        _check(len(d))
        return obj

    @classmethod
    def monomial(cls, weight, level: int, delta=0, coeff: int = 1, graded: bool = True):
        return cls(level, {(tuple(weight), delta): coeff}, graded=graded)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (kv[0][0], Fraction(kv[0][1])),
                           reverse=True))

    def items(self):
        return self._terms.items()

    def coefficient(self, weight, delta=0) -> int:
        return self._terms.get((tuple(weight), delta if self.graded else 0), 0)

    def __eq__(self, other):
        if not isinstance(other, AffineCharacter):
            return NotImplemented
        return (self.level == other.level and self.graded == other.graded
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.level, self.graded, frozenset(self._terms.items())))

    def __repr__(self):
        return f"AffineCharacter(level={self.level}, terms={len(self._terms)}, graded={self.graded})"

    def _compatible(self, other):
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")
        if self.graded != other.graded:
            raise ValueError("cannot mix graded and mod-delta characters")

    def __add__(self, other):
        if not isinstance(other, AffineCharacter):
            return NotImplemented
        self._compatible(other)
        d = dict(self._terms)
        for k, v in other._terms.items():
            d[k] = d.get(k, 0) + v
        return AffineCharacter._wrap(self.level, _clean(d), self.graded)

    def __neg__(self):
        return AffineCharacter._wrap(self.level, {k: -v for k, v in self._terms.items()},
                                     self.graded)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        return AffineCharacter._wrap(self.level, _clean({k: c * v for k, v in self._terms.items()}),
                                     self.graded)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Character):
            other = other.to_level(0, graded=self.graded)
        if not isinstance(other, AffineCharacter):
            return NotImplemented
        if self.graded != other.graded:
            raise ValueError("cannot mix graded and mod-delta characters")
        out = defaultdict(int)
        for (wa, na), va in self._terms.items():
            for (wb, nb), vb in other._terms.items():
                out[(_add_weights(wa, wb), _norm(na + nb))] += va * vb
        return AffineCharacter._wrap(self.level + other.level, _clean(out), self.graded)

    __rmul__ = __mul__

    def dim(self) -> int:
        return sum(self._terms.values())

    def shift_delta(self, s):
        if not self.graded:
            return self
        return AffineCharacter._wrap(
            self.level, {(w, _norm(n + s)): c for (w, n), c in self._terms.items()}, True)

    def mod_delta(self) -> "AffineCharacter":
        if not self.graded:
            return self
        d = defaultdict(int)
        for (w, _), c in self._terms.items():
            d[(w, 0)] += c
        return AffineCharacter._wrap(self.level, _clean(d), False)

    def grades(self) -> set:
        return {n for (_, n) in self._terms}

    def layer(self, grade) -> "Character":
        return Character({w: c for (w, n), c in self._terms.items() if n == grade})


def _norm(n):
    if isinstance(n, Fraction) and n.denominator == 1:
        return int(n)
    return n


def project_mod_delta(chi: AffineCharacter) -> Character:
    """Set e(delta) = 1 and drop e(level * Lambda_0)."""
    d = defaultdict(int)
    for (w, _), c in chi.items():
        d[w] += c
    return Character._wrap(_clean(d))


# --- Demazure operators -----------------------------------------------------

def _demazure_terms(rs: RootSystem, i: int, terms, level: int, graded: bool):
    n = rs.rank
    out = defaultdict(int)
    if i == 0:
        step = rs.theta_weight  # lowering by alpha_0 = delta - theta raises by theta
        hc = rs.theta_coroot
        dstep = -1 if graded else 0
    else:
        a = rs.simple_root_weights[i - 1]
        step = tuple(-x for x in a)
        dstep = 0
    rng = range(n)
    for (w, dl), c in terms.items():
        if i == 0:
            k = level - sum(x * y for x, y in zip(w, hc))
        else:
            k = w[i - 1]
        if k >= 0:
            # sum_{j=0..k} e(Lambda - j alpha_i)
            cur = list(w)
            d = dl
            out[(w, d)] += c
            for _ in range(k):
                for t in rng:
                    cur[t] += step[t]
                d += dstep
                out[(tuple(cur), d)] += c
        elif k <= -2:
            # -sum_{j=1..-k-1} e(Lambda + j alpha_i)
            cur = list(w)
            d = dl
            for _ in range(-k - 1):
                for t in rng:
                    cur[t] -= step[t]
                d -= dstep
                out[(tuple(cur), d)] -= c
    return _clean(out)


def demazure_op(rs: RootSystem, i: int, chi: AffineCharacter) -> AffineCharacter:
    """D_i(e(L)) = (e(L) - e(s_i L - alpha_i)) / (1 - e(-alpha_i)), extended linearly."""
    if not 0 <= i <= rs.rank:
        raise ValueError(f"node {i} out of range for {rs.name}")
    d = _demazure_terms(rs, i, chi._terms, chi.level, chi.graded)
    return AffineCharacter._wrap(chi.level, d, chi.graded)


def apply_word(rs: RootSystem, word, chi: AffineCharacter) -> AffineCharacter:
    """D_{i_1} o ... o D_{i_r}(chi): the last letter acts first."""
    terms = chi._terms
    for i in reversed(tuple(word)):
        if not 0 <= i <= rs.rank:
            raise ValueError(f"node {i} out of range for {rs.name}")
        terms = _demazure_terms(rs, i, terms, chi.level, chi.graded)
        _check(len(terms))
    return AffineCharacter._wrap(chi.level, terms, chi.graded)


def weyl_orbit_sum(rs: RootSystem, lam) -> Character:
    """Sum of e(mu) over the W-orbit of lam."""
    lam = tuple(lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(1, rs.rank + 1):
                nu = reflect(rs, i, mu)
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return Character._wrap({mu: 1 for mu in seen})
