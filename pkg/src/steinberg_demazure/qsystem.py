"""Q-system identities, Schur-positivity comparisons and prime certificates."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import reduce

import sympy

from .charring import Character
from .demazure import (
    NotAModuleCharacter,
    decompose,
    demazure_character,
    irr_character,
)
from .rootdata import RootSystem, eval_coroot, fundamental_weight, is_dominant
from .steinberg import steinberg_split


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it is stated for."""


class InconclusiveByBudget(RuntimeError):
    """The prime search ran out of budget before reaching a verdict."""


def _add(*ws):
    return tuple(map(sum, zip(*ws)))


def _scale(c, w):
    return tuple(c * x for x in w)


def _unit(rs, i):
    return fundamental_weight(rs, i)


def _product(chars, rank):
    return reduce(lambda a, b: a * b, chars, Character.one(rank))


def minuscule(rs: RootSystem, i: int) -> bool:
    """omega_i(h_alpha) <= 1 for all positive roots."""
    w = fundamental_weight(rs, i)
    return all(eval_coroot(rs, w, r) <= 1 for r in rs.positive_roots)


def neighbours(rs: RootSystem, i: int) -> list:
    return [j + 1 for j in range(rs.rank) if j != i - 1 and rs.cartan[i - 1][j] != 0]


def _max_coroot_value(rs, lam):
    return max((eval_coroot(rs, lam, r) for r in rs.positive_roots), default=0)


def _simply_laced(rs):
    return rs.type_letter in "ADE"


# --- generalized Q-system ----------------------------------------------------

def qsystem_terms(rs: RootSystem, level: int, i: int, lam):
    """The three weight data (nu, nu1, nu0) entering the mixed-level Q-system."""
    lam = tuple(lam)
    if rs.type_letter not in "AD":
        raise PreconditionError(f"{rs.name}: the identity is stated for types A and D")
    if not minuscule(rs, i):
        raise PreconditionError(f"node {i} of {rs.name} is not minuscule")
    if not is_dominant(lam):
        raise PreconditionError(f"{lam} is not dominant")
    if lam[i - 1] < 1:
        raise PreconditionError(f"lambda(h_{i}) must be at least 1")
    if level < max(1, _max_coroot_value(rs, lam)):
        raise PreconditionError(f"level {level} is below max lambda(h_alpha)")
    alpha = rs.simple_root_weights[i - 1]
    nu = _add(_scale(level, _unit(rs, i)), lam, _scale(-lam[i - 1], alpha))
    sp = steinberg_split(rs, level, nu)
    return nu, sp.mu, sp.lam0


def qsystem_identity(rs: RootSystem, level: int, i: int, lam) -> bool:
    """ch D(l, l w_i) ch D(l, lam) == ch D(l, l nu1) ch D(l, nu0)
    + ch D(l+1, (l+1) w_i) ch D(l+1, lam - w_i), modulo delta."""
    lam = tuple(lam)
    _, nu1, nu0 = qsystem_terms(rs, level, i, lam)
    w = _unit(rs, i)
    lhs = demazure_character(rs, level, _scale(level, w)) * demazure_character(rs, level, lam)
    kernel = (demazure_character(rs, level, _scale(level, nu1))
              * demazure_character(rs, level, nu0))
    quotient = (demazure_character(rs, level + 1, _scale(level + 1, w))
                * demazure_character(rs, level + 1, _add(lam, _scale(-1, w))))
    return lhs == kernel + quotient


def _kr(rs, level, i):
    if level == 0:
        return Character.one(rs.rank)
    return demazure_character(rs, level, _scale(level, _unit(rs, i)))


def classical_qsystem(rs: RootSystem, level: int, i: int) -> bool:
    """Q_i(l)^2 == Q_i(l+1) Q_i(l-1) + prod_{j ~ i} Q_j(l), with Q_j(m) = ch D(m, m w_j)."""
    if rs.type_letter != "A" and not (_simply_laced(rs) and minuscule(rs, i)):
        raise PreconditionError(f"{rs.name}, node {i}: need type A or a minuscule node")
    if level < 1:
        raise PreconditionError("level must be positive")
    q = _kr(rs, level, i)
    kernel = _product([_kr(rs, level, j) for j in neighbours(rs, i)], rs.rank)
    return q * q == _kr(rs, level + 1, i) * _kr(rs, level - 1, i) + kernel


# --- Schur positivity ---------------------------------------------------------

def schur_compare(rs: RootSystem, level: int, i: int, mu) -> bool:
    """[V(nu) : V(d_i(l+1)w_i) x V(mu)] <= [V(nu) : V(d_i l w_i) x V(mu + d_i w_i)] for all nu."""
    mu = tuple(mu)
    if not minuscule(rs, i):
        raise PreconditionError(f"node {i} of {rs.name} is not minuscule")
    if not is_dominant(mu):
        raise PreconditionError(f"{mu} is not dominant")
    di = rs.d[i - 1]
    if level - di < _max_coroot_value(rs, mu):
        raise PreconditionError(f"need l - d_i >= max mu(h_alpha)")
    w = _unit(rs, i)
    small = decompose(rs, irr_character(rs, _scale(di * (level + 1), w)) * irr_character(rs, mu))
    big = decompose(rs, irr_character(rs, _scale(di * level, w))
                    * irr_character(rs, _add(mu, _scale(di, w))))
    return all(small.get(nu, 0) <= big.get(nu, 0) for nu in set(small) | set(big))


# --- supports and the subdiagram J --------------------------------------------

def support(lam) -> frozenset:
    return frozenset(i + 1 for i, x in enumerate(lam) if x > 0)


def support_disjoint(mu1, mu2) -> bool:
    return not (support(mu1) & support(mu2))


def _path(rs, a, b):
    prev = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for u in neighbours(rs, v):
            if u not in prev:
                prev[u] = v
                queue.append(u)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def choose_connected_J(rs: RootSystem, nu1, nu2) -> frozenset:
    """Connected type-A subdiagram meeting each non-zero support exactly once."""
    if not _simply_laced(rs):
        raise PreconditionError(f"{rs.name}: needs a simply-laced type")
    s1, s2 = support(nu1), support(nu2)
    if s1 & s2:
        raise PreconditionError("supports are not disjoint")
    if not s1 and not s2:
        return frozenset()
    if not s1 or not s2:
        return frozenset({min(s1 or s2)})
    # the closest pair; any interior node of its path avoids both supports
    best = min((len(_path(rs, a, b)), a, b) for a in sorted(s1) for b in sorted(s2))
    return frozenset(_path(rs, best[1], best[2]))


def is_type_a_path(rs: RootSystem, J) -> bool:
    """J is connected and its induced diagram is a simply-laced chain."""
    J = set(J)
    if not J:
        return True
    degs = {v: sum(1 for u in neighbours(rs, v) if u in J) for v in J}
    edges = sum(degs.values()) // 2
    if any(rs.cartan[a - 1][b - 1] not in (0, -1) for a in J for b in J if a != b):
        return False
    # a tree on |J| nodes with all degrees <= 2 is a path
    seen, stack = set(), [next(iter(J))]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(u for u in neighbours(rs, v) if u in J)
    return seen == J and edges == len(J) - 1 and max(degs.values()) <= 2


# --- prime certificates --------------------------------------------------------

class _InvariantRing:
    """Z[P]^W as Z[x_1..x_n] with x_i = ch V(w_i)."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.gens = sympy.symbols(f"x1:{rs.rank + 1}")
        self._monos = {(0,) * rs.rank: Character.one(rs.rank)}

    def monomial(self, exps) -> Character:
        exps = tuple(exps)
        got = self._monos.get(exps)
        if got is None:
            i = max(j for j, e in enumerate(exps) if e)
            lower = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            got = self.monomial(lower) * irr_character(self.rs, _unit(self.rs, i + 1))
            self._monos[exps] = got
        return got

    def to_poly(self, chi: Character):
        """Triangular expansion of a W-invariant character."""
        rs = self.rs
        rest = chi
        poly = sympy.Integer(0)
        while rest:
            dom = rest.dominant_terms()
            if not dom:
                raise NotAModuleCharacter("character is not W-invariant")
            top = max(dom, key=lambda w: (rs.height(w), w))
            c = dom[top]
            poly += c * sympy.prod([g ** e for g, e in zip(self.gens, top)])
            rest = rest - self.monomial(top).scale(c)
        return sympy.Poly(poly, *self.gens)

    def to_char(self, poly) -> Character:
        total = Character()
        for exps, c in sympy.Poly(poly, *self.gens).terms():
            total = total + self.monomial(exps).scale(int(c))
        return total


@dataclass
class PrimeVerdict:
    status: str  # "prime" or "factored"
    level: int
    lam: tuple
    factorization: str  # irreducible factorization in the invariant ring
    groupings_tried: int
    factors: tuple = ()  # (chi1, chi2) when factored
    decompositions: tuple = ()  # irreducible multiplicities of the factors
    budget: int = 0
    notes: list = field(default_factory=list)

    @property
    def is_prime(self) -> bool:
        return self.status == "prime"


DEFAULT_GROUPING_BUDGET = 1 << 16


def _nonneg_decomposition(rs, chi):
    try:
        d = decompose(rs, chi)
    except NotAModuleCharacter:
        return None
    return d if all(c > 0 for c in d.values()) else None


def prime_certificate(rs: RootSystem, level: int, lam, budget: int = DEFAULT_GROUPING_BUDGET,
                      chi: Character | None = None) -> PrimeVerdict:
    """Decide whether ch D(level, lam) is a product of two non-trivial module characters.

    Z[P]^W is a polynomial ring, hence a UFD, so every factorization into
    W-invariant characters is a grouping of the irreducible factors of the
    character's polynomial.  Each grouping is tested for non-negative
    decomposability on both sides.
    """
    lam = tuple(lam)
    if not _simply_laced(rs):
        raise PreconditionError(f"{rs.name}: prime certificates are for simply-laced types")
    if chi is None:
        chi = demazure_character(rs, level, lam)
    ring = _InvariantRing(rs)
    poly = ring.to_poly(chi)
    content, facs = sympy.factor_list(poly.as_expr(), *ring.gens)
    text = sympy.sstr(sympy.factor(poly.as_expr()))
    ranges = [range(e + 1) for _, e in facs]
    total = 1
    for r in ranges:
        total *= len(r)
    if total > budget:
        raise InconclusiveByBudget(
            f"{total} factor groupings for ({level}, {lam}) exceed budget {budget}")
    tried = 0
    for pick in itertools.product(*ranges):
        if not any(pick) or all(p == e for p, (_, e) in zip(pick, facs)):
            continue  # one side would be a constant
        tried += 1
        left = sympy.prod([f ** p for (f, _), p in zip(facs, pick)])
        right = sympy.prod([f ** (e - p) for (f, e), p in zip(facs, pick)])
        for sign in (1, -1):
            a = ring.to_char(sympy.expand(sign * left))
            b = ring.to_char(sympy.expand(sign * content * right))
            if a.dim() <= 1 or b.dim() <= 1:
                continue
            da = _nonneg_decomposition(rs, a)
            db = _nonneg_decomposition(rs, b) if da is not None else None
            if db is not None:
                assert a * b == chi
                return PrimeVerdict("factored", level, lam, text, tried, (a, b), (da, db), budget)
    return PrimeVerdict("prime", level, lam, text, tried, budget=budget)
