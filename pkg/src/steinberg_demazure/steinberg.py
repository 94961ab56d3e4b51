"""Steinberg-type splits, the key weight mu, and key-weight table checks."""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from importlib import resources
from math import lcm

import numpy as np

from .charring import Character
from .demazure import demazure_character
from .rootdata import (
    RootSystem,
    build,
    coweight_basis,
    descend_to_dominant,
    eval_coroot,
    in_coweight_lattice,
    is_dominant,
    pairing,
)
from .weyl import FiniteWeylElement


class KeyConstructionUnavailable(NotImplementedError):
    """No constructive recipe for this type."""


@dataclass(frozen=True)
class SteinbergSplit:
    """lam = level * mu + lam0 with mu in L+."""

    level: int
    lam: tuple
    mu: tuple
    lam0: tuple

    def coweight_multiplicities(self, rs: RootSystem) -> tuple:
        """m_i with mu = sum m_i d_i omega_i."""
        return tuple(x // di for x, di in zip(self.mu, rs.d))

    def parts(self, rs: RootSystem) -> list:
        """mu re-expanded as a list of coweight basis vectors (with repetition)."""
        out = []
        for b, x, di in zip(coweight_basis(rs), self.mu, rs.d):
            out.extend([b] * (x // di))
        return out


def _check_dominant(lam):
    if not is_dominant(lam):
        raise ValueError(f"{tuple(lam)} is not dominant")


def steinberg_split(rs: RootSystem, level: int, lam) -> SteinbergSplit:
    """Canonical split: m_i = floor(lam_i / (level d_i))."""
    lam = tuple(lam)
    _check_dominant(lam)
    if level < 1:
        raise ValueError("level must be positive")
    mu = tuple((x // (level * di)) * di for x, di in zip(lam, rs.d))
    lam0 = tuple(x - level * m for x, m in zip(lam, mu))
    return SteinbergSplit(level, lam, mu, lam0)


def verify_factorization(rs: RootSystem, level: int, lam) -> bool:
    """ch D(l, lam) == ch D(l, l mu) * ch D(l, lam0), plus the finer product over L's basis."""
    sp = steinberg_split(rs, level, lam)
    whole = demazure_character(rs, level, sp.lam)
    top = demazure_character(rs, level, tuple(level * x for x in sp.mu))
    rest = demazure_character(rs, level, sp.lam0)
    if whole != top * rest:
        return False
    pieces = [demazure_character(rs, level, tuple(level * x for x in b)) for b in sp.parts(rs)]
    finer = reduce(lambda a, b: a * b, pieces, Character.one(rs.rank))
    return finer == top


# --- the key inequality -------------------------------------------------------

def key_valid(rs: RootSystem, level: int, lam, mu) -> bool:
    """|(l mu - lam, alpha)| <= l for every positive root alpha."""
    x = tuple(level * m - v for m, v in zip(mu, lam))
    return all(abs(pairing(rs, x, r)) <= level for r in rs.positive_roots)


def _check_key_range(rs, level, lam):
    _check_dominant(lam)
    for x, di in zip(lam, rs.d):
        if x > di * level:
            raise ValueError(f"{tuple(lam)} has a coordinate above d_i * l = {di * level}")


def key_search_brute(rs: RootSystem, level: int, lam, coord_bound: int = 3):
    """Smallest mu in L+ (coweight coefficients <= bound) passing key_valid.

    Candidates are ordered colexicographically in the coweight coefficients
    (the last node is most significant).  Returns None if nothing within the
    bound works.
    """
    lam = tuple(lam)
    _check_key_range(rs, level, lam)
    n = rs.rank
    scale = lcm(*rs.d)
    roots = np.array([r.coords for r in rs.positive_roots], dtype=np.int64)
    # (l mu, alpha) = l * sum_i c_i a_i ; (lam, alpha) = sum_i a_i lam_i / d_i
    lam_part = roots @ np.array([v * scale // di for v, di in zip(lam, rs.d)], dtype=np.int64)
    grid = np.array([c[::-1] for c in itertools.product(range(coord_bound + 1), repeat=n)],
                    dtype=np.int64)
    vals = level * scale * (grid @ roots.T) - lam_part[None, :]
    ok = np.all(np.abs(vals) <= level * scale, axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    c = grid[hits[0]]
    return tuple(int(ci) * di for ci, di in zip(c, rs.d))


def dominant_witness(rs: RootSystem, level: int, lam, mu) -> FiniteWeylElement:
    """w in W with w(l mu - lam) dominant and of theta-value <= l.

    Note l mu - lam = l mu + w0(lam*) with lam* = -w0 lam; the key inequality
    for lam is the dominance condition for this weight.
    """
    x = tuple(level * m - v for m, v in zip(mu, lam))
    dom, word = descend_to_dominant(rs, x)
    if eval_coroot(rs, dom, rs.theta) > level:
        raise ValueError(f"no witness: ({level}, {tuple(lam)}, {tuple(mu)}) fails the key inequality")
    w = FiniteWeylElement(rs, tuple(reversed(word)))
    assert w.act(x) == dom
    return w


# --- constructive mu -----------------------------------------------------------

def _construct_c(n: int, level: int, lam) -> tuple:
    """s_1..s_{n-1} in {0,1} for C_n; lam may have rational coordinates."""
    rs = build("C", n) if n >= 2 else None
    s = [0] * n
    if rs is None:
        return tuple(s)
    mu = [0] * n
    # long roots 2a_i + ... + 2a_{n-1} + a_n, innermost subdiagram first
    for i in range(n - 2, -1, -1):
        theta_i = tuple(0 if j < i else (1 if j == n - 1 else 2) for j in range(n))
        x = tuple(level * m - v for m, v in zip(mu, lam))
        if abs(pairing(rs, x, theta_i)) > level:
            s[i] = 1
            mu[i] = 2
    return tuple(s)


def _construct_a(n: int, level: int, lam) -> tuple:
    # A_n sits in C_{n+1} on the first n nodes; 2*lam satisfies the C_{n+1} bounds
    s = _construct_c(n + 1, level, tuple(2 * x for x in lam) + (0,))
    return s[:n]


def _construct_d(n: int, level: int, lam) -> tuple:
    lam = list(lam)
    if lam[n - 1] < lam[n - 2]:
        lam[n - 2], lam[n - 1] = lam[n - 1], lam[n - 2]  # spin swap
    c = tuple(2 * x for x in lam[: n - 1]) + (lam[n - 1] - lam[n - 2],)
    s = _construct_c(n, level, c)
    return s[: n - 1] + (s[n - 2],)


def _construct_b(n: int, level: int, lam) -> tuple:
    half = Fraction(lam[n - 1], 2)
    s = _construct_d(n + 1, level, tuple(lam[: n - 1]) + (half, half))
    return s[: n - 1] + (2 * s[n - 1],)


def _construct_g2(rs: RootSystem, level: int, lam) -> tuple:
    x = pairing(rs, lam, (2, 3))
    y = pairing(rs, lam, (1, 3))
    if x <= level:
        return (0, 0)
    if x <= 3 * level and y <= 2 * level:
        return (1, 0)
    if 2 * level < x <= 4 * level and y > 2 * level:
        return (0, 3)
    return (1, 3)


def key_construct(rs: RootSystem, level: int, lam) -> tuple:
    """mu from the explicit constructions for classical types and G2."""
    lam = tuple(lam)
    _check_key_range(rs, level, lam)
    t, n = rs.type_letter, rs.rank
    if t == "C":
        mu = tuple(2 * s for s in _construct_c(n, level, lam))
    elif t == "A":
        mu = _construct_a(n, level, lam)
    elif t == "D":
        mu = _construct_d(n, level, lam)
    elif t == "B":
        mu = _construct_b(n, level, lam)
    elif t == "G":
        mu = _construct_g2(rs, level, lam)
    else:
        raise KeyConstructionUnavailable(
            f"constructive algorithm unavailable for {rs.name}; use key_search_brute")
    if not in_coweight_lattice(rs, mu):
        raise AssertionError(f"constructed mu={mu} is not in L for {rs.name}")
    if not key_valid(rs, level, lam, mu):
        raise AssertionError(f"constructed mu={mu} fails the key inequality for {lam}")
    return mu


# --- key-weight tables -------------------------------------------------------

@dataclass
class TableFixture:
    type_letter: str
    rank: int
    level: int
    rows: list = field(default_factory=list)  # (lam, mu) pairs

    @property
    def root_system(self) -> RootSystem:
        return build(self.type_letter, self.rank)

    def validate(self):
        rs = self.root_system
        for k, (lam, mu) in enumerate(self.rows, 1):
            if not all(0 <= x <= di * self.level for x, di in zip(lam, rs.d)):
                raise ValueError(f"row {k}: lambda {lam} out of range")
            if not in_coweight_lattice(rs, mu) or not is_dominant(mu):
                raise ValueError(f"row {k}: mu {mu} not in L+")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["type", "rank", "ell"])
        w.writerow([self.type_letter, self.rank, self.level])
        for lam, mu in self.rows:
            w.writerow(list(lam) + list(mu))
        return buf.getvalue()


def parse_fixture(text: str) -> TableFixture:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or [c.strip() for c in lines[0].split(",")] != ["type", "rank", "ell"]:
        raise ValueError("line 1: expected header 'type,rank,ell'")
    try:
        t, r, l = [c.strip() for c in lines[1].split(",")]
        fx = TableFixture(t.upper(), int(r), int(l))
    except (IndexError, ValueError) as exc:
        raise ValueError(f"line 2: bad type/rank/ell record ({exc})") from None
    n = fx.rank
    for k, ln in enumerate(lines[2:], 3):
        try:
            vals = [int(c) for c in ln.split(",")]
        except ValueError:
            raise ValueError(f"line {k}: non-integer entry") from None
        if len(vals) != 2 * n:
            raise ValueError(f"line {k}: expected {2 * n} integers, got {len(vals)}")
        fx.rows.append((tuple(vals[:n]), tuple(vals[n:])))
    fx.validate()
    return fx


def load_fixture(path_or_name) -> TableFixture:
    """Read a fixture from a path, or a shipped one by name ('f4_l2.csv', 'e8_l2.csv')."""
    try:
        with open(path_or_name, encoding="utf-8") as fh:
            return parse_fixture(fh.read())
    except FileNotFoundError:
        ref = resources.files("steinberg_demazure").joinpath("data", str(path_or_name))
        if not ref.is_file():
            raise
        return parse_fixture(ref.read_text(encoding="utf-8"))


CONVENTIONS = ("bourbaki", "reversed")


def _relabel(v, convention):
    return tuple(reversed(v)) if convention == "reversed" else tuple(v)


@dataclass
class TableReport:
    fixture: TableFixture
    convention: str
    results: list  # bool per row under ``convention``
    alternatives: dict  # convention -> number of valid rows

    @property
    def n_valid(self) -> int:
        return sum(self.results)

    @property
    def ok(self) -> bool:
        return all(self.results)

    @property
    def failures(self) -> list:
        return [(k, row) for k, (row, good) in enumerate(zip(self.fixture.rows, self.results), 1)
                if not good]

    @property
    def validating_convention(self):
        n = len(self.fixture.rows)
        return next((c for c, v in self.alternatives.items() if v == n), None)


def _rows_valid(fx: TableFixture, convention: str) -> list:
    rs = fx.root_system
    return [key_valid(rs, fx.level, _relabel(lam, convention), _relabel(mu, convention))
            if in_coweight_lattice(rs, _relabel(mu, convention)) else False
            for lam, mu in fx.rows]


def verify_table(fx: TableFixture, convention: str = "bourbaki") -> TableReport:
    """Check every row; on failure also try the other numbering conventions."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    results = _rows_valid(fx, convention)
    alternatives = {convention: sum(results)}
    if not all(results):
        for other in CONVENTIONS:
            if other != convention:
                alternatives[other] = sum(_rows_valid(fx, other))
    return TableReport(fx, convention, results, alternatives)
