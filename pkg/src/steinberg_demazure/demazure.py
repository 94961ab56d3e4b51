"""Characters and dimensions of the g[t]-stable Demazure modules D(l, lambda)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .charring import AffineCharacter, Character, apply_word, project_mod_delta
from .rootdata import RootSystem, eval_coroot, is_dominant, w0_weight
from .weyl import AffineWeight, to_dominant


class NotAModuleCharacter(ValueError):
    """Greedy decomposition hit a negative multiplicity or a stray term."""


class PresentationData(NamedTuple):
    level: int
    weight: tuple
    s: dict  # positive root coords -> s_alpha
    m: dict  # positive root coords -> m_alpha


def _check_args(level, lam):
    if level < 1:
        raise ValueError(f"level must be positive, got {level}")
    if not is_dominant(lam):
        raise ValueError(f"{tuple(lam)} is not dominant")


def presentation_data(rs: RootSystem, level: int, lam) -> PresentationData:
    """(s_a, m_a) with lam(h_a) = d_a*l*(s_a - 1) + m_a and 0 < m_a <= d_a*l.

    When lam(h_a) = 0 no such pair has s_a >= 1; we return (1, 0), which
    turns the defining relations into x_a^- w = 0.
    """
    _check_args(level, lam)
    s, m = {}, {}
    for root in rs.positive_roots:
        v = eval_coroot(rs, lam, root)
        q = rs.d_root(root) * level
        sa = (v - 1) // q + 1 if v > 0 else 1
        s[root.coords] = sa
        m[root.coords] = v - q * (sa - 1)
    return PresentationData(level, tuple(lam), s, m)


def demazure_word(rs: RootSystem, level: int, lam):
    """Dominant affine weight and reduced word realising D(level, lam)."""
    start = AffineWeight(w0_weight(rs, lam), level, 0)
    return to_dominant(rs, start)


@lru_cache(maxsize=4096)
def _character_mod_delta(rs: RootSystem, level: int, lam: tuple) -> Character:
    dom, word = demazure_word(rs, level, lam)
    seed = AffineCharacter.monomial(dom.classical, level, graded=False)
    return project_mod_delta(apply_word(rs, word, seed))


@lru_cache(maxsize=256)
def _character_graded(rs: RootSystem, level: int, lam: tuple) -> AffineCharacter:
    dom, word = demazure_word(rs, level, lam)
    seed = AffineCharacter.monomial(dom.classical, level, dom.delta, graded=True)
    chi = apply_word(rs, word, seed)
    top = [n for (w, n) in chi.terms if w == lam]
    if len(top) != 1:
        raise AssertionError(f"weight {lam} occurs in {len(top)} grades")
    out = AffineCharacter(0, {(w, n - top[0]): c for (w, n), c in chi.items()}, graded=True)
    if any(n < 0 for n in out.grades()):
        raise AssertionError("negative grade after normalisation")
    return out


def demazure_character(rs: RootSystem, level: int, lam, graded: bool = False):
    """ch D(level, lam).

    Mod delta (default) this is a :class:`Character`.  With ``graded=True``
    the result is a level-0 :class:`AffineCharacter` whose delta-exponents
    are t-degrees, normalised so that weight ``lam`` sits in degree 0.
    """
    lam = tuple(lam)
    _check_args(level, lam)
    if graded:
        return _character_graded(rs, level, lam)
    return _character_mod_delta(rs, level, lam)


def demazure_dim(rs: RootSystem, level: int, lam) -> int:
    return demazure_character(rs, level, lam).dim()


def is_evaluation_case(rs: RootSystem, level: int, lam) -> bool:
    """lam(h_a) <= d_a * l for all positive roots: D(l, lam) is V(lam)."""
    return all(eval_coroot(rs, lam, r) <= rs.d_root(r) * level for r in rs.positive_roots)


@lru_cache(maxsize=8192)
def irr_character(rs: RootSystem, lam) -> Character:
    """ch V(lam), via D(l*, lam) at l* = max(1, lam(h_theta))."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    level = max(1, eval_coroot(rs, lam, rs.theta))
    return demazure_character(rs, level, lam)


def weyl_dimension(rs: RootSystem, lam) -> int:
    """prod over positive roots of (lam + rho, a) / (rho, a)."""
    from .rootdata import pairing

    rho = rs.dominant_chamber_rho()
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for r in rs.positive_roots:
        num *= pairing(rs, shifted, r) / pairing(rs, rho, r)
    if num.denominator != 1:
        raise AssertionError("non-integral Weyl dimension")
    return int(num)


def _highest_dominant(rs: RootSystem, weights):
    # total order refining dominance: height, then coordinates
    return max(weights, key=lambda w: (rs.height(w), w))


def decompose(rs: RootSystem, chi: Character) -> dict:
    """Irreducible multiplicities of a module character, by greedy subtraction."""
    rest = chi
    out = {}
    while rest:
        dom = rest.dominant_terms()
        if not dom:
            raise NotAModuleCharacter("leftover terms with no dominant weight")
        top = _highest_dominant(rs, dom)
        c = dom[top]
        if c < 0:
            raise NotAModuleCharacter(f"negative multiplicity {c} for V{top}")
        out[top] = c
        rest = rest - irr_character(rs, top).scale(c)
    return dict(sorted(out.items(), reverse=True))


def recompose(rs: RootSystem, mults: dict) -> Character:
    total = Character()
    for lam, c in mults.items():
        total = total + irr_character(rs, lam).scale(c)
    return total


def tensor_mult(rs: RootSystem, nu, mu1, mu2) -> int:
    """Multiplicity of V(nu) in V(mu1) (x) V(mu2)."""
    prod = irr_character(rs, tuple(mu1)) * irr_character(rs, tuple(mu2))
    return decompose(rs, prod).get(tuple(nu), 0)
