import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinberg_demazure.charring import (
    AffineCharacter,
    Character,
    TermBudgetExceeded,
    apply_word,
    demazure_op,
    project_mod_delta,
    set_term_budget,
    weyl_orbit_sum,
)
from steinberg_demazure.rootdata import build

A1 = build("A", 1)
A2 = build("A", 2)


def _aff(w, level=0, delta=0, graded=True):
    return AffineCharacter.monomial(w, level, delta, graded=graded)


def test_a1_examples():
    assert project_mod_delta(demazure_op(A1, 1, _aff((1,)))) == \
        Character({(1,): 1, (-1,): 1})
    assert project_mod_delta(demazure_op(A1, 1, _aff((-2,)))) == Character({(0,): -1})
    assert demazure_op(A1, 1, _aff((-1,))).dim() == 0


def test_node_zero_shifts_delta():
    # level 2, classical 0: <L, a_0^v> = 2, so D_0 gives e(L) + e(L - a_0) + e(L - 2a_0)
    out = demazure_op(A1, 0, _aff((0,), 2))
    assert dict(out.items()) == {((0,), 0): 1, ((2,), -1): 1, ((4,), -2): 1}


def test_character_arithmetic():
    x = Character({(1,): 1, (-1,): 1})
    assert x * x == Character({(2,): 1, (0,): 2, (-2,): 1})
    assert (x - x) == 0
    assert x.scale(3).dim() == 6
    assert x.shift((1,)) == Character({(2,): 1, (0,): 1})
    assert x.is_w_invariant(A1)
    assert not Character.monomial((1,)).is_w_invariant(A1)


def test_affine_levels_add_and_mixing_rejected():
    a = _aff((1,), 1)
    b = _aff((0,), 2)
    assert (a * b).level == 3
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * _aff((0,), 1, graded=False)


def test_budget():
    old = set_term_budget(2)
    try:
        with pytest.raises(TermBudgetExceeded):
            Character({(1,): 1, (0,): 1, (-1,): 1})
    finally:
        set_term_budget(old)


def test_word_independence_a2():
    x = _aff((2, -1), 1, 0)
    assert apply_word(A2, (1, 2, 1), x) == apply_word(A2, (2, 1, 2), x)


def test_orbit_sum():
    assert len(weyl_orbit_sum(A2, (1, 1))) == 6
    assert len(weyl_orbit_sum(build("G", 2), (1, 0))) == 6


sparse = st.dictionaries(
    st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-2, 2)),
    st.integers(-3, 3).filter(bool), min_size=1, max_size=5)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([("A", 2), ("B", 2), ("C", 2), ("G", 2)]), sparse,
       st.integers(0, 3), st.integers(0, 2))
def test_idempotent(tn, terms, level, i):
    rs = build(*tn)
    chi = AffineCharacter(level, terms)
    once = demazure_op(rs, i, chi)
    assert demazure_op(rs, i, once) == once
