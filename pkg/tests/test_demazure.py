import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinberg_demazure.charring import Character
from steinberg_demazure.demazure import (
    NotAModuleCharacter,
    decompose,
    demazure_character,
    demazure_dim,
    irr_character,
    is_evaluation_case,
    presentation_data,
    recompose,
    tensor_mult,
    weyl_dimension,
)
from steinberg_demazure.rootdata import build, eval_coroot, w0_weight

A1, A2, C2, G2 = build("A", 1), build("A", 2), build("C", 2), build("G", 2)


def test_presentation_data():
    p = presentation_data(A1, 2, (3,))
    assert (p.s[(1,)], p.m[(1,)]) == (2, 1)
    p = presentation_data(A1, 2, (2,))
    assert (p.s[(1,)], p.m[(1,)]) == (1, 2)
    p = presentation_data(C2, 1, (0, 1))
    for r in C2.positive_roots:
        v = eval_coroot(C2, (0, 1), r)
        da = C2.d_root(r)
        assert v == da * (p.s[r.coords] - 1) + p.m[r.coords]
        # lam(h_alpha) = 0 is the degenerate case (s, m) = (1, 0)
        assert (0 < p.m[r.coords] <= da) or (v == 0 and (p.s[r.coords], p.m[r.coords]) == (1, 0))


def test_small_characters():
    assert demazure_character(A1, 1, (1,)) == Character({(1,): 1, (-1,): 1})
    assert demazure_character(A2, 3, (0, 0)) == Character.one(2)
    assert demazure_character(A1, 1, (2,)) == Character({(2,): 1, (0,): 2, (-2,): 1})
    assert [demazure_dim(A1, 1, (m,)) for m in range(1, 5)] == [2, 4, 8, 16]


def test_irreducibles():
    assert irr_character(A2, (1, 0)).dim() == 3 and len(irr_character(A2, (1, 0))) == 3
    assert [irr_character(A1, (m,)).dim() for m in range(6)] == [1, 2, 3, 4, 5, 6]
    assert irr_character(G2, (1, 0)).dim() == weyl_dimension(G2, (1, 0)) == 14
    assert irr_character(G2, (0, 1)).dim() == 7


def test_input_checks():
    with pytest.raises(ValueError):
        demazure_character(A1, 0, (1,))
    with pytest.raises(ValueError):
        demazure_character(A2, 1, (1, -1))


def test_decompose_examples():
    assert decompose(A2, irr_character(A2, (1, 0)) * irr_character(A2, (0, 1))) == \
        {(1, 1): 1, (0, 0): 1}
    x = irr_character(A1, (1,))
    assert decompose(A1, x * x) == {(2,): 1, (0,): 1}
    with pytest.raises(NotAModuleCharacter):
        decompose(A1, irr_character(A1, (2,)) - irr_character(A1, (4,)))
    assert tensor_mult(A1, (0,), (1,), (1,)) == 1
    assert tensor_mult(A1, (2,), (1,), (1,)) == 1
    assert tensor_mult(A2, (1, 1), (1, 0), (0, 1)) == 1


def test_graded_layer_zero_is_irreducible(small_rs):
    rs = small_rs
    for lam in itertools.islice(itertools.product(range(3), repeat=rs.rank), 12):
        g = demazure_character(rs, 1, lam, graded=True)
        assert min(g.grades()) == 0
        assert g.layer(0) == irr_character(rs, lam)
        flat = demazure_character(rs, 1, lam)
        assert g.mod_delta().dim() == flat.dim()


def test_basic_invariants(small_rs):
    rs = small_rs
    for level in (1, 2):
        for lam in itertools.product(range(3), repeat=rs.rank):
            if rs.rank > 2 and sum(lam) > 3:
                continue
            chi = demazure_character(rs, level, lam)
            assert chi.is_w_invariant(rs)
            assert chi.coefficient(lam) == 1
            assert chi.coefficient(w0_weight(rs, lam)) == 1
            if is_evaluation_case(rs, level, lam):
                assert chi == irr_character(rs, lam)
            assert demazure_dim(rs, level, lam) >= demazure_dim(rs, level + 1, lam)


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(1, 3),
                       max_size=4))
def test_decompose_recompose(mults):
    assert decompose(A2, recompose(A2, mults)) == dict(sorted(mults.items(), reverse=True))
