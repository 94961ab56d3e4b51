import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinberg_demazure.rootdata import build, eval_coroot, in_coweight_lattice
from steinberg_demazure.steinberg import (
    KeyConstructionUnavailable,
    TableFixture,
    dominant_witness,
    key_construct,
    key_search_brute,
    key_valid,
    load_fixture,
    parse_fixture,
    steinberg_split,
    verify_factorization,
    verify_table,
)

A1, A2, C2, G2 = build("A", 1), build("A", 2), build("C", 2), build("G", 2)
F4, E8 = build("F", 4), build("E", 8)


def test_split_examples():
    sp = steinberg_split(A1, 2, (0,))
    assert (sp.mu, sp.lam0) == ((0,), (0,))
    sp = steinberg_split(A1, 2, (5,))
    assert (sp.mu, sp.lam0) == ((2,), (1,))
    sp = steinberg_split(C2, 1, (3, 1))
    assert (sp.mu, sp.lam0) == ((2, 1), (1, 0))
    assert sp.coweight_multiplicities(C2) == (1, 1)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([("A", 2), ("B", 3), ("C", 3), ("G", 2), ("F", 4)]), st.integers(1, 3),
       st.data())
def test_split_reassembles(tn, level, data):
    rs = build(*tn)
    lam = tuple(data.draw(st.lists(st.integers(0, 9), min_size=rs.rank, max_size=rs.rank)))
    sp = steinberg_split(rs, level, lam)
    assert tuple(level * m + x for m, x in zip(sp.mu, sp.lam0)) == lam
    assert in_coweight_lattice(rs, sp.mu)
    assert all(0 <= x < level * di for x, di in zip(sp.lam0, rs.d))


def test_factorization_examples():
    assert verify_factorization(A1, 1, (3,))
    assert verify_factorization(A2, 2, (2, 3))
    assert verify_factorization(A2, 3, (1, 2))  # trivial split


def test_key_valid_examples():
    assert key_valid(G2, 1, (0, 0), (0, 0))
    assert key_valid(F4, 2, (1, 0, 2, 0), (0, 1, 0, 0))
    assert key_valid(E8, 2, (1,) * 8, (0, 0, 0, 1, 1, 0, 1, 0))


def test_brute_force_examples():
    assert key_search_brute(A1, 1, (1,)) == (0,)
    assert key_search_brute(A2, 1, (1, 1)) == (1, 0)
    assert key_search_brute(F4, 2, (0, 0, 0, 3)) is not None
    assert key_valid(F4, 2, (0, 0, 0, 3), (0, 0, 0, 2))
    assert key_search_brute(A2, 1, (1, 1), coord_bound=0) is None
    with pytest.raises(ValueError):
        key_search_brute(A1, 1, (2,))


def test_construct_examples():
    assert key_construct(C2, 1, (0, 0)) == (0, 0)
    assert key_construct(G2, 1, (1, 0)) == (1, 0)
    b3 = build("B", 3)
    mu = key_construct(b3, 1, (0, 1, 0))
    assert key_valid(b3, 1, (0, 1, 0), mu)
    with pytest.raises(KeyConstructionUnavailable):
        key_construct(F4, 1, (0, 0, 0, 0))


@pytest.mark.parametrize("tn", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("D", 5), ("G", 2)])
def test_construct_exhaustive(tn):
    rs = build(*tn)
    for level in (1, 2):
        for lam in itertools.product(*[range(d * level + 1) for d in rs.d]):
            mu = key_construct(rs, level, lam)
            w = dominant_witness(rs, level, lam, mu)
            img = w.act(tuple(level * m - x for m, x in zip(mu, lam)))
            assert all(x >= 0 for x in img) and eval_coroot(rs, img, rs.theta) <= level


def test_witness_equivalence():
    # key_valid <=> a witness exists, over all small mu
    for rs in (A2, C2, G2):
        for lam in itertools.product(*[range(d + 1) for d in rs.d]):
            for c in itertools.product(range(3), repeat=rs.rank):
                mu = tuple(ci * di for ci, di in zip(c, rs.d))
                try:
                    dominant_witness(rs, 1, lam, mu)
                    found = True
                except ValueError:
                    found = False
                assert found == key_valid(rs, 1, lam, mu)


def test_witness_examples():
    assert dominant_witness(A2, 1, (0, 0), (0, 0)).word == ()
    w = dominant_witness(A1, 1, (1,), (0,))
    assert w.act((-1,)) == (1,)


def test_fixtures_shipped():
    f4 = load_fixture("f4_l2.csv")
    e8 = load_fixture("e8_l2.csv")
    assert (len(f4.rows), len(e8.rows)) == (64, 256)
    assert ((0, 0, 0, 1), (0, 0, 0, 0)) in f4.rows
    assert ((0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 0, 1, 0)) in e8.rows
    rep = verify_table(f4)
    assert rep.ok and rep.n_valid == 64


def test_e8_row_statuses():
    e8 = load_fixture("e8_l2.csv")
    rep = verify_table(e8)
    bad = [row for _, row in rep.failures]
    assert bad == [((1, 0, 1, 1, 0, 0, 1, 0), (0, 0, 0, 1, 0, 0, 1, 0))]
    assert rep.alternatives["bourbaki"] == 255
    assert rep.validating_convention is None


def test_fixture_parsing():
    empty = parse_fixture("type,rank,ell\nA,2,1\n")
    rep = verify_table(empty)
    assert rep.ok and rep.results == []
    fx = TableFixture("A", 2, 1, [((1, 1), (1, 0))])
    assert parse_fixture(fx.to_csv()).rows == fx.rows
    with pytest.raises(ValueError, match="line 3"):
        parse_fixture("type,rank,ell\nA,2,1\n1,1,1\n")
    with pytest.raises(ValueError, match="line 1"):
        parse_fixture("A,2,1\n")
