import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import bounded_posets
from unsharp.errors import CycleError, DuplicateLabel, EmptyInput, NotBounded, UnknownLabel
from unsharp.poset import (
    compare_sets,
    eq1,
    from_order,
    is_antichain,
    lambda_cone,
    leq1,
    leq_all,
    lower_cone,
    max_elements,
    members,
    validate,
)


def diamond():
    return validate(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def test_diamond_bounds():
    p = diamond()
    assert p.n == 4
    assert p.names[p.bottom] == "0" and p.names[p.top] == "1"
    assert not p.le(1, 2) and not p.le(2, 1)


def test_fig1_valid(fig1):
    assert fig1.n == 8
    assert fig1.labels(fig1.up[fig1.index("b")]) == ["b", "d", "e", "f", "1"]


def test_cycle_rejected():
    with pytest.raises(CycleError):
        validate(["x", "y"], [("x", "y"), ("y", "x")])


def test_self_loop_rejected():
    with pytest.raises(CycleError):
        validate(["x"], [("x", "x")])


def test_duplicate_label():
    with pytest.raises(DuplicateLabel):
        validate(["0", "0"], [])


def test_unknown_label_in_cover():
    with pytest.raises(UnknownLabel):
        validate(["0", "1"], [("0", "z")])


@pytest.mark.parametrize(
    "labels, covers",
    [
        (["0", "a", "b"], [("0", "a"), ("0", "b")]),  # no top
        (["a", "b", "1"], [("a", "1"), ("b", "1")]),  # no bottom
        (["a", "b"], []),
    ],
)
def test_not_bounded(labels, covers):
    with pytest.raises(NotBounded):
        validate(labels, covers)


def test_empty_carrier():
    with pytest.raises(EmptyInput):
        validate([], [])


def test_one_element_poset():
    p = validate(["0"], [])
    assert p.bottom == p.top == 0


def test_from_order_rejects_non_transitive():
    m = [[True, True, False], [False, True, True], [False, False, True]]
    with pytest.raises(Exception):
        from_order(["a", "b", "c"], m)


def test_lower_cone_fig1(fig1):
    p = fig1
    assert p.fmt(lower_cone(p, p.index("a"), p.index("b"))) == "0"
    assert p.labels(lower_cone(p, p.index("d"), p.index("e"))) == ["0", "a", "b"]
    for x in range(p.n):
        assert lower_cone(p, x, p.top) == p.down[x]


def test_lambda_cone(fig1, fig3):
    p = fig1
    a, b = p.set_of(["a"]), p.set_of(["b"])
    assert lambda_cone(p, a, b) == lower_cone(p, p.index("a"), p.index("b"))
    A = p.set_of(["a", "c"])
    assert lambda_cone(p, A, p.set_of(["1"])) == p.downset(A)
    q = fig3
    assert q.labels(lambda_cone(q, q.set_of("d"), q.set_of("e"))) == ["0", "a", "b"]
    with pytest.raises(EmptyInput):
        lambda_cone(p, 0, a)


def test_max_elements(fig1):
    p = fig1
    assert p.labels(max_elements(p, p.set_of(["0", "a", "b"]))) == ["a", "b"]
    assert max_elements(p, p.full) == 1 << p.top
    assert max_elements(p, 0) == 0


def test_compare_sets_fig2(fig2):
    p = fig2
    r = compare_sets(p, p.set_of("ae"), p.set_of("abde"))
    assert r.leq1 and not r.leq_all and not r.eq1


def test_compare_trivial(fig1):
    p = fig1
    s = p.set_of("c")
    r = compare_sets(p, s, s)
    assert r.leq_all and r.leq1 and r.eq1
    assert compare_sets(p, 1 << p.bottom, p.set_of("df")).leq_all
    with pytest.raises(EmptyInput):
        compare_sets(p, 0, s)


def test_antichain(fig1):
    p = fig1
    assert is_antichain(p, p.set_of("ac"))
    assert not is_antichain(p, p.set_of(["0", "a"]))
    assert is_antichain(p, p.set_of("a")) and is_antichain(p, 0)


def test_fmt_and_labels(fig1):
    assert fig1.fmt(fig1.set_of("ac")) == "ac"
    assert fig1.fmt(0) == "∅"


def test_hasse_covers_roundtrip(fig1):
    again = validate(fig1.names, [(fig1.names[a], fig1.names[b]) for a, b in fig1.covers()])
    assert again == fig1


@settings(max_examples=60, deadline=None)
@given(bounded_posets())
def test_order_axioms(p):
    m = oracles.order(p)
    assert oracles.is_partial_order(m)
    assert all(m[p.bottom][x] and m[x][p.top] for x in range(p.n))


@settings(max_examples=40, deadline=None)
@given(bounded_posets(max_inner=4), st.data())
def test_set_relations_match_oracle(p, data):
    m = oracles.order(p)
    sets = st.integers(1, p.full)
    A, B, C = data.draw(sets), data.draw(sets), data.draw(sets)
    sA, sB = oracles.to_set(A), oracles.to_set(B)
    assert leq1(p, A, B) == oracles.leq1(m, sA, sB)
    assert leq_all(p, A, B) == oracles.leq_all(m, sA, sB)
    assert oracles.to_set(max_elements(p, A)) == oracles.maxi(m, sA)
    lam = set().union(*(oracles.cone(m, x, y) for x in sA for y in sB))
    assert oracles.to_set(lambda_cone(p, A, B)) == lam
    # quasiorder facts
    assert leq1(p, A, A)
    if leq1(p, A, B) and leq1(p, B, C):
        assert leq1(p, A, C)
    if eq1(p, A, B):
        assert leq1(p, A, B) and leq1(p, B, A)
    if leq_all(p, A, B):
        assert leq1(p, A, B)
    if A & B == A:
        assert leq1(p, A, max_elements(p, B))


@settings(max_examples=40, deadline=None)
@given(bounded_posets(max_inner=4))
def test_leq1_singleton_is_leq(p):
    for A in range(1, p.full + 1):
        for b in range(p.n):
            assert leq1(p, A, 1 << b) == leq_all(p, A, 1 << b)


def test_max_is_antichain_and_dominates(fig2):
    p = fig2
    for A in range(1, p.full + 1):
        M = max_elements(p, A)
        assert is_antichain(p, M)
        assert all(any(p.le(x, y) for y in members(M)) for x in members(A))


def test_pairs_le_consistent(fig3):
    for x, y in itertools.product(range(fig3.n), repeat=2):
        assert fig3.le(x, y) == bool(fig3.down[y] >> x & 1) == bool(fig3.up[x] >> y & 1)
