import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import bounded_posets
from unsharp.connectives import (
    conjunction,
    conjunction_set,
    implication,
    implication_set,
    neg_set,
    negation,
    negation_set,
    operator_table,
    pseudocomplement,
    residuum_detect,
)
from unsharp.errors import EmptyInput
from unsharp.poset import validate

FIG3_IMP = """
1  1  1  1  1  1  1
bc 1  bc bc 1  1  1
ac ac 1  ac 1  1  1
de de de 1  de de 1
c  ac bc c  1  ce 1
c  ac bc c  cd 1  1
0  a  b  c  d  e  1
"""

FIG3_CONJ = """
0 0 0 0 0  0  0
0 a 0 0 a  a  a
0 0 b 0 b  b  b
0 0 0 c 0  0  c
0 a b 0 d  ab d
0 a b 0 ab e  e
0 a b c d  e  1
"""

FIG4_IMP = """
1 1 1 1 1 1 1
b 1 b 1 1 1 1
c c 1 c 1 1 1
b e b 1 1 e 1
0 a b c 1 e 1
0 c b c d 1 1
0 a b c d e 1
"""


def grid(text):
    return [row.split() for row in text.strip().splitlines()]


def rendered(p, table):
    return [[p.fmt(v) for v in row] for row in table.entries]


def test_fig1_negation(fig1):
    p = fig1
    assert [p.fmt(v) for v in operator_table(p, "neg").entries] == "1 f ac d c 0 a 0".split()
    assert [p.fmt(v) for v in operator_table(p, "negneg").entries] == "0 a b c d 1 f 1".split()


def test_fig1_triple_negation_at_e(fig1):
    p = fig1
    e = p.index("e")
    e0 = negation(p, e)
    assert p.fmt(e0) == "0"
    assert p.fmt(neg_set(p, e0)) == "1"
    assert neg_set(p, neg_set(p, e0)) == e0


def test_fig2_negation(fig2):
    p = fig2
    assert [p.fmt(v) for v in operator_table(p, "neg").entries] == "1 ef acde abde abce af ae 0".split()
    assert [p.fmt(v) for v in operator_table(p, "negneg").entries] == list(p.names)


def test_fig3_tables(fig3):
    assert rendered(fig3, operator_table(fig3, "imp")) == grid(FIG3_IMP)
    assert rendered(fig3, operator_table(fig3, "conj")) == grid(FIG3_CONJ)


def test_fig4_table(fig4):
    assert rendered(fig4, operator_table(fig4, "imp")) == grid(FIG4_IMP)


def test_named_entries(fig3, fig4):
    q = fig3
    i = q.index
    assert q.fmt(implication(q, i("a"), i("b"))) == "bc"
    assert q.fmt(implication(q, i("c"), i("0"))) == "de"
    assert q.fmt(implication(q, i("e"), i("d"))) == "cd"
    assert q.fmt(conjunction(q, i("d"), i("e"))) == q.fmt(conjunction(q, i("e"), i("d"))) == "ab"
    assert q.fmt(conjunction(q, i("d"), i("d"))) == "d"
    r = fig4
    assert r.fmt(implication(r, r.index("c"), r.index("a"))) == "e"
    assert r.fmt(implication(r, r.index("e"), r.index("a"))) == "c"
    assert r.fmt(implication(r, r.index("d"), r.index("0"))) == "0"


def test_set_level_values(fig1, fig4):
    p = fig1
    assert p.fmt(negation_set(p, p.set_of("b"))) == "ac"
    m = oracles.order(p)
    A = p.set_of("ac")
    assert oracles.to_set(negation_set(p, A)) == oracles.neg_set(m, p.bottom, oracles.to_set(A))
    q = fig4
    assert q.fmt(implication_set(q, q.set_of("de1"), q.set_of("1"))) == "1"


def test_empty_arguments_rejected(fig1):
    a = fig1.set_of("a")
    with pytest.raises(EmptyInput):
        negation_set(fig1, 0)
    with pytest.raises(EmptyInput):
        implication_set(fig1, a, 0)
    with pytest.raises(EmptyInput):
        conjunction_set(fig1, 0, a)


def test_chain_negation():
    p = validate(["0", "a", "1"], [("0", "a"), ("a", "1")])
    assert [p.fmt(v) for v in p.tables.neg] == ["1", "0", "0"]


def test_one_element_poset_operators():
    p = validate(["0"], [])
    assert negation(p, 0) == implication(p, 0, 0) == conjunction(p, 0, 0) == 1


def test_residuum_fig3_absent(fig3):
    assert residuum_detect(fig3, fig3.index("a"), fig3.index("b")) is None


def test_pseudocomplement_on_chain():
    p = validate(["0", "a", "1"], [("0", "a"), ("a", "1")])
    assert pseudocomplement(p, p.index("a")) == p.bottom
    assert pseudocomplement(p, p.bottom) == p.top


@settings(max_examples=50, deadline=None)
@given(bounded_posets(max_inner=4))
def test_element_tables_match_oracle(p):
    m = oracles.order(p)
    for a in range(p.n):
        assert oracles.to_set(negation(p, a)) == oracles.neg(m, p.bottom, a)
    for a, b in itertools.product(range(p.n), repeat=2):
        assert oracles.to_set(implication(p, a, b)) == oracles.imp(m, a, b)
        assert oracles.to_set(conjunction(p, a, b)) == oracles.conj(m, a, b)


@settings(max_examples=50, deadline=None)
@given(bounded_posets(max_inner=4), st.data())
def test_set_operators_match_oracle(p, data):
    m = oracles.order(p)
    A = data.draw(st.integers(1, p.full))
    B = data.draw(st.integers(1, p.full))
    sA, sB = oracles.to_set(A), oracles.to_set(B)
    assert oracles.to_set(negation_set(p, A)) == oracles.neg_set(m, p.bottom, sA)
    assert oracles.to_set(implication_set(p, A, B)) == oracles.imp_set(m, sA, sB)
    assert oracles.to_set(conjunction_set(p, A, B)) == oracles.conj_set(m, sA, sB)


@settings(max_examples=50, deadline=None)
@given(bounded_posets(max_inner=4))
def test_singletons_agree_with_elements(p):
    for a in range(p.n):
        assert negation_set(p, 1 << a) == negation(p, a)
        for b in range(p.n):
            assert implication_set(p, 1 << a, 1 << b) == implication(p, a, b)
            assert conjunction_set(p, 1 << a, 1 << b) == conjunction(p, a, b)


@settings(max_examples=50, deadline=None)
@given(bounded_posets(max_inner=4))
def test_residuum_collapses_implication(p):
    for a, b in itertools.product(range(p.n), repeat=2):
        g = residuum_detect(p, a, b)
        if g is not None:
            assert implication(p, a, b) == 1 << g
    for a in range(p.n):
        g = pseudocomplement(p, a)
        if g is not None:
            assert negation(p, a) == 1 << g


def test_operator_table_replace(fig1):
    t = operator_table(fig1, "neg")
    u = t.replace(1, fig1.set_of("e"))
    assert u != t and u[1] == fig1.set_of("e") and t[1] == fig1.set_of("f")
    w = operator_table(fig1, "imp")
    assert w.replace((0, 0), 1)[0, 0] == 1 and w.arity == 2 and t.arity == 1
    with pytest.raises(ValueError):
        operator_table(fig1, "xor")
