"""Unsharp negation, implication and conjunction on a finite bounded poset.

Each operator maps its arguments to the antichain of maximal elements
satisfying the defining condition, found by scanning the whole carrier.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from unsharp.errors import EmptyInput
from unsharp.poset import ElementSet, Poset, bit, max_elements, members


def _scan_negation(p: Poset, a: int) -> ElementSet:
    zero = bit(p.bottom)
    da = p.down[a]
    cand = 0
    for x in range(p.n):
        if da & p.down[x] == zero:
            cand |= bit(x)
    return max_elements(p, cand)


def _scan_implication(p: Poset, a: int, b: int) -> ElementSet:
    da, below_b = p.down[a], p.down[b]
    cand = 0
    for x in range(p.n):
        if not da & p.down[x] & ~below_b:
            cand |= bit(x)
    return max_elements(p, cand)


def _scan_conjunction(p: Poset, a: int, b: int) -> ElementSet:
    return max_elements(p, p.down[a] & p.down[b])


class Tables:
    """Element-level operator tables of one poset, built on first access."""

    def __init__(self, p: Poset):
        self.p = p
        self.neg_sets: dict[ElementSet, ElementSet] = {}
        self.memo: dict = {}  # derived data owned by other modules

    @cached_property
    def neg(self) -> tuple[ElementSet, ...]:
        return tuple(_scan_negation(self.p, a) for a in range(self.p.n))

    @cached_property
    def imp(self) -> tuple[tuple[ElementSet, ...], ...]:
        r = range(self.p.n)
        return tuple(tuple(_scan_implication(self.p, a, b) for b in r) for a in r)

    @cached_property
    def conj(self) -> tuple[tuple[ElementSet, ...], ...]:
        r = range(self.p.n)
        return tuple(tuple(_scan_conjunction(self.p, a, b) for b in r) for a in r)


def _nonempty(*sets: ElementSet) -> None:
    for s in sets:
        if not s:
            raise EmptyInput("set argument must be non-empty")


def negation(p: Poset, a: int) -> ElementSet:
    return p.tables.neg[a]


def negation_set(p: Poset, A: ElementSet) -> ElementSet:
    """``A⁰``: maximal x whose lower cone with every member of A is ``{0}``."""
    _nonempty(A)
    return neg_set(p, A)


def neg_set(p: Poset, A: ElementSet) -> ElementSet:
    memo = p.tables.neg_sets
    if A in memo:
        return memo[A]
    memo[A] = v = _scan_neg_set(p, A)
    return v


def _scan_neg_set(p: Poset, A: ElementSet) -> ElementSet:
    zero = bit(p.bottom)
    downs = [p.down[y] for y in members(A)]
    cand = 0
    for x in range(p.n):
        dx = p.down[x]
        if all(dx & dy == zero for dy in downs):
            cand |= bit(x)
    return max_elements(p, cand)


def implication(p: Poset, a: int, b: int) -> ElementSet:
    return p.tables.imp[a][b]


def implication_set(p: Poset, A: ElementSet, B: ElementSet) -> ElementSet:
    """``A → B``: maximal y with ``L(x, y) ≤₁ B`` for every x in A."""
    _nonempty(A, B)
    return imp_set(p, A, B)


def imp_set(p: Poset, A: ElementSet, B: ElementSet) -> ElementSet:
    below_b = p.downset(B)
    downs = [p.down[x] for x in members(A)]
    cand = 0
    for y in range(p.n):
        dy = p.down[y]
        if all(not dx & dy & ~below_b for dx in downs):
            cand |= bit(y)
    return max_elements(p, cand)


def conjunction(p: Poset, a: int, b: int) -> ElementSet:
    return p.tables.conj[a][b]


def conjunction_set(p: Poset, A: ElementSet, B: ElementSet) -> ElementSet:
    """``A ⊙ B``: maximal elements of the union of all pairwise lower cones."""
    _nonempty(A, B)
    return conj_set(p, A, B)


def conj_set(p: Poset, A: ElementSet, B: ElementSet) -> ElementSet:
    cone = 0
    bs = [p.down[y] for y in members(B)]
    for x in members(A):
        dx = p.down[x]
        for dy in bs:
            cone |= dx & dy
    return max_elements(p, cone)


def residuum_detect(p: Poset, a: int, b: int) -> Optional[int]:
    """The relative pseudocomplement ``a*b`` if it exists, else ``None``.

    Independent of the implication tables: collects every x with
    ``L(a, x) ≤ b`` and looks for one that dominates all the others.
    """
    witnesses = [x for x in range(p.n) if all(p.le(z, b) for z in range(p.n) if p.le(z, a) and p.le(z, x))]
    for g in witnesses:
        if all(p.le(x, g) for x in witnesses):
            return g
    return None


def pseudocomplement(p: Poset, a: int) -> Optional[int]:
    return residuum_detect(p, a, p.bottom)


@dataclass(frozen=True, eq=False)
class OperatorTable:
    """Materialized operator: ``entries[a]`` (unary) or ``entries[a][b]`` (binary)."""

    poset: Poset
    op: str
    entries: tuple

    @property
    def arity(self) -> int:
        return 1 if self.op in ("neg", "negneg") else 2

    def __getitem__(self, key):
        if isinstance(key, tuple):
            a, b = key
            return self.entries[a][b]
        return self.entries[key]

    def __eq__(self, other):
        if not isinstance(other, OperatorTable):
            return NotImplemented
        return self.poset == other.poset and self.op == other.op and self.entries == other.entries

    def __hash__(self):
        return hash((self.op, self.entries))

    def replace(self, key, value: ElementSet) -> "OperatorTable":
        """Copy of the table with one entry changed."""
        if isinstance(key, tuple):
            a, b = key
            rows = [list(r) for r in self.entries]
            rows[a][b] = value
            return OperatorTable(self.poset, self.op, tuple(tuple(r) for r in rows))
        vals = list(self.entries)
        vals[key] = value
        return OperatorTable(self.poset, self.op, tuple(vals))


def operator_table(p: Poset, which: str) -> OperatorTable:
    if which == "neg":
        return OperatorTable(p, "neg", p.tables.neg)
    if which == "negneg":
        return OperatorTable(p, "negneg", tuple(neg_set(p, v) for v in p.tables.neg))
    if which == "imp":
        return OperatorTable(p, "imp", p.tables.imp)
    if which == "conj":
        return OperatorTable(p, "conj", p.tables.conj)
    raise ValueError(f"unknown operator {which!r}")
