"""Finite bounded posets and the set-level order calculus on them.

Subsets of the carrier are plain ``int`` bit masks: bit ``i`` is set when the
element with index ``i`` (input order) is a member.  Every operator in the
package consumes and produces such masks, so a single element ``x`` and the
singleton ``{x}`` differ only by ``1 << x``.
"""
from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from unsharp.errors import CycleError, DuplicateLabel, EmptyInput, NotBounded, UnknownLabel

ElementSet = int


def bit(x: int) -> ElementSet:
    return 1 << x


def members(mask: ElementSet) -> list[int]:
    """Indices of the elements in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> ElementSet:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite bounded poset.

    ``down[x]`` is the mask of all elements below ``x`` (inclusive) and
    ``up[x]`` the mask of all elements above it.  Instances are immutable;
    derived operator tables are cached on first use.
    """

    names: tuple[str, ...]
    down: tuple[int, ...]
    up: tuple[int, ...]
    bottom: int
    top: int
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> ElementSet:
        return (1 << self.n) - 1

    @property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(self.up[x] >> y & 1) for y in range(self.n)) for x in range(self.n))

    def le(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.up[x] >> y & 1)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def set_of(self, labels: Iterable[str]) -> ElementSet:
        return mask_of(self.index(lbl) for lbl in labels)

    def labels(self, mask: ElementSet) -> list[str]:
        return [self.names[i] for i in members(mask)]

    def fmt(self, mask: ElementSet) -> str:
        """Concatenated member labels in element order (``{a, c}`` -> ``"ac"``)."""
        if not mask:
            return "∅"
        return "".join(self.labels(mask))

    def downset(self, mask: ElementSet) -> ElementSet:
        """Union of the principal down-sets of the members of ``mask``."""
        out = 0
        for x in members(mask):
            out |= self.down[x]
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(lower, upper)`` in element order."""
        out = []
        for x in range(self.n):
            above = self.up[x] & ~bit(x)
            for y in members(above):
                between = above & self.down[y] & ~bit(y)
                if not between:
                    out.append((x, y))
        return out

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.names == other.names and self.down == other.down

    def __hash__(self):
        return hash((self.names, self.down))

    @cached_property
    def tables(self):
        from unsharp.connectives import Tables

        return Tables(self)

    def __repr__(self):
        return f"Poset(n={self.n}, names={''.join(self.names) if all(len(s) == 1 for s in self.names) else self.names})"


def _finish(names: Sequence[str], up: list[int]) -> Poset:
    n = len(names)
    down = [0] * n
    for x in range(n):
        for y in members(up[x]):
            down[y] |= bit(x)
    full = (1 << n) - 1
    bottoms = [x for x in range(n) if up[x] == full]
    tops = [x for x in range(n) if down[x] == full]
    if not bottoms:
        raise NotBounded("no least element")
    if not tops:
        raise NotBounded("no greatest element")
    return Poset(tuple(names), tuple(down), tuple(up), bottoms[0], tops[0])


def _check_labels(labels: Sequence[str]) -> None:
    seen = set()
    for lbl in labels:
        if lbl in seen:
            raise DuplicateLabel(f"duplicate element {lbl!r}")
        seen.add(lbl)
    if not labels:
        raise EmptyInput("a poset needs at least one element")


def validate(labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from element labels and Hasse cover pairs ``(lower, upper)``.

    The order is the reflexive-transitive closure of the covers.  Raises
    :class:`CycleError` if the covers contain a cycle, :class:`NotBounded`
    if there is no least or no greatest element.
    """
    labels = list(labels)
    _check_labels(labels)
    idx = {lbl: i for i, lbl in enumerate(labels)}
    succ: list[set[int]] = [set() for _ in labels]
    for lo, hi in covers:
        for lbl in (lo, hi):
            if lbl not in idx:
                raise UnknownLabel(f"cover mentions unknown element {lbl!r}")
        if lo == hi:
            raise CycleError(f"cover {lo!r} < {hi!r} is a loop")
        succ[idx[lo]].add(idx[hi])

    sorter = graphlib.TopologicalSorter({x: succ[x] for x in range(len(labels))})
    try:
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        cyc = [labels[i] for i in exc.args[1]]
        raise CycleError("cover relation has a cycle: " + " < ".join(reversed(cyc))) from None

    # static_order lists successors first, so every up-set is ready when needed
    up = [0] * len(labels)
    for x in order:
        m = bit(x)
        for y in succ[x]:
            m |= up[y]
        up[x] = m
    return _finish(labels, up)


def from_order(labels: Sequence[str], leq: Sequence[Sequence[bool]]) -> Poset:
    """Build a poset from a full order matrix, checking the partial-order axioms."""
    labels = list(labels)
    _check_labels(labels)
    n = len(labels)
    up = [mask_of(y for y in range(n) if leq[x][y]) for x in range(n)]
    for x in range(n):
        if not up[x] >> x & 1:
            raise ValueError(f"order is not reflexive at {labels[x]!r}")
        for y in members(up[x]):
            if y != x and up[y] >> x & 1:
                raise CycleError(f"{labels[x]!r} and {labels[y]!r} are mutually below each other")
            if up[y] & ~up[x]:
                raise ValueError(f"order is not transitive through {labels[y]!r}")
    return _finish(labels, up)


# -- set-level calculus ---------------------------------------------------------


@dataclass(frozen=True)
class CompareResult:
    leq_all: bool
    leq1: bool
    eq1: bool


def lower_cone(p: Poset, a: int, b: int) -> ElementSet:
    return p.down[a] & p.down[b]


def _nonempty(*sets: ElementSet) -> None:
    for s in sets:
        if not s:
            raise EmptyInput("set argument must be non-empty")


def lambda_cone(p: Poset, A: ElementSet, B: ElementSet) -> ElementSet:
    """Union of the lower cones ``L(x, y)`` over ``x in A``, ``y in B``."""
    _nonempty(A, B)
    # L(x, y) ranges over intersections of principal down-sets
    return lambda_raw(p, A, B)


def lambda_raw(p: Poset, A: ElementSet, B: ElementSet) -> ElementSet:
    out = 0
    bs = [p.down[y] for y in members(B)]
    for x in members(A):
        dx = p.down[x]
        for dy in bs:
            out |= dx & dy
    return out


def max_elements(p: Poset, A: ElementSet) -> ElementSet:
    out = 0
    for x in members(A):
        if p.up[x] & A == bit(x):
            out |= bit(x)
    return out


def leq_all(p: Poset, A: ElementSet, B: ElementSet) -> bool:
    """``A <= B``: every member of A lies below every member of B."""
    for y in members(B):
        if A & ~p.down[y]:
            return False
    return True


def leq1(p: Poset, A: ElementSet, B: ElementSet) -> bool:
    """``A <=_1 B``: every member of A lies below some member of B."""
    return not A & ~p.downset(B)


def eq1(p: Poset, A: ElementSet, B: ElementSet) -> bool:
    return leq1(p, A, B) and leq1(p, B, A)


def compare_sets(p: Poset, A: ElementSet, B: ElementSet) -> CompareResult:
    _nonempty(A, B)
    le1 = leq1(p, A, B)
    return CompareResult(leq_all(p, A, B), le1, le1 and leq1(p, B, A))


def is_antichain(p: Poset, A: ElementSet) -> bool:
    return all(p.up[x] & A == bit(x) for x in members(A))
