"""Executable law checkers for the unsharp connectives.

A law is a single-instance predicate plus a quantifier domain.  The runner
enumerates the domain (exhaustively when small, seeded sample otherwise) and
collects instances where the predicate is false.  Every counterexample can be
re-evaluated with :func:`recheck`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from unsharp.connectives import OperatorTable, conj_set, imp_set, neg_set
from unsharp.errors import MalformedTable
from unsharp.poset import (
    ElementSet,
    Poset,
    bit,
    eq1,
    is_antichain,
    lambda_raw,
    leq1,
    leq_all,
    max_elements,
    members,
)

SUBSET_BUDGET = 256
ELEMENT_EXHAUSTIVE_N = 10
SAMPLES = 1000

# domain codes: "e" element, "s" non-empty subset; e.g. "se2" = one subset, two elements
Domain = str


@dataclass(frozen=True)
class Law:
    id: str
    title: str
    domain: Domain
    predicate: Callable = field(repr=False, compare=False)
    group: str = ""
    holds: bool = True  # False marks a must-fail probe


@dataclass(frozen=True)
class Counterexample:
    witness: tuple
    lhs: object
    rhs: object
    poset_id: Optional[str] = None


@dataclass(frozen=True)
class LawReport:
    law: str
    passed: bool
    expected: bool = True
    counterexamples: tuple = ()
    instances: int = 0

    @property
    def counterexample(self) -> Optional[Counterexample]:
        return self.counterexamples[0] if self.counterexamples else None

    @property
    def as_expected(self) -> bool:
        return self.passed == self.expected


LAWS: dict[str, Law] = {}


def law(id: str, domain: Domain, group: str, title: str, holds: bool = True):
    def register(fn):
        LAWS[id] = Law(id, title, domain, fn, group, holds)
        return fn

    return register


def _one(p: Poset) -> ElementSet:
    return bit(p.top)


def _zero(p: Poset) -> ElementSet:
    return bit(p.bottom)


def _imp(p: Poset, a: int, b: int) -> ElementSet:
    return p.tables.imp[a][b]


# -- negation ------------------------------------------------------------------


@law("neg-antichain", "s1", "negation", "A⁰ is an antichain")
def _(p, A):
    v = neg_set(p, A)
    return is_antichain(p, v), v, True


@law("neg-bounds", "", "negation", "0⁰ = 1 and 1⁰ = 0")
def _(p):
    lhs = (p.tables.neg[p.bottom], p.tables.neg[p.top])
    rhs = (_one(p), _zero(p))
    return lhs == rhs, lhs, rhs


@law("neg-disjoint", "s1", "negation", "L(x, y) = 0 for x in A, y in A⁰")
def _(p, A):
    v = neg_set(p, A)
    zero = _zero(p)
    ok = all(p.down[x] & p.down[y] == zero for x in members(A) for y in members(v))
    return ok, v, None


@law("neg-antitone", "s2", "negation", "A ≤₁ B implies B⁰ ≤₁ A⁰")
def _(p, A, B):
    if not leq1(p, A, B):
        return True, None, None
    na, nb = neg_set(p, A), neg_set(p, B)
    return leq1(p, nb, na), nb, na


@law("neg-rigid", "s2", "negation", "A⁰ =₁ B⁰ implies A⁰ = B⁰")
def _(p, A, B):
    na, nb = neg_set(p, A), neg_set(p, B)
    return (not eq1(p, na, nb)) or na == nb, na, nb


@law("neg-rigid-element", "se1", "negation", "A⁰ =₁ b implies A⁰ = b")
def _(p, A, b):
    na = neg_set(p, A)
    return (not eq1(p, na, bit(b))) or na == bit(b), na, bit(b)


@law("neg-double", "s1", "negation", "A ≤₁ A⁰⁰ and A⁰⁰⁰ = A⁰")
def _(p, A):
    n1 = neg_set(p, A)
    n2 = neg_set(p, n1)
    n3 = neg_set(p, n2)
    return leq1(p, A, n2) and n3 == n1, (n2, n3), n1


@law("neg-cone", "e2", "negation", "Λ(a, (L(a,b))⁰) =₁ Λ(a, b⁰)")
def _(p, a, b):
    lhs = lambda_raw(p, bit(a), neg_set(p, p.down[a] & p.down[b]))
    rhs = lambda_raw(p, bit(a), p.tables.neg[b])
    return eq1(p, lhs, rhs), lhs, rhs


@law("neg-antitone-leq", "e2", "probes", "a < b implies b⁰ ≤ a⁰ (≤ in place of ≤₁)", holds=False)
def _(p, a, b):
    if a == b or not p.le(a, b):
        return True, None, None
    na, nb = p.tables.neg[a], p.tables.neg[b]
    return leq_all(p, nb, na), nb, na


# -- implication and conjunction ---------------------------------------------------


@law("imp-antichain", "e2", "implication", "a → b is an antichain")
def _(p, a, b):
    v = _imp(p, a, b)
    return is_antichain(p, v), v, True


@law("imp-upper", "e2", "implication", "b ≤₁ a → b")
def _(p, a, b):
    v = _imp(p, a, b)
    return leq1(p, bit(b), v), bit(b), v


@law("imp-double", "e2", "implication", "a ≤₁ (a → b) → b")
def _(p, a, b):
    v = imp_set(p, _imp(p, a, b), bit(b))
    return leq1(p, bit(a), v), bit(a), v


@law("imp-monotone", "e3", "implication", "a ≤ b implies c → a ≤₁ c → b and b → c ≤₁ a → c")
def _(p, a, b, c):
    if not p.le(a, b):
        return True, None, None
    ok = leq1(p, _imp(p, c, a), _imp(p, c, b)) and leq1(p, _imp(p, b, c), _imp(p, a, c))
    return ok, (_imp(p, c, a), _imp(p, b, c)), (_imp(p, c, b), _imp(p, a, c))


@law("imp-cone", "e2", "implication", "Λ(a, a → b) = L(a, b)")
def _(p, a, b):
    lhs = lambda_raw(p, bit(a), _imp(p, a, b))
    rhs = p.down[a] & p.down[b]
    return lhs == rhs, lhs, rhs


@law("imp-cone-consequent", "e2", "implication", "Λ(a → b, b) =₁ b")
def _(p, a, b):
    lhs = lambda_raw(p, _imp(p, a, b), bit(b))
    return eq1(p, lhs, bit(b)), lhs, bit(b)


@law("imp-top", "e1", "implication", "1 → a = a")
def _(p, a):
    v = _imp(p, p.top, a)
    return v == bit(a), v, bit(a)


@law("imp-top-set", "s1", "implication", "1 → A = Max A (= A for antichains)")
def _(p, A):
    v = imp_set(p, _one(p), A)
    m = max_elements(p, A)
    return v == m, v, m


@law("imp-one-element", "e2", "implication", "a → b = 1 iff a ≤ b")
def _(p, a, b):
    lhs = _imp(p, a, b) == _one(p)
    rhs = p.le(a, b)
    return lhs == rhs, lhs, rhs


@law("imp-one", "s2", "implication", "A → B = 1 iff A ≤₁ B")
def _(p, A, B):
    lhs = imp_set(p, A, B) == _one(p)
    rhs = leq1(p, A, B)
    return lhs == rhs, lhs, rhs


@law("adjoint-set", "se2", "implication", "A ⊙ b ≤ c iff A ≤₁ b → c")
def _(p, A, b, c):
    lhs = leq_all(p, conj_set(p, A, bit(b)), bit(c))
    rhs = leq1(p, A, _imp(p, b, c))
    return lhs == rhs, lhs, rhs


@law("imp-conj", "e2", "implication", "a ⊙ (a → b) = a ⊙ b")
def _(p, a, b):
    lhs = conj_set(p, bit(a), _imp(p, a, b))
    rhs = p.tables.conj[a][b]
    return lhs == rhs, lhs, rhs


@law("adjoint", "e3", "connectives", "x ⊙ y ≤ z iff x ≤₁ y → z")
def _(p, x, y, z):
    lhs = leq_all(p, p.tables.conj[x][y], bit(z))
    rhs = leq1(p, bit(x), _imp(p, y, z))
    return lhs == rhs, lhs, rhs


@law("modus-ponens", "e2", "connectives", "(x → y) ⊙ x ≤₁ y")
def _(p, x, y):
    v = conj_set(p, _imp(p, x, y), bit(x))
    return leq1(p, v, bit(y)), v, bit(y)


@law("imp-zero-neg", "e1", "connectives", "a → 0 = a⁰")
def _(p, a):
    lhs, rhs = _imp(p, a, p.bottom), p.tables.neg[a]
    return lhs == rhs, lhs, rhs


@law("conj-commutative", "e2", "connectives", "a ⊙ b = b ⊙ a")
def _(p, a, b):
    lhs, rhs = p.tables.conj[a][b], p.tables.conj[b][a]
    return lhs == rhs, lhs, rhs


@law("conj-unit", "e1", "connectives", "a ⊙ 1 = 1 ⊙ a = a")
def _(p, a):
    lhs = (p.tables.conj[a][p.top], p.tables.conj[p.top][a])
    return lhs == (bit(a), bit(a)), lhs, bit(a)


def term_t(p: Poset, a: int, b: int) -> ElementSet:
    """``t(a, b) = (a → b) ⊙ (b → a)``."""
    return conj_set(p, _imp(p, a, b), _imp(p, b, a))


@law("term-t", "e2", "term", "t(a, b) = 1 iff a = b")
def _(p, a, b):
    lhs = term_t(p, a, b) == _one(p)
    return lhs == (a == b), lhs, a == b


GROUPS = ("negation", "implication", "connectives", "term", "probes")


def select(names: Optional[Iterable[str]] = None) -> list[Law]:
    """Resolve law ids and group names; the default is every law that must hold."""
    if names is None:
        return [lw for lw in LAWS.values() if lw.holds]
    out: list[Law] = []
    for name in names:
        if name == "all":
            picked = [lw for lw in LAWS.values() if lw.holds]
        elif name == "everything":
            picked = list(LAWS.values())
        elif name in GROUPS:
            picked = [lw for lw in LAWS.values() if lw.group == name]
        elif name in LAWS:
            picked = [LAWS[name]]
        else:
            raise KeyError(f"unknown law or group {name!r}")
        out.extend(lw for lw in picked if lw not in out)
    return out


# -- quantifier domains --------------------------------------------------------------


class Domains:
    """Enumerates law arguments for one poset under a subset budget."""

    def __init__(self, p: Poset, subset_budget: int = SUBSET_BUDGET, samples: int = SAMPLES, seed: int = 0):
        self.p = p
        self.samples = samples
        self.seed = seed
        self.exhaustive_sets = 2 ** p.n <= subset_budget
        self.exhaustive_elems = p.n <= ELEMENT_EXHAUSTIVE_N

    def _rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def _random_set(self, rng: random.Random) -> ElementSet:
        n = self.p.n
        if rng.random() < 0.5:
            return rng.randrange(1, 1 << n)
        k = rng.randint(1, min(3, n))
        return sum(1 << i for i in rng.sample(range(n), k))

    def subsets(self) -> list[ElementSet]:
        if self.exhaustive_sets:
            return list(range(1, 1 << self.p.n))
        rng = self._rng("s")
        return [self._random_set(rng) for _ in range(self.samples)]

    def instances(self, domain: Domain) -> Iterator[tuple]:
        n = self.p.n
        elems = range(n)
        if domain == "":
            yield ()
        elif domain[0] == "e":
            k = int(domain[1:])
            if self.exhaustive_elems:
                yield from itertools.product(elems, repeat=k)
            else:
                rng = self._rng(domain)
                for _ in range(self.samples):
                    yield tuple(rng.randrange(n) for _ in range(k))
        elif domain == "s1":
            for A in self.subsets():
                yield (A,)
        elif domain == "s2":
            if self.exhaustive_sets:
                subs = self.subsets()
                yield from itertools.product(subs, subs)
            else:
                rng = self._rng(domain)
                for i in range(self.samples):
                    A = self._random_set(rng)
                    B = self._random_set(rng)
                    # every third pair is forced into A ≤₁ B so implications are exercised
                    if i % 3 == 1:
                        B |= A
                    elif i % 3 == 2:
                        B = self.p.downset(B) | A
                    yield A, B
        elif domain.startswith("se"):
            k = int(domain[2:])
            if self.exhaustive_sets:
                for A in self.subsets():
                    for rest in itertools.product(elems, repeat=k):
                        yield (A, *rest)
            else:
                rng = self._rng(domain)
                for _ in range(self.samples):
                    yield (self._random_set(rng), *(rng.randrange(n) for _ in range(k)))
        else:
            raise ValueError(f"unknown domain {domain!r}")


def check_law(
    p: Poset,
    lw: Law,
    domains: Optional[Domains] = None,
    max_witnesses: int = 1,
    poset_id: Optional[str] = None,
) -> LawReport:
    domains = domains or Domains(p)
    found = []
    count = 0
    for args in domains.instances(lw.domain):
        count += 1
        ok, lhs, rhs = lw.predicate(p, *args)
        if not ok:
            found.append(Counterexample(tuple(args), lhs, rhs, poset_id))
            if len(found) >= max_witnesses:
                break
    return LawReport(lw.id, not found, lw.holds, tuple(found), count)


def run_law_suite(
    p: Poset,
    laws: Optional[Iterable[str]] = None,
    subset_budget: int = SUBSET_BUDGET,
    seed: int = 0,
    max_witnesses: int = 1,
    poset_id: Optional[str] = None,
) -> list[LawReport]:
    """Check the selected laws on ``p``; reports come back in law-id order."""
    domains = Domains(p, subset_budget=subset_budget, seed=seed)
    reports = [check_law(p, lw, domains, max_witnesses, poset_id) for lw in select(laws)]
    return sorted(reports, key=lambda r: r.law)


def recheck(p: Poset, law_id: str, cx: Counterexample) -> bool:
    """Re-evaluate a counterexample; True when the law instance still fails."""
    ok, _, _ = LAWS[law_id].predicate(p, *cx.witness)
    return not ok


def describe_value(p: Poset, v) -> object:
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, tuple):
        return [describe_value(p, x) for x in v]
    return p.fmt(v)


def describe_witness(p: Poset, lw: Law, witness: Sequence) -> list[str]:
    kinds = [] if not lw.domain else (
        ["e"] * int(lw.domain[1:]) if lw.domain[0] == "e"
        else ["s"] * int(lw.domain[1:]) if lw.domain[:2] in ("s1", "s2")
        else ["s"] + ["e"] * int(lw.domain[2:])
    )
    return [p.names[w] if k == "e" else p.fmt(w) for k, w in zip(kinds, witness)]


def report_json(p: Poset, r: LawReport) -> dict:
    out = {"law": r.law, "pass": r.passed}
    if not r.expected:
        out["expected"] = "fail"
    if r.counterexamples:
        lw = LAWS.get(r.law)
        out["witness"] = [
            {
                "args": describe_witness(p, lw, cx.witness) if lw else list(cx.witness),
                "lhs": describe_value(p, cx.lhs),
                "rhs": describe_value(p, cx.rhs),
            }
            for cx in r.counterexamples
        ]
    return out


# -- characterizations ------------------------------------------------------------------


def _validate_candidate(p: Poset, table: OperatorTable, arity: int) -> None:
    if table.poset != p:
        raise MalformedTable("table belongs to a different poset")
    rows = table.entries if arity == 1 else [v for row in table.entries for v in row]
    shape_ok = len(table.entries) == p.n and (arity == 1 or all(len(r) == p.n for r in table.entries))
    if not shape_ok:
        raise MalformedTable(f"expected {p.n} entries per axis")
    for v in rows:
        if not isinstance(v, int) or v <= 0 or v & ~p.full:
            raise MalformedTable(f"entry {v!r} is not a non-empty subset of the carrier")


def extend_negation(p: Poset, candidate: OperatorTable, S: ElementSet) -> ElementSet:
    """Set-level negation induced by a pointwise candidate.

    ``S⁰ = Max{z | z ≤₁ w⁰ for every w in S}``; for the canonical table this
    coincides with the direct set definition.
    """
    allowed = p.full
    for w in members(S):
        allowed &= p.downset(candidate.entries[w])
    return max_elements(p, allowed)


def check_negation_characterization(
    p: Poset, candidate: OperatorTable, set_negation: str = "canonical"
) -> tuple[bool, list[LawReport]]:
    """Check (P1)-(P3) for a candidate negation table.

    The lower cone ``L(x, y)`` inside (P3) is a set, not an element.  With
    ``set_negation="canonical"`` it is negated by the poset's own set-level
    negation; ``"pointwise"`` derives it from the candidate instead (see
    :func:`extend_negation`), which leaves the entry at 0 unconstrained.
    """
    _validate_candidate(p, candidate, 1)
    if set_negation == "canonical":
        negate = lambda S: neg_set(p, S)  # noqa: E731
    elif set_negation == "pointwise":
        negate = lambda S: extend_negation(p, candidate, S)  # noqa: E731
    else:
        raise ValueError(f"unknown set_negation mode {set_negation!r}")
    zero = _zero(p)
    neg = candidate.entries
    r = range(p.n)

    p1 = [Counterexample((x,), neg[x], False) for x in r if not is_antichain(p, neg[x])]
    p2 = [
        Counterexample((x, y), p.down[x] & p.down[y], zero)
        for x in r
        for y in members(neg[x])
        if p.down[x] & p.down[y] != zero
    ]
    p3 = []
    for x, y in itertools.product(r, r):
        lhs = lambda_raw(p, bit(x), negate(p.down[x] & p.down[y]))
        rhs = lambda_raw(p, bit(x), neg[y])
        if not eq1(p, lhs, rhs):
            p3.append(Counterexample((x, y), lhs, rhs))
    reports = [
        LawReport(cid, not cxs, True, tuple(cxs), n)
        for cid, cxs, n in (("P1", p1, p.n), ("P2", p2, p.n), ("P3", p3, p.n * p.n))
    ]
    return all(rep.passed for rep in reports), reports


def check_implication_characterization(p: Poset, candidate: OperatorTable) -> tuple[bool, list[LawReport]]:
    _validate_candidate(p, candidate, 2)
    imp = candidate.entries
    r = range(p.n)
    r1 = [Counterexample((x, y), imp[x][y], False) for x in r for y in r if not is_antichain(p, imp[x][y])]
    r2 = [
        Counterexample((x, y, z), bit(z), imp[x][y])
        for x, y, z in itertools.product(r, r, r)
        if not p.down[x] & p.down[z] & ~p.down[y] and not leq1(p, bit(z), imp[x][y])
    ]
    r3 = [
        Counterexample((x, y), lambda_raw(p, bit(x), imp[x][y]), p.down[x] & p.down[y])
        for x in r
        for y in r
        if lambda_raw(p, bit(x), imp[x][y]) != p.down[x] & p.down[y]
    ]
    reports = [
        LawReport(cid, not cxs, True, tuple(cxs), n)
        for cid, cxs, n in (("R1", r1, p.n ** 2), ("R2", r2, p.n ** 3), ("R3", r3, p.n ** 2))
    ]
    return all(rep.passed for rep in reports), reports
