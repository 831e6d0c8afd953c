"""Deductive systems, induced relations and substitution-closed partitions.

Families of subsets are finitized to a *universe*: the implication images
``x → y``, closed under set-level implication up to a small depth.  Sets are
bit masks as everywhere else; a deductive system is a ``frozenset`` of masks.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from unsharp.connectives import conj_set, imp_set
from unsharp.errors import UniverseIncomplete, UniverseTooLarge
from unsharp.laws import Counterexample, LawReport
from unsharp.poset import ElementSet, Poset, bit, members

DeductiveSystem = frozenset  # of ElementSet masks

MAX_SEARCH_UNIVERSE = 20
EXHAUSTIVE_PARTITION_SIZE = 8


def set_key(mask: ElementSet) -> tuple:
    """Canonical family order: by size, then lexicographic on member indices."""
    m = members(mask)
    return len(m), m


@dataclass(frozen=True)
class SetFamily:
    sets: tuple[ElementSet, ...]

    @classmethod
    def of(cls, sets: Iterable[ElementSet]) -> "SetFamily":
        return cls(tuple(sorted(set(sets), key=set_key)))

    def __contains__(self, mask) -> bool:
        return mask in self._index

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def index(self, mask: ElementSet) -> int:
        return self._index[mask]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.sets)}
            object.__setattr__(self, "_idx", idx)
        return idx


def _imp(p: Poset, a: int, b: int) -> ElementSet:
    return p.tables.imp[a][b]


def _imp_images(p: Poset) -> set[ElementSet]:
    return {v for row in p.tables.imp for v in row}


def relevant_universe(p: Poset, depth: int = 2) -> SetFamily:
    """Singletons and ``x → y`` images, closed ``depth - 1`` times under ``A → B``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    level = _imp_images(p) | {bit(x) for x in range(p.n)}
    for _ in range(depth - 1):
        cur = sorted(level)
        level = level | {imp_set(p, A, B) for A in cur for B in cur}
    return SetFamily.of(level)


# -- deductive systems -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple  # element indices
    missing: ElementSet


@dataclass(frozen=True)
class DSVerdict:
    ok: bool
    violations: tuple[Violation, ...] = ()


def verify_deductive_system(p: Poset, D: Iterable[ElementSet], first_only: bool = True) -> DSVerdict:
    """Check the three closure conditions of a deductive system by brute force.

    Conditions (ii) and (iii) are quantified over carrier elements; compound
    implications are computed at set level and tested by set equality.
    """
    D = frozenset(D)
    r = range(p.n)
    out: list[Violation] = []
    one = bit(p.top)
    if one not in D:
        out.append(Violation("i", (), one))

    memo: dict[tuple[int, int], ElementSet] = {}

    def imp2(A, B):
        k = (A, B)
        if k not in memo:
            memo[k] = imp_set(p, A, B)
        return memo[k]

    def add(v: Violation) -> bool:
        out.append(v)
        return first_only

    done = False
    for x, y in itertools.product(r, r):
        A = _imp(p, x, y)
        if A not in D:
            continue
        for z, u in itertools.product(r, r):
            C = _imp(p, z, u)
            if C not in D and imp2(A, C) in D and add(Violation("ii", (x, y, z, u), C)):
                done = True
                break
        if done:
            break

    done = False
    for x, y in itertools.product(r, r):
        if _imp(p, x, y) not in D or _imp(p, y, x) not in D:
            continue
        for z in r:
            for S in (imp2(_imp(p, z, x), _imp(p, z, y)), imp2(_imp(p, x, z), _imp(p, y, z))):
                if S not in D and add(Violation("iii", (x, y, z), S)):
                    done = True
                    break
            if done:
                break
        if done:
            break
    return DSVerdict(not out, tuple(out))


def implication_membership(p: Poset, D: Iterable[ElementSet]) -> tuple[frozenset, frozenset]:
    """Pairs ``(x, y)`` with ``x → y ∈ D``, and pairs with both ``x → y, y → x ∈ D``."""
    D = frozenset(D)
    r = range(p.n)
    one_way = frozenset((x, y) for x in r for y in r if _imp(p, x, y) in D)
    both = frozenset((x, y) for x, y in one_way if (y, x) in one_way)
    return one_way, both


def _horn_rules(p: Poset, universe: SetFamily) -> list[tuple[frozenset, int]]:
    """Closure rules ``premises ⊆ D ⟹ conclusion ∈ D`` over universe indices."""
    r = range(p.n)
    rules = set()
    missing = set()

    def idx(mask):
        if mask not in universe:
            missing.add(mask)
            return None
        return universe.index(mask)

    images = sorted(_imp_images(p))
    for A in images:
        for C in images:
            prem = idx(imp_set(p, A, C))
            a, c = idx(A), idx(C)
            if None not in (prem, a, c):
                rules.add((frozenset((a, prem)), c))
    for x, y in itertools.product(r, r):
        a, b = idx(_imp(p, x, y)), idx(_imp(p, y, x))
        for z in r:
            for S in (imp_set(p, _imp(p, z, x), _imp(p, z, y)), imp_set(p, _imp(p, x, z), _imp(p, y, z))):
                s = idx(S)
                if None not in (a, b, s):
                    rules.add((frozenset((a, b)), s))
    if missing:
        raise UniverseIncomplete(sorted(missing, key=set_key))
    return sorted(rules, key=lambda rl: (sorted(rl[0]), rl[1]))


def search_deductive_systems(
    p: Poset,
    universe: Optional[SetFamily] = None,
    limit: Optional[int] = None,
    max_universe: int = MAX_SEARCH_UNIVERSE,
) -> list[DeductiveSystem]:
    """All deductive systems inside ``universe``, smallest-first by backtracking.

    Each include decision is followed by forward chaining over the closure
    rules; a branch dies as soon as the closure needs a set already excluded.
    """
    universe = universe if universe is not None else relevant_universe(p, 2)
    if len(universe) > max_universe:
        raise UniverseTooLarge(f"universe has {len(universe)} sets, cap is {max_universe}")
    rules = _horn_rules(p, universe)
    by_premise: dict[int, list[tuple[frozenset, int]]] = {}
    for rule in rules:
        for a in rule[0]:
            by_premise.setdefault(a, []).append(rule)

    def close(state: set[int], new: Iterable[int]) -> set[int]:
        state = set(state)
        todo = [i for i in new if i not in state]
        state.update(todo)
        while todo:
            i = todo.pop()
            for prem, concl in by_premise.get(i, ()):
                if concl not in state and prem <= state:
                    state.add(concl)
                    todo.append(concl)
        return state

    one = universe.index(bit(p.top))
    results: list[DeductiveSystem] = []
    start = close(set(), [one])
    n = len(universe)

    def rec(i: int, state: set[int], excluded: set[int]) -> bool:
        if limit is not None and len(results) >= limit:
            return True
        if i == n:
            results.append(frozenset(universe.sets[j] for j in state))
            return False
        if i in state:
            return rec(i + 1, state, excluded)
        excluded.add(i)
        if rec(i + 1, state, excluded):
            return True
        excluded.discard(i)
        grown = close(state, [i])
        if not grown & excluded:
            return rec(i + 1, grown, excluded)
        return False

    rec(0, start, set())
    return results


# -- induced relation -----------------------------------------------------------------


@dataclass(frozen=True)
class InducedRelation:
    pairs: frozenset  # (A, B) masks over the universe
    restriction: frozenset  # (x, y) element indices

    def related(self, x: int, y: int) -> bool:
        return (x, y) in self.restriction


def induced_relation(p: Poset, E: Iterable[ElementSet], universe: Optional[SetFamily] = None) -> InducedRelation:
    E = frozenset(E)
    universe = universe if universe is not None else relevant_universe(p, 2)
    pairs = frozenset(
        (A, B) for A in universe for B in universe if imp_set(p, A, B) in E and imp_set(p, B, A) in E
    )
    r = range(p.n)
    restriction = frozenset(
        (x, y) for x in r for y in r if _imp(p, x, y) in E and _imp(p, y, x) in E
    )
    return InducedRelation(pairs, restriction)


def theta_classes(p: Poset, rel: InducedRelation) -> list[list[int]]:
    """Blocks of the carrier restriction, assuming it is an equivalence."""
    seen: set[int] = set()
    out = []
    for x in range(p.n):
        if x in seen:
            continue
        block = [y for y in range(p.n) if rel.related(x, y)]
        seen.update(block)
        out.append(block)
    return out


def _report(law: str, cxs: list, instances: int) -> LawReport:
    return LawReport(law, not cxs, True, tuple(cxs[:1]), instances)


def check_theta_theorem(p: Poset, D: Iterable[ElementSet]) -> list[LawReport]:
    """Equivalence, kernel and substitution checks for ``Θ(D)`` on the carrier."""
    D = frozenset(D)
    rel = induced_relation(p, D, SetFamily.of([]))
    r = range(p.n)
    R = rel.restriction

    eqv = [Counterexample((x,), False, True) for x in r if (x, x) not in R]
    eqv += [Counterexample((x, y), True, False) for x, y in R if (y, x) not in R]
    eqv += [
        Counterexample((x, y, z), True, False)
        for x, y in R
        for z in r
        if (y, z) in R and (x, z) not in R
    ]
    kernel = frozenset(x for x in r if (x, p.top) in R)
    in_d = frozenset(x for x in r if bit(x) in D)
    ker = [] if kernel == in_d else [Counterexample((), kernel, in_d)]

    def theta(A, B):
        return imp_set(p, A, B) in D and imp_set(p, B, A) in D

    subst = []
    for x, y in sorted(R):
        for z in r:
            if not theta(_imp(p, z, x), _imp(p, z, y)):
                subst.append(Counterexample((x, y, z), "z→x", "z→y"))
            if not theta(_imp(p, x, z), _imp(p, y, z)):
                subst.append(Counterexample((x, y, z), "x→z", "y→z"))
    return [
        _report("theta-equivalence", eqv, p.n ** 3),
        _report("theta-kernel", ker, 1),
        _report("theta-substitution", subst, len(R) * p.n),
    ]


# -- partitions and the substitution property ------------------------------------------------


@dataclass(frozen=True)
class Partition:
    universe: tuple[ElementSet, ...]
    block_of: dict = field(compare=False, hash=False)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Iterable[ElementSet]]) -> "Partition":
        block_of: dict[ElementSet, int] = {}
        for i, blk in enumerate(blocks):
            blk = list(blk)
            if not blk:
                raise ValueError("partition blocks must be non-empty")
            for m in blk:
                if m in block_of:
                    raise ValueError(f"set {m} appears in two blocks")
                block_of[m] = i
        return cls(tuple(sorted(block_of, key=set_key)), block_of)

    @classmethod
    def discrete(cls, universe: Iterable[ElementSet]) -> "Partition":
        return cls.from_blocks([[m] for m in universe])

    @classmethod
    def total(cls, universe: Iterable[ElementSet]) -> "Partition":
        return cls.from_blocks([list(universe)])

    @property
    def blocks(self) -> list[list[ElementSet]]:
        out: dict[int, list] = {}
        for m in self.universe:
            out.setdefault(self.block_of[m], []).append(m)
        return [out[k] for k in sorted(out, key=lambda k: set_key(out[k][0]))]

    def related(self, A: ElementSet, B: ElementSet) -> bool:
        if A == B:
            return True
        return A in self.block_of and B in self.block_of and self.block_of[A] == self.block_of[B]

    def kernel(self, one: ElementSet) -> frozenset:
        if one not in self.block_of:
            return frozenset([one])
        b = self.block_of[one]
        return frozenset(m for m in self.universe if self.block_of[m] == b)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe == other.universe and sorted(map(sorted, self.blocks)) == sorted(map(sorted, other.blocks))

    def __hash__(self):
        return hash((self.universe, tuple(tuple(sorted(b)) for b in sorted(map(sorted, self.blocks)))))


def _clauses(p: Poset) -> Iterator[tuple[str, tuple, tuple[ElementSet, ElementSet], tuple[ElementSet, ElementSet]]]:
    """All substitution clauses as (name, witness, hypothesis pair, conclusion pair)."""
    r = range(p.n)
    one = bit(p.top)
    for x, y in itertools.product(r, r):
        xy = _imp(p, x, y)
        yield "conj", (x, y), (one, xy), (conj_set(p, bit(x), one), conj_set(p, bit(x), xy))
        yield "imp-1", (x, y), (bit(x), bit(y)), (_imp(p, x, x), xy)
        for z in r:
            zx, zy = _imp(p, z, x), _imp(p, z, y)
            yield "imp-2", (x, y, z), (bit(x), bit(y)), (imp_set(p, zx, zx), imp_set(p, zx, zy))
            xz, yz = _imp(p, x, z), _imp(p, y, z)
            yield "imp-3", (x, y, z), (bit(x), bit(y)), (imp_set(p, xz, xz), imp_set(p, xz, yz))
            for u in r:
                zu = _imp(p, z, u)
                yield "imp-4", (x, y, z, u), (one, xy), (imp_set(p, one, zu), imp_set(p, xy, zu))


def _unique_clauses(p: Poset) -> list:
    """Distinct clauses, each with the first element tuple that produced it."""
    memo = p.tables.memo
    if "clauses" not in memo:
        seen = {}
        for name, wit, hyp, concl in _clauses(p):
            seen.setdefault((name, hyp, concl), wit)
        memo["clauses"] = [(name, wit, hyp, concl) for (name, hyp, concl), wit in seen.items()]
    return memo["clauses"]


def substitution_universe(p: Poset) -> SetFamily:
    """Every set mentioned by a substitution clause, plus all singletons."""
    sets = {bit(x) for x in range(p.n)}
    for _, _, hyp, concl in _unique_clauses(p):
        sets.update(hyp)
        sets.update(concl)
    return SetFamily.of(sets)


def check_substitution(p: Poset, phi: Partition, first_only: bool = True) -> tuple[bool, list[Violation]]:
    """Check the substitution properties for ⊙ and → on every element tuple."""
    clauses = _unique_clauses(p)
    missing = {m for _, _, hyp, concl in clauses for m in (*hyp, *concl) if m not in phi.block_of}
    if missing:
        raise UniverseIncomplete(sorted(missing, key=set_key))
    out = []
    for name, wit, (h1, h2), (c1, c2) in clauses:
        if phi.related(h1, h2) and not phi.related(c1, c2):
            out.append(Violation(name, wit, c2))
            if first_only:
                break
    return not out, out


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All set partitions of ``items`` (restricted growth strings, Bell-many)."""
    n = len(items)
    if n == 0:
        yield []
        return
    codes = [0] * n

    def rec(i: int, maxc: int):
        if i == n:
            blocks: list[list] = [[] for _ in range(maxc + 1)]
            for item, c in zip(items, codes):
                blocks[c].append(item)
            yield blocks
            return
        for c in range(maxc + 2):
            codes[i] = c
            yield from rec(i + 1, max(maxc, c))

    codes[0] = 0
    yield from rec(1, 0)


def random_partition(items: Sequence, rng: random.Random) -> list[list]:
    k = rng.randint(1, len(items))
    blocks: list[list] = [[] for _ in range(k)]
    for it in items:
        blocks[rng.randrange(k)].append(it)
    return [b for b in blocks if b]


def substitution_partitions(
    p: Poset,
    universe: Optional[SetFamily] = None,
    samples: int = 2000,
    seed: int = 0,
) -> tuple[list[Partition], int]:
    """Partitions of the universe that have the substitution property.

    Exhaustive for universes of at most eight sets, seeded sampling beyond.
    Returns the survivors and the number of candidates examined.
    """
    universe = universe if universe is not None else substitution_universe(p)
    items = list(universe)
    if len(items) <= EXHAUSTIVE_PARTITION_SIZE:
        candidates: Iterable = set_partitions(items)
    else:
        rng = random.Random(seed)
        candidates = itertools.chain(
            [[[m] for m in items], [items]],
            (random_partition(items, rng) for _ in range(samples)),
        )
    survivors = []
    seen = set()
    count = 0
    for blocks in candidates:
        count += 1
        phi = Partition.from_blocks(blocks)
        if phi in seen:
            continue
        seen.add(phi)
        if check_substitution(p, phi)[0]:
            survivors.append(phi)
    return survivors, count


def check_phi_theorems(p: Poset, phis: Sequence[Partition]) -> list[LawReport]:
    """Kernel lemma, kernel-is-deductive, weak regularity and the Θ theorem."""
    one = bit(p.top)
    r = range(p.n)
    lemma, kernel_ds, weak, theta = [], [], [], []
    kernels = []
    for k, phi in enumerate(phis):
        ok, viol = check_substitution(p, phi)
        if not ok:
            raise ValueError(f"partition #{k} lacks the substitution property: {viol[0]}")
        ker = phi.kernel(one)
        kernels.append(ker)
        for a, b in itertools.product(r, r):
            lhs = phi.related(bit(a), bit(b))
            rhs = _imp(p, a, b) in ker and _imp(p, b, a) in ker
            if lhs != rhs:
                lemma.append(Counterexample((k, a, b), lhs, rhs))
        verdict = verify_deductive_system(p, ker)
        if not verdict.ok:
            kernel_ds.append(Counterexample((k,), verdict.violations[0], True))
        else:
            for rep in check_theta_theorem(p, ker):
                if not rep.passed:
                    theta.append(Counterexample((k, rep.law), rep.counterexample, True))

    restrictions = [frozenset((a, b) for a in r for b in r if phi.related(bit(a), bit(b))) for phi in phis]
    pairs = 0
    for i, j in itertools.combinations(range(len(phis)), 2):
        if kernels[i] == kernels[j]:
            pairs += 1
            if restrictions[i] != restrictions[j]:
                weak.append(Counterexample((i, j), restrictions[i], restrictions[j]))
    return [
        _report("kernel-lemma", lemma, len(phis) * p.n ** 2),
        _report("kernel-deductive", kernel_ds, len(phis)),
        _report("weak-regularity", weak, pairs),
        _report("theta-theorem", theta, len(phis)),
    ]
