"""Generators of finite bounded posets and law sweeps over them."""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from unsharp import io
from unsharp.errors import BoundExceeded
from unsharp.laws import LawReport, run_law_suite, select
from unsharp.poset import Poset, bit, from_order, members, validate

MAX_ENUM_N = 6
MAX_CANON_N = 8
LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _label(i: int) -> str:
    return LETTERS[i] if i < len(LETTERS) else f"x{i}"


def _inner_posets(k: int) -> Iterator[list[int]]:
    """All labeled partial orders on ``k`` points as lists of up-set masks.

    Point ``i`` is inserted with a down-closed set D and an up-closed set U of
    earlier points such that every member of D lies below every member of U.
    Each labeled order arises from exactly one insertion sequence.
    """

    def extend(up: list[int]) -> Iterator[list[int]]:
        i = len(up)
        if i == k:
            yield list(up)
            return
        prev = range(i)
        down = [0] * i
        for x in prev:
            for y in members(up[x]):
                down[y] |= bit(x)
        for D in range(1 << i):
            if any(down[d] & ~D for d in members(D)):
                continue
            above_D = (1 << i) - 1
            for d in members(D):
                above_D &= up[d] & ~bit(d)
            for U in range(1 << i):
                if U & D or U & ~above_D:
                    continue
                if any(up[u] & ~U for u in members(U)):
                    continue
                new = [up[x] | (bit(i) if D >> x & 1 else 0) | (U if D >> x & 1 else 0) for x in prev]
                up.append(bit(i) | U)
                old = up[:i]
                up[:i] = new
                yield from extend(up)
                up[:i] = old
                up.pop()

    yield from extend([])


def all_bounded_posets(n: int) -> Iterator[Poset]:
    """Every labeled bounded poset on ``n`` points (labels ``a, b, ...``)."""
    if not 1 <= n <= MAX_ENUM_N:
        raise BoundExceeded(f"exhaustive enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    labels = [_label(i) for i in range(n)]
    if n == 1:
        yield from_order(labels, [[True]])
        return
    for bot, top in itertools.permutations(range(n), 2):
        rest = [i for i in range(n) if i not in (bot, top)]
        for inner in _inner_posets(n - 2):
            leq = [[False] * n for _ in range(n)]
            for x in range(n):
                leq[bot][x] = True
                leq[x][top] = True
                leq[x][x] = True
            for i, x in enumerate(rest):
                for j in members(inner[i]):
                    leq[x][rest[j]] = True
            yield from_order(labels, leq)


def random_bounded_poset(n: int, edge_prob: float, seed: int) -> Poset:
    """Random DAG on ``n - 2`` inner points, closed, with ``0`` and ``1`` adjoined."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    if n == 1:
        return validate(["0"], [])
    rng = random.Random(seed)
    inner = [_label(i) for i in range(n - 2)]
    covers = [(a, b) for a, b in itertools.combinations(inner, 2) if rng.random() < edge_prob]
    covers += [("0", x) for x in inner] + [(x, "1") for x in inner]
    if not inner:
        covers.append(("0", "1"))
    return validate(["0", *inner, "1"], covers)


def canonical_form(p: Poset) -> str:
    """Lexicographically least order matrix over all relabelings.

    Only relabelings that sort points by (down-set size, up-set size) are
    tried; that sort key is isomorphism-invariant, so the result still is.
    """
    if p.n > MAX_CANON_N:
        raise BoundExceeded(f"canonical form supports n <= {MAX_CANON_N}, got {p.n}")
    key = [(bin(p.down[x]).count("1"), bin(p.up[x]).count("1")) for x in range(p.n)]
    groups = [list(g) for _, g in itertools.groupby(sorted(range(p.n), key=lambda x: key[x]), key=lambda x: key[x])]
    best: Optional[str] = None
    for parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [x for part in parts for x in part]
        s = "".join("1" if p.le(order[i], order[j]) else "0" for i in range(p.n) for j in range(p.n))
        if best is None or s < best:
            best = s
    return f"{p.n}:{best}"


# -- sweeps --------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str  # "all" or "random"
    n: int
    seeds: int = 0
    prob: float = 0.3
    first_seed: int = 0

    def generate(self) -> Iterator[tuple[str, Poset]]:
        if self.kind == "all":
            for i, p in enumerate(all_bounded_posets(self.n)):
                yield f"all(n={self.n})#{i}", p
        elif self.kind == "random":
            for s in range(self.first_seed, self.first_seed + self.seeds):
                yield f"random(n={self.n},p={self.prob},seed={s})", random_bounded_poset(self.n, self.prob, s)
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")


@dataclass
class SweepReport:
    params: dict
    posets_checked: int = 0
    laws: list = field(default_factory=list)
    failures: list = field(default_factory=list)  # (poset document text, LawReport)

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_one(args) -> list[tuple[str, LawReport]]:
    doc, poset_id, law_ids, budget = args
    p = io.parse(doc)
    return [(doc, r) for r in run_law_suite(p, law_ids, subset_budget=budget, poset_id=poset_id) if not r.passed]


def sweep(
    spec: GeneratorSpec,
    laws: Optional[Sequence[str]] = None,
    subset_budget: int = 256,
    workers: int = 1,
) -> SweepReport:
    """Run the selected laws on every generated poset and collect failures."""
    law_ids = [lw.id for lw in select(laws)]
    report = SweepReport(
        {"kind": spec.kind, "n": spec.n, "seeds": spec.seeds, "prob": spec.prob, "first_seed": spec.first_seed},
        laws=law_ids,
    )
    jobs = ((io.serialize(p), pid, law_ids, subset_budget) for pid, p in spec.generate())
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_check_one, jobs, chunksize=16))
    else:
        results = [_check_one(job) for job in jobs]
    report.posets_checked = len(results)
    failures = [f for chunk in results for f in chunk]
    report.failures = sorted(failures, key=lambda f: (f[0], f[1].law))
    return report
