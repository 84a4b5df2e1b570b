"""Exhaustive enumeration of regular subsets of PGL_2(q) for small q.

The search fixes the base point x0 = (0:1) and buckets the group by the
image of x0.  A regular set takes exactly one element from each bucket, and
two members must disagree at every point (their quotient is
fixed-point-free).  Compatibility is precomputed as Python-int bitsets over
the whole group, so a search step is an AND plus a forward check that
every remaining bucket still has a candidate.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from . import gf, projline
from .classify import conjugacy_classes, subgroup_type
from .errors import CapExceeded, SizeMismatch
from .gf import FieldSpec
from .projline import GroupElem, act_index, inv_key, mul_key
from .regular import IDENTITY_KEY, RegularSet, is_sharply_transitive, is_subgroup

log = logging.getLogger(__name__)

FAST_CAP = 9
EXHAUSTIVE_CAP = 11


@dataclass
class SearchConfig:
    spec: FieldSpec
    require_identity: bool = True
    limit: int | None = None
    symmetry_reduction: bool = False
    worker_count: int = 1
    cap: int = EXHAUSTIVE_CAP

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")


class _Tables:
    """Precomputed permutations and compatibility bitsets for one field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        q = spec.order
        n = q + 1
        self.keys = [g.key for g in projline.iter_group(spec)]
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.perms = [tuple(act_index(spec, k, x) for x in range(n)) for k in self.keys]
        cells = [[0] * n for _ in range(n)]
        for i, perm in enumerate(self.perms):
            bit = 1 << i
            for x, y in enumerate(perm):
                cells[x][y] |= bit
        full = (1 << len(self.keys)) - 1
        compat = []
        for perm in self.perms:
            clash = 0
            for x, y in enumerate(perm):
                clash |= cells[x][y]
            compat.append(full & ~clash)
        self.full = full
        self.cells = cells
        self.compat = compat
        self.buckets = cells[0]
        self.identity = self.index[IDENTITY_KEY]

    def first_depth(self, require_identity: bool) -> int:
        return 1 if require_identity else 0

    def root(self, require_identity: bool) -> tuple[int, tuple[int, ...]]:
        """Candidate mask and forced prefix at the first unforced depth."""
        if require_identity:
            return self.compat[self.identity], (self.identity,)
        return self.full, ()

    def stabilizer(self, require_identity: bool) -> list[tuple[int, int, int, int]]:
        """Elements whose conjugation maps the first unforced bucket to itself."""
        depth = self.first_depth(require_identity)
        return [k for k, perm in zip(self.keys, self.perms) if perm[0] == 0 and perm[depth] == depth]

    def conjugation_map(self, t: tuple[int, int, int, int]) -> list[int]:
        spec = self.spec
        t_inv = inv_key(spec, t)
        return [self.index[mul_key(spec, mul_key(spec, t, k), t_inv)] for k in self.keys]

    def choice_tuple(self, members) -> tuple[int, ...]:
        """Members ordered by their image of x0 (the search's own order)."""
        by_bucket = sorted(members, key=lambda i: self.perms[i][0])
        return tuple(by_bucket)


@lru_cache(maxsize=8)
def _tables(spec: FieldSpec) -> _Tables:
    return _Tables(spec)


def _dfs(tab: _Tables, depth: int, cand: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
    n = tab.spec.order + 1
    if depth == n:
        yield tuple(chosen)
        return
    buckets, compat = tab.buckets, tab.compat
    later = buckets[depth + 1 :]
    opts = cand & buckets[depth]
    while opts:
        low = opts & -opts
        opts ^= low
        i = low.bit_length() - 1
        nxt = cand & compat[i]
        for b in later:
            if not nxt & b:
                break
        else:
            chosen.append(i)
            yield from _dfs(tab, depth + 1, nxt, chosen)
            chosen.pop()


def _subtree(tab: _Tables, require_identity: bool, first: int) -> list[tuple[int, ...]]:
    """All completions whose choice at the first unforced depth is ``first``."""
    cand, prefix = tab.root(require_identity)
    depth = tab.first_depth(require_identity)
    if not (cand >> first) & 1 or not (tab.buckets[depth] >> first) & 1:
        return []
    nxt = cand & tab.compat[first]
    return list(_dfs(tab, depth + 1, nxt, list(prefix) + [first]))


# worker-process state
_worker_tab: _Tables | None = None


def _worker_init(field_json: dict):
    global _worker_tab
    _worker_tab = _tables(gf.field_from_json(field_json))


def _worker_run(args: tuple[bool, int]) -> list[tuple[int, ...]]:
    require_identity, first = args
    return _subtree(_worker_tab, require_identity, first)


def _first_choices(tab: _Tables, config: SearchConfig) -> list[int]:
    cand, _ = tab.root(config.require_identity)
    depth = tab.first_depth(config.require_identity)
    opts = cand & tab.buckets[depth]
    choices = [i for i in range(len(tab.keys)) if (opts >> i) & 1]
    if not config.symmetry_reduction:
        return choices
    maps = [tab.conjugation_map(t) for t in tab.stabilizer(config.require_identity)]
    reps, seen = [], set()
    for i in choices:
        if i in seen:
            continue
        reps.append(i)
        seen.update(cm[i] for cm in maps)
    return reps


def _check_cap(config: SearchConfig):
    q = config.spec.order
    if q > config.cap:
        raise CapExceeded(f"exhaustive search refused for q = {q} (cap {config.cap})")
    if q > FAST_CAP:
        log.warning("exhaustive search at q = %d may take minutes", q)


def _raw_results(config: SearchConfig) -> Iterator[tuple[int, ...]]:
    """Choice tuples in canonical (lexicographic DFS) order."""
    tab = _tables(config.spec)
    if config.worker_count == 1 and not config.symmetry_reduction:
        cand, prefix = tab.root(config.require_identity)
        yield from _dfs(tab, tab.first_depth(config.require_identity), cand, list(prefix))
        return
    firsts = _first_choices(tab, config)
    tasks = [(config.require_identity, i) for i in firsts]
    if config.worker_count == 1:
        chunks = [_subtree(tab, *t) for t in tasks]
    else:
        with ProcessPoolExecutor(
            max_workers=config.worker_count,
            initializer=_worker_init,
            initargs=(gf.field_to_json(config.spec),),
        ) as pool:
            chunks = list(pool.map(_worker_run, tasks))
    found = {c for chunk in chunks for c in chunk}
    if config.symmetry_reduction:
        maps = [tab.conjugation_map(t) for t in tab.stabilizer(config.require_identity)]
        found = {tab.choice_tuple(cm[i] for i in c) for c in found for cm in maps}
    yield from sorted(found)


def enumerate_regular_sets(config: SearchConfig) -> Iterator[RegularSet]:
    """Stream every regular set (with 1 if required), each re-verified."""
    _check_cap(config)
    tab = _tables(config.spec)
    spec = config.spec
    for count, choice in enumerate(_raw_results(config)):
        if config.limit is not None and count >= config.limit:
            return
        S = RegularSet.of((GroupElem(spec, tab.keys[i]) for i in choice), spec)
        if not is_sharply_transitive(S):  # pragma: no cover
            raise AssertionError(f"search emitted a non-regular set {choice}")
        yield S


# ---------------------------------------------------------------------------


@dataclass
class TheoremReport:
    q: int
    total_regular_sets_with_identity: int = 0
    all_are_subgroups: bool = True
    type_census: dict[str, int] = field(default_factory=dict)
    conjugacy_class_count: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "total_regular_sets_with_identity": self.total_regular_sets_with_identity,
            "all_are_subgroups": self.all_are_subgroups,
            "type_census": dict(sorted(self.type_census.items())),
            "conjugacy_class_count": dict(sorted(self.conjugacy_class_count.items())),
            "violations": self.violations,
        }


def verify_theorem(config: SearchConfig) -> TheoremReport:
    """Enumerate regular sets containing 1 and check each is a listed subgroup."""
    spec = config.spec
    cfg = SearchConfig(spec, True, config.limit, config.symmetry_reduction, config.worker_count, config.cap)
    report = TheoremReport(spec.order)
    by_type: dict[str, list[RegularSet]] = defaultdict(list)
    for S in enumerate_regular_sets(cfg):
        report.total_regular_sets_with_identity += 1
        if not is_subgroup(S):
            report.all_are_subgroups = False
            report.violations.append(f"not a subgroup: {[projline.elem_to_json(g) for g in S]}")
            continue
        tag = subgroup_type(S).tag
        if tag == "NotOnList":
            report.violations.append(f"unlisted subgroup: {[projline.elem_to_json(g) for g in S]}")
        by_type[tag].append(S)
    report.type_census = {t: len(v) for t, v in by_type.items()}
    report.conjugacy_class_count = {t: len(conjugacy_classes(spec, v)) for t, v in by_type.items()}
    return report


# ---------------------------------------------------------------------------


def latin_square(S: RegularSet) -> list[list[int]]:
    """Rows: members in canonical order; columns: points; entries: image positions."""
    spec = S.spec
    n = spec.order + 1
    if len(S) != n:
        raise SizeMismatch(f"expected {n} members, got {len(S)}")
    return [[act_index(spec, g.key, x) for x in range(n)] for g in S]


def is_latin(square: list[list[int]]) -> bool:
    n = len(square)
    symbols = set(range(n))
    rows_ok = all(len(row) == n and set(row) == symbols for row in square)
    return rows_ok and all({row[j] for row in square} == symbols for j in range(n))


def render_grid(square: list[list[int]]) -> str:
    width = max(len(str(v)) for row in square for v in row)
    return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in square)
