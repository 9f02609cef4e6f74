"""Swap-based local search guided by cut nodes in large components.

One iteration adds a node drawn from a large residual component (a cut node
while the search is fresh, the stalest node once it has gone ``limit_num``
rounds without progress), then removes the member whose re-insertion hurts
least. The working set random-walks while an elitist copy records the best
solution seen.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    ComponentPartition,
    Graph,
    Solution,
    best_removal,
    components,
    find_cut_nodes,
    pairs,
)


@dataclass
class LocalSearchConfig:
    """Non-improvement budget (max_iter) and cut-node patience (limit_num)."""

    max_iter: int = 1500
    limit_num: int = 100

    def __post_init__(self):
        if not self.max_iter > self.limit_num > 0:
            raise ValueError("require max_iter > limit_num > 0")


class PriorityTable:
    """Staleness counters: selecting a node zeroes it and ages every other node.

    Guarantees every node eventually becomes selectable by the diversification
    fallback. Implemented as a global clock minus per-node last-selection time.
    """

    def __init__(self, n: int):
        self._last = [0] * n
        self._clock = 0

    def select(self, v: int) -> None:
        self._clock += 1
        self._last[v] = self._clock

    def priority(self, v: int) -> int:
        return self._clock - self._last[v]


def highest_priority_node(within, prio: PriorityTable, rng) -> int:
    """Uniform random choice among the nodes of ``within`` with maximal priority."""

    nodes = sorted(within)
    if not nodes:
        raise ValueError("within must be non-empty")
    best = max(prio.priority(v) for v in nodes)
    top = [v for v in nodes if prio.priority(v) == best]
    return top[0] if len(top) == 1 else rng.choice(top)


def select_large_component(part: ComponentPartition, rng) -> int:
    """Uniform choice among components larger than (max size + min size)/2.

    When no component strictly exceeds the threshold (all sizes equal), every
    component counts as large.
    """

    if part.count == 0:
        raise ValueError("empty partition")
    hi, lo = max(part.sizes), min(part.sizes)
    threshold = (hi + lo) / 2
    large = [cid for cid, c in enumerate(part.sizes) if c > threshold]
    if not large:
        large = list(range(part.count))
    return large[0] if len(large) == 1 else rng.choice(large)


def improve(
    g: Graph,
    s: Solution,
    cfg: LocalSearchConfig,
    prio: PriorityTable,
    rng,
    on_swap=None,
) -> Solution:
    """Local search returning a solution no worse than ``s`` with the same size.

    ``on_swap(g, members, objective)`` is called after every swap with the
    incrementally maintained objective; test harnesses use it to cross-check
    against full recomputation.
    """

    k = len(s.members)
    if k == 0 or k >= g.n:
        return s

    work = set(s.members)
    f_work = s.objective
    best_members = frozenset(work)
    best_f = f_work
    non_improve = 0

    while non_improve < cfg.max_iter:
        part = components(g, work)
        if part.count == 0:
            break
        cid = select_large_component(part, rng)
        comp_nodes = part.component_nodes(cid)
        if non_improve > cfg.limit_num:
            v = highest_priority_node(comp_nodes, prio, rng)
        else:
            cuts = find_cut_nodes(g, comp_nodes)
            if cuts:
                ordered = sorted(cuts)
                v = ordered[0] if len(ordered) == 1 else rng.choice(ordered)
            else:
                v = highest_priority_node(comp_nodes, prio, rng)
        prio.select(v)

        # transient size k+1: add v, then drop the cheapest other member
        work.add(v)
        part_v = components(g, work)
        f_with_v = sum(pairs(c) for c in part_v.sizes)
        transient = Solution(members=frozenset(work), objective=f_with_v)
        u, f_after = best_removal(g, transient, rng, exclude=v, part=part_v)
        work.discard(u)
        f_work = f_after
        if on_swap is not None:
            on_swap(g, frozenset(work), f_work)

        if f_work < best_f:
            best_f = f_work
            best_members = frozenset(work)
            non_improve = 0
        else:
            non_improve += 1

    return Solution(members=best_members, objective=best_f)
