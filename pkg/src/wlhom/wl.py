"""Iterated neighbor-multiset labels for pairs of graphs, with a total order.

This is the 1-dimensional Weisfeiler-Leman test in its neighbor-only form:
every vertex starts with the same level-0 label, and the level-(k+1) label of
a vertex is the multiset of level-k labels of its neighbors. The vertex's own
previous label is NOT part of the next one, which is the difference from
classic color refinement; partitions still refine level by level because the
level-(k+1) label determines the level-k label.

Labels are interned per level into integer ranks, jointly over both input
graphs so ranks are directly comparable across them. Ranks respect a total
order extended level by level: level-1 labels order by degree, and two
multisets compare by the largest element they contain a different number of
times (the one with more copies of it is larger). Rank 0 is the smallest
label of its level; the empty multiset (isolated vertices) is always minimal.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field

from .graphs import Graph

# A label is a multiset of previous-level ranks, canonically encoded as
# (rank, multiplicity) pairs sorted by rank descending.
LabelDef = tuple[tuple[int, int], ...]


def _validate_label(label: LabelDef) -> None:
    prev = None
    for pair in label:
        if len(pair) != 2:
            raise ValueError(f"label entry {pair!r} is not a (rank, mult) pair")
        rank, mult = pair
        if rank < 0:
            raise ValueError(f"negative rank {rank} in label {label!r}")
        if mult < 1:
            raise ValueError(f"multiplicity {mult} < 1 in label {label!r}")
        if prev is not None and rank >= prev:
            raise ValueError(f"label {label!r} not sorted by rank descending")
        prev = rank


def compare_labels(l1: LabelDef, l2: LabelDef) -> int:
    """Compare two same-level labels; returns -1, 0 or 1.

    The rule: take the largest previous-level rank that occurs a different
    number of times in the two multisets; whichever multiset has more copies
    of it is the greater one. On the canonical descending encoding this is a
    left-to-right scan: at the first differing position the larger rank wins,
    then the larger multiplicity; if one list is a proper prefix of the
    other, the longer one wins (its extra elements are all smaller-ranked,
    and it has more of the largest such).
    """
    _validate_label(l1)
    _validate_label(l2)
    for (r1, m1), (r2, m2) in zip(l1, l2):
        if r1 != r2:
            return 1 if r1 > r2 else -1
        if m1 != m2:
            return 1 if m1 > m2 else -1
    if len(l1) != len(l2):
        return 1 if len(l1) > len(l2) else -1
    return 0


@dataclass(frozen=True)
class LevelLabels:
    """Interned labels of one refinement level.

    defs[r] is the definition of the rank-r label in terms of
    previous-level ranks; ranks[i][v] is the rank of vertex v of graph i.
    defs is sorted ascending under compare_labels, so the integer rank IS
    the label order.
    """

    defs: tuple[LabelDef, ...]
    ranks: tuple[tuple[int, ...], tuple[int, ...]]

    def histogram(self, which: int) -> Counter:
        return Counter(self.ranks[which])

    def partition_key(self):
        # Canonical encoding of the joint partition, for stabilization checks.
        classes: dict[int, list[tuple[int, int]]] = {}
        for i in (0, 1):
            for v, r in enumerate(self.ranks[i]):
                classes.setdefault(r, []).append((i, v))
        return frozenset(tuple(c) for c in classes.values())


@dataclass
class LabelTable:
    """Joint label levels for a pair of graphs."""

    graphs: tuple[Graph, Graph]
    levels: list[LevelLabels] = field(default_factory=list)
    stabilization_level: int | None = None

    @property
    def max_recorded_level(self) -> int:
        return len(self.levels) - 1

    @property
    def complete(self) -> bool:
        """True when stabilization was reached within the recorded levels."""
        return self.stabilization_level is not None

    def ranks_at(self, which: int, level: int) -> tuple[int, ...]:
        """Per-vertex ranks of graph `which` at the given level.

        Levels beyond the recorded ones are answered from the deepest
        recorded level when the table is complete: by persistence the
        partition no longer changes, though the numbering reported is the
        deepest recorded level's.
        """
        if level < 0:
            raise ValueError(f"negative level {level}")
        if level <= self.max_recorded_level:
            return self.levels[level].ranks[which]
        if self.complete:
            return self.levels[-1].ranks[which]
        raise ValueError(
            f"level {level} not computed (recorded up to {self.max_recorded_level}"
            " without stabilizing)"
        )

    def defs_at(self, level: int) -> tuple[LabelDef, ...]:
        if not 0 <= level <= self.max_recorded_level:
            raise ValueError(f"level {level} not recorded")
        return self.levels[level].defs

    def histogram(self, which: int, level: int) -> Counter:
        return Counter(self.ranks_at(which, level))

    def effective_level(self, level: int) -> int:
        return min(level, self.max_recorded_level)


def _sort_defs(defs: set[LabelDef]) -> tuple[LabelDef, ...]:
    # compare_labels agrees with tuple comparison on canonical encodings,
    # but sorting goes through it so the order has a single definition.
    return tuple(sorted(defs, key=functools.cmp_to_key(compare_labels)))


def joint_refine(g1: Graph, g2: Graph, max_level: int | None = None) -> LabelTable:
    """Refine labels on the disjoint union of g1 and g2.

    Stops after recording level stabilization+1 (the round that first fails
    to refine the joint partition), or after max_level, whichever is first.
    Default max_level is |V1|+|V2|, which always reaches stabilization.
    """
    if max_level is None:
        max_level = g1.vertex_count + g2.vertex_count
    if max_level < 0:
        raise ValueError(f"max_level must be >= 0, got {max_level}")
    pair = (g1, g2)
    level0 = LevelLabels(
        defs=((),),
        ranks=(
            (0,) * g1.vertex_count,
            (0,) * g2.vertex_count,
        ),
    )
    table = LabelTable(graphs=pair, levels=[level0])
    if g1.vertex_count + g2.vertex_count == 0:
        table.stabilization_level = 0
        return table
    while table.max_recorded_level < max_level:
        prev = table.levels[-1]
        vertex_defs: tuple[list[LabelDef], list[LabelDef]] = ([], [])
        for i in (0, 1):
            prev_ranks = prev.ranks[i]
            for v in range(pair[i].vertex_count):
                counts = Counter(prev_ranks[w] for w in pair[i].adjacency[v])
                vertex_defs[i].append(tuple(sorted(counts.items(), reverse=True)))
        defs = _sort_defs(set(vertex_defs[0]) | set(vertex_defs[1]))
        rank_of = {d: r for r, d in enumerate(defs)}
        nxt = LevelLabels(
            defs=defs,
            ranks=(
                tuple(rank_of[d] for d in vertex_defs[0]),
                tuple(rank_of[d] for d in vertex_defs[1]),
            ),
        )
        table.levels.append(nxt)
        if nxt.partition_key() == prev.partition_key():
            table.stabilization_level = table.max_recorded_level - 1
            break
    return table


@dataclass
class WlComparison:
    """Outcome of comparing two graphs' label histograms level by level."""

    distinguishing_level: int | None
    stabilization_level: int | None
    histograms: list[tuple[Counter, Counter]]
    table: LabelTable

    @property
    def distinguished(self) -> bool:
        return self.distinguishing_level is not None


def distinguishing_level(
    g1: Graph, g2: Graph, max_level: int | None = None
) -> WlComparison:
    """Least level whose label histograms differ between the graphs.

    Returns distinguishing_level None when the joint partition stabilizes
    with equal histograms at every level; by persistence no deeper level can
    differ, so that verdict is conclusive. With an explicit max_level too
    small to reach stabilization, None merely means "none found".
    """
    table = joint_refine(g1, g2, max_level)
    hists = [(lvl.histogram(0), lvl.histogram(1)) for lvl in table.levels]
    found = None
    for k, (h1, h2) in enumerate(hists):
        if h1 != h2:
            found = k
            break
    return WlComparison(
        distinguishing_level=found,
        stabilization_level=table.stabilization_level,
        histograms=hists,
        table=table,
    )
