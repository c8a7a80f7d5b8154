"""Tree-to-graph homomorphism counting.

The rooted count entry(t, v) is the number of homomorphisms of the subtree
at t that send its root to v. A leaf contributes 1 everywhere; otherwise

    entry(t, v) = prod over children (c, mult) of
                  (sum over neighbors w of v of entry(c, w)) ** mult

and the unrooted count is the sum of entry(t, v) over all v. The DP runs on
the succinct DAG directly: a child repeated with multiplicity m costs one
exponentiation, never m subtree copies.
"""

from __future__ import annotations

import itertools

from .graphs import Graph
from .trees import TreeArena
from .wl import LabelTable


class BudgetExceededError(RuntimeError):
    """Brute-force enumeration would exceed its map budget."""

    def __init__(self, total_maps: int, budget: int):
        self.total_maps = total_maps
        self.budget = budget
        super().__init__(
            f"brute force needs {total_maps} candidate maps, budget is {budget}"
        )


class LabelConsistencyError(RuntimeError):
    """Two vertices with the same label produced different rooted counts."""

    def __init__(self, rank: int, v1: int, count1: int, v2: int, count2: int):
        self.rank = rank
        self.vertices = (v1, v2)
        self.counts = (count1, count2)
        super().__init__(
            f"vertices {v1} and {v2} share label rank {rank} but have rooted "
            f"counts {count1} and {count2}"
        )


class HomTable:
    """Memoized rooted counts for one (arena, graph) pair.

    Vectors are cached per node id, so repeated queries against the same
    arena (the synthesizer's usage pattern) share all subtree work. The
    arena is append-only, which keeps cached ids valid as it grows.
    """

    def __init__(self, arena: TreeArena, graph: Graph):
        self.arena = arena
        self.graph = graph
        self._vectors: dict[int, tuple[int, ...]] = {}

    def rooted(self, t: int) -> tuple[int, ...]:
        """Vector of entry(t, v) over all vertices v of the graph."""
        adjacency = self.graph.adjacency
        for node in self.arena.reachable(t):
            if node in self._vectors:
                continue
            kids = self.arena.children(node)
            if not kids:
                self._vectors[node] = (1,) * self.graph.vertex_count
                continue
            vector = []
            for v in range(self.graph.vertex_count):
                entry = 1
                for child, mult in kids:
                    child_vec = self._vectors[child]
                    entry *= sum(child_vec[w] for w in adjacency[v]) ** mult
                    if entry == 0:
                        break
                vector.append(entry)
            self._vectors[node] = tuple(vector)
        return self._vectors[t]


def rooted_hom(
    arena: TreeArena, t: int, graph: Graph, table: HomTable | None = None
) -> tuple[int, ...]:
    if table is None:
        table = HomTable(arena, graph)
    elif table.arena is not arena or table.graph is not graph:
        raise ValueError("table was built for a different arena or graph")
    return table.rooted(t)


def hom_count(
    arena: TreeArena, t: int, graph: Graph, table: HomTable | None = None
) -> int:
    return sum(rooted_hom(arena, t, graph, table))


def hom_by_label(
    arena: TreeArena,
    t: int,
    labels: LabelTable,
    which: int,
    level: int,
    table: HomTable | None = None,
) -> dict[int, int]:
    """Rooted counts grouped by level-`level` label rank.

    Requires depth(t) <= level: the level-`level` label then determines the
    rooted count, so each rank maps to a single number. A disagreement
    within a rank would falsify that and raises LabelConsistencyError.
    """
    d = arena.depth(t)
    if d > level:
        raise ValueError(f"tree depth {d} exceeds label level {level}")
    graph = labels.graphs[which]
    vector = rooted_hom(arena, t, graph, table)
    ranks = labels.ranks_at(which, level)
    out: dict[int, int] = {}
    rep: dict[int, int] = {}
    for v, rank in enumerate(ranks):
        if rank not in out:
            out[rank] = vector[v]
            rep[rank] = v
        elif out[rank] != vector[v]:
            raise LabelConsistencyError(rank, rep[rank], out[rank], v, vector[v])
    return out


def brute_force_hom(
    node_count: int,
    edges: list[tuple[int, int]],
    graph: Graph,
    budget: int = 10**7,
) -> int:
    """Count homomorphisms by enumerating every vertex map. Oracle only.

    Takes an explicit tree (expand_tree output); checks each map against
    each edge with no cleverness whatsoever, so it is trustworthy and slow.
    """
    n = graph.vertex_count
    total_maps = n**node_count
    if total_maps > budget:
        raise BudgetExceededError(total_maps, budget)
    count = 0
    for mapping in itertools.product(range(n), repeat=node_count):
        for u, v in edges:
            if not graph.has_edge(mapping[u], mapping[v]):
                break
        else:
            count += 1
    return count
