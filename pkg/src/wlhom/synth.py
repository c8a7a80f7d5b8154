"""Synthesis of distinguishing trees from label refinement.

Given two graphs whose label histograms differ at some level, construct an
explicit tree with provably different homomorphism counts into the two
graphs. The construction is a finite-search version of the inductive
argument behind the label test / homomorphism-count correspondence:

  level 1: stars. The rooted count of an n-leaf star at v is deg(v)^n, so
  for every n the count is strictly increasing across level-1 ranks.

  level j -> j+1: with a level-j family fam_j in hand, the tree
  H_m = attach([(fam_j(m), 1)]) has rooted count at v equal to the
  neighbor sum of fam_j(m)'s counts, which depends only on v's level-(j+1)
  label. Search m = 1, 2, ... until rank -> h(H_m, rank) is strictly
  increasing over the non-isolated level-(j+1) ranks; the counts at
  distinct ranks separate at exponentially different rates, so some m
  works. The level-(j+1) family is then fam(n) = n copies of H_m's child
  under one root, whose counts are h(H_m, rank)^n.

  final: with distinct positive bases b_r = h(fam_k(1), r), the difference
  of the two histogram-weighted sums is sum_r delta(r) * b_r^n. If it
  vanished for n = 1..|S_k| the Vandermonde system would force every
  delta(r) to zero, so the least separating n is found within |S_k| steps.

Every synthesis run re-checks the identities the argument relies on and
raises SynthesisInvariantError on any violation.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .graphs import Graph
from .homs import HomTable, hom_by_label, hom_count
from .trees import TreeArena, parse_tree, serialize_tree
from .wl import LabelTable, distinguishing_level

DEFAULT_LIFT_CEILING = 10_000

MODES = ("tree", "single-node", "equivalent")


class SynthesisInvariantError(RuntimeError):
    """An identity the construction relies on failed; signals a bug."""


class LiftCeilingError(RuntimeError):
    """No m up to the ceiling ordered the ranks; signals a bug."""

    def __init__(self, level: int, ceiling: int):
        self.level = level
        self.ceiling = ceiling
        super().__init__(
            f"no m <= {ceiling} orders the level-{level} ranks; this should "
            "be impossible for valid inputs"
        )


class CertificateError(ValueError):
    """Certificate JSON is malformed."""


def _resolve_lift_ceiling(ceiling: int | None) -> int:
    if ceiling is None:
        env = os.environ.get("WLHOM_LIFT_CEILING")
        if env is None:
            return DEFAULT_LIFT_CEILING
        try:
            ceiling = int(env)
        except ValueError:
            raise ValueError(
                f"WLHOM_LIFT_CEILING must be an integer, got {env!r}"
            ) from None
    if ceiling < 1:
        raise ValueError(f"lift ceiling must be >= 1, got {ceiling}")
    return ceiling


@dataclass(frozen=True)
class Certificate:
    """Transcript of a synthesis run, sufficient for independent checking.

    mode "tree": level k, the m chosen at each lift (levels 2..k), the
    final n, the tree itself (tree file format), both counts, and the
    level-k histograms the inequality was read off from. mode
    "single-node": a lone leaf whose counts are the vertex counts. mode
    "equivalent": no further fields.
    """

    mode: str
    level: int | None = None
    m_per_level: tuple[int, ...] | None = None
    n_final: int | None = None
    tree_text: str | None = None
    count_g1: int | None = None
    count_g2: int | None = None
    histograms: tuple[tuple[int, int, int], ...] | None = None

    def tree(self) -> tuple[TreeArena, int]:
        if self.tree_text is None:
            raise ValueError(f"mode {self.mode} certificate carries no tree")
        return parse_tree(self.tree_text)


def certificate_to_json(cert: Certificate) -> str:
    """Canonical JSON form; counts become decimal strings."""
    payload: dict = {"mode": cert.mode}
    if cert.mode != "equivalent":
        payload["level"] = cert.level
        payload["tree"] = cert.tree_text
        payload["count_g1"] = str(cert.count_g1)
        payload["count_g2"] = str(cert.count_g2)
    if cert.mode == "tree":
        payload["m_per_level"] = list(cert.m_per_level)
        payload["n_final"] = cert.n_final
        payload["histograms"] = [
            {"rank": r, "g1": c1, "g2": c2} for r, c1, c2 in cert.histograms
        ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def _parse_count(value: object, field: str) -> int:
    _require(isinstance(value, str), f"{field} must be a decimal string")
    _require(value.isdigit(), f"{field} must be a nonnegative decimal string")
    _require(value == "0" or not value.startswith("0"),
             f"{field} has a leading zero")
    return int(value)


def certificate_from_json(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not valid JSON: {exc}") from None
    _require(isinstance(data, dict), "certificate must be a JSON object")
    mode = data.get("mode")
    _require(mode in MODES, f"mode must be one of {MODES}, got {mode!r}")
    expected = {"mode"}
    if mode != "equivalent":
        expected |= {"level", "tree", "count_g1", "count_g2"}
    if mode == "tree":
        expected |= {"m_per_level", "n_final", "histograms"}
    _require(
        set(data) == expected,
        f"mode {mode} certificate must have exactly the fields {sorted(expected)}",
    )
    if mode == "equivalent":
        return Certificate(mode=mode)
    level = data["level"]
    _require(isinstance(level, int) and not isinstance(level, bool),
             "level must be an integer")
    tree_text = data["tree"]
    _require(isinstance(tree_text, str), "tree must be a string")
    try:
        parse_tree(tree_text)
    except ValueError as exc:
        raise CertificateError(f"embedded tree: {exc}") from None
    count_g1 = _parse_count(data["count_g1"], "count_g1")
    count_g2 = _parse_count(data["count_g2"], "count_g2")
    if mode == "single-node":
        _require(level == 0, "single-node certificate must have level 0")
        return Certificate(
            mode=mode, level=0, tree_text=tree_text,
            count_g1=count_g1, count_g2=count_g2,
        )
    _require(level >= 1, "tree certificate must have level >= 1")
    m_per_level = data["m_per_level"]
    _require(
        isinstance(m_per_level, list)
        and all(isinstance(m, int) and not isinstance(m, bool) and m >= 1
                for m in m_per_level),
        "m_per_level must be a list of positive integers",
    )
    _require(len(m_per_level) == level - 1,
             "m_per_level must have one entry per level from 2 to k")
    n_final = data["n_final"]
    _require(isinstance(n_final, int) and not isinstance(n_final, bool)
             and n_final >= 1, "n_final must be a positive integer")
    raw_hist = data["histograms"]
    _require(isinstance(raw_hist, list) and raw_hist,
             "histograms must be a nonempty list")
    histograms = []
    for row in raw_hist:
        _require(
            isinstance(row, dict) and set(row) == {"rank", "g1", "g2"}
            and all(isinstance(row[f], int) and not isinstance(row[f], bool)
                    and row[f] >= 0 for f in ("rank", "g1", "g2")),
            "each histogram row must be {rank, g1, g2} with nonnegative integers",
        )
        histograms.append((row["rank"], row["g1"], row["g2"]))
    return Certificate(
        mode=mode,
        level=level,
        m_per_level=tuple(m_per_level),
        n_final=n_final,
        tree_text=tree_text,
        count_g1=count_g1,
        count_g2=count_g2,
        histograms=tuple(histograms),
    )


def base_family(arena: TreeArena, n: int) -> int:
    """Star with n children: the level-1 family, rooted counts deg(v)^n."""
    if n < 1:
        raise ValueError(f"family index must be >= 1, got {n}")
    leaf = arena.leaf()
    return arena.attach([(leaf, n)])


def power(arena: TreeArena, h: int, n: int) -> int:
    """Root with h's single child repeated n times; counts become n-th powers."""
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    kids = arena.children(h)
    if len(kids) != 1 or kids[0][1] != 1:
        raise ValueError("h must be a root with exactly one child")
    return arena.attach([(kids[0][0], n)])


def _counts_by_rank(
    arena: TreeArena,
    t: int,
    labels: LabelTable,
    level: int,
    tables: tuple[HomTable, HomTable],
) -> dict[int, int]:
    """Rank -> rooted count, merged over both graphs.

    The joint labeling makes the count a function of the rank across both
    graphs at once; a cross-graph mismatch falsifies that and aborts.
    """
    merged = hom_by_label(arena, t, labels, 0, level, tables[0])
    for rank, count in hom_by_label(arena, t, labels, 1, level, tables[1]).items():
        if merged.setdefault(rank, count) != count:
            raise SynthesisInvariantError(
                f"rank {rank} has rooted count {merged[rank]} in graph 1 "
                f"but {count} in graph 2"
            )
    return merged


def lift(
    arena: TreeArena,
    family,
    labels: LabelTable,
    level: int,
    S: list[int],
    tables: tuple[HomTable, HomTable] | None = None,
    ceiling: int | None = None,
) -> tuple[int, int]:
    """Least m >= 1 whose H_m = attach([(family(m), 1)]) orders the ranks.

    `family` maps m to a depth-(level-1) tree node; S lists the non-isolated
    level-`level` ranks ascending. Returns (m, H_m node id). Each candidate
    is also checked against the chain identity
    h(H_m, L) = sum over (rank, mult) in L of mult * h(family(m), rank).
    """
    if not S:
        raise ValueError("rank set must be nonempty")
    order = sorted(S)
    ceiling = _resolve_lift_ceiling(ceiling)
    if tables is None:
        tables = (HomTable(arena, labels.graphs[0]), HomTable(arena, labels.graphs[1]))
    defs = labels.defs_at(level)
    for m in range(1, ceiling + 1):
        t = family(m)
        child_counts = _counts_by_rank(arena, t, labels, level - 1, tables)
        h = arena.attach([(t, 1)])
        counts = _counts_by_rank(arena, h, labels, level, tables)
        for rank in order:
            expected = sum(c * child_counts[r] for r, c in defs[rank])
            if counts[rank] != expected:
                raise SynthesisInvariantError(
                    f"chain identity failed at level {level}, rank {rank}: "
                    f"{counts[rank]} != {expected}"
                )
            if counts[rank] < 1:
                raise SynthesisInvariantError(
                    f"nonpositive count {counts[rank]} at non-isolated rank {rank}"
                )
        values = [counts[rank] for rank in order]
        if all(a < b for a, b in zip(values, values[1:])):
            return m, h
    raise LiftCeilingError(level, ceiling)


def _restricted_histogram(labels: LabelTable, which: int, level: int) -> dict[int, int]:
    """Level histogram of graph `which` over non-isolated vertices only."""
    isolated = labels.graphs[which].isolated_vertices()
    hist: dict[int, int] = {}
    for v, rank in enumerate(labels.ranks_at(which, level)):
        if v not in isolated:
            hist[rank] = hist.get(rank, 0) + 1
    return hist


def _memoized(build):
    cache: dict[int, int] = {}

    def family(n: int) -> int:
        if n not in cache:
            cache[n] = build(n)
        return cache[n]

    return family


def synthesize(
    g1: Graph,
    g2: Graph,
    max_level: int | None = None,
    lift_ceiling: int | None = None,
) -> Certificate:
    """Distinguishing tree plus transcript, or an equivalent-mode certificate.

    Mode selection: if no level's histograms differ, the graphs are
    equivalent. If they differ only through isolated vertices (the
    non-isolated restrictions agree at the distinguishing level), the
    vertex counts must differ and a lone leaf distinguishes. Otherwise the
    construction runs at k, the least level where the non-isolated
    restrictions differ.
    """
    ceiling = _resolve_lift_ceiling(lift_ceiling)
    comparison = distinguishing_level(g1, g2, max_level)
    if not comparison.distinguished:
        return Certificate(mode="equivalent")
    labels = comparison.table
    d = comparison.distinguishing_level
    k = None
    if d > 0:
        for lvl in range(1, d + 1):
            if _restricted_histogram(labels, 0, lvl) != _restricted_histogram(
                labels, 1, lvl
            ):
                k = lvl
                break
    if k is None:
        # Difference is confined to isolated vertices (or is the level-0
        # size mismatch itself), so the totals cannot agree.
        if g1.vertex_count == g2.vertex_count:
            raise SynthesisInvariantError(
                "equal vertex counts with equal non-isolated histograms at "
                f"distinguishing level {d}"
            )
        arena = TreeArena()
        root = arena.leaf()
        return Certificate(
            mode="single-node",
            level=0,
            tree_text=serialize_tree(arena, root),
            count_g1=g1.vertex_count,
            count_g2=g2.vertex_count,
        )

    arena = TreeArena()
    tables = (HomTable(arena, g1), HomTable(arena, g2))
    family = _memoized(lambda n: base_family(arena, n))
    m_per_level = []
    for lvl in range(2, k + 1):
        hist1 = _restricted_histogram(labels, 0, lvl)
        hist2 = _restricted_histogram(labels, 1, lvl)
        s_lvl = sorted(set(hist1) | set(hist2))
        m, h = lift(arena, family, labels, lvl, s_lvl, tables, ceiling)
        m_per_level.append(m)
        family = _memoized(lambda n, h=h: power(arena, h, n))

    hist1 = _restricted_histogram(labels, 0, k)
    hist2 = _restricted_histogram(labels, 1, k)
    s_k = sorted(set(hist1) | set(hist2))
    base = _counts_by_rank(arena, family(1), labels, k, tables)
    if not all(base[r] >= 1 for r in s_k):
        raise SynthesisInvariantError("nonpositive base count at a non-isolated rank")
    if not all(base[a] < base[b] for a, b in zip(s_k, s_k[1:])):
        raise SynthesisInvariantError(
            f"level-{k} base counts are not strictly increasing across ranks"
        )
    top_diff = max(r for r in s_k if hist1.get(r, 0) != hist2.get(r, 0))
    if any(hist1.get(r, 0) != hist2.get(r, 0) for r in s_k if r > top_diff):
        raise SynthesisInvariantError("histograms differ above the top differing rank")
    for n in range(1, len(s_k) + 1):
        t = family(n)
        counts = _counts_by_rank(arena, t, labels, k, tables)
        for r in s_k:
            if counts[r] != base[r] ** n:
                raise SynthesisInvariantError(
                    f"power identity failed at rank {r}, n={n}: "
                    f"{counts[r]} != {base[r]}^{n}"
                )
        c1 = sum(hist1.get(r, 0) * counts[r] for r in s_k)
        c2 = sum(hist2.get(r, 0) * counts[r] for r in s_k)
        if c1 != hom_count(arena, t, g1, tables[0]) or c2 != hom_count(
            arena, t, g2, tables[1]
        ):
            raise SynthesisInvariantError(
                f"histogram-weighted sums disagree with the vertex sums at n={n}"
            )
        if c1 != c2:
            break
    else:
        raise SynthesisInvariantError(
            f"no separating n within |S_k| = {len(s_k)} steps"
        )
    if arena.depth(t) != k:
        raise SynthesisInvariantError(
            f"emitted tree has depth {arena.depth(t)}, expected {k}"
        )
    return Certificate(
        mode="tree",
        level=k,
        m_per_level=tuple(m_per_level),
        n_final=n,
        tree_text=serialize_tree(arena, t),
        count_g1=c1,
        count_g2=c2,
        histograms=tuple(
            (r, hist1.get(r, 0), hist2.get(r, 0)) for r in s_k
        ),
    )


def verify(cert: Certificate, g1: Graph, g2: Graph) -> bool:
    """Independently re-check a certificate against the two graphs.

    Recomputes from scratch: equivalent mode re-runs the level comparison;
    single-node mode checks the counts are the vertex counts and differ;
    tree mode recounts homomorphisms of the embedded tree with a fresh
    table and requires both matches plus a strict difference.
    """
    if cert.mode not in MODES:
        raise CertificateError(f"unknown mode {cert.mode!r}")
    if cert.mode == "equivalent":
        return not distinguishing_level(g1, g2).distinguished
    arena, root = cert.tree()
    if cert.mode == "single-node":
        return (
            arena.children(root) == ()
            and cert.count_g1 == g1.vertex_count
            and cert.count_g2 == g2.vertex_count
            and cert.count_g1 != cert.count_g2
        )
    c1 = hom_count(arena, root, g1)
    c2 = hom_count(arena, root, g2)
    return c1 == cert.count_g1 and c2 == cert.count_g2 and c1 != c2
