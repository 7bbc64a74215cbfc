"""Connected dominating set constructors.

Four top-level algorithms share this module:

* ``mmcds``      greedy dominating set, 3-hop connector paths, then pruning
* ``mcds2``      single-pass neighborhood-coverage rule with a repair pass
* ``wuli_mcds1`` Wu-Li marking process with pruning Rules 1 and 2
* ``das_cds``    Das-style greedy set joined by a Kruskal pass over link weights

All of them break ties by smaller node ID, so results depend on labelling
but are fully deterministic.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable

from .errors import CannotConnectError, PreconditionError
from .graph import Graph
from .verify import check_cds, is_valid_cds


class NodeRole(str, enum.Enum):
    DOMINATOR = "dominator"
    DOMINATEE = "dominatee"
    CONNECTOR = "connector"


@dataclass(frozen=True)
class CdsResult:
    algorithm: str
    cds: frozenset[int]
    roles: tuple[NodeRole, ...]
    repaired: bool
    is_valid_cds: bool
    wall_time: float = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.cds)

    def sorted_nodes(self) -> list[int]:
        return sorted(self.cds)


@dataclass
class EffectiveDegreeState:
    """Marking state of the round-based greedy.

    A node is marked once it is in the set or adjacent to it; ``delta[u]``
    counts the unmarked open neighbors of ``u``.
    """

    graph: Graph
    in_set: list[bool]
    marked: list[bool]
    delta: list[int]

    @classmethod
    def initial(cls, g: Graph) -> EffectiveDegreeState:
        return cls(g, [False] * g.n, [False] * g.n, [g.degree(u) for u in g.nodes()])

    def add(self, u: int) -> None:
        self.in_set[u] = True
        for x in (u, *self.graph.neighbors(u)):
            if not self.marked[x]:
                self.marked[x] = True
                for y in self.graph.neighbors(x):
                    self.delta[y] -= 1

    def all_marked(self) -> bool:
        return all(self.marked)


def _require_connected(g: Graph, name: str) -> None:
    if g.n < 1:
        raise PreconditionError(f"{name} needs at least one node")
    if not g.is_connected():
        raise PreconditionError(f"{name} needs a connected graph")


def greedy_dominating_set(g: Graph) -> set[int]:
    """Round-based greedy by effective degree.

    In each round a node joins when its ``(delta, -id)`` beats every node of
    its two-hop neighborhood; all winners of a round join together. Nodes
    that are marked and have no unmarked neighbor sit the round out.
    """
    state = EffectiveDegreeState.initial(g)
    two_hop = [g.two_hop_neighborhood(u) for u in g.nodes()]
    delta = state.delta
    while not state.all_marked():
        winners = []
        for u in g.nodes():
            if state.in_set[u] or (state.marked[u] and delta[u] == 0):
                continue
            du = delta[u]
            if all(du > delta[v] or (du == delta[v] and u < v) for v in two_hop[u]):
                winners.append(u)
        for u in winners:
            state.add(u)
    return {u for u in g.nodes() if state.in_set[u]}


class _Components:
    """Union-find over a growing node set, merging on graph adjacency."""

    def __init__(self, g: Graph):
        self.g = g
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def add(self, x: int) -> None:
        if x in self.parent:
            return
        self.parent[x] = x
        for y in self.g.neighbors(x):
            if y in self.parent:
                rx, ry = self.find(x), self.find(y)
                if rx != ry:
                    self.parent[max(rx, ry)] = min(rx, ry)

    def count(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)


def connect_dominators(g: Graph, dominators: set[int]) -> tuple[set[int], bool]:
    """Connector nodes that join ``dominators`` into one connected subgraph.

    Dominator pairs ``a < b`` are visited in lexicographic order; a pair at
    most three hops apart that still lies in different pieces contributes
    the interior of its canonical shortest path. Whatever remains split is
    joined closest-pair-first through unrestricted shortest paths.

    When ``dominators`` dominates ``g`` the 3-hop pass always suffices:
    walking any path between two dominators, the dominators of consecutive
    nodes are at most three hops apart. The second pass only runs for
    non-dominating inputs.

    Returns ``(connectors, repaired)``; ``repaired`` is True when the
    unrestricted joining pass was needed.
    """
    if not g.is_connected():
        raise CannotConnectError("dominators of a disconnected graph cannot be connected")
    if not dominators:
        raise PreconditionError("connect_dominators needs at least one dominator")
    comps = _Components(g)
    doms = sorted(dominators)
    for d in doms:
        comps.add(d)
    connectors: set[int] = set()

    def join(path):
        for x in path[1:-1]:
            if x not in comps.parent:
                comps.add(x)
                connectors.add(x)

    for i, a in enumerate(doms):
        near = None
        for b in doms[i + 1:]:
            if comps.find(a) == comps.find(b):
                continue
            if near is None:
                near = g.distances_from(a, 3)
            if b in near:
                join(g.shortest_path(a, b, 3))

    repaired = False
    while comps.count() > 1:
        repaired = True
        best = None
        members = sorted(comps.parent)
        for a in members:
            ra = comps.find(a)
            dist = g.distances_from(a)
            for b in members:
                if b > a and comps.find(b) != ra:
                    cand = (dist[b], a, b)
                    if best is None or cand < best:
                        best = cand
        _, a, b = best
        join(g.shortest_path(a, b))
    return connectors, repaired


def prune_cds(g: Graph, cds: set[int]) -> set[int]:
    """Drop redundant members, examined once each in ascending ID order.

    A member is removed when the rest still dominates, stays connected and
    is nonempty; removals apply immediately. One pass is enough for
    1-minimality: a node kept because dropping it would cut off a piece of
    the set can only become removable once that whole piece is gone, and
    the piece's nodes would then need dominators adjacent to the rest.
    """
    current = set(cds)
    if not is_valid_cds(g, current):
        raise PreconditionError("prune_cds needs a valid CDS as input")
    # cover[v] = members of the current set within v's closed neighborhood
    cover = [0] * g.n
    for x in current:
        cover[x] += 1
        for v in g.neighbors(x):
            cover[v] += 1
    for x in sorted(current):
        if len(current) == 1:
            break
        if cover[x] < 2 or any(cover[v] < 2 for v in g.neighbors(x)):
            continue
        rest = current - {x}
        if not g.induced_connected(rest):
            continue
        current = rest
        cover[x] -= 1
        for v in g.neighbors(x):
            cover[v] -= 1
    return current


def _roles(g: Graph, dominators, connectors) -> tuple[NodeRole, ...]:
    out = []
    for u in g.nodes():
        if u in dominators:
            out.append(NodeRole.DOMINATOR)
        elif u in connectors:
            out.append(NodeRole.CONNECTOR)
        else:
            out.append(NodeRole.DOMINATEE)
    return tuple(out)


def _result(name, g, cds, dominators, repaired, started) -> CdsResult:
    elapsed = time.perf_counter() - started
    cds = frozenset(cds)
    dominators = cds & set(dominators)
    return CdsResult(name, cds, _roles(g, dominators, cds - dominators), repaired,
                     is_valid_cds(g, cds), elapsed)


def mmcds(g: Graph) -> CdsResult:
    """Modified MCDS: greedy dominators, 3-hop connectors, then pruning."""
    started = time.perf_counter()
    _require_connected(g, "mmcds")
    dominators = greedy_dominating_set(g)
    connectors, repaired = connect_dominators(g, dominators)
    cds = prune_cds(g, dominators | connectors)
    return _result("mmcds", g, cds, dominators, repaired, started)


def _has_nonadjacent_neighbors(g: Graph, u: int) -> bool:
    nu = g.mask(u)
    return any(nu & ~g.closed_mask(v) for v in g.neighbors(u))


def wuli_mcds1(g: Graph) -> CdsResult:
    """Wu-Li marking process plus Rules 1 and 2.

    Both rules are evaluated against the phase-one marking, not against a
    set that shrinks as nodes are unmarked.
    """
    started = time.perf_counter()
    _require_connected(g, "wuli_mcds1")
    marked = {u for u in g.nodes() if _has_nonadjacent_neighbors(g, u)}
    removed = set()
    for v in sorted(marked):
        nv = g.mask(v)
        higher = sorted(u for u in g.neighbors(v) if u in marked and u > v)
        # rule 1: N(v) inside N[u]
        if any(nv & ~g.closed_mask(u) == 0 for u in higher):
            removed.add(v)
            continue
        # rule 2: N(v) inside N(u) | N(w) for adjacent u, w
        for i, u in enumerate(higher):
            rest = nv & ~g.mask(u)
            if any(rest & ~g.mask(w) == 0 for w in higher[i + 1:] if w in g.neighbors(u)):
                removed.add(v)
                break
    cds = marked - removed
    if cds and is_valid_cds(g, cds):
        return _result("mcds1", g, cds, cds, False, started)
    if is_valid_cds(g, {0}):
        return _result("mcds1", g, {0}, {0}, True, started)
    dominators = greedy_dominating_set(g)
    connectors, _ = connect_dominators(g, dominators)
    return _result("mcds1", g, dominators | connectors, dominators, True, started)


def _bfs_visit(g: Graph, start: int) -> list[int]:
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for y in sorted(g.neighbors(order[i])):
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1
    return order


def _covered_single(g: Graph, i: int) -> bool:
    ni = g.mask(i)
    return any(ni & ~(1 << j) & ~g.mask(j) == 0 for j in g.neighbors(i))


def _covered_union(g: Graph, i: int) -> bool:
    # some connected group of neighbors dominates the whole neighborhood,
    # which holds exactly when the neighborhood induces a connected graph
    nbrs = g.neighbors(i)
    return bool(nbrs) and g.induced_connected(nbrs)


MCDS2_RULES = {"single": _covered_single, "union": _covered_union}


def mcds2(g: Graph, rule: str = "single") -> CdsResult:
    """Keep node ``i`` unless its neighborhood is covered by its neighbors.

    Nodes are visited breadth-first from node 0. With ``rule="single"`` a
    neighbor ``j`` covers ``i`` when every other neighbor of ``i`` is
    adjacent to ``j``. With ``rule="union"`` several mutually connected
    neighbors may share the job. If the kept nodes are not a valid CDS,
    uncovered nodes are dominated greedily and the pieces are joined with
    ``connect_dominators``; ``repaired`` reports whether that changed
    anything.
    """
    try:
        covered = MCDS2_RULES[rule]
    except KeyError:
        raise ValueError(f"unknown mcds2 rule {rule!r}; expected one of {sorted(MCDS2_RULES)}")
    started = time.perf_counter()
    _require_connected(g, "mcds2")
    selected = {i for i in _bfs_visit(g, 0) if not covered(g, i)}
    if is_valid_cds(g, selected):
        return _result("mcds2", g, selected, selected, False, started)

    dominators = set(selected)
    uncovered = set(check_cds(g, dominators).uncovered_nodes)
    while uncovered:
        candidates = set()
        for u in uncovered:
            candidates |= g.neighbors(u)
        if not candidates:
            candidates = set(uncovered)
        best = min(candidates, key=lambda c: (-len((g.neighbors(c) | {c}) & uncovered), c))
        dominators.add(best)
        uncovered -= g.neighbors(best) | {best}
    connectors, _ = connect_dominators(g, dominators)
    return _result("mcds2", g, dominators | connectors, dominators, True, started)


def das_cds(g: Graph) -> CdsResult:
    """Greedy dominating set by closed-neighborhood gain, joined by Kruskal.

    Stage one adds one node per iteration: the one dominating the most
    not-yet-dominated nodes. Each node remembers the first selected node
    that dominated it. Stage two treats the resulting dominator trees as
    components and joins them through the lightest links, where a link costs
    the number of its endpoints outside the stage-one set.
    """
    started = time.perf_counter()
    _require_connected(g, "das_cds")
    n = g.n
    dominated = [False] * n
    dom = list(range(n))
    gain = [g.degree(u) + 1 for u in g.nodes()]
    chosen: list[int] = []
    left = n
    while left:
        best = max(g.nodes(), key=lambda u: (gain[u], -u))
        chosen.append(best)
        for x in (best, *g.neighbors(best)):
            if dominated[x]:
                continue
            dominated[x] = True
            dom[x] = best
            left -= 1
            for y in (x, *g.neighbors(x)):
                gain[y] -= 1
    in_s = set(chosen)

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pieces = n
    for x in g.nodes():
        rx, rd = find(x), find(dom[x])
        if rx != rd:
            parent[rx] = rd
            pieces -= 1

    cds = set(in_s)
    links = sorted(((u not in in_s) + (v not in in_s), u, v) for u, v in g.edges())
    for _, u, v in links:
        if pieces == 1:
            break
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[ru] = rv
        pieces -= 1
        cds.update((u, v))
    return _result("das", g, cds, in_s, False, started)


ALGORITHMS: dict[str, Callable[..., CdsResult]] = {
    "mmcds": mmcds,
    "mcds1": wuli_mcds1,
    "mcds2": mcds2,
    "das": das_cds,
}


def run_algorithm(name: str, g: Graph, mcds2_rule: str = "single") -> CdsResult:
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {sorted(ALGORITHMS)}")
    if name == "mcds2":
        return mcds2(g, mcds2_rule)
    return ALGORITHMS[name](g)
