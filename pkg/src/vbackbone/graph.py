"""Immutable undirected simple graphs over dense integer node IDs."""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import GraphFormatError, InvalidNodeError


class Graph:
    """Simple undirected graph on nodes ``0 .. n-1``.

    Adjacency is stored twice: as frozensets (the public view) and as
    integer bitmasks, which the algorithms use for fast subset tests.
    Instances are never mutated after construction.
    """

    __slots__ = ("_n", "_adj", "_masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"node count must be non-negative, got {n}")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            _check(n, u)
            _check(n, v)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            sets[u].add(v)
            sets[v].add(u)
        self._n = n
        self._adj = tuple(frozenset(s) for s in sets)
        self._masks = tuple(sum(1 << v for v in s) for s in sets)
        self._m = sum(len(s) for s in sets) // 2

    @classmethod
    def from_labeled_edges(
        cls, edges: Iterable[tuple[Hashable, Hashable]], nodes: Iterable[Hashable] = ()
    ) -> tuple[Graph, list]:
        """Build a graph from arbitrary hashable labels.

        Labels are sorted and mapped to dense IDs; the returned list maps an
        ID back to its label.
        """
        edges = list(edges)
        labels = set(nodes)
        for u, v in edges:
            labels.add(u)
            labels.add(v)
        order = sorted(labels)
        index = {lab: i for i, lab in enumerate(order)}
        return cls(len(order), ((index[u], index[v]) for u, v in edges)), order

    # basic properties

    @property
    def n(self) -> int:
        return self._n

    node_count = n

    @property
    def m(self) -> int:
        return self._m

    def nodes(self) -> range:
        return range(self._n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self._n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v

    def degree(self, u: int) -> int:
        _check(self._n, u)
        return len(self._adj[u])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def mask(self, u: int) -> int:
        """Open neighborhood of ``u`` as a bitmask."""
        return self._masks[u]

    def closed_mask(self, u: int) -> int:
        return self._masks[u] | (1 << u)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._masks))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    # neighborhood queries

    def neighbors(self, u: int) -> frozenset[int]:
        _check(self._n, u)
        return self._adj[u]

    def two_hop_neighborhood(self, u: int) -> set[int]:
        """All nodes at distance 1 or 2 from ``u``."""
        _check(self._n, u)
        out = set(self._adj[u])
        for w in self._adj[u]:
            out |= self._adj[w]
        out.discard(u)
        return out

    def distances_from(self, source: int, max_hops: int | None = None) -> dict[int, int]:
        """BFS hop distances from ``source``, optionally truncated at ``max_hops``."""
        _check(self._n, source)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            d = dist[x]
            if max_hops is not None and d >= max_hops:
                continue
            for y in self._adj[x]:
                if y not in dist:
                    dist[y] = d + 1
                    queue.append(y)
        return dist

    # connectivity

    def is_connected(self) -> bool:
        """True iff every node is reachable from node 0 (the empty graph counts)."""
        if self._n == 0:
            return True
        return len(self.distances_from(0)) == self._n

    def induced_connected(self, nodes: Iterable[int]) -> bool:
        """Whether the subgraph induced by ``nodes`` is connected.

        Sets of size 0 or 1 are connected by convention.
        """
        s = set(nodes)
        for u in s:
            _check(self._n, u)
        if len(s) <= 1:
            return True
        start = next(iter(s))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y in s and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(s)

    def components(self, nodes: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of the induced subgraph, each sorted, ordered by min ID."""
        s = set(self.nodes() if nodes is None else nodes)
        for u in s:
            _check(self._n, u)
        comps = []
        seen: set[int] = set()
        for start in sorted(s):
            if start in seen:
                continue
            seen.add(start)
            comp = [start]
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y in s and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def shortest_path(self, u: int, v: int, max_hops: int | None = None) -> list[int] | None:
        """Lexicographically smallest shortest ``u``-``v`` path with at most ``max_hops`` edges.

        Returns None when ``v`` is farther than ``max_hops`` (or unreachable).
        """
        _check(self._n, u)
        _check(self._n, v)
        if max_hops is not None and max_hops < 0:
            raise ValueError("max_hops must be non-negative")
        # distances to the target let us walk forward greedily from u,
        # always taking the smallest neighbor that stays on a shortest path
        to_v = self.distances_from(v, max_hops)
        if u not in to_v:
            return None
        path = [u]
        x = u
        while x != v:
            d = to_v[x]
            x = min(y for y in self._adj[x] if to_v.get(y) == d - 1)
            path.append(x)
        return path

    # text format

    def dumps(self) -> str:
        lines = [f"{self._n} {self._m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), newline="\n")

    @classmethod
    def loads(cls, text: str) -> Graph:
        """Parse the ``n m`` header + ``u v`` edge-line format (``#`` comments allowed)."""
        rows: list[tuple[int, list[str]]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            rows.append((lineno, line.split()))
        if not rows:
            raise GraphFormatError("missing header line")
        lineno, head = rows[0]
        n, m = _ints(head, 2, lineno)
        if n < 0 or m < 0:
            raise GraphFormatError(f"line {lineno}: negative count")
        if len(rows) - 1 != m:
            raise GraphFormatError(f"header declares {m} edges, found {len(rows) - 1}")
        edges = []
        seen = set()
        for lineno, parts in rows[1:]:
            u, v = _ints(parts, 2, lineno)
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop on {u}")
            if not (0 <= u < v < n):
                raise GraphFormatError(f"line {lineno}: edge must satisfy 0 <= u < v < n")
            if (u, v) in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add((u, v))
            edges.append((u, v))
        return cls(n, edges)

    @classmethod
    def load(cls, path: str | Path) -> Graph:
        return cls.loads(Path(path).read_text())


def _check(n: int, u: int) -> None:
    if not (isinstance(u, int) and 0 <= u < n):
        raise InvalidNodeError(u, n)


def _ints(parts: Sequence[str], count: int, lineno: int) -> list[int]:
    if len(parts) != count:
        raise GraphFormatError(f"line {lineno}: expected {count} fields, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer field") from None


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to nodes ``1 .. leaves``."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))
