"""CDS validity checks and an exhaustive minimum-CDS oracle for small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import OracleViolationError, PreconditionError, TooLargeError
from .graph import Graph, _check

DEFAULT_NODE_LIMIT = 12


@dataclass(frozen=True)
class ValidityReport:
    dominating: bool
    connected: bool
    uncovered_nodes: frozenset[int]

    @property
    def valid(self) -> bool:
        return self.dominating and self.connected


@dataclass(frozen=True)
class OracleResult:
    min_size: int
    witness: frozenset[int]
    subsets_examined: int


def check_cds(g: Graph, s: Iterable[int]) -> ValidityReport:
    """Cover and connectivity properties of ``s`` in ``g``.

    An empty set is only connected (and valid) on the empty graph.
    """
    s = set(s)
    for u in s:
        _check(g.n, u)
    uncovered = frozenset(u for u in g.nodes() if u not in s and not (g.neighbors(u) & s))
    connected = g.induced_connected(s) and (bool(s) or g.n == 0)
    return ValidityReport(not uncovered, connected, uncovered)


def is_valid_cds(g: Graph, s: Iterable[int]) -> bool:
    return check_cds(g, s).valid


def _mask_valid(g: Graph, bits: int, closed: list[int], full: int) -> bool:
    cover = 0
    b = bits
    while b:
        low = b & -b
        cover |= closed[low.bit_length() - 1]
        b ^= low
    if cover != full:
        return False
    # flood fill inside the subset
    seen = bits & -bits
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= g.mask(low.bit_length() - 1)
            f ^= low
        frontier = nxt & bits & ~seen
        seen |= frontier
    return seen == bits


def exact_min_cds(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> OracleResult:
    """Smallest CDS by brute force, subsets by size then lexicographic order."""
    if g.n > node_limit:
        raise TooLargeError(f"graph has {g.n} nodes, oracle limit is {node_limit}")
    if not g.is_connected():
        raise PreconditionError("exact_min_cds needs a connected graph")
    if g.n == 0:
        return OracleResult(0, frozenset(), 1)
    closed = [g.closed_mask(u) for u in g.nodes()]
    full = (1 << g.n) - 1
    examined = 0
    for k in range(1, g.n + 1):
        for combo in combinations(range(g.n), k):
            examined += 1
            bits = 0
            for u in combo:
                bits |= 1 << u
            if _mask_valid(g, bits, closed, full):
                return OracleResult(k, frozenset(combo), examined)
    raise AssertionError("unreachable: the full node set of a connected graph is a CDS")


def performance_ratio(approx_size: int, exact_size: int) -> Fraction:
    """``C / C*``; raises OracleViolationError when the approximation is smaller."""
    if exact_size < 1:
        raise ValueError("exact_size must be >= 1")
    if approx_size < exact_size:
        raise OracleViolationError(
            f"approximate size {approx_size} below exact minimum {exact_size}")
    return Fraction(approx_size, exact_size)


def is_one_minimal(g: Graph, s: Iterable[int]) -> bool:
    """No single member of ``s`` can be dropped while keeping a valid CDS."""
    s = set(s)
    return all(not is_valid_cds(g, s - {x}) for x in s)
