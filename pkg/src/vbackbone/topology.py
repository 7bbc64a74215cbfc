"""Random unit-disk topologies in a square area.

Points are drawn from numpy's PCG64 generator (PCG-XSL-RR 128/64), seeded
through ``numpy.random.SeedSequence`` with the 64-bit spec seed. Retry ``k``
of a connected-topology request reseeds with ``derive_seed(seed, k)``.
Coordinates are rounded to 9 fractional digits on creation so a topology
written to disk and read back yields exactly the same graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GenerationFailedError, GraphFormatError
from .graph import Graph

PRNG_NAME = "numpy-PCG64"
MASK64 = (1 << 64) - 1

DEFAULT_AREA_SIDE = 100.0
DEFAULT_RADIUS = 25.0
DEFAULT_MAX_RETRIES = 1000


def splitmix64(x: int) -> int:
    """SplitMix64 output function (Steele, Lea & Flood 2014)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Mix integer keys into ``seed``: ``seed XOR splitmix64-chain(keys)``."""
    h = 0
    for k in keys:
        h = splitmix64(h ^ (k & MASK64))
    return (seed ^ h) & MASK64


@dataclass(frozen=True)
class GenSpec:
    n: int
    area_side: float = DEFAULT_AREA_SIDE
    radius: float = DEFAULT_RADIUS
    seed: int = 0
    require_connected: bool = True
    max_retries: int = DEFAULT_MAX_RETRIES

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.radius <= 0 or self.area_side <= 0:
            raise ValueError("radius and area_side must be positive")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


@dataclass(frozen=True)
class GeometricTopology:
    points: tuple[tuple[float, float], ...]
    area_side: float
    radius: float
    seed: int

    @property
    def n(self) -> int:
        return len(self.points)

    def to_graph(self) -> Graph:
        return to_graph(self)

    def dumps(self) -> str:
        lines = [f"{self.n} {self.area_side!r} {self.radius!r} {self.seed}"]
        lines.extend(f"{i} {x:.9f} {y:.9f}" for i, (x, y) in enumerate(self.points))
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), newline="\n")

    @classmethod
    def loads(cls, text: str) -> GeometricTopology:
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or len(rows[0]) != 4:
            raise GraphFormatError("topology header must be 'n area_side radius seed'")
        try:
            n = int(rows[0][0])
            area, radius, seed = float(rows[0][1]), float(rows[0][2]), int(rows[0][3])
            points = [None] * n
            for r in rows[1:]:
                points[int(r[0])] = (float(r[1]), float(r[2]))
        except (ValueError, IndexError) as exc:
            raise GraphFormatError(f"bad topology file: {exc}") from None
        if len(rows) - 1 != n or any(p is None for p in points):
            raise GraphFormatError(f"expected {n} point lines")
        return cls(tuple(points), area, radius, seed)

    @classmethod
    def load(cls, path: str | Path) -> GeometricTopology:
        return cls.loads(Path(path).read_text())


def _draw(n: int, area_side: float, seed: int) -> tuple[tuple[float, float], ...]:
    rng = np.random.Generator(np.random.PCG64(seed))
    raw = rng.random((n, 2)) * area_side
    return tuple((float(f"{x:.9f}"), float(f"{y:.9f}")) for x, y in raw)


def to_graph(t: GeometricTopology) -> Graph:
    """Unit-disk graph: ``u ~ v`` iff Euclidean distance <= radius (closed disk)."""
    n = t.n
    if n == 0:
        return Graph(0)
    pts = np.asarray(t.points, dtype=float)
    d = np.hypot(pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1])
    us, vs = np.nonzero(np.triu(d <= t.radius, k=1))
    return Graph(n, zip(us.tolist(), vs.tolist()))


def generate(spec: GenSpec) -> GeometricTopology:
    """Uniform i.i.d. placement; redraws until connected if requested.

    Raises GenerationFailedError after ``max_retries`` unsuccessful draws.
    """
    for attempt in range(spec.max_retries):
        seed = spec.seed if attempt == 0 else derive_seed(spec.seed, attempt)
        topo = GeometricTopology(_draw(spec.n, spec.area_side, seed), spec.area_side,
                                 spec.radius, spec.seed)
        if not spec.require_connected or to_graph(topo).is_connected():
            return topo
    raise GenerationFailedError(spec.max_retries)
