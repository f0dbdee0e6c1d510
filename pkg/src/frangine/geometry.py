"""Spatial substrate: Poisson point process node layouts and F-AP topology.

The region is a flat rectangle with no wrap-around; edge effects are
accepted (experiments read interior statistics).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class NodeKind(Enum):
    HPN = "hpn"
    FAP = "fap"
    FUE = "fue"


class FapTopology(Enum):
    MESH = "mesh"
    TREE = "tree"


@dataclass(frozen=True)
class Region:
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("region dimensions must be positive")

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass
class NodeSet:
    kind: NodeKind
    positions: np.ndarray  # (n, 2) meters
    density: float  # nodes per square meter

    def __len__(self) -> int:
        return self.positions.shape[0]


@dataclass
class NetworkTopology:
    region: Region
    hpns: NodeSet
    faps: NodeSet
    fues: NodeSet
    fap_link_topology: FapTopology = FapTopology.TREE
    fap_adjacency: set = field(default_factory=set)  # frozenset of (i, j), i < j


def sample_ppp(
    density: float,
    region: Region,
    rng: np.random.Generator,
    kind: NodeKind = NodeKind.FUE,
) -> NodeSet:
    """Homogeneous PPP sample: Poisson(density*area) points, uniform i.i.d."""
    if density < 0:
        raise ValueError("density must be nonnegative")
    if region.area <= 0:
        raise ValueError("region must have positive area")
    n = rng.poisson(density * region.area)
    xs = rng.uniform(0.0, region.width, size=n)
    ys = rng.uniform(0.0, region.height, size=n)
    return NodeSet(kind=kind, positions=np.column_stack([xs, ys]), density=density)


def distance(a, b) -> float:
    """Euclidean distance between two (x, y) positions, meters."""
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def pairwise_distances(positions_a: np.ndarray, positions_b: np.ndarray) -> np.ndarray:
    """(len(a), len(b)) Euclidean distance matrix."""
    a = np.asarray(positions_a, dtype=float).reshape(-1, 2)
    b = np.asarray(positions_b, dtype=float).reshape(-1, 2)
    diff = a[:, None, :] - b[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def build_fap_adjacency(faps: NodeSet, mode: FapTopology) -> set:
    """Edges between F-APs: complete graph (mesh) or Euclidean MST (tree).

    Tree ties are broken toward the lower (i, j) index pair, making the MST
    deterministic even with equidistant nodes.
    """
    n = len(faps)
    if n < 1:
        raise ValueError("at least one F-AP required")
    if mode is FapTopology.MESH:
        return {(i, j) for i in range(n) for j in range(i + 1, n)}
    if n == 1:
        return set()
    # Prim's algorithm with (distance, i, j) lexicographic selection.
    dist = pairwise_distances(faps.positions, faps.positions)
    in_tree = {0}
    edges = set()
    while len(in_tree) < n:
        best = None
        for i in sorted(in_tree):
            for j in range(n):
                if j in in_tree:
                    continue
                cand = (dist[i, j], min(i, j), max(i, j))
                if best is None or cand < best:
                    best = cand
        _, i, j = best
        edges.add((i, j))
        in_tree.update((i, j))
    return edges


def pair_d2d(fues: NodeSet, d2d_capable: np.ndarray) -> list[tuple[int, int]]:
    """Greedy nearest-neighbor D2D pairing over capable F-UEs.

    Candidate pairs are taken in ascending distance order (ties by index);
    each F-UE joins at most one pair.
    """
    idx = np.flatnonzero(np.asarray(d2d_capable, dtype=bool))
    if idx.size < 2:
        return []
    dist = pairwise_distances(fues.positions[idx], fues.positions[idx])
    candidates = sorted(
        (dist[a, b], int(idx[a]), int(idx[b]))
        for a in range(idx.size)
        for b in range(a + 1, idx.size)
    )
    paired: set[int] = set()
    pairs = []
    for _, i, j in candidates:
        if i in paired or j in paired:
            continue
        pairs.append((i, j))
        paired.update((i, j))
    return pairs


def adjacency_is_connected(edges: set, nodes: list[int]) -> bool:
    """Whether `nodes` induce a connected subgraph of the edge set."""
    nodes = list(nodes)
    if len(nodes) <= 1:
        return True
    node_set = set(nodes)
    neighbors = {v: set() for v in nodes}
    for i, j in edges:
        if i in node_set and j in node_set:
            neighbors[i].add(j)
            neighbors[j].add(i)
    seen = {nodes[0]}
    frontier = [nodes[0]]
    while frontier:
        v = frontier.pop()
        for w in neighbors[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(nodes)
