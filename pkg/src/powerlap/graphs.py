"""Undirected simple graphs, power-graph constructions and connectivity.

Adjacency is stored as one Python-int bitmask per vertex, which keeps
membership tests O(1) and whole-row operations cheap at desk scale
(a few thousand vertices).
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .groups import FiniteGroup, cyclic_group

__all__ = [
    "Graph",
    "CutCertificate",
    "TwinPartition",
    "power_graph",
    "proper_power_graph",
    "reduced_cyclic_graph",
    "components",
    "complement",
    "induced_subgraph",
    "is_complete",
    "vertex_connectivity",
    "vertex_connectivity_exhaustive",
    "twin_partition",
]


def _rows_to_bitmatrix(rows: Sequence[int], n: int) -> np.ndarray:
    """Bitmask rows as an n x n boolean matrix (C-speed bulk conversion)."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    nbytes = (n + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :n]


def _bitmatrix_to_rows(mat: np.ndarray) -> list[int]:
    n = mat.shape[0]
    if n == 0:
        return []
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``rows[v]`` is the neighbor bitmask of v (bit u set iff u ~ v).
    Symmetric and irreflexive by construction; validated on creation.
    """

    n: int
    rows: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError("row count must equal vertex count")
        for v, row in enumerate(self.rows):
            if row < 0 or row >> self.n:
                raise ValueError(f"row {v} references vertices outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
        mat = _rows_to_bitmatrix(self.rows, self.n)
        if not np.array_equal(mat, mat.T):
            v, u = np.argwhere(mat != mat.T)[0]
            raise ValueError(f"adjacency not symmetric at ({int(v)}, {int(u)})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal vertex count")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows), tuple(labels) if labels is not None else None)

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << v) for v in range(n)))

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            m = self.rows[v] >> (v + 1)
            u = v + 1
            while m:
                if m & 1:
                    out.append((v, u))
                m >>= 1
                u += 1
        return out

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    # export ----------------------------------------------------------

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {self.edge_count()}"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        doc = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class CutCertificate:
    """A minimum separating set: its size and one witnessing vertex set."""

    size: int
    separating_set: tuple[int, ...]


# ---------------------------------------------------------------------------
# power-graph constructions


def power_graph(g: FiniteGroup) -> Graph:
    """Power graph: u ~ v iff u != v and one generates a subgroup containing the other."""
    n = g.order
    masks = g.subgroup_masks()
    mat = _rows_to_bitmatrix(masks, n)
    both = mat | mat.T
    transposed = _bitmatrix_to_rows(both)
    rows = tuple(transposed[v] & ~(1 << v) for v in range(n))
    return Graph(n, rows, tuple(g.element_names))


def proper_power_graph(g: FiniteGroup) -> Graph:
    """Power graph with the identity vertex removed."""
    if g.order < 2:
        raise ValueError("proper power graph requires a group of order >= 2")
    pg = power_graph(g)
    keep = [v for v in range(g.order) if v != g.identity]
    return induced_subgraph(pg, keep)


def reduced_cyclic_graph(n: int) -> Graph:
    """Power graph of Z_n with the identity and all generators removed.

    For prime n every vertex is removed and the empty graph is returned;
    callers should treat that as the degenerate case, not an error.
    """
    if n < 2:
        raise ValueError(f"reduced_cyclic_graph requires n >= 2, got {n}")
    g = cyclic_group(n)
    pg = power_graph(g)
    keep = [v for v in range(1, n) if math.gcd(v, n) != 1]
    return induced_subgraph(pg, keep)


# ---------------------------------------------------------------------------
# combinatorial queries


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        frontier = 1 << v
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                nxt |= g.rows[u]
            frontier = nxt & ~comp
        seen |= comp
        out.append(_bits(comp))
    return out


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = tuple((full ^ g.rows[v]) & ~(1 << v) for v in range(g.n))
    return Graph(g.n, rows, g.labels)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by the given vertex set, relabeled 0..k-1 in sorted order."""
    verts = sorted(set(vertices))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex {v}")
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        m = g.rows[v]
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if u in pos:
                row |= 1 << pos[u]
        rows.append(row)
    labels = tuple(g.label_of(v) for v in verts) if g.labels is not None else None
    return Graph(len(verts), tuple(rows), labels)


def is_complete(g: Graph) -> bool:
    return g.edge_count() == g.n * (g.n - 1) // 2


# ---------------------------------------------------------------------------
# twin classes (identical neighborhoods)


@dataclass(frozen=True)
class TwinPartition:
    """Partition of the vertices into twin classes.

    Each class is either a clique of vertices sharing a closed
    neighborhood or an independent set sharing an open neighborhood.
    Cross-class adjacency is all-or-nothing, so the quotient carries the
    full structure: ``counts[i][j]`` is how many neighbors a vertex of
    class i has inside class j (within-class count on the diagonal).
    """

    classes: tuple[tuple[int, ...], ...]
    is_clique: tuple[bool, ...]
    counts: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.classes)

    def class_size(self, i: int) -> int:
        return len(self.classes[i])

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.counts[i][j] > 0


def twin_partition(g: Graph) -> TwinPartition:
    """Group vertices with identical closed or open neighborhoods."""
    by_closed: dict[int, list[int]] = {}
    for v in range(g.n):
        by_closed.setdefault(g.rows[v] | (1 << v), []).append(v)

    classes: list[tuple[list[int], bool]] = []
    leftovers: list[int] = []
    for members in by_closed.values():
        if len(members) > 1:
            classes.append((members, True))
        else:
            leftovers.append(members[0])
    by_open: dict[int, list[int]] = {}
    for v in leftovers:
        by_open.setdefault(g.rows[v], []).append(v)
    for members in by_open.values():
        classes.append((members, len(members) == 1))

    # deterministic order: by smallest member
    classes.sort(key=lambda c: c[0][0])
    masks = [sum(1 << v for v in members) for members, _ in classes]
    counts = []
    degrees = []
    for members, _ in classes:
        u = members[0]
        row = g.rows[u]
        counts.append(tuple((row & m).bit_count() for m in masks))
        degrees.append(row.bit_count())
    # singleton classes are vacuously cliques
    is_clique = tuple(flag or len(m) == 1 for m, flag in classes)
    return TwinPartition(
        classes=tuple(tuple(sorted(m)) for m, _ in classes),
        is_clique=is_clique,
        counts=tuple(counts),
        degrees=tuple(degrees),
    )


# ---------------------------------------------------------------------------
# vertex connectivity


def vertex_connectivity(g: Graph) -> CutCertificate:
    """Exact vertex connectivity with a witnessing minimum separating set.

    Complete graphs get n-1 by convention (removal down to the trivial
    graph); disconnected, trivial and empty graphs get 0.  Otherwise the
    value is the Menger minimum over non-adjacent vertex pairs, computed
    as a vertex-capacitated max-flow on the twin quotient (twins can be
    collapsed because a minimum cut never needs part of a twin class
    whose other members survive).
    """
    if g.n <= 1:
        return CutCertificate(0, ())
    comps = components(g)
    if len(comps) > 1:
        return CutCertificate(0, ())
    if is_complete(g):
        return CutCertificate(g.n - 1, tuple(range(g.n - 1)))

    tp = twin_partition(g)
    m = tp.size
    best: Optional[int] = None
    best_witness: tuple[int, ...] = ()

    # non-adjacent pair inside one independent-set class: the shared
    # open neighborhood is the unique minimum cut for that pair
    for i in range(m):
        if not tp.is_clique[i] and tp.class_size(i) >= 2:
            if best is None or tp.degrees[i] < best:
                u = tp.classes[i][0]
                best = tp.degrees[i]
                best_witness = tuple(g.neighbors(u))

    # Menger over non-adjacent class pairs.  Any set of kappa+1 classes
    # must contain one that avoids some minimum cut, so scanning sources
    # until the index exceeds the best value seen is exhaustive.
    order = sorted(range(m), key=lambda i: tp.degrees[i])
    for si, src in enumerate(order):
        if best is not None and si > best:
            break
        for dst in range(m):
            if dst == src or tp.adjacent(src, dst):
                continue
            value, cut_classes = _quotient_min_cut(tp, src, dst, best)
            if value is not None and (best is None or value < best):
                best = value
                witness: list[int] = []
                for c in cut_classes:
                    witness.extend(tp.classes[c])
                best_witness = tuple(sorted(witness))
    assert best is not None  # non-complete connected graph has a cut
    return CutCertificate(best, best_witness)


def _quotient_min_cut(tp: TwinPartition, src: int, dst: int,
                      cap_limit: Optional[int]):
    """Min vertex-capacitated cut separating class src from class dst.

    Max-flow on the split network (class i becomes i_in -> i_out with
    capacity |class i|; source and sink are uncapacitated).  Aborts and
    returns (None, ()) once the flow reaches cap_limit, since it can no
    longer improve on the best cut already known.
    """
    m = tp.size
    # node ids: in(i) = 2i, out(i) = 2i+1
    cap: dict[tuple[int, int], int] = {}
    inf = 1 << 40
    for i in range(m):
        cap[(2 * i, 2 * i + 1)] = inf if i in (src, dst) else tp.class_size(i)
        for j in range(m):
            if j != i and tp.adjacent(i, j):
                cap[(2 * i + 1, 2 * j)] = inf
    flow: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {}
    for a, b in cap:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    s, t = 2 * src + 1, 2 * dst
    total = 0
    while True:
        if cap_limit is not None and total >= cap_limit:
            return None, ()
        parent = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y in parent:
                    continue
                residual = cap.get((x, y), 0) - flow.get((x, y), 0) + flow.get((y, x), 0)
                if residual > 0:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        # bottleneck along the path
        path = []
        y = t
        while y != s:
            x = parent[y]
            path.append((x, y))
            y = x
        bottleneck = min(
            cap.get(e, 0) - flow.get(e, 0) + flow.get((e[1], e[0]), 0) for e in path
        )
        for x, y in path:
            back = flow.get((y, x), 0)
            if back >= bottleneck:
                flow[(y, x)] = back - bottleneck
            else:
                flow[(y, x)] = 0
                flow[(x, y)] = flow.get((x, y), 0) + bottleneck - back
        total += bottleneck
    # cut: classes whose in-node is reachable but out-node is not
    reach = {s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y in reach:
                continue
            residual = cap.get((x, y), 0) - flow.get((x, y), 0) + flow.get((y, x), 0)
            if residual > 0:
                reach.add(y)
                queue.append(y)
    cut = tuple(
        i for i in range(m) if 2 * i in reach and 2 * i + 1 not in reach
    )
    return total, cut


def vertex_connectivity_exhaustive(g: Graph) -> CutCertificate:
    """Brute-force minimum separating set, for cross-checking small graphs."""
    if g.n > 20:
        raise ValueError("exhaustive search is limited to 20 vertices")
    if g.n <= 1:
        return CutCertificate(0, ())
    if len(components(g)) > 1:
        return CutCertificate(0, ())
    if is_complete(g):
        return CutCertificate(g.n - 1, tuple(range(g.n - 1)))
    from itertools import combinations

    for k in range(1, g.n - 1):
        for subset in combinations(range(g.n), k):
            rest = [v for v in range(g.n) if v not in subset]
            h = induced_subgraph(g, rest)
            if len(components(h)) > 1:
                return CutCertificate(k, subset)
    return CutCertificate(g.n - 1, tuple(range(g.n - 1)))
