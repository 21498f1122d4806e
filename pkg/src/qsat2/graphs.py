"""Random graph models and the subgraph enumeration the analysis relies on.

Two families are supported: Erdos-Renyi graphs with a fixed edge count, and
bond-percolated square/cubic lattices.  Sampling is deterministic per seed;
the Fisher-Yates steps are written out explicitly so the byte stream of
random draws is pinned by this module rather than by library internals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


@dataclass(frozen=True)
class LatticeInfo:
    """Geometry tag for lattice graphs: dimension d in {2, 3} and side L."""

    d: int
    L: int


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges canonical (u < v) and sorted."""

    n: int
    edges: tuple[tuple[int, int], ...]
    lattice: Optional[LatticeInfo] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or misordered")
            if prev is not None and (u, v) <= prev:
                raise ValueError(f"edges not sorted and distinct at ({u},{v})")
            prev = (u, v)

    @property
    def m(self) -> int:
        return len(self.edges)

    def model_tag(self) -> str:
        if self.lattice is None:
            return "er"
        return f"lat{self.lattice.d}"


def adjacency(g: Graph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


# ---------------------------------------------------------------------------
# sampling


def _shuffle_prefix(items: list, k: int, rng: random.Random) -> list:
    # Fisher-Yates, stopped after k draws; returns the k selected items.
    n = len(items)
    for i in range(k):
        j = rng.randrange(i, n)
        items[i], items[j] = items[j], items[i]
    return items[:k]


def sample_er_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform random graph with n vertices and exactly m distinct edges.

    Uses hash-set rejection while m is small relative to n^2 and falls back
    to a partial shuffle of the materialised pair list when the requested
    density would make rejection slow.
    """
    npairs = n * (n - 1) // 2
    if m < 0 or m > npairs:
        raise ValueError(f"m={m} out of range for n={n}")
    rng = random.Random(seed)
    if m <= n * n // 8:
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < m:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                continue
            if u > v:
                u, v = v, u
            chosen.add((u, v))
        edges = tuple(sorted(chosen))
    else:
        allpairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = tuple(sorted(_shuffle_prefix(allpairs, m, rng)))
    return Graph(n, edges)


def lattice_vertex(coord: Sequence[int], L: int) -> int:
    vid = 0
    for c in coord:
        vid = vid * L + c
    return vid


def lattice_coord(vid: int, d: int, L: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(vid % L)
        vid //= L
    return tuple(reversed(out))


def _lattice_edges(d: int, L: int) -> Iterator[tuple[int, int]]:
    # Row-major vertex order; for each vertex, its +1 neighbour per axis.
    for vid in range(L**d):
        coord = lattice_coord(vid, d, L)
        for axis in range(d):
            if coord[axis] + 1 < L:
                nb = list(coord)
                nb[axis] += 1
                yield vid, lattice_vertex(nb, L)


def sample_lattice(d: int, L: int, p: float, seed: int) -> Graph:
    """Bond percolation on the d-dimensional L^d lattice: keep each edge w.p. p."""
    if d not in (2, 3):
        raise ValueError("lattice dimension must be 2 or 3")
    if L < 2:
        raise ValueError("lattice side must be at least 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError("bond probability must lie in [0, 1]")
    rng = random.Random(seed)
    kept = []
    for u, v in _lattice_edges(d, L):
        if rng.random() < p:
            kept.append((u, v) if u < v else (v, u))
    return Graph(L**d, tuple(sorted(kept)), LatticeInfo(d, L))


# ---------------------------------------------------------------------------
# components


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[tuple[int, ...], ...]
    edge_counts: tuple[int, ...]
    classes: tuple[str, ...]
    max_size: int
    multicyclic_count: int


def components(g: Graph) -> ComponentReport:
    """Connected components with a tree/unicyclic/multicyclic class each."""
    uf = UnionFind(g.n)
    for u, v in g.edges:
        uf.union(u, v)
    members: dict[int, list[int]] = {}
    for v in range(g.n):
        members.setdefault(uf.find(v), []).append(v)
    ecount = {root: 0 for root in members}
    for u, v in g.edges:
        ecount[uf.find(u)] += 1
    comps = sorted(members.values())
    counts = tuple(ecount[uf.find(c[0])] for c in comps)
    classes = []
    for comp, ec in zip(comps, counts):
        excess = ec - len(comp) + 1
        classes.append("tree" if excess == 0 else "unicyclic" if excess == 1 else "multicyclic")
    return ComponentReport(
        components=tuple(tuple(c) for c in comps),
        edge_counts=counts,
        classes=tuple(classes),
        max_size=max((len(c) for c in comps), default=0),
        multicyclic_count=sum(1 for c in classes if c == "multicyclic"),
    )


# ---------------------------------------------------------------------------
# small subgraph enumeration


def enumerate_cycles(g: Graph, length: int) -> list[tuple[int, ...]]:
    """All simple cycles with exactly `length` vertices, each listed once.

    Canonical form: the tuple starts at the cycle's smallest vertex and the
    second entry is smaller than the last, fixing the direction.
    """
    if length < 3:
        raise ValueError("cycles need at least three vertices")
    adj = [sorted(nbrs) for nbrs in adjacency(g)]
    adjset = [frozenset(nbrs) for nbrs in adj]
    cycles: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path = [False] * g.n

    def extend(start: int) -> None:
        v = path[-1]
        if len(path) == length:
            if start in adjset[v] and path[1] < v:
                cycles.append(tuple(path))
            return
        for w in adj[v]:
            if w > start and not on_path[w]:
                path.append(w)
                on_path[w] = True
                extend(start)
                path.pop()
                on_path[w] = False

    for s in range(g.n):
        path = [s]
        on_path[s] = True
        extend(s)
        on_path[s] = False
    return cycles


@dataclass(frozen=True)
class FigureEight:
    """Two equal-length cycles sharing exactly one vertex (the crux)."""

    crux: int
    cycle_a: tuple[int, ...]
    cycle_b: tuple[int, ...]


def _rotate_to(cycle: tuple[int, ...], v: int) -> tuple[int, ...]:
    k = cycle.index(v)
    return cycle[k:] + cycle[:k]


def enumerate_figure_eights(
    g: Graph, length: int, allow_long: bool = False
) -> list[FigureEight]:
    """All unordered pairs of `length`-cycles whose vertex sets meet in one point.

    Enumeration is quadratic in the number of cycles, so lengths above 4 are
    refused unless `allow_long` is set.
    """
    if length > 4 and not allow_long:
        raise ValueError("cycle length above 4; pass allow_long=True to force")
    cycles = enumerate_cycles(g, length)
    sets = [frozenset(c) for c in cycles]
    out: list[FigureEight] = []
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            common = sets[i] & sets[j]
            if len(common) == 1:
                (crux,) = common
                out.append(
                    FigureEight(crux, _rotate_to(cycles[i], crux), _rotate_to(cycles[j], crux))
                )
    return out


@dataclass(frozen=True)
class Domino:
    """Two lattice plaquettes sharing one edge: 6 vertices, 7 edges.

    `shared` is the common edge (b, e); each side path runs b -> x -> y -> e
    around one plaquette.  Together with the shared edge these are the three
    independent b-e paths of the subgraph.
    """

    shared: tuple[int, int]
    side_a: tuple[int, int, int, int]
    side_b: tuple[int, int, int, int]

    def paths(self) -> list[tuple[int, ...]]:
        return [self.shared, self.side_a, self.side_b]


def _plaquettes_on_edge(
    coord: tuple[int, ...], axis: int, d: int, L: int, present: frozenset[tuple[int, int]]
) -> list[tuple[int, int, int, int]]:
    """Side paths b -> x -> y -> e for every fully-present plaquette on the edge."""

    def vid(c: Sequence[int]) -> int:
        return lattice_vertex(c, L)

    def has(a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in present

    b = vid(coord)
    ecoord = list(coord)
    ecoord[axis] += 1
    e = vid(ecoord)
    sides = []
    for axis2 in range(d):
        if axis2 == axis:
            continue
        for sgn in (-1, 1):
            c2 = coord[axis2] + sgn
            if not 0 <= c2 < L:
                continue
            xcoord = list(coord)
            xcoord[axis2] = c2
            ycoord = list(ecoord)
            ycoord[axis2] = c2
            x, y = vid(xcoord), vid(ycoord)
            if has(b, x) and has(x, y) and has(y, e):
                sides.append((b, x, y, e))
    return sides


def enumerate_dominoes(g: Graph) -> list[Domino]:
    """All dominoes present in a lattice graph, one per shared edge and pair.

    A domino requires its shared edge plus both plaquettes' remaining edges,
    seven edges in all.  Raises ValueError for non-lattice graphs.
    """
    if g.lattice is None:
        raise ValueError("domino enumeration needs a lattice graph")
    d, L = g.lattice.d, g.lattice.L
    present = frozenset(g.edges)
    out: list[Domino] = []
    for u, v in g.edges:
        cu = lattice_coord(u, d, L)
        cv = lattice_coord(v, d, L)
        axis = next(i for i in range(d) if cu[i] != cv[i])
        base = cu if cu[axis] < cv[axis] else cv
        sides = _plaquettes_on_edge(tuple(base), axis, d, L, present)
        b = lattice_vertex(base, L)
        e = v if b == u else u
        for i in range(len(sides)):
            for j in range(i + 1, len(sides)):
                out.append(Domino((b, e), sides[i], sides[j]))
    return out
