"""Random instances: factor distributions, samplers, and the instance file format.

An instance is an interaction graph whose every edge carries a product
constraint <alpha_h|_u (x) <alpha_j|_v, with (h, j) drawn i.i.d. from a
finite factor distribution.  Two samplers are provided: unconditional, and
frustration-free conditioned (each edge's factor pair is rejection-resampled
until the growing instance stays satisfiable).
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterator, Optional, Sequence

from .constraints import BraConstraint, ProductConstraint
from .exactq import BraState, GaussianRational, bra, parse_bra, proportional
from .graphs import Graph, LatticeInfo
from .twosat import TwoSatEngine


def default_factors(f: int) -> tuple[BraState, ...]:
    """f pairwise non-proportional bras: <0|, <1|, then (1, t) for small t.

    After the six named entries the tail continues with (1, k), (1, -k),
    (1, ki), (1, -ki); distinct second components keep the family pairwise
    non-proportional for any f.
    """
    if f < 1:
        raise ValueError("need at least one factor")
    out = [
        bra(1, 0),
        bra(0, 1),
        bra(1, 1),
        bra(1, -1),
        bra(1, GaussianRational.of(0, 1)),
        bra(1, GaussianRational.of(0, -1)),
    ]
    k = 2
    while len(out) < f:
        out.append(bra(1, k))
        out.append(bra(1, -k))
        out.append(bra(1, GaussianRational.of(0, k)))
        out.append(bra(1, GaussianRational.of(0, -k)))
        k += 1
    return tuple(out[:f])


@dataclass(frozen=True)
class FactorDistribution:
    """Factor table plus exact sampling weights q, sorted non-increasing."""

    factors: tuple[BraState, ...]
    q: tuple[Fraction, ...]
    _cum: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _den: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        f = len(self.factors)
        if f == 0 or len(self.q) != f:
            raise ValueError("factors and q must be nonempty and equal-length")
        if any(w <= 0 for w in self.q):
            raise ValueError("every weight must be positive")
        if sum(self.q) != 1:
            raise ValueError("weights must sum to exactly 1")
        if any(a < b for a, b in zip(self.q, self.q[1:])):
            raise ValueError("weights must be non-increasing")
        if f > 1 and self.q[0] == 1:
            raise ValueError("a degenerate weight 1 requires f = 1")
        for i in range(f):
            for j in range(i + 1, f):
                if proportional(self.factors[i], self.factors[j]):
                    raise ValueError(f"factors {i} and {j} are proportional")
        # integer thresholds for exact inverse-CDF sampling
        den = lcm(*(w.denominator for w in self.q))
        cum, acc = [], 0
        for w in self.q:
            acc += int(w * den)
            cum.append(acc)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_cum", tuple(cum))

    @classmethod
    def uniform(cls, f: int, factors: Optional[Sequence[BraState]] = None) -> "FactorDistribution":
        facs = tuple(factors) if factors is not None else default_factors(f)
        return cls(facs, tuple(Fraction(1, f) for _ in range(f)))

    @classmethod
    def from_weights(
        cls, weights: Sequence[Fraction], factors: Optional[Sequence[BraState]] = None
    ) -> "FactorDistribution":
        """Exact distribution from non-increasing relative weights."""
        qs = tuple(Fraction(w) for w in weights)
        total = sum(qs)
        if total <= 0:
            raise ValueError("weights must have a positive sum")
        qs = tuple(w / total for w in qs)
        facs = tuple(factors) if factors is not None else default_factors(len(qs))
        return cls(facs, qs)

    @property
    def f(self) -> int:
        return len(self.factors)

    def sample(self, rng: random.Random) -> int:
        return bisect_right(self._cum, rng.randrange(self._den))

    def norm_power(self, p: int) -> Fraction:
        """The p-norm raised to the p-th power, sum of q_i^p, exact."""
        return sum((w**p for w in self.q), Fraction(0))

    def norm_inf(self) -> Fraction:
        return self.q[0]


@dataclass(frozen=True)
class Instance:
    """A graph with one factor-index pair per edge, aligned to graph.edges.

    `conditioning` records provenance: "any" for unconditional sampling,
    "free" for the frustration-free rejection sampler; `resamples` counts
    rejected factor pairs during conditioned generation.
    """

    graph: Graph
    pairs: tuple[tuple[int, int], ...]
    dist: FactorDistribution
    conditioning: str = "any"
    seed: int = 0
    resamples: int = 0

    def __post_init__(self):
        if len(self.pairs) != self.graph.m:
            raise ValueError("one factor pair per edge required")
        f = self.dist.f
        for h, j in self.pairs:
            if not (0 <= h < f and 0 <= j < f):
                raise ValueError("factor index out of range")
        if self.conditioning not in ("any", "free"):
            raise ValueError("conditioning must be 'any' or 'free'")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def constraints(self) -> Iterator[ProductConstraint]:
        for (u, v), (h, j) in zip(self.graph.edges, self.pairs):
            yield ProductConstraint(u, v, h, j)

    def realized(self) -> Iterator[BraConstraint]:
        for c in self.constraints():
            yield c.realize(self.dist.factors)

    def edge_tuples(self) -> Iterator[tuple[int, int, int, int]]:
        for (u, v), (h, j) in zip(self.graph.edges, self.pairs):
            yield u, v, h, j

    def engine(self) -> TwoSatEngine:
        eng = TwoSatEngine(self.graph.n)
        for u, v, h, j in self.edge_tuples():
            eng.add_edge(u, v, h, j)
        return eng


def sample_instance(g: Graph, dist: FactorDistribution, seed: int) -> Instance:
    """Attach i.i.d. factor pairs from q (x) q to every edge of g."""
    rng = random.Random(seed)
    pairs = tuple((dist.sample(rng), dist.sample(rng)) for _ in range(g.m))
    return Instance(g, pairs, dist, "any", seed, 0)


def satisfiable(inst: Instance) -> bool:
    return inst.engine().solve(want_witness=False) is not None


def product_witness(inst: Instance) -> Optional[list[Optional[int]]]:
    """A satisfying product assignment: factor index per vertex, None = free.

    A free vertex may take any state not orthogonal to any factor; such a
    state always exists because the factor table is finite.  Returns None
    when the instance is unsatisfiable.
    """
    return inst.engine().solve(want_witness=True)


class ResampleBudgetError(RuntimeError):
    def __init__(self, u: int, v: int, budget: int):
        super().__init__(
            f"edge ({u},{v}): no satisfiable factor pair found in {budget} resamples"
        )
        self.edge = (u, v)
        self.budget = budget


# During conditioned generation each candidate factor pair needs a
# satisfiability decision for "current instance plus this edge".  BFS
# closure queries answer almost all of them; the visit cap below bounds the
# work per query, and a tripped cap falls back to the full SCC solve.
_QUERY_CAP = 2048


def sample_frustration_free_instance(
    g: Graph, dist: FactorDistribution, seed: int, budget: int = 10_000
) -> Instance:
    """Sample factors edge by edge, rejecting pairs that frustrate.

    Edges are visited in a seed-determined random order; each edge's (h, j)
    is drawn from q (x) q and redrawn while the partial instance would
    become unsatisfiable.  The emitted instance always passes satisfiable().
    Raises ResampleBudgetError if one edge rejects `budget` pairs in a row
    (impossible when some satisfiable choice exists, which is always the
    case; the budget guards against defects, not bad luck).
    """
    rng = random.Random(seed)
    order = list(range(g.m))
    for i in range(g.m - 1, 0, -1):  # Fisher-Yates, pinned to randrange draws
        k = rng.randrange(i + 1)
        order[i], order[k] = order[k], order[i]

    eng = TwoSatEngine(g.n)
    frozen = eng.frozen
    # union-find over added edges: feasibility is automatic on tree components
    parent = list(range(g.n))
    cyclic = [False] * g.n

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    pairs: list[Optional[tuple[int, int]]] = [None] * g.m
    resamples = 0

    def feasible_side(w: int, s: int) -> bool:
        if not cyclic[find(w)]:
            return True
        ans = eng.feasible(w, s, cap=_QUERY_CAP)
        if ans is None:
            ans = eng.solve(units=[(w, s)], want_witness=False) is not None
        return ans

    for idx in order:
        u, v = g.edges[idx]
        rejected = 0
        while True:
            h = dist.sample(rng)
            j = dist.sample(rng)
            fu, fv = frozen[u], frozen[v]
            if fu == h or fv == j:
                sat_u = sat_v = True
            else:
                if fu is not None and fv is not None:
                    sat_u = sat_v = False
                else:
                    sat_u = feasible_side(u, h)
                    sat_v = feasible_side(v, j)
                if not (sat_u or sat_v):
                    rejected += 1
                    resamples += 1
                    if rejected >= budget:
                        raise ResampleBudgetError(u, v, budget)
                    continue
            pairs[idx] = (h, j)
            eng.add_edge(u, v, h, j)
            ru, rv = find(u), find(v)
            closed_cycle = ru == rv
            if closed_cycle:
                cyclic[ru] = True
            else:
                parent[ru] = rv
                cyclic[rv] = cyclic[ru] or cyclic[rv]
            # cache entailed states: an infeasible side entails the other,
            # and a closed cycle can pin its endpoints
            if sat_u and not sat_v:
                eng.freeze(u, h)
            elif sat_v and not sat_u:
                eng.freeze(v, j)
            elif closed_cycle and sat_u and sat_v:
                if frozen[u] is None and eng.pinned_to(u, h, cap=_QUERY_CAP):
                    eng.freeze(u, h)
                if frozen[v] is None and eng.pinned_to(v, j, cap=_QUERY_CAP):
                    eng.freeze(v, j)
            break

    return Instance(g, tuple(pairs), dist, "free", seed, resamples)


# ---------------------------------------------------------------------------
# file format


FORMAT_MAGIC = "QSAT2 v1"


def format_instance(inst: Instance) -> str:
    """Render the line-oriented text form; parsing it back is bit-exact."""
    g = inst.graph
    if g.lattice is None:
        model, L = "er", 0
    else:
        model, L = f"lat{g.lattice.d}", g.lattice.L
    lines = [
        FORMAT_MAGIC,
        f"n={g.n} m={g.m} f={inst.dist.f} model={model} L={L} "
        f"seed={inst.seed} cond={inst.conditioning} resamples={inst.resamples}",
    ]
    for i, fac in enumerate(inst.dist.factors):
        lines.append(f"F {i + 1} {fac.render()}")
    for i, w in enumerate(inst.dist.q):
        lines.append(f"Q {i + 1} {w.numerator}/{w.denominator}")
    for (u, v), (h, j) in zip(g.edges, inst.pairs):
        lines.append(f"E {u} {v} {h + 1} {j + 1}")
    return "\n".join(lines) + "\n"


class InstanceParseError(ValueError):
    pass


def _parse_header(line: str) -> dict[str, str]:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise InstanceParseError(f"bad header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    for key in ("n", "m", "f", "model", "L", "seed", "cond", "resamples"):
        if key not in fields:
            raise InstanceParseError(f"header missing {key}")
    return fields


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or lines[0] != FORMAT_MAGIC:
        raise InstanceParseError(f"expected leading {FORMAT_MAGIC!r} line")
    if len(lines) < 2:
        raise InstanceParseError("missing header line")
    hdr = _parse_header(lines[1])
    try:
        n, m, f, L = int(hdr["n"]), int(hdr["m"]), int(hdr["f"]), int(hdr["L"])
        seed, resamples = int(hdr["seed"]), int(hdr["resamples"])
    except ValueError as e:
        raise InstanceParseError(f"non-integer header field: {e}") from None
    model, cond = hdr["model"], hdr["cond"]
    if model not in ("er", "lat2", "lat3"):
        raise InstanceParseError(f"unknown model {model!r}")
    if cond not in ("free", "any"):
        raise InstanceParseError(f"unknown conditioning {cond!r}")
    body = [ln for ln in lines[2:] if ln.strip()]
    if len(body) != 2 * f + m:
        raise InstanceParseError(f"expected {2 * f + m} body lines, found {len(body)}")

    factors: list[BraState] = []
    weights: list[Fraction] = []
    for i in range(f):
        ln = body[i]
        parts = ln.split(maxsplit=2)
        if len(parts) != 3 or parts[0] != "F" or parts[1] != str(i + 1):
            raise InstanceParseError(f"bad factor line {ln!r}")
        try:
            factors.append(parse_bra(parts[2]))
        except ValueError as e:
            raise InstanceParseError(f"bad bra in {ln!r}: {e}") from None
    for i in range(f):
        ln = body[f + i]
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "Q" or parts[1] != str(i + 1):
            raise InstanceParseError(f"bad weight line {ln!r}")
        num, _, den = parts[2].partition("/")
        try:
            weights.append(Fraction(int(num), int(den)))
        except (ValueError, ZeroDivisionError) as e:
            raise InstanceParseError(f"bad weight in {ln!r}: {e}") from None

    edges: list[tuple[int, int]] = []
    pairs: list[tuple[int, int]] = []
    for i in range(m):
        ln = body[2 * f + i]
        parts = ln.split()
        if len(parts) != 5 or parts[0] != "E":
            raise InstanceParseError(f"bad edge line {ln!r}")
        try:
            u, v, h, j = (int(x) for x in parts[1:])
        except ValueError:
            raise InstanceParseError(f"non-integer edge line {ln!r}") from None
        if not (0 <= u < v < n):
            raise InstanceParseError(f"edge ({u},{v}) out of range or misordered")
        if not (1 <= h <= f and 1 <= j <= f):
            raise InstanceParseError(f"factor index out of range in {ln!r}")
        edges.append((u, v))
        pairs.append((h - 1, j - 1))
    if edges != sorted(edges):
        raise InstanceParseError("edge lines must be sorted")
    if len(set(edges)) != len(edges):
        raise InstanceParseError("duplicate edge")

    lattice = None
    if model != "er":
        d = int(model[3:])
        if L < 2 or L**d != n:
            raise InstanceParseError(f"lattice header inconsistent: n={n}, L={L}, d={d}")
        lattice = LatticeInfo(d, L)
    elif L != 0:
        raise InstanceParseError("model=er requires L=0")

    try:
        dist = FactorDistribution(tuple(factors), tuple(weights))
        graph = Graph(n, tuple(edges), lattice)
        return Instance(graph, tuple(pairs), dist, cond, seed, resamples)
    except ValueError as e:
        raise InstanceParseError(str(e)) from None


def save_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_instance(inst))


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())
