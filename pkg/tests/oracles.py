"""Independent reference implementations used to cross-check the package.

Everything here favors directness over speed: dense numpy tensors, brute
force over all assignments, term-by-term series.  Tests compare package
results against these.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from qsat2.exactq import BraState
from qsat2.graphs import Graph
from qsat2.instances import FactorDistribution, Instance
from qsat2.twosat import solve_edges

SINGLET = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def bra_vec(b: BraState) -> np.ndarray:
    return np.array(
        [complex(b.c0.re) + 1j * complex(b.c0.im), complex(b.c1.re) + 1j * complex(b.c1.im)]
    )


def dense_induce(b1: BraState, g1: BraState, b2: BraState, g2: BraState) -> np.ndarray:
    """Contract <b1|(x)<g1| and <b2|(x)<g2| through a singlet on the middle qubit.

    Returns the 2x2 tensor T[a, c] = sum_{b,b'} b1[a] g1[b] S[b,b'] b2[b'] g2[c].
    """
    r1 = np.outer(bra_vec(b1), bra_vec(g1))
    r2 = np.outer(bra_vec(b2), bra_vec(g2))
    return np.einsum("ab,bc,cd->ad", r1, SINGLET, r2)


def dense_chain(bras: Sequence[tuple[BraState, BraState]]) -> np.ndarray:
    """Fold a whole chain of (left, right) bra pairs densely."""
    acc = np.outer(bra_vec(bras[0][0]), bra_vec(bras[0][1]))
    for left, right in bras[1:]:
        nxt = np.outer(bra_vec(left), bra_vec(right))
        acc = np.einsum("ab,bc,cd->ad", acc, SINGLET, nxt)
    return acc


def proportional_tensors(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Projective equality of two tensors, up to numerical noise."""
    if np.allclose(a, 0, atol=tol) or np.allclose(b, 0, atol=tol):
        return np.allclose(a, 0, atol=tol) and np.allclose(b, 0, atol=tol)
    ia = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    return np.allclose(a * b[ia], b * a[ia], atol=tol)


def dense_rows(inst: Instance, component: Sequence[int]) -> np.ndarray:
    """Constraint rows of one component as a dense matrix, via numpy kron.

    Column order follows `sorted(component)` with the first vertex on the
    lowest bit, matching the package's convention.
    """
    comp = sorted(component)
    pos = {v: i for i, v in enumerate(comp)}
    k = len(comp)
    eye = np.eye(2, dtype=complex)
    rows = []
    for u, v, h, j in inst.edge_tuples():
        if u not in pos and v not in pos:
            continue
        if u not in pos or v not in pos:
            raise ValueError("component boundary is crossed by an edge")
        mats = [eye] * k
        mats[pos[u]] = bra_vec(inst.dist.factors[h]).reshape(1, 2)
        mats[pos[v]] = bra_vec(inst.dist.factors[j]).reshape(1, 2)
        # low qubit = first component vertex: kron runs high to low
        acc = np.array([[1.0]], dtype=complex)
        for mat in reversed(mats):
            acc = np.kron(acc, mat)
        rows.append(acc)
    if not rows:
        return np.zeros((0, 2**k), dtype=complex)
    return np.vstack(rows)


def dense_component_value(inst: Instance, component: Sequence[int]) -> int:
    rows = dense_rows(inst, component)
    k = len(component)
    if rows.shape[0] == 0:
        return 2**k
    return 2**k - int(np.linalg.matrix_rank(rows))


def dense_instance_value(inst: Instance) -> int:
    """Ground-space dimension of the whole instance by one dense rank."""
    return dense_component_value(inst, range(inst.n))


def diagonal_count(inst: Instance) -> int:
    """Ground-space dimension when every factor is a standard basis bra.

    Rows are then diagonal, so the dimension is the number of computational
    basis states avoiding (x_u = a_h and x_v = a_j) on every edge, where a_t
    is the basis state the factor bra does not annihilate.
    """
    killed = []
    for b in inst.dist.factors:
        if not b.c1.is_zero() and not b.c0.is_zero():
            raise ValueError("factors are not all standard basis bras")
        killed.append(0 if b.c1.is_zero() else 1)
    edges = [(u, v, killed[h], killed[j]) for u, v, h, j in inst.edge_tuples()]
    count = 0
    for x in range(2**inst.n):
        if all(not ((x >> u) & 1 == a and (x >> v) & 1 == b) for u, v, a, b in edges):
            count += 1
    return count


def brute_force_kernel_assignment(
    n: int, edges: Sequence[tuple[int, int, int, int]], f: int
) -> Optional[tuple[int, ...]]:
    """Exhaust all f^n kernel-state assignments; edge (u,v,h,j) wants u=h or v=j."""
    for assign in product(range(f), repeat=n):
        if all(assign[u] == h or assign[v] == j for u, v, h, j in edges):
            return assign
    return None


def naive_vertex_options(inst: Instance) -> dict[int, list[frozenset[int]]]:
    """Per-start BFS over kernel states; the quadratic reference walk search."""
    f = inst.dist.f
    incident: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(inst.n)}
    for u, v, h, j in inst.edge_tuples():
        incident[u].append((v, h, j))
        incident[v].append((u, j, h))
    out: dict[int, list[frozenset[int]]] = {}
    for x in range(inst.n):
        opts: list[frozenset[int]] = []
        for h in range(f):
            starts = [(w, j) for w, eh, j in incident[x] if eh == h]
            seen = set(starts)
            queue = list(starts)
            while queue:
                v, a = queue.pop()
                for w, eh, j in incident[v]:
                    if eh != a and (w, j) not in seen:
                        seen.add((w, j))
                        queue.append((w, j))
            returned = sorted({b for (v, b) in seen if v == x})
            for b in returned:
                s = frozenset({h, b})
                if s not in opts:
                    opts.append(s)
        if opts:
            out[x] = opts
    return out


def naive_frustration_free(
    g: Graph, dist: FactorDistribution, seed: int, budget: int = 10_000
) -> Instance:
    """Rejection sampling with a full solve per candidate pair.

    Mirrors the incremental sampler's randomness exactly (same shuffle, same
    draws), so equal decisions imply equal output instances.
    """
    rng = random.Random(seed)
    order = list(range(g.m))
    for i in range(g.m - 1, 0, -1):
        k = rng.randrange(i + 1)
        order[i], order[k] = order[k], order[i]
    pairs: list[Optional[tuple[int, int]]] = [None] * g.m
    chosen: list[tuple[int, int, int, int]] = []
    resamples = 0
    for idx in order:
        u, v = g.edges[idx]
        rejected = 0
        while True:
            h = dist.sample(rng)
            j = dist.sample(rng)
            trial = chosen + [(u, v, h, j)]
            if solve_edges(g.n, trial, want_witness=False) is not None:
                pairs[idx] = (h, j)
                chosen = trial
                break
            rejected += 1
            resamples += 1
            if rejected >= budget:
                raise RuntimeError("budget exhausted in reference sampler")
    return Instance(g, tuple(pairs), dist, "free", seed, resamples)


def xi_series(rho: float, terms: int = 4000) -> float:
    """Tree-weight series sum_{k>=1} k^{k-1}/k! (2 rho e^{-2 rho})^k."""
    import math

    x = 2 * rho * math.exp(-2 * rho)
    total = 0.0
    t = x
    for k in range(1, terms + 1):
        total += t
        t *= x * (1 + 1 / k) ** (k - 1)
        if t < 1e-18:
            break
    return total


def qcrux_bruteforce(q: Sequence[Fraction]) -> Fraction:
    """P[{h,i} and {j,k} disjoint] over four i.i.d. draws from q."""
    total = Fraction(0)
    f = len(q)
    for h in range(f):
        for i in range(f):
            for j in range(f):
                for k in range(f):
                    if {h, i}.isdisjoint({j, k}):
                        total += q[h] * q[i] * q[j] * q[k]
    return total


def chain_survival_bruteforce(q: Sequence[Fraction], ell: int) -> Fraction:
    """P[a path of ell edges induces an endpoint constraint], by exhaustion."""
    f = len(q)
    total = Fraction(0)
    for combo in product(range(f), repeat=2 * ell):
        # factor pair (h_i, j_i) per edge; junction i alive iff j_i != h_{i+1}
        alive = all(combo[2 * i + 1] != combo[2 * i + 2] for i in range(ell - 1))
        if alive:
            w = Fraction(1)
            for t in combo:
                w *= q[t]
            total += w
    return total
