"""Two-qubit product constraints and their composition along paths.

A constraint on an edge (u, v) is a product bra <b_u| (x) <g_v|.  Composing
two constraints that share their middle qubit through the singlet state
|01> - |10> yields either the zero functional (when the middle bras are
proportional, so the shared qubit can satisfy both sides at once) or another
product constraint on the outer qubits.  Folding a path edge by edge gives
the effective constraint a chain imposes on its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactq import BraState


@dataclass(frozen=True)
class BraConstraint:
    """Bra-valued product constraint <left|_u (x) <right|_v on the pair (u, v)."""

    u: int
    v: int
    left: BraState
    right: BraState


@dataclass(frozen=True)
class ProductConstraint:
    """Edge constraint stored by factor index into a shared factor table.

    `h` is the factor applied at `u`, `j` the factor at `v`, with u < v in
    canonical orientation.  Keeping indices (rather than bras) makes junction
    tests integer comparisons.
    """

    u: int
    v: int
    h: int
    j: int

    def realize(self, factors: Sequence[BraState]) -> BraConstraint:
        return BraConstraint(self.u, self.v, factors[self.h], factors[self.j])


def induce(c1: BraConstraint, c2: BraConstraint) -> Optional[BraConstraint]:
    """Contract two constraints through a singlet on their shared middle qubit.

    c1 acts on (u, x) and c2 on (x, w).  Returns the induced constraint on
    (u, w), or None when the middle bras are proportional and the contraction
    annihilates.  Raises ValueError if the constraints do not share a middle
    qubit in that orientation.
    """
    if c1.v != c2.u:
        raise ValueError(f"constraints do not chain: ({c1.u},{c1.v}) then ({c2.u},{c2.v})")
    b, g = c1.right, c2.left
    s = b.c0 * g.c1 - b.c1 * g.c0
    if s.is_zero():
        return None
    # The scalar s only rescales the induced bra pair, which is projective.
    return BraConstraint(c1.u, c2.v, c1.left, c2.right)


def chain_constraint(
    constraints: Sequence[BraConstraint],
    path: Optional[Sequence[int]] = None,
) -> Optional[BraConstraint]:
    """Fold a path's constraints left to right; None once any junction dies.

    Induction is associative, so the fold order does not matter; left to
    right keeps the partial constraint anchored at the path's first vertex.
    When `path` is given it must list the traversed vertices and is checked
    against the constraints' endpoints.
    """
    if not constraints:
        raise ValueError("empty chain")
    if path is not None:
        if len(path) != len(constraints) + 1:
            raise ValueError(
                f"path of {len(path)} vertices cannot carry {len(constraints)} constraints"
            )
        for c, a, b in zip(constraints, path, path[1:]):
            if (c.u, c.v) != (a, b):
                raise ValueError(f"constraint on ({c.u},{c.v}) does not match path edge ({a},{b})")
    acc: Optional[BraConstraint] = constraints[0]
    for nxt in constraints[1:]:
        acc = induce(acc, nxt)
        if acc is None:
            return None
    return acc
