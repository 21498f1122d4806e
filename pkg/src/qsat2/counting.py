"""Exact ground-space dimensions for product-constraint instances.

The value of an instance is the dimension of the simultaneous kernel of all
constraint projectors.  Per connected component this is 2^k - rank(M), where
M stacks, for every edge, the constraint bra tensored with standard-basis
bras on the component's other k-2 qubits; every such row has at most four
nonzero entries.  Rank is computed by sparse elimination, either exactly
over the Gaussian rationals or modulo large primes p = 1 (mod 4), where the
imaginary unit embeds as a square root of -1.  Modular rank can only
undercount (a minor may vanish mod p), so two primes must agree and any
disagreement escalates to exact arithmetic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exactq import GQ_ONE, GaussianRational
from .instances import Instance, satisfiable

# 62-bit primes with p = 1 (mod 4); the second and later entries verify the
# first, and exact arithmetic settles any disagreement.
MOD_PRIMES = (
    2305843009213693973,
    2305843009213694009,
    2305843009213694017,
    2305843009213694149,
)


@dataclass(frozen=True)
class RankBackendConfig:
    mode: str = "modular"  # "modular" | "exact_rational"
    prime: int = MOD_PRIMES[0]
    verify_primes: int = 2
    max_component_qubits: int = 16

    def __post_init__(self):
        if self.mode not in ("modular", "exact_rational"):
            raise ValueError(f"unknown rank mode {self.mode!r}")
        if self.mode == "modular":
            if self.prime % 4 != 1:
                raise ValueError("modular prime must be 1 mod 4")
            if not 1 <= self.verify_primes <= len(MOD_PRIMES):
                raise ValueError(f"verify_primes must be in 1..{len(MOD_PRIMES)}")
        if self.max_component_qubits < 1:
            raise ValueError("component cap must be positive")


DEFAULT_CONFIG = RankBackendConfig()


class ComponentCapError(RuntimeError):
    def __init__(self, size: int, cap: int, vertices: Sequence[int]):
        vid = min(vertices)
        super().__init__(
            f"component containing vertex {vid} has {size} qubits, over the cap {cap}"
        )
        self.size = size
        self.cap = cap
        self.component = tuple(vertices)


# ---------------------------------------------------------------------------
# fields


class _PrimeClash(Exception):
    """A denominator vanished mod p; retry with another prime or exactly."""


class _ModField:
    """Arithmetic mod p with i embedded as a square root of -1."""

    def __init__(self, p: int):
        self.p = p
        self.root = self._imag_unit(p)

    @staticmethod
    def _imag_unit(p: int) -> int:
        for a in range(2, 1000):
            r = pow(a, (p - 1) // 4, p)
            if r * r % p == p - 1:
                return r
        raise ValueError(f"no square root of -1 mod {p}")

    def embed(self, x: GaussianRational) -> int:
        p = self.p
        re = x.re.numerator % p
        if x.re.denominator != 1:
            d = x.re.denominator % p
            if d == 0:
                raise _PrimeClash
            re = re * pow(d, p - 2, p) % p
        im = x.im.numerator % p
        if x.im.denominator != 1:
            d = x.im.denominator % p
            if d == 0:
                raise _PrimeClash
            im = im * pow(d, p - 2, p) % p
        return (re + im * self.root) % p

    def inv(self, a: int) -> int:
        return pow(a, self.p - 2, self.p)

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def reduce_row(self, row: dict, coeff: int, basis_row: dict) -> None:
        p = self.p
        for col, val in basis_row.items():
            cur = row.get(col, 0)
            nxt = (cur - coeff * val) % p
            if nxt:
                row[col] = nxt
            elif col in row:
                del row[col]


class _ExactField:
    def embed(self, x: GaussianRational) -> GaussianRational:
        return x

    def inv(self, a: GaussianRational) -> GaussianRational:
        return a.inverse()

    def mul(self, a: GaussianRational, b: GaussianRational) -> GaussianRational:
        return a * b

    def reduce_row(self, row: dict, coeff, basis_row: dict) -> None:
        for col, val in basis_row.items():
            cur = row.get(col)
            nxt = (cur - coeff * val) if cur is not None else -(coeff * val)
            if nxt.is_zero():
                if col in row:
                    del row[col]
            else:
                row[col] = nxt


# ---------------------------------------------------------------------------
# rows and rank


def _constraint_rows(
    inst: Instance,
    component: Sequence[int],
    frozen: Optional[dict] = None,
) -> Iterable[list[tuple[int, GaussianRational]]]:
    """Sparse constraint rows over the component's 2^k basis, lazily.

    Basis states are bitmasks over the component's qubits in sorted order,
    local qubit i at bit i.  Each edge emits one row per assignment of the
    other k-2 qubits, with entries bra_u[x_u] * bra_v[x_v].

    An edge may leave the component only toward a vertex frozen in the kernel
    state of that edge's own factor; such a constraint annihilates the frozen
    state and imposes nothing here, so the row is skipped.
    """
    comp = sorted(component)
    local = {v: i for i, v in enumerate(comp)}
    k = len(comp)
    factors = inst.dist.factors
    for (u, v), (h, j) in zip(inst.graph.edges, inst.pairs):
        inu, inv_ = u in local, v in local
        if inu != inv_:
            out_v, out_h = (v, j) if inu else (u, h)
            if frozen is not None and frozen.get(out_v) == out_h:
                continue
            raise ValueError(f"edge ({u},{v}) crosses the component boundary")
        if not inu:
            continue
        pu, pv = local[u], local[v]
        bu, bv = factors[h], factors[j]
        entries = []
        for xu, cu in ((0, bu.c0), (1, bu.c1)):
            for xv, cv in ((0, bv.c0), (1, bv.c1)):
                coeff = cu * cv
                if not coeff.is_zero():
                    entries.append(((xu << pu) | (xv << pv), coeff))
        others = [i for i in range(k) if i not in (pu, pv)]
        for idx in range(1 << len(others)):
            rest = 0
            for b, pos in enumerate(others):
                if idx >> b & 1:
                    rest |= 1 << pos
            yield [(rest | off, coeff) for off, coeff in entries]


def _echelon_rank(rows: Iterable, field, basis_out: Optional[dict] = None) -> int:
    """Incremental sparse echelon: insert each row, reduce by leading column."""
    basis: dict[int, dict] = {} if basis_out is None else basis_out
    for raw in rows:
        row = {col: field.embed(c) for col, c in raw}
        while row:
            lead = min(row)
            piv = basis.get(lead)
            if piv is None:
                scale = field.inv(row.pop(lead))
                basis[lead] = {col: field.mul(val, scale) for col, val in row.items()}
                break
            field.reduce_row(row, row.pop(lead), piv)
    return len(basis)


def component_rank(
    inst: Instance,
    component: Sequence[int],
    config: RankBackendConfig,
    frozen: Optional[dict] = None,
) -> int:
    if config.mode == "exact_rational":
        return _exact_rank(inst, component, frozen)
    primes = [config.prime] + [p for p in MOD_PRIMES if p != config.prime]
    ranks = []
    for p in primes[: config.verify_primes]:
        try:
            ranks.append(
                _echelon_rank(_constraint_rows(inst, component, frozen), _ModField(p))
            )
        except _PrimeClash:
            return _exact_rank(inst, component, frozen)
    if len(set(ranks)) != 1:
        return _exact_rank(inst, component, frozen)
    return ranks[0]


def _exact_rank(inst, component, frozen=None) -> int:
    return _echelon_rank(_constraint_rows(inst, component, frozen), _ExactField())


def component_value(
    inst: Instance,
    component: Sequence[int],
    config: RankBackendConfig = DEFAULT_CONFIG,
    frozen: Optional[dict] = None,
) -> int:
    """Ground-space dimension 2^k - rank restricted to one component."""
    k = len(component)
    if k > config.max_component_qubits:
        raise ComponentCapError(k, config.max_component_qubits, component)
    return (1 << k) - component_rank(inst, component, config, frozen)


def kernel_basis(
    inst: Instance, component: Sequence[int]
) -> list[dict[int, GaussianRational]]:
    """Exact kernel basis vectors, as sparse maps basis-state -> amplitude.

    Intended for verification on small components; cost grows with both the
    component size and the kernel dimension.
    """
    basis: dict[int, dict] = {}
    _echelon_rank(_constraint_rows(inst, component), _ExactField(), basis_out=basis)
    k = len(component)
    # reduced echelon: clear occurrences of other leading columns
    for lead in sorted(basis, reverse=True):
        row = basis[lead]
        for other in [c for c in row if c in basis and c != lead]:
            coeff = row.pop(other)
            for col, val in basis[other].items():
                cur = row.get(col)
                nxt = (cur - coeff * val) if cur is not None else -(coeff * val)
                if nxt.is_zero():
                    row.pop(col, None)
                else:
                    row[col] = nxt
    out = []
    free = [c for c in range(1 << k) if c not in basis]
    for c in free:
        vec: dict[int, GaussianRational] = {c: GQ_ONE}
        for lead, row in basis.items():
            val = row.get(c)
            if val is not None:
                vec[lead] = -val
        out.append(vec)
    return out


def product_tree(values: Sequence[int]) -> int:
    """Exact product, combining the two smallest factors first.

    Pairing small factors keeps multiplicand bit lengths balanced, the same
    guarantee as pairing the two largest, and a min-heap makes it direct.
    """
    if not values:
        return 1
    heap = list(values)
    heapq.heapify(heap)
    while len(heap) > 1:
        a = heapq.heappop(heap)
        b = heapq.heappop(heap)
        heapq.heappush(heap, a * b)
    return heap[0]


def instance_value(
    inst: Instance,
    config: RankBackendConfig = DEFAULT_CONFIG,
    use_decoupling: bool = True,
) -> int:
    """Dimension of the instance's full ground space; 0 iff frustrated.

    With decoupling, frozen qubits are removed first (each contributes a
    one-dimensional factor) and the residual components are counted
    independently.  Without it, raw connected components are used; both
    routes agree whenever the caps allow computing them.
    """
    if not satisfiable(inst):
        return 0
    if use_decoupling:
        from . import structure

        dec = structure.decouple(inst)
        values = [
            component_value(inst, comp, config, frozen=dec.frozen)
            for comp in dec.residual_components
        ]
    else:
        from .graphs import components

        values = [
            component_value(inst, comp, config)
            for comp in components(inst.graph).components
        ]
    return product_tree(values)
