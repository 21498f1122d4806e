"""Closed-form predictors: distribution functionals, tree fractions, counts.

Everything that can be exact is exact (Fractions); the only floating-point
quantities are xi and the residual density, which involve a transcendental
fixed point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .instances import FactorDistribution


@dataclass(frozen=True)
class DistributionFunctionals:
    """Norm functionals of the factor distribution q.

    q2 = 1 - ||q||_2^2 is the survival probability of one junction (two
    independent draws differ); qinf = 1 - ||q||_inf; qcrux is the
    probability that two junctions at a shared vertex use four factors with
    {h,i} and {j,k} disjoint; qjunct = ||q||_2^2 - ||q||_3^3.
    """

    norm2_sq: Fraction
    norm3_cu: Fraction
    norm4_qu: Fraction
    norm_inf: Fraction
    q2: Fraction
    qinf: Fraction
    qcrux: Fraction
    qjunct: Fraction


def functionals(dist: FactorDistribution) -> DistributionFunctionals:
    n2 = dist.norm_power(2)
    n3 = dist.norm_power(3)
    n4 = dist.norm_power(4)
    ninf = dist.norm_inf()
    return DistributionFunctionals(
        norm2_sq=n2,
        norm3_cu=n3,
        norm4_qu=n4,
        norm_inf=ninf,
        q2=1 - n2,
        qinf=1 - ninf,
        qcrux=1 - 4 * n2 + 2 * n2 * n2 + 4 * n3 - 3 * n4,
        qjunct=n2 - n3,
    )


def distinct_triple_probability(dist: FactorDistribution) -> Fraction:
    """Probability that three independent draws from q are pairwise distinct."""
    n2 = dist.norm_power(2)
    n3 = dist.norm_power(3)
    return 1 - 3 * n2 + 2 * n3


# ---------------------------------------------------------------------------
# tree fraction fixed point


def xi(rho: float) -> float:
    """Smaller branch of the tree-fraction fixed point xi*exp(-xi) = 2rho*exp(-2rho).

    Equals 2*rho up to rho = 1/2 (where it peaks at 1); beyond that, the
    unique root in (0,1), found by bisection-safeguarded Newton with
    residual below 1e-12.
    """
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    if rho <= 0.5:
        return 2.0 * rho
    y = 2.0 * rho * math.exp(-2.0 * rho)
    lo, hi = 0.0, 1.0
    x = min(y * math.e, 0.5)  # xi ~ y for small y
    for _ in range(200):
        fx = x * math.exp(-x) - y
        if fx < 0.0:
            lo = x
        else:
            hi = x
        if abs(fx) < 1e-15:
            break
        d = (1.0 - x) * math.exp(-x)
        nxt = x - fx / d if d > 0.0 else -1.0
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if nxt == x:
            break
        x = nxt
    return x


def giant_fraction(rho: float) -> float:
    """Asymptotic fraction of vertices in the giant component at density rho."""
    if rho <= 0:
        return 0.0
    return 1.0 - xi(rho) / (2.0 * rho)


def residual_density(gamma: float, qinf: float) -> float:
    """Edge density left after deleting the expected frozen closure."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if not 0 < qinf <= 1:
        raise ValueError("qinf must be in (0, 1]")
    x = xi(gamma * qinf)
    return 0.5 * x + (1.0 - qinf) / (4.0 * gamma * qinf * qinf) * x * x


# ---------------------------------------------------------------------------
# subgraph count predictors


def expected_figure_eights(n: int, m: int, ell: int, dist: FactorDistribution) -> Fraction:
    """Expected number of frustrated figure-eights with cycle length ell.

    Exact over the uniform m-edge random graph with i.i.d. factor pairs:
    positions for two ell-cycles sharing one vertex, times the probability
    that all 2*ell placed edges are present, times the survival of the
    2*ell - 2 non-crux junctions, times the crux-disjointness probability.
    """
    if ell < 3:
        raise ValueError("cycle length must be at least 3")
    if 2 * ell - 1 > n:
        raise ValueError("not enough vertices for two disjoint cycles")
    if m < 2 * ell:
        return Fraction(0)
    fn = functionals(dist)
    placements = (
        Fraction(n, 2)
        * Fraction(math.comb(n - 1, ell - 1) * math.factorial(ell - 1), 2)
        * Fraction(math.comb(n - ell, ell - 1) * math.factorial(ell - 1), 2)
    )
    slots = math.comb(n, 2)
    presence = Fraction(math.comb(slots - 2 * ell, m - 2 * ell), math.comb(slots, m))
    return fn.q2 ** (2 * ell - 2) * fn.qcrux * placements * presence


def domino_frustration_probability(dist: FactorDistribution) -> Fraction:
    """Probability that one fully-present domino is frustrated.

    Four independent side junctions must survive and both end-factor triples
    must be pairwise distinct; all six events use disjoint draws.
    """
    fn = functionals(dist)
    return fn.q2**4 * distinct_triple_probability(dist) ** 2


def domino_positions(L: int, d: int) -> int:
    """Number of domino placements: plaquette pairs sharing an edge.

    An edge has one candidate plaquette per side within bounds; interior
    transverse coordinates contribute two sides, boundary ones one.
    """
    if d == 2:
        return 2 * (L - 1) * (L - 2)
    if d == 3:
        return 6 * (L - 1) * (3 * (L - 2) ** 2 + 6 * (L - 2) + 2)
    raise ValueError("lattice dimension must be 2 or 3")


def expected_dominoes(L: int, d: int, p: float) -> float:
    """Expected count of fully-present dominoes on a bond-percolated lattice."""
    return domino_positions(L, d) * p**7


# ---------------------------------------------------------------------------
# thresholds


@dataclass(frozen=True)
class ThresholdReport:
    model: str
    gamma_disconnect: Fraction
    gamma_frustrate: Optional[Fraction]  # None = unbounded (q2 = 0)
    decouple_condition: Optional[float]  # 2*gamma*qinf - ln(2*gamma), needs gamma
    p_c: Optional[float]
    p_fin: Optional[float]
    domino_scale: Optional[float]  # n^(-1/7) marker, needs n
    domino_presence: Optional[float]  # p^7, needs p


def thresholds(
    dist: FactorDistribution,
    model: str = "er",
    n: Optional[int] = None,
    gamma: Optional[float] = None,
    p: Optional[float] = None,
) -> ThresholdReport:
    if model not in ("er", "lat2", "lat3"):
        raise ValueError(f"unknown model {model!r}")
    fn = functionals(dist)
    frustrate = None if fn.q2 == 0 else 1 / (2 * fn.q2)
    cond = None
    if gamma is not None:
        if gamma <= 0:
            raise ValueError("gamma must be positive")
        cond = 2.0 * gamma * float(fn.qinf) - math.log(2.0 * gamma)
    p_c = {"er": None, "lat2": 0.5, "lat3": 0.24881}[model]
    p_fin = {"er": None, "lat2": 0.5, "lat3": None}[model]
    scale = None
    if model != "er" and n is not None:
        scale = float(n) ** (-1.0 / 7.0)
    presence = None
    if model != "er" and p is not None:
        presence = p**7
    return ThresholdReport(
        model=model,
        gamma_disconnect=Fraction(1, 2),
        gamma_frustrate=frustrate,
        decouple_condition=cond,
        p_c=p_c,
        p_fin=p_fin,
        domino_scale=scale,
        domino_presence=presence,
    )
