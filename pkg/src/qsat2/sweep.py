"""Seeded Monte Carlo sweeps over a density grid, emitting deterministic CSV.

Each (grid point, trial) cell gets its own seed derived from the master
seed, so results are independent of execution order and worker count; the
CSV is byte-identical across runs and thread settings.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .counting import ComponentCapError, RankBackendConfig, instance_value
from .graphs import (
    Graph,
    components,
    enumerate_dominoes,
    enumerate_figure_eights,
    sample_er_graph,
    sample_lattice,
)
from .instances import (
    FactorDistribution,
    Instance,
    ResampleBudgetError,
    sample_frustration_free_instance,
    sample_instance,
)
from .seeding import FACTOR_STREAM, GRAPH_STREAM, derive_trial_seed, stream_seed
from .structure import decouple, edge_factor_map, figure_eight_frustrated, frozen_subgraph

CSV_HEADER = (
    "grid,trial,seed,n,m,frustrated,max_comp,multicyclic,frozen_core,"
    "residual_max,label,fig8_l3,dominoes,value,resamples,ms"
)


@dataclass(frozen=True)
class SweepConfig:
    model: str
    grid: tuple[float, ...]
    trials: int
    dist: FactorDistribution
    n: int = 0  # er
    L: int = 0  # lattices
    seed: int = 0
    cond: str = "any"  # any | free
    cutoff_c: float = 3.0
    max_component_qubits: int = 16
    fig8_l3: bool = False
    value: bool = False
    timing: bool = False

    def __post_init__(self):
        if self.model not in ("er", "lat2", "lat3"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "er" and self.n < 1:
            raise ValueError("er sweeps need n >= 1")
        if self.model != "er" and self.L < 2:
            raise ValueError("lattice sweeps need L >= 2")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.grid:
            raise ValueError("empty grid")
        if any(a >= b for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must increase strictly")
        if self.cond not in ("any", "free"):
            raise ValueError("cond must be 'any' or 'free'")


@dataclass(frozen=True)
class TrialRecord:
    grid: float
    trial: int
    seed: int
    n: int
    m: int
    frustrated: Optional[bool] = None
    max_comp: int = 0
    multicyclic: int = 0
    frozen_core: int = 0
    residual_max: int = 0
    label: str = ""
    fig8_l3: Optional[int] = None
    dominoes: Optional[int] = None
    value: str = ""
    resamples: int = 0
    ms: int = 0

    def row(self) -> str:
        cells = [
            repr(self.grid),
            str(self.trial),
            str(self.seed),
            str(self.n),
            str(self.m),
            "" if self.frustrated is None else str(int(self.frustrated)),
            str(self.max_comp),
            str(self.multicyclic),
            str(self.frozen_core),
            str(self.residual_max),
            self.label,
            "" if self.fig8_l3 is None else str(self.fig8_l3),
            "" if self.dominoes is None else str(self.dominoes),
            self.value,
            str(self.resamples),
            str(self.ms),
        ]
        return ",".join(cells)


def generate_instance(
    model: str,
    dist: FactorDistribution,
    seed: int,
    n: int = 0,
    m: int = 0,
    L: int = 0,
    p: float = 0.0,
    cond: str = "any",
    budget: int = 10_000,
) -> Instance:
    """Build graph and factors from one master seed via separate streams.

    The instance's recorded seed is the master, so a saved file regenerates
    bit-identically from it.
    """
    gseed = stream_seed(seed, GRAPH_STREAM)
    fseed = stream_seed(seed, FACTOR_STREAM)
    if model == "er":
        g = sample_er_graph(n, m, gseed)
    else:
        g = sample_lattice(2 if model == "lat2" else 3, L, p, gseed)
    if cond == "free":
        inst = sample_frustration_free_instance(g, dist, fseed, budget)
    else:
        inst = sample_instance(g, dist, fseed)
    return replace(inst, seed=seed)


def analyze_instance(
    inst: Instance,
    cutoff_c: float = 3.0,
    max_component_qubits: int = 16,
    want_fig8: bool = False,
    want_value: bool = False,
) -> dict:
    """Measurements backing one sweep row (and the analyze CLI)."""
    rep = components(inst.graph)
    dec = decouple(inst, cutoff_c)
    frustrated = dec.label == "frustrated"
    core = 0
    if not frustrated and dec.frozen:
        core = len(frozen_subgraph(inst, dec.frozen).core)
    out = {
        "frustrated": frustrated,
        "max_comp": rep.max_size,
        "multicyclic": rep.multicyclic_count,
        "frozen_core": core,
        "residual_max": dec.residual_max,
        "label": dec.label,
        "decomposition": dec,
        "report": rep,
        "fig8_l3": None,
        "dominoes": None,
        "value": "",
    }
    if want_fig8:
        ef = edge_factor_map(inst)
        out["fig8_l3"] = sum(
            figure_eight_frustrated(inst, fe, ef)
            for fe in enumerate_figure_eights(inst.graph, 3)
        )
    if inst.graph.lattice is not None:
        out["dominoes"] = len(enumerate_dominoes(inst.graph))
    if want_value:
        cfg = RankBackendConfig(max_component_qubits=max_component_qubits)
        try:
            out["value"] = str(instance_value(inst, cfg))
        except ComponentCapError as e:
            out["value"] = f"NA:{e.size}"
    return out


def _run_trial(cfg: SweepConfig, gi: int, ti: int) -> TrialRecord:
    tseed = derive_trial_seed(cfg.seed, gi, ti)
    gv = cfg.grid[gi]
    t0 = time.perf_counter()
    kwargs = dict(model=cfg.model, dist=cfg.dist, seed=tseed, cond=cfg.cond)
    if cfg.model == "er":
        kwargs.update(n=cfg.n, m=round(gv * cfg.n))
    else:
        kwargs.update(L=cfg.L, p=gv)
    try:
        inst = generate_instance(**kwargs)
    except ResampleBudgetError:
        n = cfg.n if cfg.model == "er" else cfg.L ** (2 if cfg.model == "lat2" else 3)
        return TrialRecord(gv, ti, tseed, n, 0, label="error:resample_budget")
    meas = analyze_instance(
        inst,
        cutoff_c=cfg.cutoff_c,
        max_component_qubits=cfg.max_component_qubits,
        want_fig8=cfg.fig8_l3,
        want_value=cfg.value,
    )
    ms = int(1000 * (time.perf_counter() - t0)) if cfg.timing else 0
    return TrialRecord(
        grid=gv,
        trial=ti,
        seed=tseed,
        n=inst.n,
        m=inst.m,
        frustrated=meas["frustrated"],
        max_comp=meas["max_comp"],
        multicyclic=meas["multicyclic"],
        frozen_core=meas["frozen_core"],
        residual_max=meas["residual_max"],
        label=meas["label"],
        fig8_l3=meas["fig8_l3"],
        dominoes=meas["dominoes"],
        value=meas["value"],
        resamples=inst.resamples,
        ms=ms,
    )


def _summary_row(gv: float, recs: list[TrialRecord]) -> str:
    done = [r for r in recs if not r.label.startswith("error:")]
    cells = [""] * 16
    cells[0] = repr(gv)
    cells[1] = "summary"
    if done:
        n = done[0].n
        cells[3] = str(n)
        cells[5] = f"{sum(r.frustrated for r in done) / len(done):.6f}"
        cells[6] = f"{sum(r.max_comp for r in done) / len(done):.6f}"
        core = sum(Fraction(r.frozen_core, r.n) for r in done) / len(done)
        cells[8] = f"{float(core):.6f}"
    return ",".join(cells)


def run_sweep(cfg: SweepConfig, threads: int = 1) -> str:
    tasks = [(gi, ti) for gi in range(len(cfg.grid)) for ti in range(cfg.trials)]
    if threads <= 1:
        recs = [_run_trial(cfg, gi, ti) for gi, ti in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            recs = list(pool.map(lambda t: _run_trial(cfg, t[0], t[1]), tasks))
    lines = [CSV_HEADER] + [r.row() for r in recs]
    for gi, gv in enumerate(cfg.grid):
        lines.append(_summary_row(gv, recs[gi * cfg.trials : (gi + 1) * cfg.trials]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# config files: plain key=value lines, # comments


_BOOL = {"on": True, "true": True, "1": True, "off": False, "false": False, "0": False}


def parse_config(text: str) -> SweepConfig:
    kv: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {ln}: expected key=value")
        key, val = (part.strip() for part in line.split("=", 1))
        if key in kv:
            raise ValueError(f"config line {ln}: duplicate key {key!r}")
        kv[key] = val

    def take(key: str, default: Optional[str] = None) -> Optional[str]:
        return kv.pop(key, default)

    model = take("model", "er")
    grid = tuple(float(tok) for tok in (take("grid") or "").split(",") if tok.strip())
    trials = int(take("trials", "1"))
    seed = int(take("seed", "0"))
    qspec = take("q", "uniform")
    if qspec == "uniform":
        dist = FactorDistribution.uniform(int(take("f", "0")))
    else:
        dist = FactorDistribution.from_weights([Fraction(tok) for tok in qspec.split(",")])
        take("f")  # redundant with an explicit q list
    cond = take("cond", "any")
    if cond == "ff":
        cond = "free"
    cfg = SweepConfig(
        model=model,
        grid=grid,
        trials=trials,
        dist=dist,
        n=int(take("n", "0")),
        L=int(take("L", "0")),
        seed=seed,
        cond=cond,
        cutoff_c=float(take("cutoff_c", "3.0")),
        max_component_qubits=int(take("max_component_qubits", "16")),
        fig8_l3=_BOOL[take("fig8_l3", "off")],
        value=_BOOL[take("value", "off")],
        timing=_BOOL[take("timing", "off")],
    )
    if kv:
        raise ValueError(f"unknown config keys: {', '.join(sorted(kv))}")
    return cfg
