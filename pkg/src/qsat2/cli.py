"""Command line surface: gen / analyze / count / predict / xi / sweep.

Exit codes: 0 success, 2 usage error, 3 instance parse error, 4 component
over the size cap (count only).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .counting import ComponentCapError, RankBackendConfig, component_value, product_tree
from .graphs import components
from .instances import (
    FactorDistribution,
    Instance,
    InstanceParseError,
    ResampleBudgetError,
    load_instance,
    satisfiable,
    save_instance,
)
from .stats import functionals, thresholds, xi
from .structure import component_satisfiable, decouple, frozen_subgraph
from .sweep import generate_instance, parse_config, run_sweep


def _build_dist(f: Optional[int], q: str) -> FactorDistribution:
    if q == "uniform":
        if not f:
            raise ValueError("--q uniform requires --f")
        return FactorDistribution.uniform(f)
    weights = [Fraction(tok) for tok in q.split(",")]
    if f is not None and f != len(weights):
        raise ValueError("--f disagrees with the length of --q")
    return FactorDistribution.from_weights(weights)


def _cmd_gen(args) -> int:
    dist = _build_dist(args.f, args.q)
    if args.model == "er":
        if args.n is None or args.m is None:
            raise ValueError("er generation requires --n and --m")
        kwargs = dict(n=args.n, m=args.m)
    else:
        if args.L is None or args.p is None:
            raise ValueError("lattice generation requires --L and --p")
        kwargs = dict(L=args.L, p=args.p)
    cond = "free" if args.cond == "ff" else args.cond
    inst = generate_instance(
        model=args.model, dist=dist, seed=args.seed, cond=cond, **kwargs
    )
    from .instances import format_instance

    if args.out:
        save_instance(inst, args.out)
    else:
        sys.stdout.write(format_instance(inst))
    return 0


def _cmd_analyze(args) -> int:
    inst = load_instance(args.file)
    dec = decouple(inst, args.cutoff_c)
    rep = components(inst.graph)
    frustrated = dec.label == "frustrated"
    residual_of: dict[int, int] = {}
    for comp in dec.residual_components:
        root = min(comp)
        residual_of[root] = len(comp)
    print(
        f"instance n={inst.n} m={inst.m} f={inst.dist.f} "
        f"model={inst.graph.model_tag()} cond={inst.conditioning}"
    )
    print(f"cutoff={dec.cutoff} (c*log2(n))")
    for cid, (comp, cls) in enumerate(zip(rep.components, rep.classes)):
        cset = set(comp)
        frozen_here = sum(1 for v in dec.frozen if v in cset)
        res_here = max(
            (len(rc) for rc in dec.residual_components if rc[0] in cset), default=0
        )
        if frustrated and not component_satisfiable(inst, comp):
            label = "frustrated"
        elif len(comp) <= dec.cutoff:
            label = "highly_disconnected"
        elif res_here <= dec.cutoff:
            label = "highly_decoupled"
        else:
            label = "unclassified"
        print(
            f"C {cid} size={len(comp)} class={cls} frozen={frozen_here} "
            f"residual_max={res_here} label={label}"
        )
    core = 0
    if not frustrated and dec.frozen:
        core = len(frozen_subgraph(inst, dec.frozen).core)
    print(
        f"GLOBAL frustrated={int(frustrated)} label={dec.label} "
        f"frozen={len(dec.frozen)} frozen_core={core} "
        f"max_comp={dec.max_component} residual_max={dec.residual_max}"
    )
    return 0


def _cmd_count(args) -> int:
    inst = load_instance(args.file)
    if not satisfiable(inst):
        print("VALUE 0 FRUSTRATED")
        return 0
    cfg = RankBackendConfig(max_component_qubits=args.max_component)
    dec = decouple(inst)
    values = []
    for cid, comp in enumerate(dec.residual_components):
        val = component_value(inst, comp, cfg, frozen=dec.frozen)
        values.append(val)
        print(f"C {cid} {len(comp)} {val}")
    print(f"VALUE {product_tree(values)}")
    return 0


def _cmd_predict(args) -> int:
    dist = _build_dist(args.f, args.q)
    fn = functionals(dist)
    rep = thresholds(dist, model=args.model, n=args.n, gamma=args.gamma, p=args.p)

    def line(name: str, val) -> None:
        if val is None:
            print(f"{name} = unbounded" if name == "gamma_frustrate" else f"{name} = n/a")
        elif isinstance(val, Fraction):
            print(f"{name} = {val} = {float(val)!r}")
        else:
            print(f"{name} = {val!r}")

    line("norm2_sq", fn.norm2_sq)
    line("norm3_cu", fn.norm3_cu)
    line("norm4_qu", fn.norm4_qu)
    line("norm_inf", fn.norm_inf)
    line("Q2", fn.q2)
    line("Qinf", fn.qinf)
    line("Qcrux", fn.qcrux)
    line("Qjunct", fn.qjunct)
    line("gamma_disconnect", rep.gamma_disconnect)
    line("gamma_frustrate", rep.gamma_frustrate)
    line("decouple_condition", rep.decouple_condition)
    line("p_c", rep.p_c)
    line("p_fin", rep.p_fin)
    line("domino_scale", rep.domino_scale)
    line("domino_presence", rep.domino_presence)
    return 0


def _cmd_xi(args) -> int:
    print(repr(xi(args.rho)))
    return 0


def _cmd_sweep(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    csv = run_sweep(cfg, threads=args.threads)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(csv)
    return 0


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qsat2",
        description="Random product-constraint 2-QSAT: generation, analysis, counting",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample an instance and write it out")
    p.add_argument("--model", choices=["er", "lat2", "lat3"], default="er")
    p.add_argument("--n", type=int, help="vertex count (er)")
    p.add_argument("--m", type=int, help="edge count (er)")
    p.add_argument("--L", type=int, help="lattice side")
    p.add_argument("--p", type=float, help="bond retention probability")
    p.add_argument("--f", type=int, help="factor count for --q uniform")
    p.add_argument("--q", default="uniform", help="'uniform' or comma list of weights")
    p.add_argument("--cond", choices=["any", "ff"], default="any")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("analyze", help="structural report for an instance file")
    p.add_argument("file")
    p.add_argument("--cutoff-c", type=float, default=3.0, dest="cutoff_c")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("count", help="exact ground-space dimension")
    p.add_argument("file")
    p.add_argument("--max-component", type=int, default=16)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("predict", help="closed-form functionals and thresholds")
    p.add_argument("--f", type=int)
    p.add_argument("--q", default="uniform")
    p.add_argument("--gamma", type=float)
    p.add_argument("--model", choices=["er", "lat2", "lat3"], default="er")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("xi", help="tree-fraction fixed point")
    p.add_argument("rho", type=float)
    p.set_defaults(func=_cmd_xi)

    p = sub.add_parser("sweep", help="Monte Carlo sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ComponentCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (InstanceParseError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ValueError, ResampleBudgetError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
