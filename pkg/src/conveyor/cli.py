"""Command-line interface: thin adapters over the library.

Exit codes: 0 ok/valid, 1 invalid or no belt, 2 usage or input error,
3 numeric failure.  Errors are reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import errors
from .belt import MULTI_TOUCH, ONE_TOUCH, BeltCurve, realize, verify
from .geom import DEFAULT_TOL, check_disjoint
from .io import (
    BeltFile,
    FormatError,
    belt_to_dict,
    disks_from,
    graph_to_dict,
    instance_to_dict,
    load_belt,
    load_graph,
    load_instance,
    write_json,
)

EXIT_OK, EXIT_NONE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind = code, kind


def _emit(obj, out: Optional[str]) -> None:
    text = write_json(out, obj)
    if out is None:
        sys.stdout.write(text)


def _load_disks(path: str):
    inst = load_instance(path)
    ds = inst.disks
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            check_disjoint(ds[i], ds[j], DEFAULT_TOL.eps)
    return inst


def _belt_payload(spec, curve: Optional[BeltCurve], disks, mode) -> dict:
    if curve is None:
        curve = realize(spec, disks)
    rep = verify(curve, disks, mode)
    return belt_to_dict(BeltFile(spec, curve, rep))


def _render(path: Optional[str], disks, curve) -> None:
    if path:
        from .svg import render_svg

        with open(path, "w") as fh:
            fh.write(render_svg(disks, curve))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check_separated(a) -> int:
    from .monotone import is_monotonically_separated, is_x_separated, is_xy_monotone

    ds = _load_disks(a.instance).disks
    out = {
        "xy_monotone": is_xy_monotone(ds),
        "x_separated": is_x_separated(ds),
        "monotonically_separated": is_monotonically_separated(ds),
    }
    _emit(out, a.output)
    return EXIT_OK if out["monotonically_separated"] else EXIT_NONE


def cmd_build_monotone(a) -> int:
    from .monotone import build_belt, build_spec, is_monotonically_separated

    ds = _load_disks(a.instance).disks
    if not is_monotonically_separated(ds):
        raise errors.NotSeparated("instance is not monotonically separated")
    if len(ds) == 1:
        curve, spec = build_belt(ds), None
        payload = belt_to_dict(BeltFile(None, curve, verify(curve, ds, MULTI_TOUCH)))
    else:
        spec = build_spec(ds)
        curve = realize(spec, ds)
        payload = _belt_payload(spec, curve, ds, MULTI_TOUCH)
    _emit(payload, a.output)
    _render(a.render, ds, curve)
    return EXIT_OK if payload["verification"]["valid"] else EXIT_NONE


def cmd_verify(a) -> int:
    ds = _load_disks(a.instance).disks
    b = load_belt(a.belt)
    mode = {"one": ONE_TOUCH, "multi": MULTI_TOUCH, None: None}[a.mode]
    if b.spec is not None:
        mode = mode or b.spec.mode
        try:
            curve = realize(b.spec, ds)
        except errors.GeometryError as exc:
            _emit({"valid": False, "failures": [{"code": "BROKEN_CHAIN", "detail": str(exc), "location": []}]},
                  a.output)
            return EXIT_NONE
    else:
        curve = b.curve
    rep = verify(curve, ds, mode or MULTI_TOUCH)
    _emit(rep.to_dict(), a.output)
    return EXIT_OK if rep.valid else EXIT_NONE


def cmd_solve(a) -> int:
    from .solver import SearchLimits, count_one_touch, solve_multi_touch, solve_one_touch

    ds = _load_disks(a.instance).disks
    limits = SearchLimits(max_disks=a.max_disks, max_contacts_per_disk=a.cap, time_budget=a.time_budget)
    if a.count:
        n = count_one_touch(ds, limits)
        _emit({"count": n, "mode": ONE_TOUCH}, a.output)
        return EXIT_OK if n else EXIT_NONE
    if a.multi:
        curve, mode = solve_multi_touch(ds, limits), MULTI_TOUCH
    else:
        curve, mode = solve_one_touch(ds, limits), ONE_TOUCH
    if curve is None:
        _emit({"belt": None, "mode": mode}, a.output)
        return EXIT_NONE
    payload = belt_to_dict(BeltFile(None, curve, verify(curve, ds, mode)))
    payload["mode"] = mode
    _emit(payload, a.output)
    _render(a.render, ds, curve)
    return EXIT_OK


def cmd_bitonic(a) -> int:
    from .monotone import bitonic_dp

    ds = _load_disks(a.instance).disks
    spec = bitonic_dp(ds)
    if spec is None:
        _emit({"belt": None, "mode": ONE_TOUCH}, a.output)
        return EXIT_NONE
    _emit(_belt_payload(spec, None, ds, ONE_TOUCH), a.output)
    return EXIT_OK


def cmd_augment(a) -> int:
    from .power import augment_one_touch, place_guides

    inst = _load_disks(a.instance)
    ds = inst.disks
    plan = augment_one_touch(ds) if a.one_touch else place_guides(ds)
    mode = ONE_TOUCH if a.one_touch else MULTI_TOUCH
    all_disks = list(ds) + list(plan.guides)
    out_inst = disks_from(all_disks, name=(inst.name or "instance") + "+guides", source="generator",
                          tags=list(inst.tags) + ["augmented"],
                          extra={"original": [d.id for d in ds], "guides": [g.id for g in plan.guides],
                                 "guide_tags": list(plan.tags)})
    curve = plan.curve
    rep = verify(curve, all_disks, mode)
    payload = {"instance": instance_to_dict(out_inst),
               "belt": belt_to_dict(BeltFile(plan.belt, curve if plan.belt is None else None, rep))}
    _emit(payload, a.output)
    _render(a.render, all_disks, curve)
    return EXIT_OK if rep.valid else EXIT_NONE


def cmd_gen(a) -> int:
    from . import generators
    from .power import lower_bound_instance

    if a.kind == "lower-bound":
        lb = lower_bound_instance(a.n)
        inst = disks_from(lb.disks, name=f"lower-bound-{a.n}", source="generator", tags=["lower-bound"],
                          extra={"central": lb.central, "small": lb.small})
    else:
        if a.seed is None:
            raise _Exit(EXIT_USAGE, "UsageError", "gen random needs --seed")
        if a.xy_monotone:
            ds, tag = generators.xy_monotone_unit(a.n, a.seed), "xy-monotone"
        elif a.x_separated:
            ds, tag = generators.x_separated_unit(a.n, a.seed), "x-separated"
        elif a.mixed:
            ds, tag = generators.mixed_radii(a.n, a.seed), "mixed"
        else:
            ds, tag = generators.unit_random(a.n, a.seed), "unit"
        inst = disks_from(ds, name=f"random-{tag}-{a.n}-{a.seed}", source="generator", tags=[tag],
                          extra={"seed": a.seed})
    _emit(instance_to_dict(inst), a.output)
    return EXIT_OK


def cmd_reduce(a) -> int:
    from .packing import ReductionConfig, multi_touch_instance, one_touch_instance

    g = load_graph(a.graph)
    cfg = ReductionConfig(integer_scale=a.integer_scale) if a.integer_scale else ReductionConfig()
    if a.kind == "one-touch":
        from .graphs import PlanarTriangulation

        if not isinstance(g, PlanarTriangulation):
            raise _Exit(EXIT_USAGE, "UsageError", "one-touch reduction takes a triangulation ('faces')")
        g.validate()
        r = one_touch_instance(g, cfg)
        tags = ["one-touch"] + (["integer"] if r.scale else [])
        extra = {"graph": graph_to_dict(g), "delta": r.delta, "scale": r.scale,
                 "vertex_disk": {str(k): v for k, v in r.vertex_disk.items()},
                 "unblocked_pairs": sorted(list(p) for p in r.unblocked_pairs),
                 "audit_ok": bool(r.audit_report.ok)}
        inst = disks_from(r.disks, name="one-touch-reduction", source="reduction", tags=tags, extra=extra)
    else:
        from .graphs import CubicPlanarGraph

        if not isinstance(g, CubicPlanarGraph):
            raise _Exit(EXIT_USAGE, "UsageError", "multi-touch reduction takes a cubic graph ('rotation')")
        r = multi_touch_instance(g, cfg)
        extra = {"graph": graph_to_dict(g), "delta": r.base.delta, "eta": r.eta,
                 "region_disk": {str(k): v for k, v in r.region_disk.items()},
                 "outer_vertex": r.outer_vertex,
                 "outer_gadgets": [[a_, b_, d] for (a_, b_), d in sorted(r.outer_gadgets.items())],
                 "packing": r.packing_ids}
        inst = disks_from(r.disks, name="multi-touch-reduction", source="reduction", tags=["multi-touch"],
                          extra=extra)
    _emit(instance_to_dict(inst), a.output)
    return EXIT_OK


def cmd_render(a) -> int:
    from .svg import render_svg

    ds = _load_disks(a.instance).disks
    curve = None
    if a.belt:
        b = load_belt(a.belt)
        curve = realize(b.spec, ds) if b.spec is not None else b.curve
    with open(a.output, "w") as fh:
        fh.write(render_svg(ds, curve))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conveyor", description="Conveyor belts on systems of disjoint disks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-separated", cmd_check_separated, "separation predicates for unit disks")
    sp.add_argument("instance")
    sp.add_argument("-o", "--output")

    sp = add("build-monotone", cmd_build_monotone, "linear-time belt for monotonically separated unit disks")
    sp.add_argument("instance")
    sp.add_argument("-o", "--output")
    sp.add_argument("--render", metavar="SVG")

    sp = add("verify", cmd_verify, "verify a belt certificate")
    sp.add_argument("instance")
    sp.add_argument("belt")
    sp.add_argument("--mode", choices=["one", "multi"])
    sp.add_argument("-o", "--output")

    sp = add("solve", cmd_solve, "exhaustive search at desk scale")
    sp.add_argument("instance")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--one-touch", action="store_true", default=True)
    g.add_argument("--multi", action="store_true")
    sp.add_argument("--cap", type=int, default=2, help="contacts per disk in multi-touch mode")
    sp.add_argument("--count", action="store_true", help="count one-touch belts")
    sp.add_argument("--max-disks", type=int, default=12)
    sp.add_argument("--time-budget", type=float)
    sp.add_argument("-o", "--output")
    sp.add_argument("--render", metavar="SVG")

    sp = add("bitonic", cmd_bitonic, "bitonic one-touch belt by dynamic programming")
    sp.add_argument("instance")
    sp.add_argument("-o", "--output")

    sp = add("augment", cmd_augment, "add guide disks so that a belt exists")
    sp.add_argument("instance")
    sp.add_argument("--one-touch", action="store_true")
    sp.add_argument("-o", "--output")
    sp.add_argument("--render", metavar="SVG")

    sp = add("gen", cmd_gen, "generate instances")
    sp.add_argument("kind", choices=["lower-bound", "random"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int)
    r = sp.add_mutually_exclusive_group()
    r.add_argument("--unit", action="store_true")
    r.add_argument("--mixed", action="store_true")
    s = sp.add_mutually_exclusive_group()
    s.add_argument("--xy-monotone", action="store_true")
    s.add_argument("--x-separated", action="store_true")
    sp.add_argument("-o", "--output")

    sp = add("reduce", cmd_reduce, "compile a graph into a belt instance")
    sp.add_argument("kind", choices=["one-touch", "multi-touch"])
    sp.add_argument("graph")
    sp.add_argument("--integer-scale", type=int)
    sp.add_argument("-o", "--output")

    sp = add("render", cmd_render, "draw an instance and optional belt as SVG")
    sp.add_argument("instance")
    sp.add_argument("belt", nargs="?")
    sp.add_argument("-o", "--output", required=True)
    return p


def _classify(exc: BaseException) -> int:
    if isinstance(exc, (errors.NumericFailure,)):
        return EXIT_NUMERIC
    if isinstance(exc, (errors.NotSeparated, errors.BudgetExceeded)):
        return EXIT_NONE
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "kind", None) == "random" and args.mixed and (args.xy_monotone or args.x_separated):
        parser.error("--xy-monotone and --x-separated generate unit disks")
    try:
        return args.fn(args)
    except _Exit as exc:
        code, kind, msg = exc.code, exc.kind, str(exc)
    except (errors.ConveyorError, FormatError, OSError, ValueError) as exc:
        code, kind, msg = _classify(exc), type(exc).__name__, str(exc)
    sys.stderr.write(json.dumps({"error": kind, "message": msg, "exit_code": code}) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
