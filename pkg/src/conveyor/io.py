"""JSON formats for instances, belts and graphs.

Floats are written by ``json`` with Python's shortest round-trip repr, so
``parse(serialize(x)) == x`` holds bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from .belt import MULTI_TOUCH, ONE_TOUCH, BeltCurve, BeltSpec, Contact, VerificationReport
from .geom import Arc, Disk, Point, TangentSegment, configuration_index
from .graphs import CubicPlanarGraph, PlanarTriangulation

SOURCES = ("manual", "generator", "reduction")
PathLike = Union[str, Path]


class FormatError(ValueError):
    """Malformed input file."""


@dataclass
class InstanceFile:
    disks: list[Disk]
    name: str = ""
    source: str = "manual"
    tags: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)  # free-form metadata (reduction maps, seeds)

    def __post_init__(self):
        if self.source not in SOURCES:
            raise FormatError(f"source must be one of {SOURCES}")
        configuration_index(self.disks)  # rejects duplicate ids

    @property
    def integer(self) -> bool:
        return "integer" in self.tags


def _num(v: float, integer: bool):
    if integer and float(v).is_integer():
        return int(v)
    return float(v)


def instance_to_dict(inst: InstanceFile) -> dict:
    integer = inst.integer
    meta: dict[str, Any] = {"name": inst.name, "source": inst.source, "tags": list(inst.tags)}
    if inst.extra:
        meta["extra"] = inst.extra
    return {
        "disks": [{"id": d.id, "x": _num(d.x, integer), "y": _num(d.y, integer), "r": _num(d.radius, integer)}
                  for d in inst.disks],
        "meta": meta,
    }


def _finite(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise FormatError(f"{what} must be a finite number, got {v!r}")
    return float(v)


def instance_from_dict(obj: dict) -> InstanceFile:
    if not isinstance(obj, dict) or "disks" not in obj:
        raise FormatError("instance needs a 'disks' list")
    disks = []
    for k, d in enumerate(obj["disks"]):
        try:
            disks.append(Disk.at(int(d["id"]), _finite(d["x"], "x"), _finite(d["y"], "y"), _finite(d["r"], "r")))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"disk #{k}: {exc}") from None
        except ValueError as exc:
            raise FormatError(f"disk #{k}: {exc}") from None
    meta = obj.get("meta", {})
    try:
        return InstanceFile(disks, meta.get("name", ""), meta.get("source", "manual"),
                            list(meta.get("tags", [])), dict(meta.get("extra", {})))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def contacts_to_list(spec: BeltSpec) -> list[dict]:
    return [{"disk": c.disk, "orientation": c.orientation} for c in spec.contacts]


def _piece_to_dict(p) -> dict:
    if isinstance(p, TangentSegment):
        return {"type": "segment", "from": p.from_disk, "to": p.to_disk, "kind": p.kind,
                "p1": [p.p1.x, p.p1.y], "p2": [p.p2.x, p.p2.y]}
    return {"type": "arc", "disk": p.disk, "start": p.start_angle, "end": p.end_angle,
            "direction": p.direction, "full": p.full}


def _piece_from_dict(d: dict):
    if d["type"] == "segment":
        return TangentSegment(int(d["from"]), int(d["to"]), Point(*map(float, d["p1"])),
                              Point(*map(float, d["p2"])), d["kind"])
    if d["type"] == "arc":
        return Arc(int(d["disk"]), float(d["start"]), float(d["end"]), d["direction"], bool(d.get("full", False)))
    raise FormatError(f"unknown piece type {d['type']!r}")


@dataclass
class BeltFile:
    spec: Optional[BeltSpec]
    curve: Optional[BeltCurve] = None
    verification: Optional[VerificationReport] = None

    def __post_init__(self):
        if self.spec is None and self.curve is None:
            raise FormatError("a belt file needs contacts or a curve")
        if self.spec is not None and self.curve is not None and not isinstance(self.curve.pieces[0], Arc):
            raise FormatError("curves start with an arc")
        if self.spec is not None and self.curve is not None:
            if [c.disk for c in self.spec.contacts] != self.curve.contact_disks():
                raise FormatError("contacts and curve disagree")


def belt_to_dict(b: BeltFile) -> dict:
    out: dict[str, Any] = {}
    if b.spec is not None:
        out["contacts"] = contacts_to_list(b.spec)
        out["mode"] = b.spec.mode
    if b.curve is not None:
        out["curve"] = [_piece_to_dict(p) for p in b.curve.pieces]
    if b.verification is not None:
        out["verification"] = b.verification.to_dict()
    return out


def belt_from_dict(obj: dict) -> BeltFile:
    if not isinstance(obj, dict):
        raise FormatError("belt file must be a JSON object")
    spec = None
    mode = obj.get("mode", MULTI_TOUCH)
    if mode not in (ONE_TOUCH, MULTI_TOUCH):
        raise FormatError(f"unknown mode {mode!r}")
    if "contacts" in obj:
        try:
            spec = BeltSpec(tuple(Contact(int(c["disk"]), c["orientation"]) for c in obj["contacts"]), mode)
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad contacts: {exc}") from None
    curve = None
    if "curve" in obj:
        try:
            curve = BeltCurve(tuple(_piece_from_dict(p) for p in obj["curve"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad curve: {exc}") from None
    rep = None
    if "verification" in obj:
        from .belt import Failure

        v = obj["verification"]
        rep = VerificationReport(bool(v["valid"]), tuple(
            Failure(tuple(f.get("location", ())), f["code"], f.get("detail", "")) for f in v.get("failures", ())))
    return BeltFile(spec, curve, rep)


def graph_from_dict(obj: dict) -> Union[PlanarTriangulation, CubicPlanarGraph]:
    """``{"faces": [...], "outer": [...]}`` or ``{"rotation": [...]}``."""
    from .errors import GraphError

    try:
        if "faces" in obj:
            faces = tuple(tuple(int(v) for v in f) for f in obj["faces"])
            n = 1 + max(max(f) for f in faces)
            outer = tuple(obj.get("outer", faces[0]))
            return PlanarTriangulation(int(obj.get("n", n)), faces, outer)
        if "rotation" in obj:
            return CubicPlanarGraph(tuple(tuple(int(v) for v in r) for r in obj["rotation"]))
    except GraphError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise FormatError(f"bad graph: {exc}") from None
    raise FormatError("graph needs 'faces' (triangulation) or 'rotation' (cubic graph)")


def graph_to_dict(g: Union[PlanarTriangulation, CubicPlanarGraph]) -> dict:
    if isinstance(g, PlanarTriangulation):
        return {"n": g.n, "faces": [list(f) for f in g.faces], "outer": list(g.outer)}
    return {"rotation": [list(r) for r in g.rotation]}


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=1, allow_nan=False) + "\n"


def read_json(path: PathLike) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def write_json(path: Optional[PathLike], obj: dict) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text


def load_instance(path: PathLike) -> InstanceFile:
    return instance_from_dict(read_json(path))


def load_belt(path: PathLike) -> BeltFile:
    return belt_from_dict(read_json(path))


def load_graph(path: PathLike):
    return graph_from_dict(read_json(path))


def disks_from(seq: Sequence[Disk], name: str = "", source: str = "manual", tags=(), extra=None) -> InstanceFile:
    return InstanceFile(list(seq), name, source, list(tags), dict(extra or {}))
