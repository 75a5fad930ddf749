import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conveyor import cli
from conveyor.belt import MULTI_TOUCH, BeltSpec, realize, verify
from conveyor.generators import mixed_radii, x_separated_unit, xy_monotone_unit
from conveyor.geom import Disk
from conveyor.graphs import cube_graph, octahedron
from conveyor.io import (
    BeltFile, FormatError, belt_from_dict, belt_to_dict, disks_from, dumps, graph_from_dict,
    graph_to_dict, instance_from_dict, instance_to_dict,
)
from conveyor.svg import render_svg

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite, st.floats(1e-3, 1e3)), min_size=1, max_size=10))
def test_instance_round_trip_is_exact(rows):
    inst = disks_from([Disk.at(i, *r) for i, r in enumerate(rows)], name="x", tags=["t"])
    back = instance_from_dict(json.loads(dumps(instance_to_dict(inst))))
    assert back.disks == inst.disks and back.name == "x" and back.tags == ["t"]


def test_integer_instances_write_ints():
    inst = disks_from([Disk.at(0, 3, 4, 2)], tags=["integer"])
    obj = json.loads(dumps(instance_to_dict(inst)))
    assert obj["disks"][0] == {"id": 0, "x": 3, "y": 4, "r": 2}


def test_belt_round_trip():
    ds = xy_monotone_unit(5, 2)
    spec = BeltSpec.from_signs([(d.id, 1) for d in ds[:2]], MULTI_TOUCH)
    curve = realize(spec, ds)
    b = BeltFile(spec, curve, verify(curve, ds, MULTI_TOUCH))
    back = belt_from_dict(json.loads(dumps(belt_to_dict(b))))
    assert back.spec == spec and back.curve == curve
    assert back.verification == b.verification


@pytest.mark.parametrize("bad", [
    {}, {"disks": [{"id": 0, "x": 0, "y": 0}]}, {"disks": [{"id": 0, "x": 0, "y": 0, "r": -1}]},
    {"disks": [{"id": 0, "x": "a", "y": 0, "r": 1}]}, {"disks": [], "meta": {"source": "elsewhere"}},
])
def test_bad_instances(bad):
    with pytest.raises(FormatError):
        instance_from_dict(bad)


def test_bad_belts():
    with pytest.raises(FormatError):
        belt_from_dict({"mode": "sideways", "contacts": []})
    with pytest.raises(FormatError):
        belt_from_dict({"contacts": [{"disk": 0}]})
    with pytest.raises(FormatError):
        belt_from_dict({})


def test_graph_round_trip():
    for g in (octahedron(), cube_graph()):
        assert graph_from_dict(graph_to_dict(g)) == g
    with pytest.raises(FormatError):
        graph_from_dict({"edges": []})


def test_svg_well_formed():
    ds = xy_monotone_unit(4, 0)
    from conveyor.monotone import build_belt

    text = render_svg(ds, build_belt(ds), title="demo")
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert len(root.findall(".//s:circle", ns)) >= 4
    groups = {g.get("id") for g in root.iter("{http://www.w3.org/2000/svg}g")}
    assert {"arcs", "bitangents"} <= groups


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_monotone_pipeline(tmp_path, capsys):
    inst = _write(tmp_path, "i.json", instance_to_dict(disks_from(x_separated_unit(6, 1))))
    belt = str(tmp_path / "b.json")
    svg = str(tmp_path / "b.svg")
    code, _, _ = run(["check-separated", inst], capsys)
    assert code == 0
    code, _, _ = run(["build-monotone", inst, "-o", belt, "--render", svg], capsys)
    assert code == 0
    ET.parse(svg)
    code, out, _ = run(["verify", inst, belt], capsys)
    assert code == 0 and json.loads(out)["valid"]
    code, _, _ = run(["bitonic", inst], capsys)
    assert code == 0


def test_cli_solve_and_count(tmp_path, capsys):
    inst = _write(tmp_path, "i.json", instance_to_dict(disks_from(mixed_radii(4, 3))))
    code, out, _ = run(["solve", inst], capsys)
    assert code in (0, 1)
    code, out, _ = run(["solve", inst, "--multi", "--cap", "2"], capsys)
    assert code == 0 and json.loads(out)["verification"]["valid"]
    code, out, _ = run(["solve", inst, "--count"], capsys)
    assert json.loads(out)["count"] >= 0


def test_cli_generate_deterministic(tmp_path, capsys):
    a = run(["gen", "random", "--n", "7", "--seed", "5", "--mixed"], capsys)[1]
    b = run(["gen", "random", "--n", "7", "--seed", "5", "--mixed"], capsys)[1]
    assert a == b and len(json.loads(a)["disks"]) == 7
    lb = _write(tmp_path, "lb.json", json.loads(run(["gen", "lower-bound", "--n", "5"], capsys)[1]))
    code, _, _ = run(["solve", lb], capsys)
    assert code == 1
    code, out, _ = run(["augment", lb, "--one-touch"], capsys)
    assert code == 0


def test_cli_reduce(tmp_path, capsys):
    g = _write(tmp_path, "g.json", graph_to_dict(octahedron()))
    out_path = str(tmp_path / "red.json")
    code, _, _ = run(["reduce", "one-touch", g, "-o", out_path], capsys)
    assert code == 0
    code, out, _ = run(["solve", out_path, "--count"], capsys)
    assert json.loads(out)["count"] == 41


def test_cli_errors(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    code, _, err = run(["verify", missing, missing], capsys)
    assert code == 2 and json.loads(err)["exit_code"] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["solve", str(bad)], capsys)
    assert code == 2 and json.loads(err)["error"] == "FormatError"
    zig = _write(tmp_path, "z.json", {"disks": [
        {"id": 0, "x": 0.0, "y": -0.65, "r": 1}, {"id": 1, "x": 1.2, "y": 2.34, "r": 1},
        {"id": 2, "x": 2.4, "y": -1.64, "r": 1}, {"id": 3, "x": 3.6, "y": 0.74, "r": 1}]})
    code, _, err = run(["build-monotone", zig], capsys)
    assert code == 1 and json.loads(err)["error"] == "NotSeparated"
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve"])
    assert exc.value.code == 2


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "conveyor.cli", "gen", "random", "--n", "3", "--seed", "1",
                        "--unit"], capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    assert len(json.loads(r.stdout)["disks"]) == 3
