import json
import os
import subprocess
import sys

import pytest

from toricgit import jsonio
from toricgit.degeneration import build_bundle, product_ray_vectors


def run_cli(args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "toricgit.cli"] + args,
                          capture_output=True, text=True, env=e)


def test_build_permutahedron_n2():
    r = run_cli(["build", "--n", "2", "--object", "permutahedron"])
    assert r.returncode == 0
    obj = json.loads(r.stdout)
    assert obj["vertices"] == [["0"], ["1"]]


def test_build_product_recession_rays():
    r = run_cli(["build", "--n", "2", "--object", "product"])
    assert r.returncode == 0
    obj = json.loads(r.stdout)
    # the polyhedron facet normals are exactly the labeled product-cone rays
    normals = {tuple(int(x) for x in f["normal"]) for f in obj["facets"]}
    assert normals == set(product_ray_vectors(2))
    assert len(obj["vertices"]) == 9


def test_build_bad_n():
    assert run_cli(["build", "--n", "0", "--object", "expanded"]).returncode == 2
    assert run_cli(["build", "--n", "9", "--object", "product"]).returncode == 2
    assert run_cli(["build", "--n", "2", "--object", "nonsense"]).returncode == 2


def test_build_io_failure():
    r = run_cli(["build", "--n", "2", "--object", "permutahedron",
                 "--out", "/nonexistent-dir/x.json"])
    assert r.returncode == 3


def test_build_roundtrip(tmp_path):
    out = tmp_path / "expanded.json"
    r = run_cli(["build", "--n", "2", "--object", "expanded", "--out", str(out)])
    assert r.returncode == 0
    with open(out) as fh:
        obj = json.load(fh)
    poly = jsonio.polyhedron_from_json(obj)
    assert poly == build_bundle(2).family_polyhedron
    assert jsonio.polyhedron_to_json(poly) == obj


def test_verify_all_n2():
    r = run_cli(["verify", "--n", "2", "--all"])
    assert r.returncode == 0
    lines = [json.loads(l) for l in r.stdout.splitlines() if l.strip()]
    assert len(lines) == 7
    assert all(l["status"] == "pass" for l in lines)
    assert all(l["tool_version"] for l in lines)


def test_verify_single_check_report():
    r = run_cli(["verify", "--n", "2", "--check", "unstable_locus"])
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    rays = rep["witness"]["rays"]
    assert len(rays) == 12
    margins = {(tuple(x["I"]), x["j"]): x["margin"] for x in rays}
    assert margins[((1,), 1)] == "0"
    assert margins[((), 1)] == "2/3"
    assert margins[((1, 2), 1)] == "2/3"


def test_verify_bad_args():
    assert run_cli(["verify", "--n", "99", "--all"]).returncode == 2
    assert run_cli(["verify", "--n", "2", "--check", "bogus"]).returncode == 2
    assert run_cli(["verify", "--n", "1", "--check", "normal_fan"]).returncode == 2


def test_verify_jobs_parallel():
    r = run_cli(["verify", "--n", "2", "--all", "--jobs", "4"])
    assert r.returncode == 0
    lines = [json.loads(l) for l in r.stdout.splitlines() if l.strip()]
    assert sorted(l["check"] for l in lines) == sorted(
        ["conical_part", "pb_vertices", "quotient_theorem", "normal_fan",
         "unstable_locus", "base_recovery", "fan_smooth_small"])


def test_verify_fuzz_seeded():
    env = {"DEGEN_SEED": "42", "DEGEN_FUZZ_TRIALS": "15"}
    r = run_cli(["verify", "--n", "3", "--check", "comparison_fuzz"], env=env)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["status"] == "pass" and rep["witness"]["trials"] == 15
    r2 = run_cli(["verify", "--n", "3", "--check", "comparison_fuzz"], env=env)
    assert json.loads(r2.stdout)["witness"] == rep["witness"]


def test_quotient_command(tmp_path):
    b = build_bundle(1)
    ppath = tmp_path / "poly.json"
    apath = tmp_path / "alpha.json"
    ppath.write_text(jsonio.dumps(jsonio.polyhedron_to_json(b.family_polyhedron)))
    apath.write_text(jsonio.dumps(jsonio.matrix_to_json(b.lin_family.alpha)))
    r = run_cli(["quotient", str(ppath), str(apath), "1/2"])
    assert r.returncode == 0
    obj = json.loads(r.stdout)
    assert len(obj["quotient"]["vertices"]) == 1
    assert len(obj["conical"]["rays"]) == 2
    # mismatched b length
    r = run_cli(["quotient", str(ppath), str(apath), "1/2,1/3"])
    assert r.returncode == 2
    # unparsable file
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run_cli(["quotient", str(bad), str(apath), "1/2"]).returncode == 2


def test_quotient_empty(tmp_path):
    square = {"ambient_rank": 2,
              "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]],
              "recession": {"ambient_rank": 2, "rays": [], "lineality": []}}
    alpha = {"rows": 1, "cols": 2, "entries": [["1", "0"]]}
    p = tmp_path / "sq.json"
    a = tmp_path / "al.json"
    p.write_text(json.dumps(square))
    a.write_text(json.dumps(alpha))
    r = run_cli(["quotient", str(p), str(a), "-5"])
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"empty": True}


EX1 = {"n": 9, "I_t": [1, 7, 10], "points":
       [{"component": 1, "root": f"{j}/3", "generic": [1, 0, 0], "a1": "a", "mult": 1}
        for j in range(3)] +
       [{"component": 1, "root": f"{j}/3", "generic": [0, 1, 0], "a1": "b", "mult": 1}
        for j in range(3)] +
       [{"component": 2, "root": f"{j}/3", "generic": [0, 0, 1], "a1": "c", "mult": 1}
        for j in range(3)]}

EX2 = {"n": 6, "I_t": [1, 7], "points":
       [{"component": 1, "root": f"{j}/3", "generic": [1], "a1": "a", "mult": 2}
        for j in range(3)]}


def test_stab_example_one(tmp_path):
    cfg = tmp_path / "ex1.json"
    cfg.write_text(json.dumps(EX1))
    r = run_cli(["stab", str(cfg)])
    assert r.returncode == 0
    obj = json.loads(r.stdout)
    assert obj["torus"] == {"invariant_factors": [3, 3]}
    assert obj["quotient"] == {"invariant_factors": [3, 3]}
    assert obj["comparison"] == "PASS"
    assert obj["stab_order"] == 9 and obj["stab0_order"] == 1


def test_stab_example_two(tmp_path):
    cfg = tmp_path / "ex2.json"
    cfg.write_text(json.dumps(EX2))
    r = run_cli(["stab", str(cfg)])
    assert r.returncode == 0
    obj = json.loads(r.stdout)
    assert obj["torus"] == {"invariant_factors": [3]}
    assert obj["quotient"] == {"invariant_factors": [3]}
    assert obj["stab0_blocks"] == [[1, 2], [3, 4], [5, 6]]
    assert obj["comparison"] == "PASS"


def test_stab_bound_exceeded(tmp_path):
    cfg = tmp_path / "big.json"
    cfg.write_text(json.dumps({
        "n": 12, "I_t": [],
        "points": [{"component": 0, "root": "0", "generic": [1], "a1": "a", "mult": 12}]}))
    assert run_cli(["stab", str(cfg), "--brute-force-max", "9"]).returncode == 4


def test_stab_parse_error(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("not json")
    assert run_cli(["stab", str(cfg)]).returncode == 2


def test_build_determinism():
    a = run_cli(["build", "--n", "3", "--object", "product"]).stdout
    b = run_cli(["build", "--n", "3", "--object", "product"]).stdout
    assert a == b


def test_config_roundtrip(tmp_path):
    c = jsonio.configuration_from_json(EX1)
    again = jsonio.configuration_from_json(jsonio.configuration_to_json(c))
    assert c == again
