"""Runs the mcw binary: exit codes, schema conformance, repeat determinism,
and agreement between human and JSON answers."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

mcw, samples, schema_path = sys.argv[1], Path(sys.argv[2]), sys.argv[3]
schema = json.load(open(schema_path))
tmp = Path(tempfile.mkdtemp(prefix="mcw-cli-"))
c4, k2, mis = str(samples / "c4.expr"), str(samples / "k2.expr"), str(samples / "minimal.mis")
bad = tmp / "bad.expr"
bad.write_text("(join 1 2 (intro a (1 2)))\n")
graph = tmp / "c4.graph"
failures = []


def run(args, env=None):
    p = subprocess.run([mcw] + args, capture_output=True, env=env)
    return p.returncode, p.stdout


def check(args, want, human_key=None):
    rc, out = run(args + ["--json"])
    if rc != want:
        failures.append(f"{args}: exit {rc}, wanted {want}")
        return None
    doc = json.loads(out)
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        failures.append(f"{args}: schema: {e.message}")
    if run(args + ["--json"]) != (rc, out):
        failures.append(f"{args}: output differs between runs")
    rc2, human = run(args)
    if rc2 != rc:
        failures.append(f"{args}: human exit {rc2} vs json exit {rc}")
    if human_key:
        line = next((l for l in human.decode().splitlines() if l.startswith(human_key)), "")
        val = line.split(":")[-1].strip()
        ans = doc.get("answer")
        if ans is not None and val != ("yes" if ans else "no"):
            failures.append(f"{args}: human says {val!r}, json {ans}")
        if ans is None and "optimum" in doc and val != str(doc["optimum"]):
            failures.append(f"{args}: human optimum {val!r}, json {doc['optimum']}")
    return doc


check(["validate", c4], 0)
check(["validate", str(bad)], 1)
check(["normalize", c4], 0)
ev = check(["eval", c4, "-o", str(graph)], 0)
check(["solve", "hc", c4], 0, "hamiltonian")
check(["solve", "hc", k2], 1, "hamiltonian")
check(["solve", "hc", c4, "--no-reduce"], 0, "hamiltonian")
check(["solve", "eds", k2, "--budget", "0"], 1, "eds of size")
check(["solve", "eds", c4, "--budget", "2"], 0, "eds of size")
check(["solve", "eds", c4, "--optimum"], 0, "optimum")
check(["solve", "maxcut", c4], 0, "optimum")
check(["solve", "maxcut", c4, "--budget", "5"], 1, "cut >=")
check(["oracle", "hc", c4], 0, "hamiltonian")
check(["oracle", "hc", str(graph)], 0, "hamiltonian")
check(["oracle", "eds", c4, "--budget", "1"], 1, "eds of size")
check(["oracle", "maxcut", str(graph)], 0, "optimum")
check(["gen", "random", "--n", "7", "--k", "3", "--seed", "5"], 0)
check(["gen", "random", "--n", "7", "--k", "3", "--seed", "5", "--profile", "linear"], 0)
check(["gen", "lb", "--mis", mis, "--override-C", "2", "--override-D", "2", "-o", str(tmp / "lb")], 0)
check(["check", "gadgets", "--C", "901", "--D", "2", "--n", "1"], 0)
check(["check", "gadgets", "--C", "1", "--D", "2", "--n", "1"], 1)
check(["fuzz", "--n", "6", "--k", "2", "--count", "20", "--seed", "7"], 0)
fz = check(["fuzz", "--n", "8", "--k", "3", "--count", "200", "--seed", "1"], 0)
if fz and any(r["agreed"] != 200 for r in fz["results"]):
    failures.append(f"fuzz n=8 k=3: {fz['results']}")

lb = json.load(open(tmp / "lb.json"))
if not lb["counts"]["graph_matches_expression"]:
    failures.append("gen lb: expression and graph disagree")

for args, want in [([], 2), (["bogus"], 2), (["solve", "hc"], 2), (["solve", "hc", str(tmp / "missing")], 2),
                   (["solve", "eds", c4], 2), (["solve", "hc", str(bad)], 2), (["fuzz", "--which", "x"], 2)]:
    rc, _ = run(args)
    if rc != want:
        failures.append(f"{args}: exit {rc}, wanted {want}")

rc, _ = run(["oracle", "hc", c4], env={"MCW_ORACLE_CAP": "3"})
if rc != 3:
    failures.append(f"MCW_ORACLE_CAP=3 oracle hc: exit {rc}, wanted 3")
rc, _ = run(["gen", "lb", "--mis", mis, "-o", str(tmp / "x"), "--vertex-cap", "100"])
if rc != 3:
    failures.append(f"gen lb over vertex cap: exit {rc}, wanted 3")

for f in failures:
    print("FAIL", f)
print("cli checks:", "ok" if not failures else f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
