#!/usr/bin/env python3
"""Runs the gdkp CLI and validates its JSON output against schemas/."""
import json
import math
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

BIN = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])
failures = []


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(*args, ok=True):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    if ok and p.returncode != 0:
        raise AssertionError(f"{args}: exit {p.returncode}: {p.stderr}")
    return p


def check(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def validated(name, *args):
    doc = json.loads(run(*args).stdout)
    try:
        jsonschema.validate(doc, schema(name))
        check(f"schema {name} {' '.join(args[:3])}", True)
    except jsonschema.ValidationError as e:
        check(f"schema {name} {' '.join(args[:3])}", False, e.message)
    return doc


bands = validated("bands", "bands", "--family", "BDI", "--theta", "0.3", "--k", "201", "--window", "-8", "8")
labels = sorted(b["band"] for b in bands["bands"])
check("bands BDI(0.3) window [-8, 8] labels", labels == [-2, -1, 1, 2], str(labels))

flat = validated("bands", "bands", "--family", "D", "--theta", "0")
levels = {b["band"]: b["eps"] for b in flat["bands"]}
e1 = math.sqrt(math.pi**2 + 1)
check("bands D(0) flat zero band", max(abs(x) for x in levels.get(0, [1.0])) < 1e-9)
check("bands D(0) flat band at sqrt(pi^2+1)", max(abs(x - e1) for x in levels.get(1, [0.0])) < 1e-9)
check("bands D(0) flat band at -sqrt(pi^2+1)", max(abs(x + e1) for x in levels.get(-1, [0.0])) < 1e-9)

bad = run("bands", "--family", "BDI", "--theta", "7", ok=False)
err = json.loads(bad.stderr)
jsonschema.validate(err, schema("error"))
check("invalid theta exits 1", bad.returncode == 1)
check("invalid theta message", "theta out of range" in err["message"])

z = validated("zak", "zak", "--family", "BDI", "--theta", "0.3", "--band", "1", "--M", "2048")
check("zak BDI(0.3) n=1 is pi", abs(z["phase"] - math.pi) < 2e-2, str(z["phase"]))
zd = validated("zak", "zak", "--family", "D", "--theta", "0.785", "--band", "1")
dist = min(abs(zd["phase"]), abs(zd["phase"] - math.pi), abs(zd["phase"] - 2 * math.pi))
check("zak D(0.785) not quantized", dist > 0.1 and "convergence" in zd, str(zd["phase"]))
zt = validated("zak", "zak", "--family", "BDI", "--theta", "0.3", "--band", "1", "--d", "0", "--shifted-cell")
check("zak --d 0 translated phase", "translated_phase" in zt)

validated("zero_modes", "zero-modes", "--family", "BDI", "--theta", "0.3")
validated("edges", "edges", "--family", "BDI", "--theta", "0.3", "--alpha", "-1.5707963267948966")
b = validated("bbc", "bbc", "--family", "BDI", "--theta", "0.3", "--band", "1", "--d", "0.5", "--alpha", "1.5708")
check("bbc BDI(0.3) n=1 d=1/2 alpha=pi/2 holds", b["verdict"] == "holds", b["verdict"])
validated("kurasov", "kurasov", "--g", "0", "0", "0", "0")
validated("kurasov", "kurasov", "--family", "D", "--theta", "0")

sweep_args = ["sweep", "edges", "--family", "BDI", "--alpha-axis", "--d", "0.5",
              "--theta-grid", "-3.1", "3.1", "6", "--axis-grid", "-3", "3", "4"]
validated("sweep_edges", *sweep_args)
zak_args = ["sweep", "zak", "--family", "AIII", "--theta-grid", "-3", "3", "4",
            "--m2-grid", "-0.6", "0.6", "3", "--M", "256", "--bands", "1", "-1"]
validated("sweep_zak", *zak_args)

one = run("--workers", "1", *zak_args).stdout
four = run("--workers", "4", *zak_args).stdout
check("sweep zak output independent of worker count", one == four)
one = run("--workers", "1", *sweep_args).stdout
four = run("--workers", "4", *sweep_args).stdout
check("sweep edges output independent of worker count", one == four)

csv = run("--format", "csv", "zak", "--family", "BDI", "--theta", "0.3", "--band", "1").stdout.splitlines()
row = dict(zip(csv[0].split(","), csv[1].split(",")))
digits = len(row["phase"].replace(".", "").replace("-", "").split("e")[0].lstrip("0"))
check("csv floats carry 17 significant digits", digits == 17, row["phase"])

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    json.dump({"mass": 1.0, "zak": {"band": 2, "M": 512}}, f)
cfg = json.loads(run("--config", f.name, "zak", "--family", "BDI", "--theta", "1.0").stdout)
check("config supplies options", cfg["band"] == 2 and cfg["M"] == 512)
cfg = json.loads(run("--config", f.name, "zak", "--family", "BDI", "--theta", "1.0", "--M", "256").stdout)
check("explicit flags override config", cfg["M"] == 256 and cfg["band"] == 2)
pathlib.Path(f.name).unlink()

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
