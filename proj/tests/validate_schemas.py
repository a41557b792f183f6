"""Runs each subcommand on the sample data and validates its JSON report."""

import json
import pathlib
import subprocess
import sys

import jsonschema

tool, root = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
data = root / "data"

runs = {
    "repfam": [["repfam", data / "weighted_family.txt", "--skip-threshold", "0", "--debug-verify"],
               ["repfam", data / "small_family.txt", "--mode", "unweighted"]],
    "separator": [["separator", "--n", "10", "--k", "4", "--p", "2", "--verify"],
                  ["separator", "--n", "8", "--k", "3", "--p", "0"]],
    "pcover": [["pcover", data / "pcover_k4.txt", "--skip-threshold", "0", "--debug-verify"],
               ["pcover", data / "pcover_k4.txt", "--k", "9"]],
    "kds": [["kds", data / "path4.graph", "--k", "4"]],
    "kttree": [["kttree", data / "path3.graph", "--k", "2", "--t", "1", "--debug-verify"],
               ["kttree", data / "star4.graph", "--k", "1", "--t", "4", "--skip-threshold", "0"]],
    "kiob": [["kiob", data / "path3.graph", "--k", "2"], ["kiob", data / "star4.graph", "--k", "2"]],
    "kpath": [["kpath", data / "triangle.wgraph", "--k", "3", "--debug-verify"],
              ["kpath", data / "triangle.wgraph", "--k", "5", "--directed"]],
    "bounds": [["bounds", "--k", "40", "--p-frac", "0.55277", "--c", "1.447"],
               ["bounds", "--n", "1000000", "--k", "2000", "--p", "1000", "--shape", "cycle"]],
    "bench": [["bench", "--suite", "c-sweep"], ["bench", "--suite", "pcover", "--debug-verify"],
              ["bench", "--suite", "empty"]],
    "verify": [["verify", data / "small_family.txt", "--sub", data / "small_subfamily.txt"],
               ["verify", data / "small_family.txt", "--sub", data / "small_family.txt", "--k", "3"]],
}

failed = 0
for name, commands in runs.items():
    schema = json.loads((root / "schemas" / f"{name}.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    for args in commands:
        proc = subprocess.run([str(tool), *map(str, args)], capture_output=True, text=True)
        label = " ".join(a.name if isinstance(a, pathlib.Path) else a for a in args)
        if proc.returncode not in (0, 1):
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failed += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        for e in errors[:5]:
            print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")
        failed += bool(errors)
        if not errors:
            print(f"ok   {label}")
sys.exit(1 if failed else 0)
