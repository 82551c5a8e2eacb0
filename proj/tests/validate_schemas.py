#!/usr/bin/env python3
"""Run each vincstat subcommand on a few inputs and validate stdout against
the matching JSON Schema in the schemas directory."""
import json
import pathlib
import subprocess
import sys

import jsonschema

CASES = [
    ("count", ["count", "--pattern", "3|1,2", "--perm", "5,8,2,1,3,4,7,6"], 0),
    ("count", ["count", "--pattern", "2|1,3", "--n", "9", "--list", "--limit", "4"], 0),
    ("count", ["count", "--pattern", "1|2|3", "--n", "1000"], 0),
    ("sample", ["sample", "--n", "12", "--seed", "5", "--count", "3"], 0),
    ("sample", ["sample", "--n", "12", "--seed", "5", "--count", "3", "--method", "reduction"], 0),
    ("moments", ["moments", "--pattern", "1|3,2", "--n", "8"], 0),
    ("moments", ["moments", "--pattern", "1|3,2", "--n", "2000"], 0),
    ("var-poly", ["var-poly", "--pattern", "2|1|3"], 0),
    ("depgraph", ["depgraph", "--pattern", "2,1|3", "--n", "30"], 0),
    ("depgraph", ["depgraph", "--pattern", "2,1|3", "--n", "3000", "--edge-cap", "10"], 0),
    ("bounds", ["bounds", "--pattern", "2,1", "--n", "500", "--gamma", "0", "--delta", "2"], 0),
    ("bounds", ["bounds", "--N", "1000", "--D", "7", "--r", "5"], 0),
    ("clt", ["clt", "--pattern", "2,1", "--n", "100", "--samples", "2000", "--seed", "1"], 0),
    ("oracle", ["oracle", "--pattern", "2|1", "--n", "6"], 0),
    ("oracle", ["oracle", "--pattern", "2|1", "--n", "6", "--distribution"], 0),
    ("oracle", ["oracle", "--pattern", "2|1", "--n", "6", "--ltv", "2"], 0),
    ("error", ["oracle", "--pattern", "2|1", "--n", "40"], 1),
    ("error", ["clt", "--pattern", "1", "--n", "50", "--samples", "1000"], 1),
    ("error", ["count", "--pattern", "3|1,2", "--perm", "1,1,2"], 1),
]

RATE_INPUT = "n,d_K\n100,0.07\n400,0.035\n1600,0.018\n"


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text())
               for p in schema_dir.glob("*.schema.json")}
    cases = CASES + [("rate", ["rate"], 0)]
    failures = 0
    for name, args, want in cases:
        stdin = RATE_INPUT if name == "rate" else None
        run = subprocess.run([exe, *args], input=stdin, capture_output=True, text=True)
        label = " ".join(args)
        if run.returncode != want:
            print(f"FAIL {label}: exit {run.returncode}, expected {want}\n{run.stderr}")
            failures += 1
            continue
        try:
            jsonschema.validate(json.loads(run.stdout), schemas[name])
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            print(f"FAIL {label}: {e}")
            failures += 1
            continue
        print(f"ok   {label}")
    print(f"{len(cases)} cases, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
