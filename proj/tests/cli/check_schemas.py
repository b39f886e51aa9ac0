#!/usr/bin/env python3
"""Run the CLI on small inputs and validate every JSON document it prints."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

cli, schema_dir, data_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

resources = []
for path in schema_dir.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validator(name):
    schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


K5 = "5 0\n" + "".join(f"{u} {v} 1\n" for u in range(5) for v in range(u + 1, 5))
K4 = "4 0\n" + "".join(f"{u} {v} 1\n" for u in range(4) for v in range(u + 1, 4))
K33 = "6 0\n" + "".join(f"{u} {v} 1\n" for u in range(3) for v in range(3, 6))
C5_DOUBLED = "5 1\n0\n" + "".join(f"{i} {(i + 1) % 5} 2\n" for i in range(5))
C6_DOUBLED = "6 2\n0 3\n" + "".join(f"{i} {(i + 1) % 6} 2\n" for i in range(6))
MANY = "\n".join([K5, K4, K33, C5_DOUBLED, C6_DOUBLED])

cases = [
    ("immerse", ["immerse", "--pattern", "w4"], MANY),
    ("immerse", ["immerse", "--pattern", "k4"], MANY),
    ("immerse", ["immerse", "--pattern", "dm:3", "--roots", "0,1"], MANY),
    ("classify", ["classify", "w4"], "\n".join([K5, K4, K33])),
    ("classify", ["classify", "rooted-w4"], C5_DOUBLED + "\n" + C6_DOUBLED.replace("6 2\n0 3\n", "6 1\n0\n")),
    ("classify", ["classify", "k4"], MANY),
    ("classify", ["classify", "dm:3"], C6_DOUBLED + "\n" + K5.replace("5 0\n", "5 2\n0 1\n")),
    ("reduce", ["reduce"], MANY),
    ("sausage_reduce", ["sausage-reduce"], MANY),
    ("treewidth", ["treewidth"], MANY),
    ("report", ["verify", "--theorem", "dm:2", "--n", "4,5"], ""),
    ("report", ["verify", "--theorem", "rooted-w4", "--n", "5", "--catalog", "/dev/null/none"], ""),
    ("catalog", ["catalog", "--n", "5"], ""),
]

failures = 0
checked = 0
for schema, args, stdin in cases:
    proc = subprocess.run([cli, *args, "-"] if stdin else [cli, *args], input=stdin, capture_output=True, text=True)
    if proc.returncode == 2 and "--catalog" in args:
        # missing catalog file is an input error
        continue
    if proc.returncode not in (0, 1):
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    v = validator(schema)
    for line in proc.stdout.splitlines():
        errors = list(v.iter_errors(json.loads(line)))
        checked += 1
        for e in errors:
            print(f"FAIL {' '.join(args)}: {e.message} at {list(e.absolute_path)}")
            failures += 1

shipped = json.loads((data_dir / "catalog.json").read_text())
for e in validator("catalog").iter_errors(shipped):
    print(f"FAIL data/catalog.json: {e.message}")
    failures += 1
checked += 1

print(f"{checked} documents checked, {failures} failures")
sys.exit(1 if failures else 0)
