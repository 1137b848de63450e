#!/usr/bin/env python3
"""Runs bundlecalc over a command corpus and validates every JSON output."""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

COMMANDS = [
    ["normalize", "lam^2 * lam^-2"],
    ["normalize", "sigma*(iota + conj(iota)) + ext2(iota + lam)"],
    ["dim", "rho*sigma"],
    ["dim", "conn(U1) + lam*Tstar + Tstar"],
    ["conj", "iota*sigmaL + ext2(iota)*sigmaR"],
    ["equal", "sigmaL + lam*sigma", "sigmaL + lam*sigmaL + lam*sigmaR"],
    ["bind", '[{"symbol":"u","count":1},{"symbol":"u~","count":1}]'],
    ["bind", '[{"symbol":"u","count":2},{"symbol":"d"},{"symbol":"e"}]'],
    ["bind", '[{"symbol":"u","count":2}]'],
    ["--model", "massive-neutrinos", "bind", '[{"symbol":"e"},{"symbol":"e~"}]'],
    ["break", "--mode", "formal", "--gauge", "SU3", "conn(SU3)"],
    ["break", "--mode", "spontaneous", "iota*sigmaL + ext2(iota)*sigmaR"],
    ["break", "--mode", "spontaneous", "--catalog"],
    ["break", "--mode", "formal", "--gauge", "SU3", "--catalog"],
    ["carriers", "electromagnetic"],
    ["carriers", "strong"],
    ["carriers", "electroweak"],
    ["coupling", "family"],
    ["coupling", "angle", "--g", "0.65", "--theta", "0.49"],
    ["coupling", "check", "--gram", "[[4,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"],
    ["coupling", "check", "--gram", "[[5,0,0,0],[0,1,0,0],[0,0,2,0],[0,0,0,3]]"],
    ["coupling", "order"],
    ["list", "particles"],
    ["list", "carriers"],
    # errors
    ["normalize", "iota +"],
    ["normalize", "ext2(conn(U1))"],
    ["break", "--mode", "spontaneous", "--gauge", "U1", "lam"],
    ["bind", '[{"symbol":"gamma"}]'],
]

COMPOSITES = [
    [{"symbol": "u", "count": 1}, {"symbol": "u~", "count": 1}],
    [{"symbol": "e"}],
]


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    resources = []
    schemas = {}
    for path in schema_dir.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        schemas[path.name] = doc
        resources.append((doc["$id"], Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    def validator(name):
        Draft202012Validator.check_schema(schemas[name])
        return Draft202012Validator(schemas[name], registry=registry)

    cli = validator("cli_output.schema.json")
    failures = 0

    def check(v, instance, label):
        nonlocal failures
        errors = sorted(v.iter_errors(instance), key=lambda e: list(e.path))
        if errors:
            failures += 1
            print(f"FAIL {label}: {errors[0].message}")
        else:
            print(f"ok   {label}")

    for args in COMMANDS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
        try:
            out = json.loads(proc.stdout)
        except json.JSONDecodeError as exc:
            failures += 1
            print(f"FAIL {' '.join(args)}: not JSON ({exc})")
            continue
        check(cli, out, " ".join(args) + f" [exit {proc.returncode}]")

    listing = json.loads(subprocess.run([binary, "list", "particles"], capture_output=True, text=True).stdout)
    check(validator("registry.schema.json"), {"model": listing["model"], "species": listing["species"]},
          "default registry document")
    comp = validator("composite.schema.json")
    for c in COMPOSITES:
        check(comp, c, "composite " + json.dumps(c))
    check(validator("coupling_config.schema.json"),
          {"strong": 1.0, "em": 0.30, "weak_g": 0.1, "weinberg_angle": 0.49}, "default coupling configuration")

    print(f"{failures} schema failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
