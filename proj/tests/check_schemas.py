#!/usr/bin/env python3
"""Validates corpus files and CLI output against the shipped JSON schemas."""

import argparse
import json
import subprocess
import sys
from pathlib import Path

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def load_schemas(root):
    schemas = {}
    for path in sorted((root / "schemas").glob("*.schema.json")):
        doc = json.loads(path.read_text())
        Draft202012Validator.check_schema(doc)
        schemas[path.name] = doc
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in schemas.values()
    )
    return {
        name: Draft202012Validator(doc, registry=registry)
        for name, doc in schemas.items()
    }


def cli_json(cli, *args, expect=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise RuntimeError(f"{args}: exit {proc.returncode}, wanted {expect}")
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--root", required=True, type=Path)
    args = ap.parse_args()
    root, cli = args.root, args.cli
    validators = load_schemas(root)

    cases = []
    for path in sorted((root / "corpus").glob("*.expect.json")):
        cases.append((path.name, "scenario.schema.json", json.loads(path.read_text())))
    for path in sorted((root / "corpus").glob("*.certs.json")):
        cases.append((path.name, "certificates.schema.json", json.loads(path.read_text())))

    s3 = str(root / "samples" / "s3.grp")
    full = str(root / "corpus" / "pi1-N-full.grp")
    gx2 = str(root / "corpus" / "derive-gx2.grp")
    cases += [
        ("parse s3", "presentation.schema.json", cli_json(cli, "parse", "--json", s3)),
        ("parse full", "presentation.schema.json", cli_json(cli, "parse", "--json", full)),
        ("tc s3", "enumeration.schema.json", cli_json(cli, "tc", s3)),
        ("tc felsch", "enumeration.schema.json", cli_json(cli, "tc", "--strategy", "felsch", s3)),
        ("tc limit", "enumeration.schema.json",
         cli_json(cli, "tc", "--max-cosets", "10", full, expect=3)),
        ("abelianize", "h1.schema.json",
         cli_json(cli, "abelianize", str(root / "samples" / "z2.grp"))),
        ("certify", "certificate.schema.json",
         cli_json(cli, "certify", gx2, "--target", "g^-1x^2(xq)^-1")),
        ("verify all", "report.schema.json", cli_json(cli, "verify", "--json", "--all")),
        ("verify gap", "report.schema.json",
         cli_json(cli, "--convention", "gap", "verify", "--json",
                  "--scenario", "pi1-E0-tilde")),
    ]

    failures = 0
    for label, schema, doc in cases:
        errors = sorted(validators[schema].iter_errors(doc), key=lambda e: e.path)
        status = "ok" if not errors else "INVALID"
        print(f"{status:8} {label} ({schema})")
        for e in errors[:5]:
            print(f"         {list(e.path)}: {e.message}")
        failures += bool(errors)
    print(f"{len(cases) - failures}/{len(cases)} documents valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
