#!/usr/bin/env python3
"""Runs every subcommand with --json on the corpus and validates the output."""
import json
import pathlib
import subprocess
import sys

import jsonschema

ssg, corpus, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
report_schema = json.loads((schema_dir / "ssg-report.schema.json").read_text())
catalog_schema = json.loads((schema_dir / "ssg-catalog.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(report_schema)
jsonschema.Draft202012Validator.check_schema(catalog_schema)
report = jsonschema.Draft202012Validator(report_schema)
catalog = jsonschema.Draft202012Validator(catalog_schema)

failures = 0
checked = 0


def run(args):
    proc = subprocess.run([ssg, "--json", *args], capture_output=True, text=True, timeout=600)
    if proc.returncode not in (0, 1, 3):
        raise RuntimeError(f"{args}: exit {proc.returncode}: {proc.stderr}")
    return proc


def check(validator, doc, label):
    global failures, checked
    checked += 1
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors[:5]:
        print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")
    failures += bool(errors)


for path in sorted(corpus.glob("*.ssg")):
    first_state = next(
        line.split("=")[0].strip()
        for line in path.read_text().splitlines()
        if "=" in line and not line.lstrip().startswith("#")
    )
    commands = [
        ["nucleus"],
        ["ends", "--element", first_state],
        ["dichotomy", "--word-len", "3"],
        ["quotient", "-n", "3"],
        ["subindep", "-n", "1", "-m", "1"],
        ["martingale", "-n", "1", "-m", "2", "-r", "2"],
        ["martingale", "-n", "1", "-m", "1", "-r", "0"],
        ["fpp", "--max-level", "4", "--samples", "1000", "--seed", "7"],
        ["vssf", "--max-n", "2", "--max-m", "2"],
        ["prop4"],
    ]
    for cmd in commands:
        args = [cmd[0], str(path), *cmd[1:]]
        proc = run(args)
        if proc.returncode == 3 and not proc.stdout:
            print(f"skip {path.name} {cmd[0]}: budget exhausted")
            continue
        check(report, json.loads(proc.stdout), f"{path.name} {cmd[0]}")

proc = run(["search", "--alphabet", "2,3", "--states", "1"])
for n, line in enumerate(proc.stdout.splitlines()):
    check(catalog, json.loads(line), f"search line {n + 1}")

print(f"{checked} documents checked, {failures} invalid")
sys.exit(1 if failures else 0)
