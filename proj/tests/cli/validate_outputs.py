#!/usr/bin/env python3
"""Run the stardomain tool on the bundled domains and validate every JSON it
emits against docs/schemas. Also checks exit codes and byte-identical reruns."""

import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema
import referencing


def load_registry(schema_dir):
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        contents = json.loads(path.read_text())
        resources.append((path.name, referencing.Resource.from_contents(contents)))
    return referencing.Registry().with_resources(resources)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--tool", required=True)
    parser.add_argument("--schemas", required=True, type=pathlib.Path)
    parser.add_argument("--data", required=True, type=pathlib.Path)
    parser.add_argument("--workdir", required=True, type=pathlib.Path)
    args = parser.parse_args()
    args.workdir.mkdir(parents=True, exist_ok=True)
    registry = load_registry(args.schemas)

    def validator(name):
        schema = registry.contents(f"{name}.schema.json")
        return jsonschema.Draft202012Validator(schema, registry=registry)

    def data(name):
        return str(args.data / name)

    # (schema, expected exit code, argv)
    cases = [
        ("analyze", 0, ["analyze", "--domain", data("square.json")]),
        ("analyze", 0, ["analyze", "--domain", data("ellipse256.json")]),
        ("analyze", 0, ["analyze", "--domain", data("disk.json")]),
        ("lipschitz", 0, ["lipschitz", "--domain", data("disk.json"), "--pairs", "5000"]),
        ("lipschitz", 2, ["lipschitz", "--domain", data("square.json"), "--pairs", "5000"]),
        ("approximate", 0, ["approximate", "--domain", data("square.json"), "--epsilon", "0.1", "--pairs", "5000"]),
        ("mesh", 0, ["mesh", "--domain", data("ellipse256.json"), "--rings", "4"]),
        ("spectrum", 0, ["spectrum", "--domain", data("square_pi.json"), "--rings", "8"]),
        ("spectrum", 0, ["spectrum", "--domain", data("disk.json"), "--rings", "8"]),
        ("bounds", 0, ["bounds", "--domain", data("ellipse256.json"), "--rings", "8"]),
        ("converge", 0, ["converge", "--domain", data("disk.json"), "--eps", "0.2,0.1", "--rings", "6",
                         "--format", "json"]),
        ("error", 1, ["analyze", "--domain", data("missing.json")]),
        ("error", 1, ["spectrum", "--domain", data("square.json"), "--rings", "0"]),
        ("error", 1, ["approximate", "--domain", data("square.json"), "--epsilon", "0.5"]),
        ("error", 1, ["mesh", "--domain", data("square.json"), "--format", "csv"]),
        ("error", 1, ["frobnicate"]),
    ]

    failures = 0
    for index, (schema, expected, argv) in enumerate(cases):
        outputs = []
        for attempt in range(2):
            target = args.workdir / f"case{index}_{attempt}.json"
            target.unlink(missing_ok=True)
            full = [args.tool, *argv] + (["--output", str(target)] if expected != 1 else [])
            proc = subprocess.run(full, capture_output=True, text=True)
            text = proc.stderr if expected == 1 else target.read_text() if target.exists() else ""
            outputs.append((proc.returncode, text))
        label = " ".join(argv)
        code, text = outputs[0]
        problems = []
        if code != expected:
            problems.append(f"exit {code}, expected {expected}")
        if outputs[0] != outputs[1]:
            problems.append("rerun output differs")
        if expected == 1 and text.count("\n") != 1:
            problems.append("stderr is not a single line")
        try:
            document = json.loads(text)
            errors = sorted(validator(schema).iter_errors(document), key=lambda e: list(e.path))
            problems += [f"{'/'.join(map(str, e.path))}: {e.message}" for e in errors[:5]]
        except json.JSONDecodeError as e:
            problems.append(f"not JSON: {e}")
        status = "ok" if not problems else "FAIL"
        print(f"[{status}] {schema:<12} {label}")
        for p in problems:
            print(f"    {p}")
        failures += bool(problems)

    # csv outputs are checked for their headers only
    csv_cases = [
        (["approximate", "--domain", data("square.json"), "--format", "csv"], "angle,s_base,s_eps,diff"),
        (["converge", "--domain", data("disk.json"), "--eps", "0.2,0.1", "--rings", "6"], "eps,C0,C1,delta0,delta1,"),
    ]
    for argv, header in csv_cases:
        proc = subprocess.run([args.tool, *argv], capture_output=True, text=True)
        ok = proc.returncode == 0 and proc.stdout.startswith(header)
        print(f"[{'ok' if ok else 'FAIL'}] csv          {' '.join(argv)}")
        failures += not ok

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
