# Copyright 2026 The feqc Authors
# SPDX-License-Identifier: Apache-2.0
"""Run every valid corpus circuit through the CLI and validate the JSON reports."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, corpus = sys.argv[1], sys.argv[2], pathlib.Path(sys.argv[3])
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for circuit in sorted(corpus.glob("*.feqc")):
        variants = [["--emit-state"], ["--mode", "sample", "--shots", "200", "--seed", "1"]]
        if "occupation_feedforward" in circuit.name or "single_electron" in circuit.name:
            variants.append(["--backend", "corr"])
        for extra in variants:
            proc = subprocess.run([binary, "run", str(circuit), *extra],
                                  capture_output=True, text=True, check=False)
            if proc.returncode != 0:
                print(f"FAIL {circuit.name} {extra}: exit {proc.returncode}: {proc.stderr}")
                failures += 1
                continue
            report = json.loads(proc.stdout)
            errors = list(validator.iter_errors(report))
            if report["mode"] == "enumerate":
                total = sum(b["probability"] for b in report["branches"])
                if abs(total - 1.0) > 1e-9:
                    errors.append(f"probabilities sum to {total}")
            for error in errors:
                print(f"FAIL {circuit.name} {extra}: {getattr(error, 'message', error)}")
            failures += bool(errors)
    print("all reports valid" if failures == 0 else f"{failures} invalid reports")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
