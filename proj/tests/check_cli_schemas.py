#!/usr/bin/env python3
"""Validates the test inputs, runs the CLI on them and validates every JSON report."""
import json
import pathlib
import subprocess
import sys

import jsonschema

CASES = [
    (["div", "--spec", "div.json"], "div", {0}),
    (["--bits", "div", "--alphas", "2,-1", "--pmfs", "pmfs.json"], "div", {0}),
    (["cond-div", "--spec", "cond_div.json"], "cond-div", {0}),
    (["dpi-check", "--spec", "dpi.json"], "dpi-check", {0}),
    (["ice", "--spec", "game.json"], "ice", {0}),
    (["ice", "--spec", "game_joint.json"], "ice", {0}),
    (["optimize", "--spec", "game.json"], "optimize", {0}),
    (["optimize", "--spec", "game_joint.json"], "optimize", {0}),
    (["decompose", "--spec", "game.json"], "decompose", {0}),
    (["decompose", "--spec", "game_joint.json"], "decompose", {0}),
    (["side-info", "--spec", "game_joint.json"], "side-info", {0}),
    (["gpt-bet", "--spec", "qubit.json"], "gpt-bet", {0}),
    (["sd", "--spec", "qubit.json"], "sd", {0}),
    (["monotone", "--spec", "qubit.json"], "monotone", {0}),
    (["oracle", "--check", "optimize", "--spec", "game.json"], "oracle", {0}),
    (["oracle", "--check", "mc", "--spec", "game_joint.json"], "oracle", {0}),
    (["verify-all", "--mc-samples", "100000"], "verify-all", {0, 3}),
]

INPUTS = {
    "div.json": "div",
    "pmfs.json": "pmfs",
    "cond_div.json": "cond-div",
    "dpi.json": "dpi-check",
    "sweep.json": "sweep",
    "game.json": "game",
    "game_joint.json": "game",
    "qubit.json": "gpt",
    "bad_risk.json": "game",
}

ERRORS = [
    (["ice", "--spec", "bad_risk.json"], 4),
    (["ice", "--spec", "bad_field.json"], 2),
    (["ice", "--spec", "missing.json"], 2),
    (["bogus"], 2),
]


def main():
    exe, root = sys.argv[1], pathlib.Path(sys.argv[2])
    data = root / "tests" / "data"
    schemas = {p.stem: json.loads(p.read_text()) for p in (root / "schemas").glob("*.json")}
    inputs = {p.stem: json.loads(p.read_text()) for p in (root / "schemas" / "input").glob("*.json")}
    failures = 0

    for name, schema in INPUTS.items():
        try:
            jsonschema.validate(json.loads((data / name).read_text()), inputs[schema])
            print(f"ok   input {name}")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL input {name}: {e.message}")
    try:
        jsonschema.validate(json.loads((data / "bad_field.json").read_text()), inputs["game"])
        failures += 1
        print("FAIL input bad_field.json: accepted")
    except jsonschema.ValidationError:
        print("ok   input bad_field.json rejected")

    def resolve(args):
        return [str(data / a) if a.endswith(".json") else a for a in args]

    for args, schema, codes in CASES:
        proc = subprocess.run([exe, *resolve(args)], capture_output=True, text=True)
        try:
            if proc.returncode not in codes:
                raise AssertionError(f"exit {proc.returncode}: {proc.stderr.strip()}")
            jsonschema.validate(json.loads(proc.stdout), schemas[schema])
            print(f"ok   {' '.join(args)}")
        except (AssertionError, json.JSONDecodeError, jsonschema.ValidationError) as e:
            failures += 1
            print(f"FAIL {' '.join(args)}: {e}")

    for args, code in ERRORS:
        proc = subprocess.run([exe, *resolve(args)], capture_output=True, text=True)
        try:
            if proc.returncode != code:
                raise AssertionError(f"exit {proc.returncode}, expected {code}")
            jsonschema.validate(json.loads(proc.stderr.strip().splitlines()[-1]), schemas["error"])
            print(f"ok   {' '.join(args)} -> {code}")
        except (AssertionError, json.JSONDecodeError, jsonschema.ValidationError) as e:
            failures += 1
            print(f"FAIL {' '.join(args)}: {e}")

    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
