"""Runs lightsout with --json for a set of commands and validates each report."""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["charpoly", "--g", "petersen"],
    ["snf", "--g", "star:5"],
    ["nullity", "--g", "petersen", "--h", "petersen"],
    ["nullity", "--g", "path:3", "--h", "cycle:4", "--p", "3"],
    ["bound", "--g", "path:4", "--h", "path:4", "--mode", "closed"],
    ["solve", "--g", "path:3", "101"],
    ["counts", "--g", "grid:5x5", "--mode", "closed"],
    ["sweep", "--g", "star:3..7/2"],
    ["sweep", "--g", "random:5:20", "--seed", "7"],
    ["verify", "lemma"],
    ["verify", "example2"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    for args in COMMANDS:
        proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr}")
            failed += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for err in errors:
            print(f"FAIL {' '.join(args)}: {err.message}")
        failed += bool(errors)
        if not errors:
            print(f"ok   {' '.join(args)}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
