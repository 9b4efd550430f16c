"""Validates `zgv zgv` reports against the point report schema."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, data = sys.argv[1:4]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["ex2x2.json", "--method", "direct"],
    ["ex2x2.json", "--method", "projected"],
    ["ex4x4.json", "--method", "mfrd", "--mode", "2d"],
    ["typeb.json", "--method", "direct", "--mode", "2d"],
]
failed = 0
for args in runs:
    out = subprocess.run([cli, "zgv", f"{data}/{args[0]}", *args[1:]], check=True, capture_output=True, text=True)
    errors = list(validator.iter_errors(json.loads(out.stdout)))
    for e in errors:
        print(f"{args}: {e.json_path}: {e.message}")
    failed += bool(errors)
    print(("FAIL" if errors else "ok"), *args)
sys.exit(1 if failed else 0)
