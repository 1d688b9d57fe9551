"""Runs each CLI command once and validates its JSON against docs/schemas/v1."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

resources = []
for path in schema_dir.glob("*.schema.json"):
    schema = json.loads(path.read_text())
    resources.append((path.name, Resource.from_contents(schema)))
registry = Registry().with_resources(resources)

runs = [
    ["exact", "--n-max", "12"],
    ["moments", "--n-max", "10", "--order", "4", "--bell-max", "2", "--bell-from", "3"],
    ["moments", "--n-max", "10", "--order", "3", "--mode", "bigfloat(128)"],
    ["pmf", "--n", "5", "--moments", "2"],
    ["pmf", "--n", "5", "--m-max", "40", "--mode", "bigfloat"],
    ["simulate", "--n", "6", "--samples", "2000", "--seed", "2"],
    ["clt", "--n", "20", "--samples", "2000", "--seed", "2"],
    ["recurrence", "--L", "1", "--initial", "0,0", "--n-max", "12"],
]

failures = 0
with tempfile.TemporaryDirectory() as out:
    for args in runs:
        subprocess.run([binary, "--quiet", "--out", out, *args], check=True)
        cmd = args[0]
        for name, doc_path in ((cmd, f"{cmd}.json"), ("manifest", f"{cmd}.manifest.json")):
            doc = json.loads((pathlib.Path(out) / doc_path).read_text())
            schema = registry.get_or_retrieve(f"{name}.schema.json").value.contents
            validator = jsonschema.Draft202012Validator(schema, registry=registry)
            errors = list(validator.iter_errors(doc))
            for e in errors[:5]:
                print(f"{' '.join(args)} [{doc_path}]: {e.message} at {list(e.absolute_path)}")
            failures += bool(errors)
        print(f"ok: {' '.join(args)}" if not failures else f"checked: {' '.join(args)}")

sys.exit(1 if failures else 0)
