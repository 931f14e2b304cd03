"""Run the CLI and validate every JSON document it writes against schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

cli = sys.argv[1]
schema_dir = pathlib.Path(sys.argv[2])

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(body)) for name, body in schemas.items()
)
failures = 0


def validate(doc, schema_name, label):
    global failures
    validator = jsonschema.Draft202012Validator(schemas[schema_name], registry=registry)
    errors = list(validator.iter_errors(doc))
    status = "ok" if not errors else "INVALID"
    print(f"{status:8} {label} against {schema_name}")
    for e in errors[:5]:
        print("         ", e.message)
    failures += bool(errors)


def run(args, expect=0):
    global failures
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        print(f"FAILED   {' '.join(args)}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
        failures += 1
    return proc.stdout


for name, body in schemas.items():
    jsonschema.Draft202012Validator.check_schema(body)

validate(json.loads(run(["table", "--format", "json"])), "table.schema.json", "table (full grid)")
validate(json.loads(run(["table", "--p0", "1e3", "--format", "json"])), "table.schema.json", "table (all dashes)")
validate(json.loads(run(["bound", "--n", "1", "--p", "1e7", "--format", "json"])), "bound.schema.json", "bound")
validate(json.loads(run(["bound", "--n", "1", "--p", "1e6", "--format", "json"], expect=2)), "bound.schema.json", "bound (invalid)")
validate(json.loads(run(["nonresidues", "--p", "7", "--n", "3", "--format", "json"])), "nonresidues.schema.json", "nonresidues")

with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    report = tmp / "report.json"
    run(["verify", "--lemma", "stirling", "--lemma", "identity", "--quick", "--report", str(report)])
    validate(json.loads(report.read_text()), "verify_report.schema.json", "verify report")

    ck, jl = tmp / "ck.json", tmp / "r.jsonl"
    scan = ["scan", "--p-lo", "1e7", "--p-hi", "1e7+2e4", "--n-max", "1", "--shard-width", "4096",
            "--checkpoint", str(ck), "--jsonl", str(jl)]
    validate(json.loads(run(scan + ["--max-shards", "2"])), "scan_summary.schema.json", "scan summary (partial)")
    validate(json.loads(ck.read_text()), "checkpoint.schema.json", "checkpoint")
    validate(json.loads(run(scan)), "scan_summary.schema.json", "scan summary (resumed)")
    for i, line in enumerate(jl.read_text().splitlines()):
        if i % 97 == 0:
            validate(json.loads(line), "scan_record.schema.json", f"scan record {i}")

print("schema checks:", "PASS" if failures == 0 else f"FAIL ({failures})")
sys.exit(1 if failures else 0)
