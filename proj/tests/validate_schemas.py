"""Run the CLI on the fixtures and validate every report against docs/*.schema.json."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
data = root / "tests" / "data"
V = jsonschema.Draft202012Validator
report = json.loads((root / "docs" / "report.schema.json").read_text())
matrix = json.loads((root / "docs" / "matrix.schema.json").read_text())

runs = [
    ["decide", "--problem", "tri", "--level", "ring", "--in", data / "pid_tri.json"],
    ["decide", "--problem", "diag", "--level", "ring", "--in", data / "z_family.json"],
    ["decide", "--problem", "tri", "--level", "ring", "--in", data / "quad_tri_cex.json"],
    ["decide", "--problem", "diag", "--level", "residue-ring", "--prime", "2", "--exponent", "2", "--in", data / "z_family.json"],
    ["report", "--kind", "diag", "--in", data / "z_family.json"],
    ["report", "--kind", "tri", "--in", data / "quad_tri_cex.json"],
    ["counterexample", "--kind", "diag", "--d", "-5", "--n", "2", "--certify"],
    ["certify", "--kind", "tri", "--in", data / "quad_tri_cex.json"],
    ["strata", "--m", "1", "--n", "2", "--q", "2", "--audit"],
    ["strata", "--m", "1", "--n", "2", "--equations"],
    ["audit", "--eigen", "1", "1", "2", "--q", "3", "--variety", "both"],
]
for args in runs:
    out = subprocess.run([cli, *map(str, args)], check=True, capture_output=True, text=True).stdout
    j = json.loads(out)
    jsonschema.validate(j, report, cls=V)
    for m in (j.get("inputs", {}).get("matrix"), j.get("matrix")):
        if m:
            jsonschema.validate(m, matrix, cls=V)
for f in data.glob("*.json"):
    if f.name != "malformed.json":
        jsonschema.validate(json.loads(f.read_text()), matrix, cls=V)
print(f"{len(runs)} reports validated")
