"""
Scenario files and reports
==========================

Scenarios are TOML tables. Reports are sorted JSON, so the same seed and
file give the same bytes.
"""

import pathlib
import tempfile

from multfree.verdicts import exit_code, load_scenarios, machine_report, run_scenarios

TEXT = """
[[scenario]]
id = "gp-sym4"
pipeline = "gelfand_pair"
field = "gf(2)"
group = "sym(4)"
subgroup = "young(3)"
expect = { hecke_dim = 2 }

[[scenario]]
id = "ne-q8"
pipeline = "non_example"
field = "gf(2)"
group = "quaternion8"
module = "regular"

[[scenario]]
id = "trick-c6"
pipeline = "gelfand_trick"
field = "gf(7)"
group = "cyclic(6)"
subgroup = "trivial"
iota = "identity"
"""

with tempfile.TemporaryDirectory() as d:
    path = pathlib.Path(d) / "demo.toml"
    path.write_text(TEXT)
    scenarios = load_scenarios(str(path))

reports = run_scenarios(scenarios, seed=42)
for r in reports:
    print(r.summary())
print("exit code", exit_code(reports))
text = machine_report(reports)
print(text[:400], "...")
assert text == machine_report(run_scenarios(scenarios, seed=42, workers=2))
