"""
Driving everything from the command line
========================================

The same computations as the other demos, through ``python -m quiveract``.
Equivalent shell commands::

    python -m quiveract validate -i tests/fixtures/arrow3.qv
    python -m quiveract globalize -i tests/fixtures/arrow3.qv
    python -m quiveract restrict -i tests/fixtures/cycle4.qv
    python -m quiveract algebra-check -i tests/fixtures/cycle4.qv --format structured
    python -m quiveract export-dot -i tests/fixtures/arrow3.qv --envelope
"""

import io
import json
from pathlib import Path

from quiveract.cli import run

fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
arrow3, cycle4 = str(fixtures / "arrow3.qv"), str(fixtures / "cycle4.qv")

for argv in (
    ["validate", "-i", arrow3],
    ["globalize", "-i", arrow3],
    ["restrict", "-i", cycle4],
    ["export-dot", "-i", arrow3, "--envelope"],
):
    out = io.StringIO()
    code = run(argv, stdout=out)
    print("$ quiveract", " ".join(argv), f"(exit {code})")
    print(out.getvalue())

out = io.StringIO()
run(["algebra-check", "-i", cycle4, "--format", "structured"], stdout=out)
data = json.loads(out.getvalue())
print(data["sum_dimension"], data["generated_dimension"], data["strict"])
