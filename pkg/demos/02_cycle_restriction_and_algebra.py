"""
Restricting a rotation and looking at the path algebra
======================================================

The rotation of the directed 4-cycle restricted to the path 1 -a-> 2 -b-> 3.
Translates of the embedded path algebra only reach paths of length <= 2,
while the subalgebra they generate fills the whole window.
"""

from pathlib import Path

from quiveract import parse_instance
from quiveract.pathalg import (
    check_algebra_globalization,
    check_not_ideal,
    check_subalgebra_partial_action,
    generated_subalgebra,
    induced_partial_action,
    sum_of_translates,
)
from quiveract.quiver_paction import envelope_quiver_action

fixture = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "cycle4.qv"
doc = parse_instance(fixture.read_text())
alpha = doc.subject_partial_action()

for g in alpha.group:
    d = alpha.domain(g)
    print(g, d.ordered_vertices(), d.ordered_arrows(), alpha.arrow_maps[g])

L = doc.truncate  # 3
R = induced_partial_action(alpha)
print(check_subalgebra_partial_action(R, L))

# R_t is spanned by e_2, e_3 and b; it is a subalgebra but not an ideal
w = check_not_ideal(R.domain("t"), L)
print("not an ideal:", w)

env = envelope_quiver_action(alpha)
print("sum of translates:", sum_of_translates(env, L).dimension())
print("generated:", generated_subalgebra(env, L).dimension())

report = check_algebra_globalization(env, L)
print(report)
print(report.notes["unital"])
