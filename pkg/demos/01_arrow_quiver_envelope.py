"""
Globalizing a partial action on a single arrow
==============================================

C3 acts partially on v1 -f-> v2: t sends v2 to v1, t^2 sends v1 back.
The enveloping quiver glues three translated copies of the arrow into
a directed triangle.
"""

from quiveract import (
    check_enveloping,
    check_quiver_partial_action,
    envelope_quiver_action,
    export_dot,
    make_cyclic,
    make_partial_action,
    Quiver,
)

C3 = make_cyclic(3)
gamma = Quiver.build(["v1", "v2"], [("f", "v1", "v2")])

alpha = make_partial_action(
    C3,
    gamma,
    {"t": (["v1"], []), "t2": (["v2"], [])},
    {"t": {"v2": "v1"}, "t2": {"v1": "v2"}},
)
print(check_quiver_partial_action(alpha))

# vertices of the envelope are classes of pairs (g, x), named by their least member
env = envelope_quiver_action(alpha)
for arrow in env.quiver.arrows:
    print(f"{arrow.name}: {arrow.source} -> {arrow.target}")

# t rotates the triangle
print(env.global_action["t"].vertex_map)

print(check_enveloping(env))

# the original quiver sits inside as a highlighted subquiver
print(export_dot(env.quiver, env.embedded()))
