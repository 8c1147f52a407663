"""
Automorphisms, global actions and orbit sub-actions
===================================================
"""

from quiveract import Quiver, make_cyclic
from quiveract.quiver import automorphisms, export_dot
from quiveract.quiver_paction import (
    check_enveloping,
    envelope_quiver_action,
    enveloping_isomorphism,
    global_action_from_generators,
    orbit_subaction,
    restrict_global_action,
)

# two parallel arrows and a loop: swapping the parallel pair is the only symmetry
q = Quiver.build(["u", "v"], [("x", "u", "v"), ("y", "u", "v"), ("l", "v", "v")])
autos = automorphisms(q)
print(len(autos), "automorphisms")
for f in autos:
    print(f.arrow_map)

# C2 acting by that swap
beta = global_action_from_generators(make_cyclic(2), q, {"t": ({"u": "u", "v": "v"}, {"x": "y", "y": "x", "l": "l"})})

# restrict to one of the parallel arrows
s = q.subquiver(["u", "v"], ["x"])
alpha = restrict_global_action(beta, s)
env = envelope_quiver_action(alpha)
print(check_enveloping(env))

# the envelope is the part of q swept out by translates of s
orbit = orbit_subaction(beta, s)
phi = enveloping_isomorphism(env, orbit)
print(phi.vertex_map, phi.arrow_map)

print(export_dot(q, s))
