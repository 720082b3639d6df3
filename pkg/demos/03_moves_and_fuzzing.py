"""The move calculus: local rewrites generating isotopy.

Nine basic moves: the three dotted Reidemeister moves inside a face,
tongue and crossing pushes across edges, transit exchanges along a ridge,
and the reroute around a vertex.  Every invariant the library computes is
exactly preserved by every move (the writhes and the raw bracket change
in the controlled way under kinks), which the seeded fuzzer checks at
scale.
"""

import linkcx as lx
from linkcx import moves
from linkcx.moves import MoveKind

bundle = lx.example("torus_link")
d = bundle.diagram

# Insert a positive kink: one new crossing of sign +1.
site = moves.find_sites(d, MoveKind.M1P)[0]
kinked = moves.apply(d, MoveKind.M1P, site)
print("after M1p: crossings =", len(kinked.crossings),
      " wri =", lx.wri(kinked))
print("bracket picked up -A^3:",
      lx.bracket(kinked) == lx.Laurent.minus_A3_power(1) * lx.bracket(d))
print("normalized bracket unchanged:",
      lx.normalized_bracket(kinked) == lx.normalized_bracket(d))

# Push the crossing across an edge of the torus: four new transits.
push = [s for s in moves.find_sites(d, MoveKind.M5P)
        if dict(s.data).get("mode") == "push"][0]
pushed = moves.apply(d, MoveKind.M5P, push)
print("after M5p:", len(pushed.transits), "transits; lk =", lx.lk(pushed))

# Reroute an arc around the torus vertex.
m7 = moves.find_sites(d, MoveKind.M7)[0]
rerouted = moves.apply(d, MoveKind.M7, m7)
print("after M7:", len(rerouted.transits), "transits; lk =", lx.lk(rerouted))

# The fuzzer applies random moves, deterministically by seed.
final, trace = moves.fuzz(d, steps=40, seed=5)
print("fuzz(40, seed=5):", len(final.crossings), "crossings,",
      len(final.transits), "transits")
print("kinds used:", sorted({k.value for k, _s in trace}))
print("lk still", lx.lk(final), " normalized bracket still invariant:",
      lx.normalized_bracket(final) == lx.normalized_bracket(d))

# Traces serialize one move per line and replay exactly.
text = moves.serialize_trace(trace[:3])
print("first trace lines:")
print(text)
replayed = moves.replay(d, moves.parse_trace(text))
print("replay matches:", replayed == moves.replay(d, trace[:3]))
