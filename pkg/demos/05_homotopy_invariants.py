"""Invariants refined by free-homotopy classes of loops.

A connection labels each (edge, face-side) pair with a group element;
transits pick up holonomy, and loops get canonical conjugacy classes.
The linking class refines lk, the colinking class distinguishes knots
with equal writhes, and the homotopy bracket refines the bracket by the
classes of the smoothed curves.
"""

import linkcx as lx
from linkcx.homotopy import LK, co, homotopy_bracket

# On the torus the smoothed crossing traces the diagonal class (1,1).
t = lx.example("torus_link")
print("LK(torus link) =", LK(t.diagram, t.connection).to_text(t.connection.group))
print("its augmentation recovers lk:",
      LK(t.diagram, t.connection).augmentation() == lx.lk(t.diagram))

# The K(n) knots in the theta cylinder all have the same underlying loop
# class but pairwise distinct colinking classes.
for n in range(3):
    b = lx.example("Kn", n)
    print(f"co(K({n})) =", co(b.diagram, b.connection).to_text(b.connection.group))

# Local knots always have vanishing colinking class.
tre = lx.example("trefoil_left")
print("co(local trefoil) is zero:", co(tre.diagram, tre.connection).is_zero())

# The homotopy bracket keeps the classes of the smoothed curves.  The
# annulus link and the local hopf link share their ordinary bracket but
# not their homotopy bracket.
ann = lx.example("annulus_link")
hop = lx.example("hopf_local")
print("equal brackets:", lx.bracket(ann.diagram) == lx.bracket(hop.diagram))
ha = homotopy_bracket(ann.diagram, ann.connection)
print("homotopy bracket of the annulus link:")
print("  ", ha.to_text(ann.connection.group))
print("homotopy bracket of the local hopf link:")
print("  ", homotopy_bracket(hop.diagram, hop.connection).to_text(
    hop.connection.group))

# Specializing every class multiset of size m to (-A^2 - A^-2)^m recovers
# the plain bracket times one curve factor.
print("specialization identity:",
      ha.specialize(lx.Laurent.loop_factor())
      == lx.Laurent.loop_factor() * lx.bracket(ann.diagram))
