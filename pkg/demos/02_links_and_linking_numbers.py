"""Dotted link diagrams and their linking numbers.

Crossings carry two dots in opposite sectors instead of over/under data,
so links make sense in complexes that fit in no 3-manifold.  The sign of
a crossing, and with it the linking number of a two-component link, is
read off the dots and the strand directions.
"""

import linkcx as lx

# The standard two-curve link on the torus: one crossing, linking number 1.
torus = lx.example("torus_link")
print("torus link: lk =", lx.lk(torus.diagram))
print("  parity check:", lx.parity_check(torus.diagram))
print("  odd lk obstructs locality:", lx.local_obstruction(torus.diagram))

# Mirroring a link flips the dots at every crossing and negates lk.
print("  mirror lk =", lx.lk(lx.mirror(torus.diagram)))

# Two skew segments in a Moebius band: lk = 1, so the link differs from
# its mirror image.
moebius = lx.example("moebius_link")
print("moebius link: lk =", lx.lk(moebius.diagram),
      " mirror:", lx.lk(lx.mirror(moebius.diagram)))

# A family with unbounded linking numbers in the theta cylinder.
for n in range(4):
    print(f"L({n}): lk =", lx.lk(lx.example("Ln", n).diagram))

# Classical links drawn inside one face keep their theory, with linking
# numbers doubled relative to the classical count.
hopf = lx.example("hopf_local")
print("local hopf: lk =", lx.lk(hopf.diagram), "(twice the classical value)")

# Writhes: sums of self-crossing signs.  Not isotopy invariant, but the
# M1 moves change them by exactly one, which normalizes the bracket.
left = lx.example("trefoil_left").diagram
right = lx.example("trefoil_right").diagram
print("trefoil writhes:", lx.wri(left), lx.wri(right))
print("oriented writhe of L(2):", lx.Wri(lx.example("Ln", 2).diagram))
